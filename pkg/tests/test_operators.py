import math
import warnings

import numpy as np
import pytest

from discspace import InvalidParameterError, PrimitivePair, build_function
from discspace import test_bloch_family as bloch_family
from discspace.corpus import bergman_norm_poly, dirichlet_norm_poly, random_polynomials, scaled
from discspace.functions import BlaschkeProduct, Constant, Identity, Mobius, Polynomial
from discspace.geometry import thinness_defects
from discspace.operators import (
    ThinConfig,
    apply_Sg,
    apply_Tg,
    candidate_path,
    default_witness_grid,
    dirichlet_deficiency,
    estimate_Sg,
    estimate_Tg,
    extremal_bloch,
    extremal_witness_check,
    is_affine,
    is_constant,
    opnorm_exact_Sg,
    opnorm_exact_Tg,
    sg_lower_bound_bmoa,
    sg_lower_bound_dirichlet,
    tg_attainment_experiment,
)
from discspace.quadrature import disc_rule
from discspace.search import SearchConfig
from discspace.spaces import bloch_norm, dirichlet_norm

G = Polynomial([0.5, 0.5])  # (1 + z) / 2


def test_sg_and_tg_derivatives(rng):
    g = Mobius(0.4 - 0.2j) + Polynomial([0, 0, 1])
    f = Polynomial([1, 2, -1j, 0.5])
    z = 0.99 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    assert np.allclose(apply_Sg(g, f).deriv(z), f.deriv(z) * g(z), rtol=1e-14, atol=1e-14)
    assert np.allclose(apply_Tg(g, f).deriv(z), f(z) * g.deriv(z), rtol=1e-14, atol=1e-14)
    assert apply_Sg(g, f).value_at_zero == 0
    assert apply_Tg(g, f).value_at_zero == 0


def test_multiplication_identity(rng):
    """S_g f + T_g f = fg - f(0)g(0), checked through derivatives and values at 0."""
    g, f = Polynomial([0.3, -1, 0.2j]), Mobius(0.5j)
    z = 0.9 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    lhs = apply_Sg(g, f).deriv(z) + apply_Tg(g, f).deriv(z)
    assert np.allclose(lhs, (f * g).deriv(z), atol=1e-13)


def test_exact_norms():
    assert opnorm_exact_Sg(G) == pytest.approx(1.0, abs=1e-14)
    assert opnorm_exact_Sg(Mobius(0.7)) == pytest.approx(1.0, abs=1e-12)
    assert opnorm_exact_Tg(Polynomial([3, 2])) == pytest.approx(2.0, abs=1e-14)
    assert opnorm_exact_Tg(Polynomial([0, 0, 1])) == pytest.approx(2.0, abs=1e-14)
    # sup |sigma_a'| = (1 + |a|) / (1 - |a|)
    assert opnorm_exact_Tg(Mobius(0.5)) == pytest.approx(3.0, abs=1e-10)


def test_tg_warns_for_parameters_near_circle():
    with pytest.warns(RuntimeWarning):
        opnorm_exact_Tg(Mobius(0.995))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        opnorm_exact_Tg(Mobius(0.9))


def test_structure_probes():
    assert is_constant(Constant(2))
    assert not is_constant(Identity())
    assert is_affine(Polynomial([3, 2]))
    assert not is_affine(Polynomial([0, 0, 1]))


def test_dirichlet_witness_lower_bound():
    w = sg_lower_bound_dirichlet(G, 0.95)
    assert w.analytic == pytest.approx(0.975, abs=1e-15)
    assert w.quadrature >= w.analytic - 1e-12
    assert w.quadrature <= 1.0 + 1e-9


def test_bmoa_witness_bound_closed_form():
    # (1 - a^2) |f_a'(a)| = 1 so the bound is |g(a)|
    for a in (0, 0.5, 0.9j):
        assert sg_lower_bound_bmoa(G, bloch_family(a), a) == pytest.approx(abs(G(a)), abs=1e-13)


@pytest.mark.parametrize("space", ["dirichlet", "bloch", "bmoa"])
def test_estimate_sg_brackets_exact(space):
    grid = default_witness_grid(0.95, 5, 8)
    est = estimate_Sg(G, space, grid)
    assert est.exact == pytest.approx(1.0, abs=1e-14)
    assert est.lower <= est.exact + 1e-9
    assert est.lower >= 0.975 - 1e-12
    assert est.gap == pytest.approx(est.exact - est.lower)


def test_estimate_sg_unknown_space():
    with pytest.raises(InvalidParameterError):
        estimate_Sg(G, "hardy", [0])


def test_estimate_tg_brackets_exact():
    g = Polynomial([0, 0, 1])
    est = estimate_Tg(g, default_witness_grid(0.9, 4, 8))
    assert est.lower <= est.exact + 1e-9
    assert est.lower >= 1.8 - 1e-6  # |g'(0.9)|


def test_sg_contraction_small_corpus():
    rule = disc_rule()
    for p in random_polynomials(21, 30):
        assert dirichlet_norm(apply_Sg(G, p), rule).value <= dirichlet_norm(p, rule).value + 1e-12
        assert bloch_norm(apply_Sg(G, p)).value <= bloch_norm(p).value + 1e-9


@pytest.mark.parametrize("f, expected", [
    (Polynomial([0, 1]), 0.5),
    (Polynomial([0, 0, 1 / math.sqrt(2)]), 1 / 3),
    (Polynomial([1, 1]), 0.75),  # (|f(0)|^2 + int (1 - |z|^2) dA) / 2
])
def test_deficiency_closed_forms(f, expected):
    assert dirichlet_deficiency(Identity(), f) == pytest.approx(expected, abs=1e-12)


def test_deficiency_is_scale_invariant_and_positive():
    for p in random_polynomials(4, 50):
        d = dirichlet_deficiency(Identity(), p)
        assert d > 1e-3
        assert d == pytest.approx(dirichlet_deficiency(Identity(), scaled(p, dirichlet_norm_poly(p))), rel=1e-12)


def test_deficiency_of_zero_function_rejected():
    with pytest.raises(InvalidParameterError):
        dirichlet_deficiency(Identity(), Constant(0))


def test_candidate_path():
    cfg = ThinConfig(max_exponent=10, swing=0.0)
    zs = candidate_path(0.0, cfg)
    assert [z.real for z in zs] == pytest.approx([1 - 2.0 ** -n for n in range(1, 11)])
    tang = candidate_path(math.pi / 2, ThinConfig(max_exponent=10))
    assert np.all(np.diff(np.abs(tang.as_array())) > 0)


@pytest.fixture(scope="module")
def bloch_schedule():
    return [extremal_bloch(G, n) for n in (1, 2, 4, 8, 16, 20)]


def test_extremal_bloch_gap_shrinks(bloch_schedule):
    gaps = [r.gap for r in bloch_schedule]
    assert all(b <= a for a, b in zip(gaps, gaps[1:]))
    assert all(r.lower_bound <= r.exact + 1e-9 for r in bloch_schedule)
    assert bloch_schedule[-1].lower_bound >= 0.95


def test_extremal_zeros_are_thin(bloch_schedule):
    for r in bloch_schedule:
        assert len(r.zeros) == r.N and not r.exhausted
        assert min(thinness_defects(r.zeros)) >= 0.5
        assert min(d for d, _ in r.diagnostics) >= 0.5


def test_extremal_record_dict(bloch_schedule):
    d = bloch_schedule[2].as_dict()
    assert d["n_zeros"] == 4 and len(d["zeros"]) == 4
    assert d["gap"] == pytest.approx(d["exact"] - d["lower_bound"])


def test_extremal_witness_check_accepts_construction(bloch_schedule):
    rec = bloch_schedule[-1]
    h = PrimitivePair(0j, BlaschkeProduct(rec.zeros).derivative())
    verdict = extremal_witness_check(G, h, rec.zeros, 0.05)
    assert verdict.accepted, verdict.reasons


def test_extremal_witness_check_rejects_interior_sequence():
    zs = [0.1, 0.2j, -0.3]
    verdict = extremal_witness_check(G, bloch_family(0.1), zs, 0.05)
    assert not verdict.accepted
    assert any("boundary" in r for r in verdict.reasons)


def test_radial_march_exhausts_candidates():
    rec = extremal_bloch(G, 20, ThinConfig(swing=0.0))
    assert rec.exhausted and len(rec.zeros) < 20


def test_extremal_rejects_bad_N():
    with pytest.raises(InvalidParameterError):
        extremal_bloch(G, 0)


def test_tg_experiment_affine_witness():
    corpus = random_polynomials(2, 10)
    rep = tg_attainment_experiment(Polynomial([3, 2]), corpus)
    assert rep.affine and rep.exact == pytest.approx(2.0)
    assert abs(rep.witness_deficiency) <= 1e-7
    for row in rep.kernel_rows:
        assert row["value"] == pytest.approx(row["bound"], abs=1e-6)


def test_tg_experiment_quadratic():
    corpus = [scaled(p, bergman_norm_poly(p)) for p in random_polynomials(2, 20)]
    rep = tg_attainment_experiment(Polynomial([0, 0, 1]), corpus)
    assert not rep.affine and rep.witness_deficiency is None
    assert rep.min_deficiency > 0
    for row in rep.kernel_rows:
        assert row["value"] >= row["bound"] - 1e-6
    assert set(rep.as_dict()) >= {"rows", "kernel_rows", "min_deficiency"}


def test_search_config_passes_through():
    fast = SearchConfig(boundary_n=256)
    assert opnorm_exact_Sg(build_function({"mobius": 0.3}), fast) == pytest.approx(1.0, abs=1e-12)


def test_extremal_witness_check_rejects_little_bloch_function():
    # polynomials have (1 - |z|^2)|f'(z)| -> 0 at the circle
    p = Polynomial([0, 1, 0.5])
    f = scaled(p, bloch_norm(p).value)
    zs = candidate_path(0.0, ThinConfig(max_exponent=24)).as_array()[-8:]
    verdict = extremal_witness_check(G, f, zs, 0.05)
    assert not verdict.accepted
    assert any("approach 1" in r for r in verdict.reasons)


def test_operator_examples():
    tz1 = apply_Tg(Identity(), Constant(1))
    assert tz1.value_at_zero == 0 and tz1.deriv(0.4j) == pytest.approx(1.0)
    assert dirichlet_norm(apply_Tg(Polynomial([0, 0, 1]), Constant(1))).value == pytest.approx(math.sqrt(2), abs=1e-7)
    assert opnorm_exact_Sg(Constant(2 - 1j)) == pytest.approx(abs(2 - 1j))
    assert opnorm_exact_Tg(Polynomial([0, 0, 0, 1])) == pytest.approx(3.0)
    assert opnorm_exact_Tg(Polynomial([1j, 2 - 1j])) == pytest.approx(abs(2 - 1j))


def test_dirichlet_witness_examples():
    w = sg_lower_bound_dirichlet(Constant(3), 0.4)
    assert w.analytic == pytest.approx(3.0) and w.quadrature == pytest.approx(3.0, abs=1e-9)
    assert sg_lower_bound_dirichlet(Identity(), 0.9).analytic == pytest.approx(0.9)


def test_deficiency_zero_for_constant_symbol():
    assert dirichlet_deficiency(Constant(2), Polynomial([0, 1, 0.3])) == pytest.approx(0.0, abs=1e-12)


def test_bmoa_bound_single_factor():
    # h = sigma_a - a for a one-point zero set: (1 - |a|^2)|h'(a)||g(a)| = |a| for g = z
    assert sg_lower_bound_bmoa(Identity(), bloch_family(0.9), 0.9) == pytest.approx(0.9, abs=1e-14)
    assert sg_lower_bound_bmoa(Constant(2), Polynomial([0, 1, 1]), 0.5) == pytest.approx(0.75 * 2 * 2)


def test_bmoa_bound_below_quadrature_norm():
    from discspace.quadrature import log_disc_rule
    from discspace.spaces import bmoa_norm
    rule, fast = log_disc_rule(48, 64), SearchConfig(a_n_r=6, a_n_t=12, rounds=2)
    rng = np.random.Generator(np.random.PCG64(5))
    for p in random_polynomials(6, 15):
        sp = apply_Sg(G, p)
        upper = bmoa_norm(sp, rule=rule, search=fast).value
        for a in 0.9 * np.sqrt(rng.random(5)) * np.exp(2j * np.pi * rng.random(5)):
            assert sg_lower_bound_bmoa(G, p, a) <= upper + 1e-4


def test_extremal_with_constant_symbol_attains():
    from discspace.operators import extremal_bmoa
    c = Constant(0.7)
    assert extremal_bloch(c, 3).lower_bound == pytest.approx(0.7, abs=1e-9)
    rec = extremal_bmoa(c, 1)
    assert rec.lower_bound == pytest.approx(0.7, abs=1e-6)
    assert rec.norm_of_h == pytest.approx(1.0, abs=1e-6)


def test_witness_check_rejects_single_interior_point():
    verdict = extremal_witness_check(G, bloch_family(0.3), [0.3], 0.05)
    assert not verdict.accepted
    assert any("boundary" in r for r in verdict.reasons)
