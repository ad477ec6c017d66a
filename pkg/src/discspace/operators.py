"""The integral operators S_g f = int_0^z f' g and T_g f = int_0^z f g'.

Closed-form operator norms (sup|g| for S_g on Bloch, Dirichlet and BMOA;
sup|g'| for T_g from A^2 to Dirichlet) are paired with numerical lower
bounds from explicit witness families, and with finite-N thin-Blaschke
constructions that approach attainment on Bloch and BMOA.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError
from .functions import (
    BlaschkeProduct,
    Constant,
    Func,
    PrimitivePair,
    Product,
    as_pair,
    bergman_kernel_unit,
    max_zero_modulus,
    test_bloch_family,
)
from .geometry import ZeroSequence, greedy_thin_subsequence
from .quadrature import QuadratureRule, disc_rule, integrate, log_disc_rule
from .search import SearchConfig, circle_sup
from .spaces import bergman_norm, bloch_norm, bmoa_norm, dirichlet_norm

# sample points for structural tests on g (constant / affine)
_PROBE = 0.9 * np.exp(2j * np.pi * np.arange(7) / 7) * np.linspace(0.2, 1.0, 7)


def apply_Sg(g: Func, fp: PrimitivePair | Func) -> PrimitivePair:
    """S_g f as the pair (0, f' g)."""
    fp = as_pair(fp)
    return PrimitivePair(0j, Product(fp.derivative, g))


def apply_Tg(g: Func, f: Func) -> PrimitivePair:
    """T_g f as the pair (0, f g')."""
    return PrimitivePair(0j, Product(f, g.derivative()))


def is_constant(g: Func, tol: float = 1e-13) -> bool:
    return bool(np.all(np.abs(g.deriv(_PROBE)) <= tol))


def is_affine(g: Func, tol: float = 1e-12) -> bool:
    second = g.jet(_PROBE.astype(complex), 2)[2]
    return bool(np.all(np.abs(second) <= tol))


def boundary_sup(f: Func, search: SearchConfig | None = None, derivative: bool = False) -> tuple[float, float]:
    """(sup, argmax angle) of |f| (or |f'|) on the unit circle.

    By the maximum-modulus principle this is the sup over the closed disc.
    """
    cfg = search or SearchConfig()
    fn = f.deriv if derivative else f
    return circle_sup(lambda z: np.abs(fn(z)), 1.0, cfg.boundary_n, 1e-12)


def opnorm_exact_Sg(g: Func, search: SearchConfig | None = None) -> float:
    """||S_g|| = sup|g|, the same value on Bloch, Dirichlet and BMOA."""
    return boundary_sup(g, search)[0]


def opnorm_exact_Tg(g: Func, search: SearchConfig | None = None) -> float:
    """||T_g : A^2 -> D|| = sup|g'|."""
    if max_zero_modulus(g) > 0.99:
        warnings.warn("g has Mobius/Blaschke parameters with modulus > 0.99; "
                      "boundary sampling of g' may under-resolve its sup", RuntimeWarning, stacklevel=2)
    return boundary_sup(g, search, derivative=True)[0]


@dataclass(frozen=True)
class DirichletWitness:
    analytic: float
    quadrature: float


def sg_lower_bound_dirichlet(g: Func, a, rule: QuadratureRule | None = None) -> DirichletWitness:
    """|g(a)| and the quadrature value of ||S_g f_a||_D, which dominates it."""
    fa = test_bloch_family(a)
    q = dirichlet_norm(apply_Sg(g, fa), rule or disc_rule()).value
    return DirichletWitness(abs(g(complex(a))), q)


def sg_lower_bound_bmoa(g: Func, fp: PrimitivePair | Func, a) -> float:
    """(1 - |a|^2)|F'(a)||g(a)|, a quadrature-free lower bound on the BMOA seminorm of S_g F."""
    fp = as_pair(fp)
    a = complex(a)
    return (1.0 - abs(a) ** 2) * abs(fp.deriv(a)) * abs(g(a))


def dirichlet_deficiency(g: Func, fp: PrimitivePair | Func, rule: QuadratureRule | None = None,
                         opnorm: float | None = None) -> float:
    """||S_g||^2 - ||S_g f||_D^2 for f rescaled to unit Dirichlet norm.

    Evaluated as ||S_g||^2 |f(0)|^2 + int |f'|^2 (||S_g||^2 - |g|^2) dA, which
    keeps the integrand nonnegative.
    """
    fp = as_pair(fp)
    rule = rule or disc_rule()
    nrm = dirichlet_norm(fp, rule).value
    if nrm == 0.0:
        raise InvalidParameterError("deficiency needs a nonzero f")
    s = opnorm if opnorm is not None else opnorm_exact_Sg(g)
    s2 = s * s
    dv = fp.derivative
    body = integrate(rule, lambda z: np.abs(dv(z)) ** 2 * np.maximum(s2 - np.abs(g(z)) ** 2, 0.0))
    return (s2 * abs(fp.value_at_zero) ** 2 + body) / nrm ** 2


@dataclass(frozen=True)
class OpNormEstimate:
    exact: float
    lower: float
    witness_param: object
    gap: float
    method: str

    def as_dict(self) -> dict:
        w = self.witness_param
        if isinstance(w, complex):
            w = [w.real, w.imag]
        return {"exact": self.exact, "lower": self.lower, "gap": self.gap,
                "witness": w, "method": self.method}


def default_witness_grid(truncation: float = 0.95, n_r: int = 20, n_t: int = 16) -> list[complex]:
    radii = np.linspace(0.0, truncation, n_r)
    pts = [0j]
    for r in radii[1:]:
        pts.extend(complex(r * np.exp(2j * np.pi * k / n_t)) for k in range(n_t))
    return pts


def estimate_Sg(g: Func, space: str = "dirichlet", a_grid: Sequence[complex] | None = None,
                rule: QuadratureRule | None = None, search: SearchConfig | None = None) -> OpNormEstimate:
    """Exact ||S_g|| against the best value over the f_a witness family."""
    exact = opnorm_exact_Sg(g, search)
    pts = list(a_grid) if a_grid is not None else default_witness_grid()
    best, best_a = -1.0, 0j
    for a in pts:
        if space == "dirichlet":
            v = sg_lower_bound_dirichlet(g, a, rule).quadrature
        elif space == "bloch":
            v = bloch_norm(apply_Sg(g, test_bloch_family(a)), search, seeds=[a]).value
        elif space == "bmoa":
            v = sg_lower_bound_bmoa(g, test_bloch_family(a), a)
        else:
            raise InvalidParameterError(f"unknown space {space!r}")
        if v > best:
            best, best_a = v, complex(a)
    method = "quadrature" if space == "dirichlet" else ("grid-search" if space == "bloch" else "closed-form")
    return OpNormEstimate(exact, best, best_a, exact - best, method)


def estimate_Tg(g: Func, a_grid: Sequence[complex] | None = None,
                rule: QuadratureRule | None = None, search: SearchConfig | None = None) -> OpNormEstimate:
    """Exact ||T_g|| against the best ||T_g F_a||_D over unit Bergman kernels F_a."""
    exact = opnorm_exact_Tg(g, search)
    rule = rule or disc_rule()
    pts = list(a_grid) if a_grid is not None else default_witness_grid()
    best, best_a = -1.0, 0j
    for a in pts:
        v = dirichlet_norm(apply_Tg(g, bergman_kernel_unit(a)), rule).value
        if v > best:
            best, best_a = v, complex(a)
    return OpNormEstimate(exact, best, best_a, exact - best, "quadrature")


# --- thin-Blaschke extremal constructions -----------------------------------

@dataclass(frozen=True)
class ThinConfig:
    """Candidate path and thinness target for the extremal constructions.

    Candidates are z_n = zeta * r_n * exp(i * swing * sqrt(1 - r_n)) with
    r_n = 1 - 2^-n, n = 1..max_exponent, where zeta is the boundary point
    maximising |g|.  ``swing = 0`` gives the purely radial march.
    """

    target_defect: float = 0.5
    max_exponent: int = 32
    swing: float = 1.0


def candidate_path(theta: float, cfg: ThinConfig) -> ZeroSequence:
    n = np.arange(1, cfg.max_exponent + 1)
    r = 1.0 - 2.0 ** (-n)
    ang = theta + cfg.swing * np.sqrt(1.0 - r)
    return ZeroSequence(r * np.exp(1j * ang))


@dataclass
class ExtremalRecord:
    space: str
    N: int
    zeros: ZeroSequence
    lower_bound: float
    exact: float
    norm_of_h: float
    raw_lower: float
    diagnostics: list = field(default_factory=list)
    exhausted: bool = False

    @property
    def gap(self) -> float:
        return self.exact - self.lower_bound

    def as_dict(self) -> dict:
        return {
            "space": self.space,
            "N": self.N,
            "n_zeros": len(self.zeros),
            "lower_bound": self.lower_bound,
            "exact": self.exact,
            "gap": self.gap,
            "norm_of_h": self.norm_of_h,
            "raw_lower": self.raw_lower,
            "exhausted": self.exhausted,
            "zeros": [[z.real, z.imag] for z in self.zeros],
            "diagnostics": [{"defect": d, "abs_g": m} for d, m in self.diagnostics],
        }


def _thin_h(g: Func, N: int, cfg: ThinConfig, search: SearchConfig | None):
    if N < 1:
        raise InvalidParameterError("N must be >= 1")
    exact, theta = boundary_sup(g, search)
    zs = greedy_thin_subsequence(candidate_path(theta, cfg), cfg.target_defect, N)
    B = BlaschkeProduct(zs)
    hp = PrimitivePair(0j, B.derivative())
    pts = zs.as_array()
    diag = list(zip(((1.0 - np.abs(pts) ** 2) * np.abs(B.deriv(pts))).tolist(),
                    np.abs(g(pts)).tolist()))
    return exact, zs, hp, diag


def extremal_bloch(g: Func, N: int, cfg: ThinConfig | None = None,
                   search: SearchConfig | None = None) -> ExtremalRecord:
    """h = B - B(0) over a thin subsequence; lower bound ||S_g h||_B / ||h||_B."""
    cfg = cfg or ThinConfig()
    exact, zs, hp, diag = _thin_h(g, N, cfg, search)
    norm_h = bloch_norm(hp, search, seeds=zs).value
    raw = bloch_norm(apply_Sg(g, hp), search, seeds=zs).value
    return ExtremalRecord("bloch", N, zs, raw / norm_h, exact, norm_h, raw, diag, len(zs) < N)


def bmoa_extremal_rule() -> QuadratureRule:
    """Ring-graded log rule; the zeros of h run to within 2^-20 of the circle."""
    return log_disc_rule(64, 256, grading=32.0)


def extremal_bmoa(g: Func, N: int, cfg: ThinConfig | None = None, rule: QuadratureRule | None = None,
                  search: SearchConfig | None = None) -> ExtremalRecord:
    """Same h; lower bound max_n (1-|z_n|^2)|h'(z_n)||g(z_n)| / ||h||_BMOA."""
    cfg = cfg or ThinConfig()
    exact, zs, hp, diag = _thin_h(g, N, cfg, search)
    raw = max(sg_lower_bound_bmoa(g, hp, z) for z in zs)
    norm_h = bmoa_norm(hp, rule=rule or bmoa_extremal_rule(), search=search, seeds=zs).value
    return ExtremalRecord("bmoa", N, zs, raw / norm_h, exact, norm_h, raw, diag, len(zs) < N)


@dataclass(frozen=True)
class WitnessVerdict:
    accepted: bool
    reasons: tuple[str, ...]
    sup_g: float
    bloch_norm: float
    tail: tuple[tuple[complex, float, float], ...]


def extremal_witness_check(g: Func, fp: PrimitivePair | Func, zs: ZeroSequence | Sequence,
                           tol: float, search: SearchConfig | None = None) -> WitnessVerdict:
    """Finite-N proxy for the extremality criterion on the Bloch space.

    Along the tail of ``zs`` (its last quarter, at least one point) we need
    |z_n| -> 1, |g(z_n)| -> sup|g| and (1 - |z_n|^2)|f'(z_n)| -> 1, each to
    within ``tol``; ``f`` must also have Bloch norm 1 within ``tol``.
    """
    fp = as_pair(fp)
    if not isinstance(zs, ZeroSequence):
        zs = ZeroSequence(zs)
    sup_g = opnorm_exact_Sg(g, search)
    nrm = bloch_norm(fp, search, seeds=zs).value
    pts = zs.as_array()
    k = max(1, math.ceil(len(pts) / 4))
    tail_pts = pts[-k:]
    gv = np.abs(g(tail_pts))
    dv = (1.0 - np.abs(tail_pts) ** 2) * np.abs(fp.deriv(tail_pts))
    reasons = []
    if abs(nrm - 1.0) > tol:
        reasons.append(f"Bloch norm {nrm:.6g} is not 1 within tol")
    if 1.0 - abs(tail_pts[-1]) > tol or np.any(np.diff(np.abs(pts)) < 0):
        reasons.append("sequence does not tend to the boundary")
    if np.any(sup_g - gv > tol):
        reasons.append("|g(z_n)| does not approach sup|g|")
    if np.any(np.abs(1.0 - dv) > tol):
        reasons.append("(1-|z_n|^2)|f'(z_n)| does not approach 1")
    tail = tuple((complex(z), float(a), float(b)) for z, a, b in zip(tail_pts, dv, gv))
    return WitnessVerdict(not reasons, tuple(reasons), sup_g, nrm, tail)


@dataclass
class TgReport:
    exact: float
    affine: bool
    rows: list
    min_deficiency: float
    witness_deficiency: float | None
    kernel_rows: list

    def as_dict(self) -> dict:
        return {"exact": self.exact, "affine": self.affine, "min_deficiency": self.min_deficiency,
                "witness_deficiency": self.witness_deficiency, "rows": self.rows,
                "kernel_rows": self.kernel_rows}


def tg_attainment_experiment(g: Func, corpus: Sequence[Func], rule: QuadratureRule | None = None,
                             a_values: Sequence[complex] = (0.0, 0.5, 0.9),
                             search: SearchConfig | None = None) -> TgReport:
    """Deficiencies sup|g'|^2 - ||T_g f||_D^2 over unit-Bergman f.

    Corpus members are rescaled to unit Bergman norm.  For affine g the
    constant f = 1 is exhibited as an attaining witness.  ``kernel_rows``
    hold (a, |g'(a)|, ||T_g F_a||_D) for the unit Bergman kernels F_a.
    """
    rule = rule or disc_rule()
    exact = opnorm_exact_Tg(g, search)
    e2 = exact * exact
    rows = []
    for i, f in enumerate(corpus):
        nb = bergman_norm(f, rule).value
        v = dirichlet_norm(apply_Tg(g, f), rule).value / nb
        rows.append({"index": i, "norm_Tg_f": v, "deficiency": e2 - v * v})
    affine = is_affine(g)
    witness = None
    if affine:
        v = dirichlet_norm(apply_Tg(g, Constant(1.0 + 0j)), rule).value
        witness = e2 - v * v
    kernel_rows = []
    for a in a_values:
        a = complex(a)
        v = dirichlet_norm(apply_Tg(g, bergman_kernel_unit(a)), rule).value
        kernel_rows.append({"a": [a.real, a.imag], "bound": abs(g.deriv(a)), "value": v})
    mins = [r["deficiency"] for r in rows]
    if witness is not None:
        mins.append(witness)
    return TgReport(exact, affine, rows, min(mins) if mins else float("nan"), witness, kernel_rows)
