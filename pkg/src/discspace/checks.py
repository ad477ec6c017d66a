"""Identity and inequality suites run by ``discspace check``."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .corpus import h2_norm_poly, make_rng, random_points, random_polynomials
from .functions import BlaschkeProduct, Polynomial
from .geometry import mobius_eval, thinness_defects
from .quadrature import circle_mean, disc_rule, integrate, log_disc_rule
from .spaces import h2_norm


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    worst_residual: float
    tolerance: float
    n_cases: int
    method: str

    def as_dict(self) -> dict:
        return asdict(self)


def littlewood_paley(seed: int = 0, n_random: int = 100) -> SuiteResult:
    """|F(0)|^2 + log-weighted int |F'|^2 against sum |a_k|^2."""
    rule = log_disc_rule()
    polys = [Polynomial([0] * k + [1]) for k in range(1, 9)]
    polys += random_polynomials(seed, n_random, max_degree=10, min_degree=0)
    worst = 0.0
    for p in polys:
        lp = h2_norm(p, rule).value ** 2
        worst = max(worst, abs(lp - h2_norm_poly(p) ** 2))
    return SuiteResult("littlewood_paley", worst <= 1e-6, worst, 1e-6, len(polys), "quadrature")


def random_zero_sets(seed: int, count: int, size: int, rmax: float = 0.95) -> list[np.ndarray]:
    rng = make_rng(seed)
    return [random_points(rng, size, rmax) for _ in range(count)]


def blaschke_identity(seed: int = 0, count: int = 50, size: int = 10) -> SuiteResult:
    """(1 - |z_n|^2)|B'(z_n)| against the product of pairwise rho values."""
    worst = 0.0
    for zs in random_zero_sets(seed, count, size):
        B = BlaschkeProduct(zs)
        lhs = (1.0 - np.abs(zs) ** 2) * np.abs(B.deriv(zs))
        worst = max(worst, float(np.max(np.abs(lhs - np.array(thinness_defects(zs))))))
    return SuiteResult("blaschke_identity", worst <= 1e-12, worst, 1e-12, count, "closed-form")


# a violation smaller than this is floating-point rounding, not a failure
ROUNDING = 1e-12

_RADII = (0.1, 0.3, 0.5, 0.7, 0.9, 0.99)


def mean_value(seed: int = 0, n: int = 500) -> SuiteResult:
    """|f(0)|^2 <= circle means and <= int |f|^2 dA; residual = worst violation."""
    rule = disc_rule()
    worst = 0.0
    for p in random_polynomials(seed, n, max_degree=10, min_degree=0):
        f0 = abs(p.coeffs[0]) ** 2
        vals = [circle_mean(p, r, 64) for r in _RADII]
        vals.append(integrate(rule, lambda z: np.abs(p(z)) ** 2))
        worst = max(worst, f0 - min(vals))
    worst = max(worst, 0.0)
    return SuiteResult("mean_value", worst <= ROUNDING, worst, ROUNDING, n, "quadrature")


def log_mean_value(seed: int = 0, n: int = 500) -> SuiteResult:
    """|f(0)|^2 <= 2 int |f|^2 log(1/|z|) dA."""
    rule = log_disc_rule()
    worst = 0.0
    for p in random_polynomials(seed, n, max_degree=10, min_degree=0):
        v = integrate(rule, lambda z: np.abs(p(z)) ** 2)
        worst = max(worst, abs(p.coeffs[0]) ** 2 - v)
    worst = max(worst, 0.0)
    return SuiteResult("log_mean_value", worst <= ROUNDING, worst, ROUNDING, n, "quadrature")


def schwarz_pick(seed: int = 0, count: int = 50, size: int = 10, samples: int = 400) -> SuiteResult:
    """|B| <= 1 and (1 - |z|^2)|B'(z)| <= 1 inside the disc."""
    rng = make_rng(seed + 1)
    worst = 0.0
    for zs in random_zero_sets(seed, count, size):
        B = BlaschkeProduct(zs)
        z = random_points(rng, samples, 0.999)
        worst = max(worst, float(np.max(np.abs(B(z)))) - 1.0,
                    float(np.max((1.0 - np.abs(z) ** 2) * np.abs(B.deriv(z)))) - 1.0)
    worst = max(worst, 0.0)
    return SuiteResult("schwarz_pick", worst <= 1e-12, worst, 1e-12, count, "closed-form")


def mobius_involution(seed: int = 0, n: int = 1000) -> SuiteResult:
    rng = make_rng(seed)
    a = random_points(rng, n, 0.95)
    z = random_points(rng, n, 0.95)
    worst = float(max(abs(mobius_eval(ai, mobius_eval(ai, zi)) - zi) for ai, zi in zip(a, z)))
    return SuiteResult("mobius_involution", worst <= 1e-12, worst, 1e-12, n, "closed-form")


SUITES = {
    "littlewood_paley": littlewood_paley,
    "blaschke_identity": blaschke_identity,
    "mean_value": mean_value,
    "log_mean_value": log_mean_value,
    "schwarz_pick": schwarz_pick,
    "mobius_involution": mobius_involution,
}


def run_all(seed: int = 0, names=None) -> list[SuiteResult]:
    return [SUITES[name](seed) for name in (names or SUITES)]
