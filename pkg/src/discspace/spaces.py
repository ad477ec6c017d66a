"""Norms on the Bloch, Dirichlet, Bergman, Hardy (H^2) and BMOA spaces.

Apart from the Bergman norm, every norm here is a functional of the pair
(F(0), F'), so inputs are :class:`PrimitivePair` objects (plain ``Func``
arguments are converted).  The H^2 norm is computed through the
Littlewood-Paley form, and BMOA slices are integrated after substituting
z = sigma_a(w) so the log singularity always sits at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameterError
from .functions import Constant, Func, Polynomial, PrimitivePair, as_pair
from .quadrature import LOG, PLAIN, QuadratureRule, integrate, log_disc_rule, disc_rule
from .search import SearchConfig, circle_sup, disc_sup, golden_max

CLOSED_FORM = "closed-form"
QUADRATURE = "quadrature"
GRID_SEARCH = "grid-search"


@dataclass(frozen=True)
class NormReport:
    value: float
    seminorm: float
    method: str
    witness: complex | None = None
    est_error: float = 0.0
    grid_value: float | None = None
    at_truncation: bool = False
    cross_check: float | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "value": self.value,
            "seminorm": self.seminorm,
            "method": self.method,
            "est_error": self.est_error,
        }
        if self.witness is not None:
            out["witness"] = [self.witness.real, self.witness.imag]
        if self.grid_value is not None:
            out["grid_value"] = self.grid_value
        if self.method == GRID_SEARCH:
            out["at_truncation"] = self.at_truncation
        if self.cross_check is not None:
            out["cross_check"] = self.cross_check
        return out


def _require(rule: QuadratureRule, kind: str) -> None:
    if rule.kind != kind:
        raise InvalidParameterError(f"expected a {kind} rule, got {rule.kind}")


def bloch_norm(fp: PrimitivePair | Func, search: SearchConfig | None = None,
               seeds: Iterable[complex] = ()) -> NormReport:
    """|F(0)| + sup (1 - |z|^2)|F'(z)|, by grid search plus golden-section polish.

    ``seeds`` are extra starting points for the polish (e.g. zeros of a
    Blaschke factor close to the circle, which no fixed grid resolves).
    """
    fp = as_pair(fp)
    cfg = search or SearchConfig()
    dv = fp.derivative

    def weighted(z):
        return (1.0 - np.abs(z) ** 2) * np.abs(dv(z))

    res = disc_sup(weighted, cfg, seeds)
    f0 = abs(fp.value_at_zero)
    return NormReport(f0 + res.value, res.value, GRID_SEARCH, witness=res.witness,
                      est_error=res.est_error, grid_value=f0 + res.grid_value)


def little_bloch_profile(fp: PrimitivePair | Func, radii: Sequence[float], n_t: int = 512,
                         tol: float = 1e-9) -> list[float]:
    """m(r) = max_{|z|=r} (1 - r^2)|F'(z)| for each radius."""
    fp = as_pair(fp)
    radii = [float(r) for r in radii]
    if any(not 0.0 < r < 1.0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise InvalidParameterError("radii must be increasing inside (0, 1)")
    dv = fp.derivative
    out = []
    for r in radii:
        m, _ = circle_sup(lambda z: np.abs(dv(z)), r, n_t, tol)
        out.append((1.0 - r * r) * m)
    return out


def dirichlet_norm(fp: PrimitivePair | Func, rule: QuadratureRule | None = None) -> NormReport:
    """(|F(0)|^2 + int |F'|^2 dA)^(1/2)."""
    fp = as_pair(fp)
    rule = rule or disc_rule()
    _require(rule, PLAIN)
    dv = fp.derivative
    semi2 = integrate(rule, lambda z: np.abs(dv(z)) ** 2)
    semi = math.sqrt(max(semi2, 0.0))
    return NormReport(math.sqrt(abs(fp.value_at_zero) ** 2 + semi2), semi, QUADRATURE)


def bergman_norm(f: Func, rule: QuadratureRule | None = None) -> NormReport:
    rule = rule or disc_rule()
    _require(rule, PLAIN)
    v = math.sqrt(integrate(rule, lambda z: np.abs(f(z)) ** 2))
    return NormReport(v, v, QUADRATURE)


def _parseval(fp: PrimitivePair) -> float | None:
    d = fp.derivative
    if isinstance(d, Constant):
        d = Polynomial([d.c])
    if not isinstance(d, Polynomial):
        return None
    tail = sum(abs(c) ** 2 / (k + 1) ** 2 for k, c in enumerate(d.coeffs))
    return math.sqrt(abs(fp.value_at_zero) ** 2 + tail)


def h2_norm(fp: PrimitivePair | Func, rule: QuadratureRule | None = None) -> NormReport:
    """Littlewood-Paley H^2 norm; Parseval cross-check when F' is a polynomial."""
    fp = as_pair(fp)
    rule = rule or log_disc_rule()
    _require(rule, LOG)
    dv = fp.derivative
    semi2 = integrate(rule, lambda z: np.abs(dv(z)) ** 2)
    return NormReport(math.sqrt(abs(fp.value_at_zero) ** 2 + semi2), math.sqrt(max(semi2, 0.0)),
                      QUADRATURE, cross_check=_parseval(fp))


def bmoa_slice(fp: PrimitivePair, a: complex, rule: QuadratureRule) -> float:
    """||F o sigma_a - F(a)||_{H^2} via 2 int |F'(sigma_a w) sigma_a'(w)|^2 log(1/|w|) dA(w)."""
    a = complex(a)
    w = rule.nodes
    den = 1.0 - np.conj(a) * w
    s = (a - w) / den
    ds = (abs(a) ** 2 - 1.0) / den ** 2
    dv = fp.derivative
    v = integrate(rule, lambda _: np.abs(dv(s) * ds) ** 2)
    return math.sqrt(max(v, 0.0))


def default_a_grid(cfg: SearchConfig) -> list[complex]:
    radii = np.linspace(0.0, cfg.truncation, cfg.a_n_r)
    theta = 2.0 * np.pi * np.arange(cfg.a_n_t) / cfg.a_n_t
    pts = [0j]
    for r in radii[1:]:
        pts.extend(complex(r * np.exp(1j * t)) for t in theta)
    return pts


def bmoa_norm(fp: PrimitivePair | Func, a_grid: Sequence[complex] | None = None,
              rule: QuadratureRule | None = None, search: SearchConfig | None = None,
              seeds: Iterable[complex] = ()) -> NormReport:
    """|F(0)| + sup_a ||F o sigma_a - F(a)||_{H^2}, sup over |a| <= truncation.

    The a-grid (default: polar grid including a = 0) plus any ``seeds`` are
    scanned; the best point is then polished by golden section in |a| and
    arg a.  ``at_truncation`` flags a witness on the truncation circle.
    """
    fp = as_pair(fp)
    cfg = search or SearchConfig()
    rule = rule or log_disc_rule()
    _require(rule, LOG)
    trunc = cfg.truncation
    pts = list(a_grid) if a_grid is not None else default_a_grid(cfg)
    pts += [complex(s) for s in seeds if abs(s) <= trunc]
    if any(abs(complex(a)) >= 1.0 for a in pts):
        raise InvalidParameterError("BMOA a-grid must lie inside the disc")
    vals = [bmoa_slice(fp, a, rule) for a in pts]
    k = int(np.argmax(vals))
    best_a, best = complex(pts[k]), vals[k]
    grid_value = best

    hr = trunc / max(cfg.a_n_r - 1, 1)
    hth = 2.0 * np.pi / cfg.a_n_t
    r, th = abs(best_a), math.atan2(best_a.imag, best_a.real)
    gain = 0.0
    for _ in range(cfg.rounds):
        before = best
        lo, hi = max(0.0, r - hr), min(trunc, r + hr)
        r_new, v = golden_max(lambda s: bmoa_slice(fp, s * np.exp(1j * th), rule), lo, hi,
                              cfg.tol * (hi - lo))
        if v > best:
            r, best = r_new, v
        if r > 0.0:
            th_new, v = golden_max(lambda t: bmoa_slice(fp, r * np.exp(1j * t), rule),
                                   th - hth, th + hth, cfg.tol * 2 * hth)
            if v > best:
                th, best = th_new, v
        gain = best - before
        hr, hth = hr / 4, hth / 4
    if best > grid_value:
        best_a = complex(r * np.exp(1j * th))
    f0 = abs(fp.value_at_zero)
    return NormReport(f0 + best, best, GRID_SEARCH, witness=best_a, est_error=gain,
                      grid_value=f0 + grid_value, at_truncation=abs(best_a) >= trunc - 1e-9)
