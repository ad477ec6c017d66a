"""Polar quadrature on the unit disc and on circles.

All rules are normalised probability rules: plain-area rules integrate
against dA = dx dy / pi, log-weighted rules against 2 log(1/|z|) dA, circle
rules take the mean over the circle.  Each has total weight 1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import roots_laguerre

from .errors import InvalidParameterError, NumericFailureError

PLAIN = "plain-area"
LOG = "log-weighted"
CIRCLE = "circle"

DEFAULT_N_R = 96
DEFAULT_N_T = 256

# The log-weighted radial integral is split here: Gauss-Laguerre after
# r = R0 * exp(-t/2) on [0, R0] (absorbs the log singularity), Gauss-Legendre on [R0, 1].
_LOG_SPLIT = 0.5


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    radius: float | None = None

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return self.nodes.size


def default_sizes() -> tuple[int, int]:
    """(n_r, n_t), overridable through DISCSPACE_NR / DISCSPACE_NT."""
    return (int(os.environ.get("DISCSPACE_NR", DEFAULT_N_R)),
            int(os.environ.get("DISCSPACE_NT", DEFAULT_N_T)))


def _check_sizes(n_r: int, n_t: int) -> None:
    if n_r < 2 or n_t < 4:
        raise InvalidParameterError(f"degenerate rule size n_r={n_r}, n_t={n_t} (need n_r >= 2, n_t >= 4)")


def _rings(radii, rweights, n_t, kind, grading=0.0, max_angles=16384) -> QuadratureRule:
    """Trapezoid rings at the given radii.

    With ``grading > 0`` a ring at radius r gets the next power of two above
    grading / (1 - r) angles (at least n_t, at most max_angles), so peaks
    from poles just outside the circle stay resolved near |z| = 1.
    """
    if grading <= 0:
        theta = 2.0 * np.pi * np.arange(n_t) / n_t
        nodes = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
        weights = (rweights[:, None] * np.full(n_t, 1.0 / n_t)[None, :]).ravel()
        return QuadratureRule(nodes, weights, kind)
    nodes, weights = [], []
    for r, w in zip(radii, rweights):
        m = int(min(max_angles, max(n_t, 2.0 ** np.ceil(np.log2(grading / (1.0 - r))))))
        theta = 2.0 * np.pi * np.arange(m) / m
        nodes.append(r * np.exp(1j * theta))
        weights.append(np.full(m, w / m))
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights), kind)


def _gauss_legendre(n: int, lo: float, hi: float):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def disc_rule(n_r: int | None = None, n_t: int | None = None, grading: float = 0.0,
              max_angles: int = 16384) -> QuadratureRule:
    """Gauss-Legendre in r (weight 2r dr) times the trapezoid rule in angle."""
    dn_r, dn_t = default_sizes()
    n_r, n_t = n_r or dn_r, n_t or dn_t
    _check_sizes(n_r, n_t)
    r, w = _gauss_legendre(n_r, 0.0, 1.0)
    return _rings(r, 2.0 * r * w, n_t, PLAIN, grading, max_angles)


def log_disc_rule(n_r: int | None = None, n_t: int | None = None, grading: float = 0.0,
                  max_angles: int = 16384) -> QuadratureRule:
    """Rule for the weight 2 log(1/|z|) dA, i.e. 4 r log(1/r) dr in radius.

    On [0, R0] the substitution r = R0 exp(-t/2) turns the radial measure into
    R0^2 (2 log(1/R0) + t) e^{-t} dt, handled by Gauss-Laguerre; [R0, 1] is
    smooth and uses Gauss-Legendre.  The inner part gets n_r // 2 nodes.
    """
    dn_r, dn_t = default_sizes()
    n_r, n_t = n_r or dn_r, n_t or dn_t
    _check_sizes(n_r, n_t)
    r0 = _LOG_SPLIT
    big_l = np.log(1.0 / r0)
    t, wt = roots_laguerre(max(n_r // 2, 2))
    r_in = r0 * np.exp(-0.5 * t)
    w_in = r0 ** 2 * (2.0 * big_l + t) * wt
    r_out, w = _gauss_legendre(n_r, r0, 1.0)
    w_out = 4.0 * r_out * np.log(1.0 / r_out) * w
    return _rings(np.concatenate([r_in, r_out]), np.concatenate([w_in, w_out]), n_t, LOG,
                  grading, max_angles)


def circle_rule(r: float, n: int) -> QuadratureRule:
    if not 0.0 < r < 1.0:
        raise InvalidParameterError(f"circle radius must lie in (0, 1), got {r}")
    if n < 8:
        raise InvalidParameterError("circle rule needs n >= 8")
    theta = 2.0 * np.pi * np.arange(n) / n
    return QuadratureRule(r * np.exp(1j * theta), np.full(n, 1.0 / n), CIRCLE, radius=r)


def integrate(rule: QuadratureRule, integrand: Callable[[np.ndarray], np.ndarray]):
    """sum_i w_i * integrand(z_i), with a pairwise (deterministic) reduction.

    Raises :class:`NumericFailureError` naming the first node where the
    integrand is NaN or infinite.
    """
    vals = np.asarray(integrand(rule.nodes))
    if vals.shape != rule.nodes.shape:
        vals = np.broadcast_to(vals, rule.nodes.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NumericFailureError(f"integrand is {vals[i]} at node {rule.nodes[i]!r} (index {i})")
    total = np.sum(rule.weights * vals)
    return complex(total) if np.iscomplexobj(vals) else float(total)


def circle_mean(f, r: float, n: int = 256) -> float:
    """Trapezoid mean of |f|^2 over the circle |z| = r."""
    rule = circle_rule(r, n)
    return integrate(rule, lambda z: np.abs(f(z)) ** 2)
