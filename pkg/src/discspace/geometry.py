"""Disc automorphisms, the pseudo-hyperbolic metric and thinness of zero sets.

Points of the disc are plain Python/numpy complex numbers; :func:`disc_point`
is the validating constructor used wherever a parameter must be interior.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DegenerateSequenceError, InvalidParameterError

# Boundary evaluation of sigma_a tolerates this much rounding past |z| = 1.
BOUNDARY_SLACK = 1e-12


def _as_complex(z) -> complex:
    if isinstance(z, (list, tuple)) and len(z) == 2:
        return complex(float(z[0]), float(z[1]))
    return complex(z)


def disc_point(z, margin: float = 0.0) -> complex:
    """Return ``z`` as a complex number, rejecting ``|z| >= 1 - margin``.

    Accepts complex, real, or a ``[re, im]`` pair.
    """
    w = _as_complex(z)
    if not np.isfinite(w.real) or not np.isfinite(w.imag):
        raise InvalidParameterError(f"non-finite disc point {w!r}")
    if abs(w) >= 1.0 - margin:
        raise InvalidParameterError(f"point {w!r} is not inside the disc |z| < {1.0 - margin}")
    return w


@dataclass(frozen=True)
class ZeroSequence:
    """Finite ordered list of distinct interior points."""

    points: tuple[complex, ...]

    def __init__(self, points: Iterable):
        pts = tuple(disc_point(p) for p in points)
        if len(set(pts)) != len(pts):
            raise DegenerateSequenceError("zero sequence contains duplicate points")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.points)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return ZeroSequence(self.points[i])
        return self.points[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=complex)


def _check_param(a) -> complex:
    a = _as_complex(a)
    if not abs(a) < 1.0:
        raise InvalidParameterError(f"Mobius parameter {a!r} must satisfy |a| < 1")
    return a


def mobius_eval(a, z):
    """sigma_a(z) = (a - z) / (1 - conj(a) z); vectorised over ``z``."""
    a = _check_param(a)
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) > 1.0 + BOUNDARY_SLACK):
        raise InvalidParameterError("mobius_eval needs |z| <= 1")
    out = (a - zz) / (1.0 - np.conj(a) * zz)
    return complex(out) if out.ndim == 0 else out


def mobius_deriv(a, z):
    """sigma_a'(z) = (|a|^2 - 1) / (1 - conj(a) z)^2."""
    a = _check_param(a)
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) > 1.0 + BOUNDARY_SLACK):
        raise InvalidParameterError("mobius_deriv needs |z| <= 1")
    out = (abs(a) ** 2 - 1.0) / (1.0 - np.conj(a) * zz) ** 2
    return complex(out) if out.ndim == 0 else out


def pseudo_hyperbolic(u, v):
    """rho(u, v) = |u - v| / |1 - conj(u) v|, in [0, 1) for interior points.

    Broadcasts over array arguments; validation is left to the callers that
    build points through :func:`disc_point` or :class:`ZeroSequence`.
    """
    uu = np.asarray(u, dtype=complex)
    vv = np.asarray(v, dtype=complex)
    out = np.abs(uu - vv) / np.abs(1.0 - np.conj(uu) * vv)
    return float(out) if out.ndim == 0 else out


def _rho_matrix(pts: np.ndarray) -> np.ndarray:
    rho = pseudo_hyperbolic(pts[:, None], pts[None, :])
    np.fill_diagonal(rho, 1.0)
    return rho


def thinness_defects(zs: ZeroSequence | Sequence) -> list[float]:
    """delta_k = prod_{j != k} rho(z_j, z_k) for every point of the sequence."""
    if not isinstance(zs, ZeroSequence):
        zs = ZeroSequence(zs)
    if len(zs) == 0:
        return []
    rho = _rho_matrix(zs.as_array())
    return [float(d) for d in np.prod(rho, axis=0)]


def greedy_thin_subsequence(candidates: ZeroSequence | Sequence, target_defect: float,
                            max_len: int) -> ZeroSequence:
    """Scan ``candidates`` in order and keep those that preserve min defect >= target.

    A candidate is accepted only if, after appending it, every defect of the
    selection (its own included) is at least ``target_defect``.  Scanning
    stops once ``max_len`` points are selected or candidates run out.
    """
    if not isinstance(candidates, ZeroSequence):
        candidates = ZeroSequence(candidates)
    if len(candidates) == 0:
        raise DegenerateSequenceError("no candidates to extract from")
    if not 0.0 < target_defect < 1.0:
        raise InvalidParameterError("target_defect must lie in (0, 1)")
    if max_len < 1:
        raise InvalidParameterError("max_len must be >= 1")
    radii = np.abs(candidates.as_array())
    if np.any(np.diff(radii) < 0):
        raise InvalidParameterError("candidate radii must be non-decreasing")

    chosen: list[complex] = []
    defects = np.empty(0)
    for c in candidates:
        if len(chosen) >= max_len:
            break
        rho = pseudo_hyperbolic(np.array(chosen, dtype=complex), c) if chosen else np.empty(0)
        new_defects = defects * rho
        own = float(np.prod(rho))
        if own >= target_defect and (new_defects.size == 0 or new_defects.min() >= target_defect):
            chosen.append(c)
            defects = np.append(new_defects, own)
    return ZeroSequence(chosen)
