"""Seeded random polynomial corpora.

The generator is numpy's PCG64 seeded with a 64-bit integer.  A polynomial
is drawn as: degree d uniform in [min_degree, max_degree], then d + 1
coefficients whose real and imaginary parts are each uniform on [-1, 1),
real parts for the whole vector first, then imaginary parts.
"""

from __future__ import annotations

import math

import numpy as np

from .functions import Polynomial

GENERATOR = "numpy.random.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_polynomial(rng: np.random.Generator, max_degree: int = 10, min_degree: int = 1) -> Polynomial:
    d = int(rng.integers(min_degree, max_degree + 1))
    re = rng.uniform(-1.0, 1.0, d + 1)
    im = rng.uniform(-1.0, 1.0, d + 1)
    return Polynomial(re + 1j * im)


def random_polynomials(seed: int, size: int, max_degree: int = 10, min_degree: int = 1) -> list[Polynomial]:
    rng = make_rng(seed)
    return [random_polynomial(rng, max_degree, min_degree) for _ in range(size)]


# closed-form norms from the Taylor coefficients

def dirichlet_norm_poly(p: Polynomial) -> float:
    return math.sqrt(abs(p.coeffs[0]) ** 2 + sum(k * abs(c) ** 2 for k, c in enumerate(p.coeffs)))


def bergman_norm_poly(p: Polynomial) -> float:
    return math.sqrt(sum(abs(c) ** 2 / (k + 1) for k, c in enumerate(p.coeffs)))


def h2_norm_poly(p: Polynomial) -> float:
    return math.sqrt(sum(abs(c) ** 2 for c in p.coeffs))


def scaled(p: Polynomial, norm: float) -> Polynomial:
    return Polynomial([c / norm for c in p.coeffs])


def random_points(rng: np.random.Generator, size: int, rmax: float) -> np.ndarray:
    """Area-uniform points in the disc of radius ``rmax``."""
    r = rmax * np.sqrt(rng.uniform(0.0, 1.0, size))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size))
