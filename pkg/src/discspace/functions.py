"""Analytic functions on the disc as immutable expression trees.

Every node evaluates a *jet* ``[f, f', ..., f^(k)]`` at an array of points, so
derivatives are exact (no finite differences) and products follow Leibniz'
rule.  Finite Blaschke products accumulate their jet factor by factor, which
is O(N) per point and has no 0/0 at the zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Any

import numpy as np

from .errors import InvalidParameterError, SpecParseError
from .geometry import ZeroSequence, disc_point


def _leibniz(f: list, g: list) -> list:
    order = len(f) - 1
    return [sum(comb(k, j) * f[j] * g[k - j] for j in range(k + 1)) for k in range(order + 1)]


def _zeros_like(z: np.ndarray, order: int) -> list:
    return [np.zeros_like(z) for _ in range(order + 1)]


class Func:
    """Base class of expression-tree nodes."""

    def jet(self, z: np.ndarray, order: int) -> list:
        raise NotImplementedError

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        out = self.jet(zz, 0)[0]
        return complex(out) if zz.ndim == 0 else out

    def deriv(self, z):
        zz = np.asarray(z, dtype=complex)
        out = self.jet(zz, 1)[1]
        return complex(out) if zz.ndim == 0 else out

    def derivative(self) -> Func:
        return Derivative(self)

    def to_doc(self) -> Any:
        raise NotImplementedError

    def walk(self):
        """Yield this node and all descendants."""
        yield self

    def __add__(self, other):
        if isinstance(other, Func):
            return Sum(self, other)
        return Shift(self, complex(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Func):
            return Sum(self, Scale(-1.0, other))
        return Shift(self, -complex(other))

    def __mul__(self, other):
        if isinstance(other, Func):
            return Product(self, other)
        return Scale(complex(other), self)

    __rmul__ = __mul__

    def __neg__(self):
        return Scale(-1.0, self)


def _c(x: complex) -> list[float]:
    x = complex(x)
    return [x.real, x.imag]


@dataclass(frozen=True)
class Constant(Func):
    c: complex

    def jet(self, z, order):
        out = _zeros_like(z, order)
        out[0] = np.full_like(z, self.c)
        return out

    def derivative(self):
        return Constant(0j)

    def to_doc(self):
        return {"const": _c(self.c)}


@dataclass(frozen=True)
class Identity(Func):
    def jet(self, z, order):
        out = _zeros_like(z, order)
        out[0] = z.copy()
        if order >= 1:
            out[1] = np.ones_like(z)
        return out

    def derivative(self):
        return Constant(1.0 + 0j)

    def to_doc(self):
        return "identity"


@dataclass(frozen=True)
class Polynomial(Func):
    """Ascending coefficients ``a_0 + a_1 z + ...``."""

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs):
        cs = tuple(complex(c) for c in coeffs) or (0j,)
        object.__setattr__(self, "coeffs", cs)

    def jet(self, z, order):
        c = np.array(self.coeffs, dtype=complex)
        out = []
        for _ in range(order + 1):
            out.append(np.polynomial.polynomial.polyval(z, c) if c.size else np.zeros_like(z))
            c = np.polynomial.polynomial.polyder(c) if c.size > 1 else np.zeros(1, dtype=complex)
        return out

    def derivative(self):
        cs = self.coeffs
        return Polynomial([k * cs[k] for k in range(1, len(cs))] or [0j])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_doc(self):
        return {"poly": [_c(c) for c in self.coeffs]}


def _mobius_jet(a: complex, z, order):
    ac = np.conj(a)
    den = 1.0 - ac * z
    out = [(a - z) / den]
    for k in range(1, order + 1):
        out.append((abs(a) ** 2 - 1.0) * factorial(k) * ac ** (k - 1) / den ** (k + 1))
    return out


@dataclass(frozen=True)
class Mobius(Func):
    """The involutive automorphism sigma_a(z) = (a - z)/(1 - conj(a) z)."""

    a: complex

    def __init__(self, a):
        object.__setattr__(self, "a", disc_point(a))

    def jet(self, z, order):
        return _mobius_jet(self.a, z, order)

    def to_doc(self):
        return {"mobius": _c(self.a)}


@dataclass(frozen=True)
class BlaschkeProduct(Func):
    """prod_n (|z_n|/z_n) sigma_{z_n}(z), with the factor ``z`` for a zero at 0."""

    zeros: ZeroSequence

    def __init__(self, zeros):
        if not isinstance(zeros, ZeroSequence):
            zeros = ZeroSequence(zeros)
        object.__setattr__(self, "zeros", zeros)

    def jet(self, z, order):
        acc = _zeros_like(z, order)
        acc[0] = np.ones_like(z)
        for zn in self.zeros:
            if zn == 0:
                fac = _zeros_like(z, order)
                fac[0] = z.copy()
                if order >= 1:
                    fac[1] = np.ones_like(z)
            else:
                unit = abs(zn) / zn
                fac = [unit * t for t in _mobius_jet(zn, z, order)]
            acc = _leibniz(acc, fac)
        return acc

    def to_doc(self):
        return {"blaschke": [_c(p) for p in self.zeros]}


@dataclass(frozen=True)
class Sum(Func):
    f: Func
    g: Func

    def jet(self, z, order):
        return [p + q for p, q in zip(self.f.jet(z, order), self.g.jet(z, order))]

    def walk(self):
        yield self
        yield from self.f.walk()
        yield from self.g.walk()

    def to_doc(self):
        terms = []
        for side in (self.f, self.g):
            doc = side.to_doc()
            terms.extend(doc["sum"] if isinstance(side, Sum) else [doc])
        return {"sum": terms}


@dataclass(frozen=True)
class Product(Func):
    f: Func
    g: Func

    def jet(self, z, order):
        return _leibniz(self.f.jet(z, order), self.g.jet(z, order))

    def walk(self):
        yield self
        yield from self.f.walk()
        yield from self.g.walk()

    def to_doc(self):
        terms = []
        for side in (self.f, self.g):
            doc = side.to_doc()
            terms.extend(doc["product"] if isinstance(side, Product) else [doc])
        return {"product": terms}


@dataclass(frozen=True)
class Scale(Func):
    c: complex
    f: Func

    def __init__(self, c, f):
        object.__setattr__(self, "c", complex(c))
        object.__setattr__(self, "f", f)

    def jet(self, z, order):
        return [self.c * t for t in self.f.jet(z, order)]

    def walk(self):
        yield self
        yield from self.f.walk()

    def to_doc(self):
        return {"scale": {"c": _c(self.c), "f": self.f.to_doc()}}


@dataclass(frozen=True)
class Shift(Func):
    """f + c."""

    f: Func
    c: complex

    def __init__(self, f, c):
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "c", complex(c))

    def jet(self, z, order):
        out = self.f.jet(z, order)
        out[0] = out[0] + self.c
        return out

    def derivative(self):
        return self.f.derivative()

    def walk(self):
        yield self
        yield from self.f.walk()

    def to_doc(self):
        return {"shift": {"f": self.f.to_doc(), "c": _c(self.c)}}


@dataclass(frozen=True)
class Derivative(Func):
    f: Func

    def jet(self, z, order):
        return self.f.jet(z, order + 1)[1:]

    def walk(self):
        yield self
        yield from self.f.walk()

    def to_doc(self):
        return {"deriv": self.f.to_doc()}


@dataclass(frozen=True)
class PrimitivePair:
    """The analytic F with F(0) = ``value_at_zero`` and F' = ``derivative``."""

    value_at_zero: complex
    derivative: Func

    @classmethod
    def from_func(cls, f: Func) -> PrimitivePair:
        return cls(complex(f(0j)), f.derivative())

    def deriv(self, z):
        return self.derivative(z)


def as_pair(f: Func | PrimitivePair) -> PrimitivePair:
    return f if isinstance(f, PrimitivePair) else PrimitivePair.from_func(f)


# --- named families -------------------------------------------------------

def blaschke_from_zeros(zs) -> BlaschkeProduct:
    return BlaschkeProduct(zs)


def test_bloch_family(a) -> Func:
    """f_a = sigma_a - a: vanishes at 0 and has unit Bloch, Dirichlet and BMOA norm."""
    a = disc_point(a)
    return Shift(Mobius(a), -a)


# not a pytest test despite the name
test_bloch_family.__test__ = False


def bergman_kernel_unit(a) -> Func:
    """F_a(z) = (1 - |a|^2)/(1 - conj(a) z)^2 = -sigma_a'(z)."""
    a = disc_point(a)
    return Scale(-1.0, Derivative(Mobius(a)))


# --- document parsing -----------------------------------------------------

def parse_complex(x, path: str) -> complex:
    if isinstance(x, bool):
        raise SpecParseError(path, "expected a number or [re, im]")
    if isinstance(x, (int, float)):
        return complex(float(x), 0.0)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in x):
        return complex(float(x[0]), float(x[1]))
    raise SpecParseError(path, f"expected a number or [re, im], got {x!r}")


def _parse_list(x, path: str) -> list:
    if not isinstance(x, list) or not x:
        raise SpecParseError(path, "expected a non-empty list")
    return x


def _parse_disc(x, path: str) -> complex:
    a = parse_complex(x, path)
    if abs(a) >= 1.0:
        raise InvalidParameterError(f"{path}: parameter {a!r} is not inside the unit disc")
    return a


def _parse_pair_obj(x, path: str, keys: tuple[str, str]) -> dict:
    if not isinstance(x, dict) or set(x) != set(keys):
        raise SpecParseError(path, f"expected an object with keys {sorted(keys)}")
    return x


def _fold(parts: list[Func], node) -> Func:
    out = parts[0]
    for p in parts[1:]:
        out = node(out, p)
    return out


def build_function(doc: Any, path: str = "$") -> Func:
    """Build a :class:`Func` from a JSON-shaped function-description document.

    Recognised nodes: ``"identity"``, ``{"const": c}``, ``{"poly": [...]}``,
    ``{"mobius": a}``, ``{"blaschke": [...]}``, ``{"sum": [...]}``,
    ``{"product": [...]}``, ``{"scale": {"c", "f"}}``, ``{"shift": {"f", "c"}}``,
    ``{"deriv": f}``, plus the named families ``{"bloch_test": a}`` (sigma_a - a)
    and ``{"bergman_kernel": a}``.  Complex values are numbers or ``[re, im]``.
    """
    if doc == "identity":
        return Identity()
    if not isinstance(doc, dict) or len(doc) != 1:
        raise SpecParseError(path, "a node must be \"identity\" or an object with exactly one key")
    (key, val), = doc.items()
    sub = f"{path}.{key}"
    if key == "identity":
        return Identity()
    if key == "const":
        return Constant(parse_complex(val, sub))
    if key == "poly":
        return Polynomial([parse_complex(c, f"{sub}[{i}]") for i, c in enumerate(_parse_list(val, sub))])
    if key == "mobius":
        return Mobius(_parse_disc(val, sub))
    if key == "blaschke":
        pts = [_parse_disc(p, f"{sub}[{i}]") for i, p in enumerate(_parse_list(val, sub))]
        return BlaschkeProduct(pts)
    if key in ("sum", "product"):
        parts = [build_function(d, f"{sub}[{i}]") for i, d in enumerate(_parse_list(val, sub))]
        return _fold(parts, Sum if key == "sum" else Product)
    if key == "scale":
        obj = _parse_pair_obj(val, sub, ("c", "f"))
        return Scale(parse_complex(obj["c"], f"{sub}.c"), build_function(obj["f"], f"{sub}.f"))
    if key == "shift":
        obj = _parse_pair_obj(val, sub, ("f", "c"))
        return Shift(build_function(obj["f"], f"{sub}.f"), parse_complex(obj["c"], f"{sub}.c"))
    if key == "deriv":
        return Derivative(build_function(val, sub))
    if key == "bloch_test":
        return test_bloch_family(_parse_disc(val, sub))
    if key == "bergman_kernel":
        return bergman_kernel_unit(_parse_disc(val, sub))
    raise SpecParseError(path, f"unknown node type {key!r}")


def max_zero_modulus(f: Func) -> float:
    """Largest modulus among Mobius/Blaschke parameters in the tree (0 if none)."""
    radii = [0.0]
    for node in f.walk():
        if isinstance(node, Mobius):
            radii.append(abs(node.a))
        elif isinstance(node, BlaschkeProduct):
            radii.extend(abs(p) for p in node.zeros)
    return max(radii)
