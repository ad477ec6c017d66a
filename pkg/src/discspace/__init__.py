"""Numerical laboratory for integral operators on analytic function spaces of the unit disc."""

from .errors import (
    DegenerateSequenceError,
    DiscSpaceError,
    InvalidParameterError,
    NumericFailureError,
    SpecParseError,
)
from .geometry import (
    ZeroSequence,
    disc_point,
    greedy_thin_subsequence,
    mobius_deriv,
    mobius_eval,
    pseudo_hyperbolic,
    thinness_defects,
)
from .functions import (
    Func,
    PrimitivePair,
    bergman_kernel_unit,
    blaschke_from_zeros,
    build_function,
    test_bloch_family,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateSequenceError",
    "DiscSpaceError",
    "Func",
    "InvalidParameterError",
    "NumericFailureError",
    "PrimitivePair",
    "SpecParseError",
    "ZeroSequence",
    "bergman_kernel_unit",
    "blaschke_from_zeros",
    "build_function",
    "disc_point",
    "greedy_thin_subsequence",
    "mobius_deriv",
    "mobius_eval",
    "pseudo_hyperbolic",
    "test_bloch_family",
    "thinness_defects",
]
