"""Exact rings, exact determinants and arbitrary-precision special functions."""

from .exact import (
    ExactRational,
    GaussianRational,
    I,
    Polynomial,
    RationalFunction,
    as_fraction,
    double_factorial,
    falling,
    rising,
    vandermonde,
)
from .linalg import StructuralError, cofactor_det, exact_det
from .special import (
    DEFAULT_DIGITS,
    GUARD_DIGITS,
    Bounded,
    DomainError,
    PrecisionError,
    airy_constants,
    barnes_g,
    barnes_g_bounded,
    dirac_det,
    dirac_det_product,
    euler_gamma,
    gamma_fn,
    harmonic_fredholm,
    harmonic_fredholm_product,
    laplacian_det,
    to_mp,
)

__all__ = [
    "Bounded",
    "DEFAULT_DIGITS",
    "DomainError",
    "ExactRational",
    "GUARD_DIGITS",
    "GaussianRational",
    "I",
    "Polynomial",
    "PrecisionError",
    "RationalFunction",
    "StructuralError",
    "airy_constants",
    "as_fraction",
    "barnes_g",
    "barnes_g_bounded",
    "cofactor_det",
    "dirac_det",
    "dirac_det_product",
    "double_factorial",
    "euler_gamma",
    "exact_det",
    "falling",
    "gamma_fn",
    "harmonic_fredholm",
    "harmonic_fredholm_product",
    "laplacian_det",
    "rising",
    "to_mp",
    "vandermonde",
]
