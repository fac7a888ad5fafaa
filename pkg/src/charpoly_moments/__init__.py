"""Moments of characteristic polynomials of random matrices.

Sine, Bessel and Airy universality constants, exact finite-N Gaussian
moments, external-source moments, and a Monte Carlo oracle.
"""

from . import airy_edge, bulk_kernels, external_source, gue_finite, mc_oracle, numerics
from .airy_edge import AiryPolynomial, airy_hankel_det, airy_hankel_numeric, airy_moments, edge_gamma
from .bulk_kernels import (
    bessel_consistency,
    bessel_moment_closed,
    bessel_taylor_matrix,
    checkerboard_factorization,
    gamma_k,
    gamma_k_ensembles,
    sine_det_check,
    sine_taylor_matrix,
)
from .external_source import (
    QuarticMomentTable,
    SourceSpec,
    b_integral_moment,
    bulk_recovery_check,
    critical_quartic_hankel,
    saddle_density,
    source_moment,
    vandermonde_gaussian,
)
from .gue_finite import (
    MomentSpec,
    MonicHermite,
    bulk_asymptotic_ratio,
    center_moment_closed,
    charpoly_moment,
    deriv_moment_closed,
    deriv_moment_det,
    derivative_moment,
    edge_moment_scaling,
    hermite_edge_shape,
    hermite_monic,
)
from .mc_oracle import MCEstimate, SamplerConfig, estimate_moment, sample_matrix

__version__ = "0.1.0"

__all__ = [
    "airy_edge",
    "bulk_kernels",
    "external_source",
    "gue_finite",
    "mc_oracle",
    "numerics",
    "AiryPolynomial",
    "airy_hankel_det",
    "airy_hankel_numeric",
    "airy_moments",
    "edge_gamma",
    "bessel_consistency",
    "bessel_moment_closed",
    "bessel_taylor_matrix",
    "checkerboard_factorization",
    "gamma_k",
    "gamma_k_ensembles",
    "sine_det_check",
    "sine_taylor_matrix",
    "QuarticMomentTable",
    "SourceSpec",
    "b_integral_moment",
    "bulk_recovery_check",
    "critical_quartic_hankel",
    "saddle_density",
    "source_moment",
    "vandermonde_gaussian",
    "MomentSpec",
    "MonicHermite",
    "bulk_asymptotic_ratio",
    "center_moment_closed",
    "charpoly_moment",
    "deriv_moment_closed",
    "deriv_moment_det",
    "derivative_moment",
    "edge_moment_scaling",
    "hermite_edge_shape",
    "hermite_monic",
    "MCEstimate",
    "SamplerConfig",
    "estimate_moment",
    "sample_matrix",
]
