"""One-dimensional Dunkl harmonic analysis at desk scale: kernel, translation,
convolution, transform, generalized Taylor remainders, and Besov-type
smoothness diagnostics."""

from .special import AlphaParam, bessel_j_normalized, dunkl_kernel
from .funcalg import GaussPolyFunction, dunkl_apply, dunkl_power, dilate, hermite_phi
from .quad import QuadSpec, LpContext, integrate, integrate_jacobi, lp_norm

__all__ = [
    "AlphaParam",
    "bessel_j_normalized",
    "dunkl_kernel",
    "GaussPolyFunction",
    "dunkl_apply",
    "dunkl_power",
    "dilate",
    "hermite_phi",
    "QuadSpec",
    "LpContext",
    "integrate",
    "integrate_jacobi",
    "lp_norm",
]

__version__ = "0.1.0"
