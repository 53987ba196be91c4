"""Scalar special functions: normalized Bessel functions, the Dunkl kernel,
and the Laguerre / generalized Hermite families.

Everything here is real-valued except :func:`dunkl_kernel`, which is the one
place complex values are produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sps

__all__ = [
    "AlphaParam",
    "gamma_fn",
    "pochhammer",
    "bessel_j_normalized",
    "dunkl_kernel",
    "laguerre",
    "hermite_generalized",
]


@dataclass(frozen=True)
class AlphaParam:
    """Dunkl parameter alpha > -1/2 with its derived constants."""

    alpha: float
    norm_const: float = field(init=False)   # 2^(a+1) Gamma(a+1)
    weight_exp: float = field(init=False)   # 2a+1, exponent of |x| in the weight

    def __post_init__(self):
        a = float(self.alpha)
        if not a > -0.5:
            raise ValueError(f"alpha must be > -1/2, got {a}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "norm_const", 2.0 ** (a + 1.0) * math.gamma(a + 1.0))
        object.__setattr__(self, "weight_exp", 2.0 * a + 1.0)

    def weight(self, x):
        """|x|^(2a+1), the Lebesgue density of mu_alpha up to norm_const."""
        return np.abs(x) ** self.weight_exp


def _as_alpha(alpha) -> float:
    return alpha.alpha if isinstance(alpha, AlphaParam) else float(alpha)


def gamma_fn(x: float) -> float:
    """Euler Gamma on the positive half line."""
    if x <= 0.0:
        raise ValueError(f"gamma_fn requires x > 0, got {x}")
    return math.gamma(x)


def pochhammer(a: float, m: int) -> float:
    """(a)_m = a (a+1) ... (a+m-1), computed multiplicatively."""
    out = 1.0
    for i in range(m):
        out *= a + i
    return out


_SERIES_TERMS = 30


def _bessel_series(a: float, z2_over_4, sign: float):
    # sum_m sign^m (z^2/4)^m / (m! (a+1)_m); sign=-1 gives J-type, +1 I-type
    z2 = np.asarray(z2_over_4, dtype=float)
    term = np.ones_like(z2)
    out = np.ones_like(z2)
    for m in range(1, _SERIES_TERMS):
        term = term * (sign * z2) / (m * (a + m))
        out = out + term
    return out


def bessel_j_normalized(alpha, z):
    """Normalized Bessel function j_a(z) = 2^a Gamma(a+1) J_a(z) / z^a,
    with j_a(0) = 1.  Even in z; vectorized over z."""
    a = _as_alpha(alpha)
    if not a >= -0.5:
        raise ValueError(f"order must be >= -1/2, got {a}")
    z = np.asarray(z, dtype=float)
    az = np.abs(z)
    scalar = z.ndim == 0
    az = np.atleast_1d(az)
    out = np.empty_like(az)
    small = az <= 1.0
    if np.any(small):
        out[small] = _bessel_series(a, az[small] ** 2 / 4.0, -1.0)
    if np.any(~small):
        zb = az[~small]
        out[~small] = (2.0 ** a) * math.gamma(a + 1.0) * sps.jv(a, zb) / zb ** a
    return float(out[0]) if scalar else out


def _bessel_i_normalized(a: float, z):
    """2^a Gamma(a+1) I_a(z)/z^a, i.e. j_a continued to imaginary argument."""
    z = np.asarray(z, dtype=float)
    az = np.abs(z)
    scalar = z.ndim == 0
    az = np.atleast_1d(az)
    out = np.empty_like(az)
    small = az <= 1.0
    if np.any(small):
        out[small] = _bessel_series(a, az[small] ** 2 / 4.0, 1.0)
    if np.any(~small):
        zb = az[~small]
        out[~small] = (2.0 ** a) * math.gamma(a + 1.0) * sps.iv(a, zb) / zb ** a
    return float(out[0]) if scalar else out


def dunkl_kernel(alpha, lam: complex, x: float) -> complex:
    """Dunkl kernel E_a(lam*x), the unique solution of the eigenproblem
    of the Dunkl operator with value 1 at the origin:

        E_a(w) = j_a(iw) + w/(2(a+1)) * j_{a+1}(iw),   w = lam*x.

    Purely imaginary lam (the transform regime) and real lam are evaluated
    through Bessel routines; general complex arguments fall back to the
    everywhere-convergent power series.
    """
    a = _as_alpha(alpha)
    if not a > -0.5:
        raise ValueError(f"alpha must be > -1/2, got {a}")
    w = complex(lam) * x
    if w == 0:
        return complex(1.0)
    if w.real == 0.0:
        # w = i s:  iw = -s real, j even => j_a(s)
        s = w.imag
        return complex(bessel_j_normalized(a, s),
                       s / (2.0 * (a + 1.0)) * bessel_j_normalized(a + 1.0, s))
    if w.imag == 0.0:
        s = w.real
        return complex(_bessel_i_normalized(a, s)
                       + s / (2.0 * (a + 1.0)) * _bessel_i_normalized(a + 1.0, s))
    # general complex: series of both parts
    q = w * w / 4.0
    even = complex(1.0)
    term = complex(1.0)
    for m in range(1, 2 * _SERIES_TERMS):
        term = term * q / (m * (a + m))
        even += term
        if abs(term) < 1e-18 * (1.0 + abs(even)):
            break
    odd = complex(1.0)
    term = complex(1.0)
    for m in range(1, 2 * _SERIES_TERMS):
        term = term * q / (m * (a + 1.0 + m))
        odd += term
        if abs(term) < 1e-18 * (1.0 + abs(odd)):
            break
    return even + w / (2.0 * (a + 1.0)) * odd


def dunkl_kernel_it(alpha, t: float, x):
    """Vectorized E_a(i t x) for real t, x; returns a complex array."""
    a = _as_alpha(alpha)
    s = t * np.asarray(x, dtype=float)
    re = bessel_j_normalized(a, s)
    im = s / (2.0 * (a + 1.0)) * bessel_j_normalized(a + 1.0, s)
    return re + 1j * im


def laguerre(n: int, a: float, x):
    """Laguerre polynomial L_n^a(x) by the stable three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if a <= -1.0:
        raise ValueError("index must be > -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 1 + a - x) * cur - (m + a) * prev) / (m + 1.0)
    return cur if cur.ndim else float(cur)


def hermite_generalized(n: int, alpha, x):
    """Generalized Hermite polynomial H_n^{a+1/2}, orthogonal for the
    measure exp(-x^2) dmu_a:

        H_{2m}   = (-1)^m 2^{2m}   m! L_m^a(x^2)
        H_{2m+1} = (-1)^m 2^{2m+1} m! x L_m^{a+1}(x^2)
    """
    a = _as_alpha(alpha)
    if not a > -0.5:
        raise ValueError(f"alpha must be > -1/2, got {a}")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    m, odd = divmod(n, 2)
    c = (-1.0) ** m * 2.0 ** n * math.factorial(m)
    if odd:
        val = c * x * laguerre(m, a + 1.0, x * x)
    else:
        val = c * laguerre(m, a, x * x)
    return val if np.ndim(val) else float(val)
