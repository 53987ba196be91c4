"""Test-function algebra: polynomials times a Gaussian, closed under the
Dunkl operator.

Every function handled here has the form f(x) = (c_0 + c_1 x + ... + c_N x^N)
* exp(-s x^2) with s >= 0.  The algebra is closed under differentiation,
reflection and multiplication by x, hence under the Dunkl operator

    L_a f(x) = f'(x) + (2a+1)/x * (f(x) - f(-x))/2,

and the image has exact coefficients (the apparent 1/x singularity cancels:
the odd part of a polynomial is divisible by x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .special import AlphaParam, _as_alpha

__all__ = [
    "GaussPolyFunction",
    "dunkl_apply",
    "dunkl_power",
    "dilate",
    "hermite_phi",
    "dunkl_fd",
    "dunkl_fd_power",
]


def _trim(coeffs):
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0.0:
        c.pop()
    return tuple(float(v) for v in c)


@dataclass(frozen=True)
class GaussPolyFunction:
    """P(x) * exp(-s x^2) with P given by low-to-high coefficients."""

    coeffs: tuple
    gauss_scale: float = 0.0
    support_hint: Optional[float] = None

    def __post_init__(self):
        if self.gauss_scale < 0.0:
            raise ValueError("gauss_scale must be >= 0")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))
        if self.support_hint is None and self.gauss_scale > 0.0:
            hint = max(8.0, 10.0 / math.sqrt(self.gauss_scale))
            object.__setattr__(self, "support_hint", hint)

    # -- evaluation ---------------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        p = np.polynomial.polynomial.polyval(x, np.array(self.coeffs))
        if self.gauss_scale > 0.0:
            p = p * np.exp(-self.gauss_scale * x * x)
        return p if p.ndim else float(p)

    # -- algebra ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_normable(self) -> bool:
        """Pure polynomials (s=0) are not in any L^p(mu_a) unless zero."""
        return self.gauss_scale > 0.0 or self.coeffs == (0.0,)

    def scale(self, c: float) -> "GaussPolyFunction":
        return GaussPolyFunction(tuple(c * v for v in self.coeffs),
                                 self.gauss_scale, self.support_hint)

    def add(self, other: "GaussPolyFunction") -> "GaussPolyFunction":
        if other.gauss_scale != self.gauss_scale:
            raise ValueError("can only add functions with the same Gaussian factor")
        n = max(len(self.coeffs), len(other.coeffs))
        c = [0.0] * n
        for i, v in enumerate(self.coeffs):
            c[i] += v
        for i, v in enumerate(other.coeffs):
            c[i] += v
        return GaussPolyFunction(tuple(c), self.gauss_scale,
                                 self.support_hint or other.support_hint)

    def mul_x(self) -> "GaussPolyFunction":
        return GaussPolyFunction((0.0,) + self.coeffs, self.gauss_scale,
                                 self.support_hint)

    def reflect(self) -> "GaussPolyFunction":
        c = tuple(v if i % 2 == 0 else -v for i, v in enumerate(self.coeffs))
        return GaussPolyFunction(c, self.gauss_scale, self.support_hint)

    def derivative(self) -> "GaussPolyFunction":
        # (P e^{-sx^2})' = (P' - 2 s x P) e^{-sx^2}
        n = len(self.coeffs)
        c = [0.0] * max(1, n + 1)
        for i in range(1, n):
            c[i - 1] += i * self.coeffs[i]
        if self.gauss_scale > 0.0:
            for i in range(n):
                c[i + 1] -= 2.0 * self.gauss_scale * self.coeffs[i]
        return GaussPolyFunction(tuple(c), self.gauss_scale, self.support_hint)

    def odd_part_over_x(self) -> "GaussPolyFunction":
        """(f(x) - f(-x)) / (2x), exact: keeps odd coefficients, shifts down."""
        n = len(self.coeffs)
        c = [0.0] * max(1, n - 1)
        for i in range(1, n, 2):
            c[i - 1] = self.coeffs[i]
        return GaussPolyFunction(tuple(c), self.gauss_scale, self.support_hint)

    # -- serialization (CLI wire format) -------------------------------------
    def to_record(self) -> dict:
        return {"coeffs": list(self.coeffs), "gauss_scale": self.gauss_scale}

    @staticmethod
    def from_record(rec: dict) -> "GaussPolyFunction":
        return GaussPolyFunction(tuple(rec["coeffs"]), float(rec["gauss_scale"]))


def dunkl_apply(alpha, f: GaussPolyFunction) -> GaussPolyFunction:
    """Exact Dunkl operator on the algebra: f' + (2a+1) * odd(f)/x."""
    a = _as_alpha(alpha)
    return f.derivative().add(f.odd_part_over_x().scale(2.0 * a + 1.0))


def dunkl_power(alpha, f: GaussPolyFunction, k: int) -> GaussPolyFunction:
    """k-fold Dunkl operator; k = 0 is the identity."""
    if k < 0:
        raise ValueError("k must be >= 0")
    for _ in range(k):
        f = dunkl_apply(alpha, f)
    return f


def dilate(alpha, phi: GaussPolyFunction, t: float) -> GaussPolyFunction:
    """phi_t(x) = t^(-2(a+1)) phi(x/t); exact on coefficients."""
    if t <= 0.0:
        raise ValueError(f"dilation parameter must be > 0, got {t}")
    a = _as_alpha(alpha)
    pref = t ** (-2.0 * (a + 1.0))
    c = tuple(v * pref * t ** (-n) for n, v in enumerate(phi.coeffs))
    hint = phi.support_hint * t if phi.support_hint is not None else None
    return GaussPolyFunction(c, phi.gauss_scale / (t * t), hint)


def _laguerre_coeffs(n: int, a: float) -> list:
    # L_n^a(u) = sum_i (-1)^i Gamma(n+a+1)/(Gamma(i+a+1) (n-i)! i!) u^i
    out = []
    for i in range(n + 1):
        c = math.gamma(n + a + 1.0) / (math.gamma(i + a + 1.0)
                                       * math.factorial(n - i) * math.factorial(i))
        out.append((-1.0) ** i * c)
    return out


def hermite_phi(alpha, n0: int, k: int) -> GaussPolyFunction:
    """Moment-vanishing bump phi(x) = H_{2 n0}^{a+1/2}(x) exp(-x^2).

    Orthogonality of the generalized Hermite family against even polynomials
    of lower degree makes int_0^inf x^{2i} phi dmu_a vanish for all
    0 <= i <= floor((k-1)/2); this requires n0 > floor((k-1)/2).
    """
    a = _as_alpha(alpha)
    if k < 1 or n0 < 1:
        raise ValueError("n0 and k must be positive")
    if n0 <= (k - 1) // 2:
        raise ValueError(f"n0 must exceed floor((k-1)/2) = {(k - 1) // 2}")
    lag = _laguerre_coeffs(n0, a)
    pref = (-1.0) ** n0 * 2.0 ** (2 * n0) * math.factorial(n0)
    c = [0.0] * (2 * n0 + 1)
    for i, v in enumerate(lag):
        c[2 * i] = pref * v
    return GaussPolyFunction(tuple(c), 1.0)


# -- finite-difference Dunkl operator on black-box callables -----------------

def dunkl_fd(alpha, g: Callable[[float], float], a: float, h: float = 1e-3) -> float:
    """Dunkl operator applied to a callable via a 5-point central derivative
    plus the exact reflection term.  Requires a != 0."""
    al = _as_alpha(alpha)
    d = (-g(a + 2 * h) + 8.0 * g(a + h) - 8.0 * g(a - h) + g(a - 2 * h)) / (12.0 * h)
    return d + (2.0 * al + 1.0) / a * (g(a) - g(-a)) / 2.0


def dunkl_fd_power(alpha, g: Callable[[float], float], a: float, k: int,
                   h: float = 1e-3) -> float:
    """k-fold finite-difference Dunkl operator with evaluation caching."""
    cache: dict = {}

    def ev(fn, key, t):
        kk = (key, round(t, 12))
        if kk not in cache:
            cache[kk] = fn(t)
        return cache[kk]

    def lam(fn, key, t):
        return dunkl_fd(alpha, lambda u: ev(fn, key, u), t, h=h)

    fns = [g]
    for lvl in range(k):
        prev, plvl = fns[-1], lvl
        fns.append(lambda t, p=prev, q=plvl: lam(p, q, t))
    return fns[k](a)
