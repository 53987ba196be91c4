"""Quadrature engines and weighted L^p norms for the measure
dmu_a(x) = |x|^(2a+1) / (2^(a+1) Gamma(a+1)) dx.

Endpoint-singular integrals (exponent a - 1/2 can be negative) are handled
by analytic weight extraction with Gauss-Jacobi rules; everything else goes
through adaptive Gauss-Kronrod (QUADPACK).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy import integrate as sint
from scipy.special import roots_jacobi

from .special import AlphaParam

__all__ = [
    "QuadSpec",
    "LpContext",
    "QuadratureError",
    "integrate",
    "integrate_jacobi",
    "jacobi_rule",
    "lp_norm",
    "lp_norm_full",
    "NormEstimate",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries the partial estimate."""

    def __init__(self, message, partial=None, error=None):
        super().__init__(message)
        self.partial = partial
        self.error = error


@dataclass(frozen=True)
class QuadSpec:
    abs_tol: float = 1e-11
    rel_tol: float = 1e-9
    max_subdivisions: int = 2000
    endpoint_exponent: Optional[float] = None  # singularity at the left endpoint

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.endpoint_exponent is not None and self.endpoint_exponent <= -1.0:
            raise ValueError("endpoint exponent must be > -1 (integrable)")

    def inner(self) -> "QuadSpec":
        """Spec for a nested level: one order tighter to control accumulation."""
        return QuadSpec(self.abs_tol / 10.0, self.rel_tol / 10.0,
                        self.max_subdivisions, None)


DEFAULT_SPEC = QuadSpec()


def integrate(f: Callable, a: float, b: float, spec: QuadSpec = DEFAULT_SPEC,
              points=None):
    """Adaptive integral of f on (a, b); returns (value, error_estimate).

    A declared integrable singularity (x - a)^e at the left endpoint is
    removed analytically by the substitution x = a + u^(1/(1+e)).
    """
    if not a < b:
        raise ValueError("need a < b")
    g, lo, hi = f, a, b
    if spec.endpoint_exponent is not None and spec.endpoint_exponent < 0.0:
        e = spec.endpoint_exponent
        g1 = 1.0 / (1.0 + e)

        def g(u, _f=f):
            return _f(a + u ** g1) * g1 * u ** (g1 - 1.0)

        lo, hi = 0.0, (b - a) ** (1.0 + e)
        points = None
    kw = {}
    if points is not None:
        pts = [p for p in points if lo < p < hi]
        if pts:
            kw["points"] = pts
    val, err, info, *rest = sint.quad(
        g, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, full_output=True, **kw)
    if rest:  # QUADPACK warning message present
        raise QuadratureError(rest[0], partial=val, error=err)
    return val, err


@lru_cache(maxsize=256)
def _jacobi_ref(n: int, exp_a: float, exp_b: float):
    # reference rule on [-1, 1] for weight (1+x)^exp_a (1-x)^exp_b
    x, w = roots_jacobi(n, exp_b, exp_a)
    return x, w


def jacobi_rule(n: int, exp_a: float, exp_b: float, a: float, b: float):
    """Nodes and weights integrating f(z) (z-a)^exp_a (b-z)^exp_b exactly
    for polynomial f up to degree 2n-1, as sum(w * f(z))."""
    if exp_a <= -1.0 or exp_b <= -1.0:
        raise ValueError("Jacobi exponents must be > -1")
    x, w = _jacobi_ref(n, float(exp_a), float(exp_b))
    r = 0.5 * (b - a)
    z = 0.5 * (a + b) + r * x
    return z, w * r ** (exp_a + exp_b + 1.0)


def integrate_jacobi(f: Callable, a: float, b: float, exp_a: float,
                     exp_b: float, n: int) -> float:
    """Gauss-Jacobi value of int_a^b f(z) (z-a)^exp_a (b-z)^exp_b dz."""
    z, w = jacobi_rule(n, exp_a, exp_b, a, b)
    return float(np.dot(w, np.asarray(f(z), dtype=float)))


# -- weighted L^p norms -------------------------------------------------------

@dataclass(frozen=True)
class LpContext:
    alpha: AlphaParam
    p: float
    truncation_T: float
    quad: QuadSpec = field(default_factory=QuadSpec)
    n_nodes: int = 160

    def __post_init__(self):
        if self.p < 1.0:
            raise ValueError("p must be >= 1")
        if self.truncation_T <= 0.0:
            raise ValueError("truncation radius must be positive")


@dataclass(frozen=True)
class NormEstimate:
    value: float
    head: float      # integral over [-T, T]
    tail: float      # estimated mass on T < |x| < 2T
    T: float


def _norm_integrand(ctx: LpContext, g: Callable):
    def h(u):
        gu = np.abs(np.asarray(g(u))) ** ctx.p
        gmu = np.abs(np.asarray(g(-u))) ** ctx.p
        return gu + gmu
    return h


def lp_norm_full(ctx: LpContext, g: Callable) -> NormEstimate:
    """(int_{-T}^{T} |g|^p dmu_a)^(1/p) with a crude tail estimate.

    g must accept numpy arrays; reject non-normable algebra elements upstream.
    """
    from .funcalg import GaussPolyFunction
    if isinstance(g, GaussPolyFunction) and not g.is_normable:
        raise ValueError("pure polynomials are not in L^p(mu_alpha)")
    a = ctx.alpha
    T = ctx.truncation_T
    h = _norm_integrand(ctx, g)
    # weight u^(2a+1) extracted at the left endpoint
    z, w = jacobi_rule(ctx.n_nodes, a.weight_exp, 0.0, 0.0, T)
    head = float(np.dot(w, h(z))) / a.norm_const
    zt, wt = jacobi_rule(32, 0.0, 0.0, T, 2.0 * T)
    tail = float(np.dot(wt, h(zt) * zt ** a.weight_exp)) / a.norm_const
    head = max(head, 0.0)
    return NormEstimate(head ** (1.0 / ctx.p), head, max(tail, 0.0), T)


def lp_norm(ctx: LpContext, g: Callable) -> float:
    return lp_norm_full(ctx, g).value


# -- Chebyshev grids with barycentric interpolation ---------------------------

def cheb_nodes(n: int, a: float, b: float) -> np.ndarray:
    """Chebyshev points of the first kind mapped to [a, b]."""
    k = np.arange(n)
    x = np.cos((2 * k + 1) * math.pi / (2 * n))
    return 0.5 * (a + b) + 0.5 * (b - a) * x


def cheb_interpolator(nodes: np.ndarray, values: np.ndarray) -> Callable:
    """Barycentric interpolant through (nodes, values)."""
    n = len(nodes)
    k = np.arange(n)
    # first-kind Chebyshev barycentric weights up to common scale
    bw = (-1.0) ** k * np.sin((2 * k + 1) * math.pi / (2 * n))

    def interp(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        diff = x[:, None] - nodes[None, :]
        exact = np.isclose(diff, 0.0, atol=0.0)
        diff[exact] = 1.0
        q = bw / diff
        out = (q @ values) / q.sum(axis=1)
        hit_row, hit_col = np.nonzero(exact)
        out[hit_row] = values[hit_col]
        return out if out.shape != (1,) else float(out[0])

    return interp
