"""Dunkl translation, convolution and transform on the real line.

The translation tau_x f(y) integrates f against the signed measure with
density W_a(x, y, .) supported on S u (-S), S = [||x|-|y||, |x|+|y|].
Under u = z^2 the integrand becomes an analytic function of u times the
exact Jacobi weight ((b^2-u)(u-a^2))^(a-1/2), so a single cached Gauss-Jacobi
rule gives uniform spectral accuracy, including the degenerate |x| = |y|
case (the endpoint exponents never change).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as sint

from .special import AlphaParam, dunkl_kernel_it
from .quad import QuadSpec, DEFAULT_SPEC, jacobi_rule, _jacobi_ref

__all__ = [
    "TranslationMeasure",
    "w_kernel",
    "w_total_variation",
    "translate",
    "translate_many",
    "convolve",
    "dunkl_transform",
    "translate_convolution_commutes",
    "product_formula_residual",
]

TRANSLATE_NODES = 48


def _w_const(a: float) -> float:
    return math.gamma(a + 1.0) ** 2 / (2.0 ** (a - 1.0) * math.sqrt(math.pi)
                                       * math.gamma(a + 0.5))


@dataclass(frozen=True)
class TranslationMeasure:
    """The measure gamma_{x,y}: density on S u (-S), or a point mass when
    one of the arguments vanishes."""

    alpha: AlphaParam
    x: float
    y: float

    @property
    def kind(self) -> str:
        if self.x == 0.0:
            return "point_mass_y"
        if self.y == 0.0:
            return "point_mass_x"
        return "density"

    @property
    def support(self):
        ax, ay = abs(self.x), abs(self.y)
        return (abs(ax - ay), ax + ay)

    def total_variation(self) -> float:
        if self.kind != "density":
            return 1.0
        return w_total_variation(self.alpha, self.x, self.y)


def w_kernel(alpha: AlphaParam, x: float, y: float, z):
    """Density W_a(x, y, z) of the translation measure; zero off-support.

    Requires x, y != 0 (the point-mass cases have no density).
    """
    if x == 0.0 or y == 0.0:
        raise ValueError("w_kernel is undefined for x = 0 or y = 0 (point mass)")
    a = alpha.alpha
    z = np.asarray(z, dtype=float)
    ax, ay = abs(x), abs(y)
    lo, hi = abs(ax - ay), ax + ay
    az = np.abs(z)
    inside = (az >= lo) & (az <= hi)
    out = np.zeros(np.broadcast(z).shape or (1,))
    zz = np.atleast_1d(z)[np.atleast_1d(inside)]
    if zz.size:
        bxyz = (x * x + y * y - zz * zz) / (2.0 * x * y)
        with np.errstate(divide="ignore", invalid="ignore"):
            bzxy = np.where(zz != 0.0, (zz * zz + x * x - y * y) / (2.0 * zz * x), 0.0)
            bzyx = np.where(zz != 0.0, (zz * zz + y * y - x * x) / (2.0 * zz * y), 0.0)
            delta = ((hi * hi - zz * zz) * (zz * zz - lo * lo)) ** (a - 0.5) \
                / np.abs(x * y * zz) ** (2.0 * a)
        vals = _w_const(a) * (1.0 - bxyz + bzxy + bzyx) * delta
        np.place(out, np.atleast_1d(inside), vals)
    return out if np.ndim(z) else float(out[0])


def _u_rule(alpha: AlphaParam, x: float, y: float, n: int):
    """Jacobi nodes/weights in u = z^2 over [a^2, b^2] plus the prefactor."""
    a = alpha.alpha
    ax, ay = abs(x), abs(y)
    lo, hi = (ax - ay) ** 2, (ax + ay) ** 2
    u, w = jacobi_rule(n, a - 0.5, a - 0.5, lo, hi)
    pref = _w_const(a) / (2.0 * alpha.norm_const * (ax * ay) ** (2.0 * a))
    return u, w, pref


def _smooth_factor(f, x: float, y: float, u):
    """[f(z)+f(-z)] B0(u) + [(f(z)-f(-z))/z] Q(u), an analytic function of u."""
    z = np.sqrt(u)
    fz = np.asarray(f(z))
    fmz = np.asarray(f(-z))
    b0 = 1.0 - (x * x + y * y - u) / (2.0 * x * y)
    q = (u + x * x - y * y) / (2.0 * x) + (u + y * y - x * x) / (2.0 * y)
    return (fz + fmz) * b0 + (fz - fmz) / z * q


def translate(alpha: AlphaParam, f: Callable, x: float, y: float,
              spec: QuadSpec = None, n: int = TRANSLATE_NODES):
    """Dunkl translation tau_x(f)(y).  f must accept numpy arrays."""
    if x == 0.0:
        v = f(np.asarray(y, dtype=float))
        return complex(v) if np.iscomplexobj(v) else float(v)
    if y == 0.0:
        v = f(np.asarray(x, dtype=float))
        return complex(v) if np.iscomplexobj(v) else float(v)
    u, w, pref = _u_rule(alpha, x, y, n)
    s = _smooth_factor(f, x, y, u)
    val = pref * np.dot(w, s)
    return complex(val) if np.iscomplexobj(s) else float(val)


def translate_many(alpha: AlphaParam, f: Callable, x: float, ys,
                   n: int = TRANSLATE_NODES):
    """Vectorized tau_x(f)(y) over an array of y values."""
    ys_in = np.asarray(ys, dtype=float)
    if x == 0.0:
        return np.asarray(f(ys_in))
    ys = np.atleast_1d(ys_in).ravel()
    a = alpha.alpha
    xj, wj = _jacobi_ref(n, a - 0.5, a - 0.5)
    ax, ay = abs(x), np.abs(ys)
    lo, hi = (ax - ay) ** 2, (ax + ay) ** 2
    nz = ys != 0.0
    r = np.where(nz, 0.5 * (hi - lo), 1.0)
    u = 0.5 * (lo + hi)[:, None] + r[:, None] * xj[None, :]
    # clamp degenerate rows; they are overwritten below
    u[~nz, :] = 1.0
    z = np.sqrt(u)
    fz = np.asarray(f(z))
    fmz = np.asarray(f(-z))
    yv = np.where(nz, ys, 1.0)[:, None]
    b0 = 1.0 - (x * x + yv * yv - u) / (2.0 * x * yv)
    q = (u + x * x - yv * yv) / (2.0 * x) + (u + yv * yv - x * x) / (2.0 * yv)
    s = (fz + fmz) * b0 + (fz - fmz) / z * q
    pref = _w_const(a) / (2.0 * alpha.norm_const * (ax * np.where(nz, np.abs(ys), 1.0)) ** (2.0 * a))
    out = pref * (r ** (2.0 * a)) * (s @ wj)
    if np.any(~nz):
        fx = f(np.full(int((~nz).sum()), float(x)))
        out = out.astype(np.result_type(out, fx))
        out[~nz] = fx
    return out.reshape(ys_in.shape) if ys_in.ndim != 1 else out


def w_total_variation(alpha: AlphaParam, x: float, y: float,
                      spec: QuadSpec = DEFAULT_SPEC) -> float:
    """int |W_a(x,y,.)| dmu_a over the full support (both sign branches)."""
    if x == 0.0 or y == 0.0:
        return 1.0
    a = alpha.alpha
    ax, ay = abs(x), abs(y)
    lo, hi = (ax - ay) ** 2, (ax + ay) ** 2
    pref = _w_const(a) / (2.0 * alpha.norm_const * (ax * ay) ** (2.0 * a))

    def g(u):
        z = math.sqrt(max(u, 1e-300))
        b0 = 1.0 - (x * x + y * y - u) / (2.0 * x * y)
        q = ((u + x * x - y * y) / (2.0 * x)
             + (u + y * y - x * x) / (2.0 * y)) / z
        return abs(b0 + q) + abs(b0 - q)

    res = sint.quad(g, lo, hi, weight="alg", wvar=(a - 0.5, a - 0.5),
                    epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                    limit=spec.max_subdivisions, full_output=True)
    return pref * res[0]


def convolve(alpha: AlphaParam, f: Callable, g: Callable, x: float,
             T: float = None, n_outer: int = 120,
             n_translate: int = TRANSLATE_NODES):
    """Dunkl convolution (f *_a g)(x) = int tau_x(f)(-y) g(y) dmu_a(y).

    g must decay; T truncates the outer integral (default from g's
    support_hint when available)."""
    if T is None:
        T = getattr(g, "support_hint", None) or 10.0
    y, w = jacobi_rule(n_outer, alpha.weight_exp, 0.0, 0.0, T)
    tp = translate_many(alpha, f, x, -y, n=n_translate)
    tm = translate_many(alpha, f, x, y, n=n_translate)
    gy = np.asarray(g(y))
    gmy = np.asarray(g(-y))
    return np.dot(w, tp * gy + tm * gmy) / alpha.norm_const


def dunkl_transform(alpha: AlphaParam, f: Callable, xi: float,
                    T: float = None, n: int = 200) -> complex:
    """Dunkl transform F_a(f)(xi) = int f(y) E_a(-i xi y) dmu_a(y)."""
    if T is None:
        T = getattr(f, "support_hint", None) or 10.0
    y, w = jacobi_rule(n, alpha.weight_exp, 0.0, 0.0, T)
    ep = dunkl_kernel_it(alpha, -xi, y)
    em = dunkl_kernel_it(alpha, xi, y)
    fy = np.asarray(f(y))
    fmy = np.asarray(f(-y))
    return complex(np.dot(w, fy * ep + fmy * em) / alpha.norm_const)


def translate_convolution_commutes(alpha: AlphaParam, f: Callable, h: Callable,
                                   t: float, x: float, T: float = None,
                                   n_outer: int = 120) -> float:
    """Max pairwise discrepancy of tau_t(f *_a h), tau_t(f) *_a h and
    f *_a tau_t(h) at the point x."""
    if T is None:
        Tf = getattr(f, "support_hint", None) or 10.0
        Th = getattr(h, "support_hint", None) or 10.0
        T = max(Tf, Th) + abs(t)
    conv_fh = lambda ys: np.array([convolve(alpha, f, h, float(v), T=T,
                                            n_outer=n_outer) for v in np.atleast_1d(ys)])
    v1 = translate(alpha, conv_fh, t, x)
    tf = lambda ys: translate_many(alpha, f, t, ys)
    v2 = convolve(alpha, tf, h, x, T=T, n_outer=n_outer)
    th = lambda ys: translate_many(alpha, h, t, ys)
    v3 = convolve(alpha, f, th, x, T=T, n_outer=n_outer)
    return max(abs(v1 - v2), abs(v1 - v3), abs(v2 - v3))


def product_formula_residual(alpha: AlphaParam, x: float, y: float,
                             t: float) -> float:
    """|E(ixt) E(iyt) - int E(itz) dgamma_{x,y}(z)|."""
    lhs = (complex(dunkl_kernel_it(alpha, t, x))
           * complex(dunkl_kernel_it(alpha, t, y)))
    rhs = translate(alpha, lambda z: dunkl_kernel_it(alpha, t, z), x, y)
    return abs(lhs - rhs)
