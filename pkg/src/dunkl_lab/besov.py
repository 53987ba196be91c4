"""Moduli of smoothness, K-functional bounds, convolution seminorms, and the
numerical equivalence diagnostics between the four smoothness scales.

Four seminorm kinds are computed on truncated log grids:

  B       from omega(x)        = sup_{|y|<=x} ||R_k(y,f)||_p
  B_tilde from omega_tilde(x)  = ||R_k(x,f) + R_k(-x,f)||_p
  K       from the constructive K-functional upper bound
  C       from ||f * phi_t||_p / t^(beta+k-1), phi a moment-vanishing bump

The convolution with a moment-vanishing bump is evaluated through the exact
identity  (phi_t * f)(u) = int_0^inf phi_t(x) [R_k(x,f)(u) + R_k(-x,f)(u)]
dmu(x): the moment cancellation is performed analytically, so the small-t
values (~ t^(2 n0)) carry no catastrophic cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .special import AlphaParam
from .funcalg import GaussPolyFunction, dunkl_power, dilate
from .quad import LpContext, lp_norm, jacobi_rule
from .dunklcore import translate_many
from .taylor import (b_coeff, remainder_profile, symmetric_remainder_profile,
                     _theta_terms, _theta_weighted_integral)

__all__ = [
    "BesovParams",
    "SeminormEstimate",
    "omega",
    "omega_tilde",
    "k_functional_upper",
    "conv_profile",
    "conv_norm",
    "conv_seminorm_integrand",
    "seminorm",
    "seminorm_samples",
    "seminorm_from_samples",
    "slope_estimate",
    "equivalence_report",
    "default_grid",
]


def default_grid(lo: float = 1e-3, hi: float = 1e2,
                 per_decade: int = 12) -> np.ndarray:
    n = int(round(per_decade * math.log10(hi / lo))) + 1
    return np.geomspace(lo, hi, n)


@dataclass(frozen=True)
class BesovParams:
    alpha: AlphaParam
    k: int
    p: float
    q: float            # math.inf for the sup scale
    beta: float
    x_grid: np.ndarray = field(default_factory=default_grid)
    t_grid: np.ndarray = field(default_factory=default_grid)
    norm_T: float = 12.0
    norm_nodes: int = 160

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if self.p < 1.0 or self.k < 1:
            raise ValueError("need p >= 1 and k >= 1")
        if self.q < 1.0:
            raise ValueError("q must be >= 1 (use math.inf for the sup scale)")
        for g in (self.x_grid, self.t_grid):
            g = np.asarray(g)
            if g.ndim != 1 or np.any(np.diff(g) <= 0.0) or np.any(g <= 0.0):
                raise ValueError("grids must be strictly increasing and positive")
            if g[-1] / g[0] < 1e3:
                raise ValueError("grids must span at least three decades")

    def norm_ctx(self, extra: float = 0.0) -> LpContext:
        return LpContext(self.alpha, self.p, self.norm_T + extra,
                         n_nodes=self.norm_nodes)


@dataclass(frozen=True)
class SeminormEstimate:
    kind: str                  # one of B, B_tilde, K, C
    value: float
    diverging: bool
    grid: np.ndarray
    integrand: np.ndarray      # per-point samples (m(x)/x^(beta+k-1))^q-style


def _y_probe_grid(x: float) -> np.ndarray:
    """17 probe points in [-x, x] \\ {0}: log-spaced magnitudes over two
    decades, both signs (the smallest magnitude only on the positive side)."""
    mags = np.geomspace(x * 1e-2, x, 9)
    return np.concatenate([mags, -mags[1:]])


def omega(params: BesovParams, f: GaussPolyFunction, x: float) -> float:
    """Modulus of smoothness sup_{|y| <= x} ||R_k(y, f)||_{p,alpha},
    the supremum taken over a 17-point probe grid."""
    if x <= 0.0:
        raise ValueError("x must be positive")
    ctx = params.norm_ctx()
    best = 0.0
    for y in _y_probe_grid(x):
        best = max(best, lp_norm(ctx, remainder_profile(params.alpha, params.k,
                                                        f, float(y))))
    return best


def omega_tilde(params: BesovParams, f: GaussPolyFunction, x: float) -> float:
    """||R_k(x,f) + R_k(-x,f)||_{p,alpha} via the even-coefficient form."""
    if x <= 0.0:
        raise ValueError("x must be positive")
    prof = symmetric_remainder_profile(params.alpha, params.k, f, x)
    return lp_norm(params.norm_ctx(), prof)


def k_functional_upper(params: BesovParams, f: GaussPolyFunction,
                       x: float) -> float:
    """Upper bound for the Peetre K-functional
    K(x,f) = inf{||L^(k-1) f0||_p + x ||L^k f1||_p : f = f0 + f1}:
    the minimum of the two trivial splittings and the constructive one
    (f1 proportional to the iterated integral, so L^k f1 = R_k(x,f)/b_k(x),
    L^(k-1) f0 = -(1/b_k(x)) int Theta_0(x,y) R_k(y,f) A(y) dy)."""
    if x <= 0.0:
        raise ValueError("x must be positive")
    al, k = params.alpha, params.k
    ctx = params.norm_ctx()
    bound_i = lp_norm(ctx, dunkl_power(al, f, k - 1))
    bound_ii = x * lp_norm(ctx, dunkl_power(al, f, k))
    bk = b_coeff(al, k, x)
    rk_norm = lp_norm(ctx, remainder_profile(al, k, f, x))
    part_f1 = x * rk_norm / abs(bk)
    terms0 = _theta_terms(al.alpha, 0, x)
    consts = [(b_coeff(al, p, 1.0), dunkl_power(al, f, p)) for p in range(k)]

    def lkm1_f0(us):
        us = np.atleast_1d(np.asarray(us, dtype=float))
        out = np.empty_like(us)
        for i, u in enumerate(us):
            def rem(ys, _u=float(u)):
                ys = np.asarray(ys, dtype=float)
                val = translate_many(al, f, _u, ys)
                for p, (bp1, lpf) in enumerate(consts):
                    val = val - bp1 * ys ** p * lpf(np.full(1, _u))[()]
                return val
            out[i] = _theta_weighted_integral(al, terms0, x, rem,
                                              split=abs(u), n=32)
        return -out / bk

    bound_iii = lp_norm(ctx, lkm1_f0) + part_f1
    return min(bound_i, bound_ii, bound_iii)


# -- convolution with a moment-vanishing bump ----------------------------------

def conv_profile(params: BesovParams, f: GaussPolyFunction,
                 phi: GaussPolyFunction, t: float,
                 n_outer: int = 80) -> Callable:
    """u |-> (f * phi_t)(u), vectorized, via the symmetric-remainder identity
    (exact when phi has the order-k vanishing moments)."""
    if t <= 0.0:
        raise ValueError("t must be positive")
    al, k = params.alpha, params.k
    phi_t = dilate(al, phi, t)
    T = phi_t.support_hint or 10.0 * t
    xs, ws = jacobi_rule(n_outer, al.weight_exp, 0.0, 0.0, T)
    coef = ws * phi_t(xs) / al.norm_const
    profs = [symmetric_remainder_profile(al, k, f, float(xv)) for xv in xs]

    def prof(us):
        us = np.atleast_1d(np.asarray(us, dtype=float))
        out = np.zeros_like(us)
        for c, pr in zip(coef, profs):
            out += c * pr(us)
        return out

    return prof


def conv_norm(params: BesovParams, f: GaussPolyFunction,
              phi: GaussPolyFunction, t: float, n_outer: int = 80) -> float:
    """||f * phi_t||_{p,alpha}."""
    return lp_norm(params.norm_ctx(), conv_profile(params, f, phi, t, n_outer))


def conv_seminorm_integrand(params: BesovParams, f: GaussPolyFunction,
                            phi: GaussPolyFunction, t: float) -> float:
    """||f * phi_t||_{p,alpha} / t^(beta+k-1)."""
    return conv_norm(params, f, phi, t) / t ** (params.beta + params.k - 1)


# -- seminorms ------------------------------------------------------------------

def _q_aggregate(grid: np.ndarray, integrand: np.ndarray, q: float):
    if math.isinf(q):
        return float(np.max(integrand))
    lx = np.log(grid)
    return float(np.trapezoid(integrand ** q, lx)) ** (1.0 / q)


def _edge_slopes(grid, integrand):
    """Log-log slopes over the first and last decade of positive samples."""
    g = np.asarray(grid)
    m = np.asarray(integrand)
    pos = m > 0.0
    if pos.sum() < 4:
        return 1.0, -1.0     # vanishing integrand: treat as converging
    g, m = g[pos], m[pos]
    head = g <= g[0] * 10.0
    tail = g >= g[-1] / 10.0
    hs = slope_estimate(list(zip(g[head], m[head]))) if head.sum() >= 4 else 1.0
    ts = slope_estimate(list(zip(g[tail], m[tail]))) if tail.sum() >= 4 else -1.0
    return hs, ts


def seminorm_samples(params: BesovParams, f: GaussPolyFunction, kind: str,
                     phi: Optional[GaussPolyFunction] = None):
    """(grid, m) raw samples behind a seminorm: the modulus (B), symmetric
    modulus (B_tilde), K-functional bound (K) on the x-grid, or the bump
    convolution norm (C) on the t-grid.  The samples do not depend on q or
    beta, so they can be aggregated for several scales."""
    if kind == "C":
        if phi is None:
            raise ValueError("kind C requires a moment-vanishing phi")
        grid = np.asarray(params.t_grid, dtype=float)
        m = np.array([conv_norm(params, f, phi, float(t)) for t in grid])
    else:
        fn = {"B": omega, "B_tilde": omega_tilde,
              "K": k_functional_upper}.get(kind)
        if fn is None:
            raise ValueError(f"unknown seminorm kind {kind!r}")
        grid = np.asarray(params.x_grid, dtype=float)
        m = np.array([fn(params, f, float(x)) for x in grid])
    return grid, m


def seminorm_from_samples(params: BesovParams, kind: str, grid, m
                          ) -> SeminormEstimate:
    """Aggregate precomputed (grid, m) samples into a SeminormEstimate."""
    grid = np.asarray(grid, dtype=float)
    m = np.asarray(m, dtype=float)
    e = params.beta + params.k - 1
    if kind == "K":
        # the K-scale integrates (K(x,f)/x^beta)^q dx/x, without the k-1 shift
        integrand = m / grid ** params.beta
    else:
        integrand = m / grid ** e
    hs, ts = _edge_slopes(grid, integrand)
    diverging = (hs < 0.05) or (ts > -0.05)
    return SeminormEstimate(kind, _q_aggregate(grid, integrand, params.q),
                            diverging, grid, integrand)


def seminorm(params: BesovParams, f: GaussPolyFunction, kind: str,
             phi: Optional[GaussPolyFunction] = None) -> SeminormEstimate:
    """Truncated-grid seminorm of the requested kind (B, B_tilde, K, C):
    trapezoid in log x of (m(x)/x^(beta+k-1))^q, or the grid sup for q=inf."""
    grid, m = seminorm_samples(params, f, kind, phi=phi)
    return seminorm_from_samples(params, kind, grid, m)


def slope_estimate(values, window=None) -> float:
    """Least-squares slope of log m against log x over the window."""
    pts = [(x, m) for x, m in values
           if (window is None or window[0] <= x <= window[1]) and m > 0.0]
    if len(pts) < 4:
        raise ValueError("slope estimate needs at least 4 positive points")
    lx = np.log([x for x, _ in pts])
    lm = np.log([m for _, m in pts])
    return float(np.polyfit(lx, lm, 1)[0])


# -- equivalence diagnostics ----------------------------------------------------

def _compare_kernel_upper(x, t, al: AlphaParam, r: float):
    return np.minimum((x / t) ** (2.0 * (al.alpha + 1.0)), (t / x) ** r)


def _compare_kernel_lower(x, t, k: int):
    return np.minimum((x / t) ** (k - 1), (x / t) ** k)


def equivalence_report(params: BesovParams, f: GaussPolyFunction,
                       phi: GaussPolyFunction,
                       sandwich_window=(1e-2, 1.0),
                       probe_ts=(0.05, 0.2, 1.0),
                       probe_xs=(0.05, 0.2, 1.0),
                       max_sandwich_ratio: float = 50.0) -> dict:
    """Numerical diagnostics for the four-way equivalence of the smoothness
    scales: the omega/K sandwich, the two one-sided convolution estimates,
    and the four truncated seminorms.

    PASS iff the sandwich ratio stays flat (|slope| small) and bounded and
    both one-sided estimates hold with finite recorded constants.  For p = 1
    only the direction controlled by the upper convolution estimate is
    asserted (the reverse estimate requires p > 1).  Any sub-computation
    failure yields INCONCLUSIVE, never PASS.
    """
    al, k, out = params.alpha, params.k, {}
    try:
        xs = np.asarray([x for x in params.x_grid
                         if sandwich_window[0] <= x <= sandwich_window[1]])
        om = np.array([omega(params, f, float(x)) for x in xs])
        ku = np.array([k_functional_upper(params, f, float(x)) for x in xs])
        ratio = om / (xs ** (k - 1) * ku)
        out["sandwich_ratio_min"] = float(ratio.min())
        out["sandwich_ratio_max"] = float(ratio.max())
        out["sandwich_slope"] = slope_estimate(list(zip(xs, ratio)))
        sandwich_ok = (ratio.max() / ratio.min() < max_sandwich_ratio
                       and abs(out["sandwich_slope"]) <= 0.15)

        # upper estimate: ||phi_t * f|| <= c int min{(x/t)^(2(a+1)), (t/x)^r}
        #                 omega_tilde(x) dx/x       (holds for all p >= 1)
        r = params.beta + k + 1.0
        xg = np.asarray(params.x_grid)
        omt = np.array([omega_tilde(params, f, float(x)) for x in xg])
        lx = np.log(xg)
        ratios_up = []
        for t in probe_ts:
            rhs = float(np.trapezoid(
                _compare_kernel_upper(xg, t, al, r) * omt, lx))
            lhs = conv_norm(params, f, phi, float(t))
            if rhs > 0.0:
                ratios_up.append(lhs / rhs)
        out["conv_upper_ratio_max"] = float(max(ratios_up))
        upper_ok = math.isfinite(out["conv_upper_ratio_max"])

        lower_ok = True
        if params.p > 1.0:
            # reverse estimate: omega_tilde(x) <= c int min{(x/t)^(k-1),
            #                   (x/t)^k} ||phi_t * f|| dt/t
            tg = np.asarray(params.t_grid)
            cn = np.array([conv_norm(params, f, phi, float(t)) for t in tg])
            lt = np.log(tg)
            ratios_lo = []
            for x in probe_xs:
                rhs = float(np.trapezoid(_compare_kernel_lower(x, tg, k) * cn, lt))
                lhs = omega_tilde(params, f, float(x))
                if rhs > 0.0:
                    ratios_lo.append(lhs / rhs)
            out["conv_lower_ratio_max"] = float(max(ratios_lo))
            lower_ok = math.isfinite(out["conv_lower_ratio_max"])

        for kind in ("B", "B_tilde", "K", "C"):
            est = seminorm(params, f, kind, phi=phi)
            out[f"seminorm_{kind}"] = est.value
            out[f"seminorm_{kind}_diverging"] = est.diverging
        out["status"] = ("PASS" if (sandwich_ok and upper_ok and lower_ok)
                         else "FAIL")
    except Exception as exc:   # noqa: BLE001 - any failure is inconclusive
        out["status"] = "INCONCLUSIVE"
        out["error"] = f"{type(exc).__name__}: {exc}"
    return out
