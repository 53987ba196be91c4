import math

import numpy as np
import pytest
from scipy.special import jv

from dunkl_lab.special import (AlphaParam, gamma_fn, pochhammer,
                               bessel_j_normalized, dunkl_kernel,
                               dunkl_kernel_it, laguerre, hermite_generalized)
from dunkl_lab.funcalg import dunkl_fd

ALPHAS = [-0.25, 0.5, 1.5]


def test_alpha_param_validation():
    with pytest.raises(ValueError):
        AlphaParam(-0.5)
    a = AlphaParam(0.5)
    assert a.norm_const == pytest.approx(2.0 ** 1.5 * math.gamma(1.5))
    assert a.weight_exp == pytest.approx(2.0)


def test_gamma_values():
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-12)
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-12)
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    with pytest.raises(ValueError):
        gamma_fn(0.0)


def test_pochhammer_against_gamma_ratio():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = float(rng.uniform(0.3, 4.0))
        n = int(rng.integers(0, 6))
        assert pochhammer(a, n) == pytest.approx(
            math.gamma(a + n) / math.gamma(a), rel=1e-12)


def test_bessel_normalized_at_zero_and_half_order():
    for a in ALPHAS:
        assert bessel_j_normalized(a, 0.0) == 1.0
    # closed form: order 1/2 gives sin(z)/z
    for z in (0.3, math.pi, 7.5):
        assert bessel_j_normalized(0.5, z) == pytest.approx(
            math.sin(z) / z, abs=1e-13)


def test_bessel_normalized_series_and_evenness():
    z = 0.01
    a = 0.3
    expected = 1.0 - z * z / (4.0 * (a + 1.0))
    assert bessel_j_normalized(a, z) == pytest.approx(expected, abs=1e-9)
    zs = np.linspace(-3, 3, 31)
    np.testing.assert_allclose(bessel_j_normalized(a, zs),
                               bessel_j_normalized(a, -zs), rtol=1e-14)


def test_bessel_normalized_matches_scipy_away_from_zero():
    for a in (0.25, 1.0, 2.5):
        for z in (0.5, 2.0, 11.0):
            ref = 2.0 ** a * math.gamma(a + 1.0) * jv(a, z) / z ** a
            assert bessel_j_normalized(a, z) == pytest.approx(ref, rel=1e-12)


def test_dunkl_kernel_initial_value_and_bound():
    for a in ALPHAS:
        al = AlphaParam(a)
        assert complex(dunkl_kernel(al, 3.0 - 1.0j, 0.0)) == pytest.approx(1.0)
        xs = np.linspace(-6, 6, 61)
        vals = dunkl_kernel_it(AlphaParam(0.7), 3.0, xs)
        assert np.max(np.abs(vals)) <= 1.0 + 1e-12


def test_dunkl_kernel_eigen_equation_fd():
    # the kernel solves the first-order eigenproblem for the Dunkl operator
    al = AlphaParam(1.0)
    lam = 2.0
    g = lambda x: float(dunkl_kernel(al, lam, x).real)
    val = dunkl_fd(al, g, 0.5, h=1e-4)
    assert val == pytest.approx(lam * g(0.5), rel=1e-9)


def test_dunkl_kernel_real_branch_consistent_with_series():
    al = AlphaParam(0.5)
    for lam, x in [(0.7, 0.9), (2.0, -1.3)]:
        # brute-force series of the unique analytic eigenfunction
        total, term = 0.0, 1.0
        z = lam * x
        series = sum((z / 2.0) ** (2 * m) / (pochhammer(al.alpha + 1.0, m)
                                             * math.factorial(m))
                     for m in range(40))
        series += sum((z / 2.0) ** (2 * m + 1)
                      / (pochhammer(al.alpha + 1.0, m + 1) * math.factorial(m))
                      for m in range(40))
        assert complex(dunkl_kernel(al, lam, x)).real == pytest.approx(
            series, rel=1e-12)


def test_laguerre_small_cases():
    assert laguerre(0, 0.7, 3.0) == 1.0
    assert laguerre(1, 0.5, 2.0) == pytest.approx(-0.5)
    assert laguerre(2, 0.0, 1.0) == pytest.approx(-0.5)


def test_hermite_generalized_parity_and_laguerre_link():
    a = 0.5
    xs = np.linspace(-2, 2, 17)
    for n in range(5):
        vals = np.array([hermite_generalized(n, a, float(x)) for x in xs])
        flip = np.array([hermite_generalized(n, a, float(-x)) for x in xs])
        np.testing.assert_allclose(vals, (-1.0) ** n * flip, atol=1e-10)
    x = 1.3
    assert hermite_generalized(2, a, x) == pytest.approx(
        -4.0 * laguerre(1, a, x * x), rel=1e-12)
    assert hermite_generalized(3, a, x) == pytest.approx(
        -8.0 * x * laguerre(1, a + 1.0, x * x), rel=1e-12)
