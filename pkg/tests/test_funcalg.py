import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dunkl_lab.special import AlphaParam
from dunkl_lab.funcalg import (GaussPolyFunction, dunkl_apply, dunkl_power,
                               dilate, hermite_phi, dunkl_fd, dunkl_fd_power)
from dunkl_lab.quad import integrate

AL = AlphaParam(0.5)

coeff_lists = st.lists(st.floats(-4, 4, allow_nan=False), min_size=1,
                       max_size=6)


def test_construction_trims_and_validates():
    f = GaussPolyFunction((1.0, 2.0, 0.0, 0.0), 1.0)
    assert f.coeffs == (1.0, 2.0)
    assert f.degree == 1
    with pytest.raises(ValueError):
        GaussPolyFunction((1.0,), -1.0)
    assert GaussPolyFunction((1.0,), 1.0).support_hint == 10.0


def test_evaluation_scalar_and_array():
    f = GaussPolyFunction((1.0, 0.0, 1.0), 0.5)   # (1+x^2) e^{-x^2/2}
    assert f(0.0) == 1.0
    assert f(1.0) == pytest.approx(2.0 * math.exp(-0.5))
    xs = np.array([-1.0, 0.0, 2.0])
    np.testing.assert_allclose(f(xs), (1 + xs ** 2) * np.exp(-0.5 * xs ** 2))


def test_normable_flag():
    assert GaussPolyFunction((1.0,), 1.0).is_normable
    assert not GaussPolyFunction((0.0, 1.0), 0.0).is_normable
    assert GaussPolyFunction((0.0,), 0.0).is_normable


def test_add_requires_matching_gaussian():
    f = GaussPolyFunction((1.0,), 1.0)
    g = GaussPolyFunction((1.0,), 0.5)
    with pytest.raises(ValueError):
        f.add(g)


@settings(max_examples=40, deadline=None)
@given(coeff_lists)
def test_reflect_and_odd_part(coeffs):
    f = GaussPolyFunction(tuple(coeffs), 1.0)
    xs = np.linspace(0.1, 2.5, 9)
    np.testing.assert_allclose(f.reflect()(xs), f(-xs), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(f.odd_part_over_x()(xs),
                               (f(xs) - f(-xs)) / (2.0 * xs),
                               rtol=1e-9, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(coeff_lists, st.floats(0.2, 2.0))
def test_derivative_matches_finite_differences(coeffs, s):
    f = GaussPolyFunction(tuple(coeffs), s)
    df = f.derivative()
    h = 1e-5
    for x in (0.3, -1.1, 2.0):
        fd = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)
        assert df(x) == pytest.approx(fd, rel=1e-7, abs=1e-7)


def test_mul_x():
    f = GaussPolyFunction((1.0, 2.0), 1.0)
    g = f.mul_x()
    assert g.coeffs == (0.0, 1.0, 2.0)
    assert g(1.5) == pytest.approx(1.5 * f(1.5))


def test_dunkl_apply_matches_fd_operator():
    rng = np.random.default_rng(42)
    for _ in range(8):
        coeffs = tuple(rng.uniform(-2, 2, size=4))
        f = GaussPolyFunction(coeffs, 1.0)
        lf = dunkl_apply(AL, f)
        a = float(rng.uniform(0.2, 2.0)) * float(rng.choice([-1.0, 1.0]))
        assert lf(a) == pytest.approx(dunkl_fd(AL, f, a, h=1e-4),
                                      rel=1e-8, abs=1e-8)


def test_dunkl_power_identity_and_errors():
    f = GaussPolyFunction((1.0, 1.0), 1.0)
    assert dunkl_power(AL, f, 0) is f
    with pytest.raises(ValueError):
        dunkl_power(AL, f, -1)
    # second power equals two applications
    g2 = dunkl_power(AL, f, 2)
    assert g2.coeffs == dunkl_apply(AL, dunkl_apply(AL, f)).coeffs


def test_dunkl_on_monomials_closed_form():
    # L x^2 = 2x, L x = 1 + (2a+1) = 2(a+1) for the even reflection part
    a = AL.alpha
    x2 = GaussPolyFunction((0.0, 0.0, 1.0), 0.0)
    assert dunkl_apply(AL, x2).coeffs == (0.0, 2.0)
    x1 = GaussPolyFunction((0.0, 1.0), 0.0)
    assert dunkl_apply(AL, x1).coeffs == (2.0 * (a + 1.0),)


def test_dilate_pointwise():
    a = AL.alpha
    phi = GaussPolyFunction((1.0, 0.0, -2.0), 1.0)
    t = 0.6
    phit = dilate(AL, phi, t)
    xs = np.linspace(-2, 2, 11)
    np.testing.assert_allclose(phit(xs),
                               t ** (-2.0 * (a + 1.0)) * phi(xs / t),
                               rtol=1e-12)
    with pytest.raises(ValueError):
        dilate(AL, phi, 0.0)


def test_dilate_preserves_measure_integral():
    # int phi_t dmu_a is independent of t by the scaling of the weight
    phi = GaussPolyFunction((1.0,), 1.0)

    def mass(t):
        g = dilate(AL, phi, t)
        val, _ = integrate(lambda y: g(y) * AL.weight(y), 0.0, 40.0)
        return 2.0 * val / AL.norm_const

    assert mass(0.5) == pytest.approx(mass(1.0), rel=1e-9)
    assert mass(2.0) == pytest.approx(mass(1.0), rel=1e-9)


@pytest.mark.parametrize("n0,k", [(1, 1), (1, 2), (2, 3), (2, 4)])
def test_hermite_phi_vanishing_even_moments(n0, k):
    phi = hermite_phi(AL, n0, k)
    scale = abs(phi(0.3)) + 1.0
    for i in range((k - 1) // 2 + 1):
        val, _ = integrate(lambda y, i=i: y ** (2 * i) * phi(y) * AL.weight(y),
                           0.0, 12.0)
        assert abs(val) / scale < 1e-12
    # the next even moment must NOT vanish (phi is exactly degree 2 n0)
    val, _ = integrate(lambda y: y ** (2 * n0) * phi(y) * AL.weight(y),
                       0.0, 12.0)
    assert abs(val) > 1e-6


def test_hermite_phi_rejects_low_degree():
    with pytest.raises(ValueError):
        hermite_phi(AL, 1, 3)   # needs n0 > floor((k-1)/2) = 1
    with pytest.raises(ValueError):
        hermite_phi(AL, 0, 1)


def test_record_roundtrip():
    f = GaussPolyFunction((1.0, -0.5, 2.0), 0.25)
    g = GaussPolyFunction.from_record(f.to_record())
    assert g.coeffs == f.coeffs and g.gauss_scale == f.gauss_scale


def test_dunkl_fd_power_consistency():
    f = GaussPolyFunction((1.0, 0.5, 1.0), 1.0)
    exact = dunkl_power(AL, f, 2)(0.8)
    assert dunkl_fd_power(AL, f, 0.8, 2, h=1e-3) == pytest.approx(
        exact, rel=1e-5)
