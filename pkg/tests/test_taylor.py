import math

import numpy as np
import pytest

from dunkl_lab.special import AlphaParam, pochhammer
from dunkl_lab.funcalg import GaussPolyFunction, dunkl_power, dunkl_fd
from dunkl_lab.dunklcore import translate
from dunkl_lab.taylor import (ResonantAlphaError, b_coeff, b_poly,
                              ThetaKernel, theta, theta_mass, theta0_moment,
                              remainder, remainder_profile,
                              taylor_identity_residual,
                              remainder_recursion_residual,
                              iterated_integral_I, symmetric_remainder,
                              symmetric_remainder_residual,
                              remainder_norm_coeff,
                              remainder_norm_coeff_same_order)

AL = AlphaParam(0.5)
F = GaussPolyFunction((1.0, 0.5, 0.0, 0.2), 1.0)


def test_b_coeff_closed_forms():
    a = AL.alpha
    assert b_coeff(AL, 0, 1.7) == 1.0
    assert b_coeff(AL, 1, 1.7) == pytest.approx(1.7 / (2.0 * (a + 1.0)))
    assert b_coeff(AL, 2, 1.7) == pytest.approx(1.7 ** 2 / (4.0 * (a + 1.0)))
    assert b_coeff(AL, 3, 0.8) == pytest.approx(
        (0.8 / 2.0) ** 3 / ((a + 1.0) * (a + 2.0)))
    with pytest.raises(ValueError):
        b_coeff(AL, -1, 1.0)


def test_b_poly_matches_coefficient():
    xs = np.linspace(-2, 2, 9)
    for p in range(5):
        np.testing.assert_allclose(b_poly(AL, p)(xs), b_coeff(AL, p, xs),
                                   rtol=1e-13)


def test_b_coeff_dunkl_ladder():
    # L b_{p+1} = b_p, the defining property of the coefficient family
    from dunkl_lab.funcalg import dunkl_apply
    for p in range(4):
        lb = dunkl_apply(AL, b_poly(AL, p + 1))
        xs = np.linspace(0.3, 2.0, 7)
        np.testing.assert_allclose(lb(xs), b_coeff(AL, p, xs), rtol=1e-12)


def test_theta0_closed_form():
    # Theta_0(x, y) = sgn(x)/(2 A(x)) + sgn(y)/(2 A(y))
    kern = ThetaKernel(AL, 0)
    for x, y in [(1.3, 0.5), (-0.9, 0.4), (1.0, -0.6)]:
        ref = (math.copysign(0.5, x) / AL.weight(x)
               + math.copysign(0.5, y) / AL.weight(y))
        assert theta(kern, x, y) == pytest.approx(ref, rel=1e-13)


def test_theta_domain_checks():
    kern = ThetaKernel(AL, 1)
    with pytest.raises(ValueError):
        theta(kern, 0.0, 0.0)
    with pytest.raises(ValueError):
        theta(kern, 0.5, 0.9)
    with pytest.raises(ValueError):
        ThetaKernel(AL, -1)
    with pytest.raises(ValueError):
        ThetaKernel(AL, 1, eval_mode="nope")


@pytest.mark.parametrize("k", [1, 2])
def test_theta_symbolic_vs_numeric(k):
    sym = ThetaKernel(AL, k)
    num = ThetaKernel(AL, k, eval_mode="numeric_nested")
    for x, y in [(1.4, 0.6), (1.4, -0.6), (-2.0, 1.1)]:
        assert theta(sym, x, y) == pytest.approx(theta(num, x, y), rel=1e-8)


def test_theta_resonant_alpha_refuses_symbolic():
    # alpha = 0: the u-step integrates an exponent -1 power
    al0 = AlphaParam(0.0)
    kern = ThetaKernel(al0, 1)
    with pytest.raises(ResonantAlphaError):
        theta(kern, 1.0, 0.5)
    # ... while the numeric path still works
    num = ThetaKernel(al0, 1, eval_mode="numeric_nested")
    assert np.isfinite(theta(num, 1.0, 0.5))


def test_theta_mass_against_coefficient_bound():
    for k in (1, 2, 3):
        for x in (0.4, 1.0, 2.2):
            m = theta_mass(AL, k, x)
            bound = (b_coeff(AL, k, x) + x * b_coeff(AL, k - 1, x))
            assert m <= bound + 1e-12
            assert m > 0.0


def test_theta0_moment_is_next_coefficient():
    for p in range(4):
        for x in (0.7, -1.2, 2.0):
            assert theta0_moment(AL, p, x) == pytest.approx(
                b_coeff(AL, p + 1, x), rel=1e-10, abs=1e-14)


def test_remainder_modes_agree():
    for x, a in [(0.8, 0.3), (-1.2, 0.0), (1.7, -0.9)]:
        ri = remainder(AL, 2, F, x, a, mode="integral")
        rr = remainder(AL, 2, F, x, a, mode="recurrence")
        assert ri == pytest.approx(rr, rel=1e-9, abs=1e-11)
    with pytest.raises(ValueError):
        remainder(AL, 2, F, 0.5, 0.1, mode="bogus")
    with pytest.raises(ValueError):
        remainder(AL, 0, F, 0.5, 0.1)


def test_taylor_exact_for_low_degree_polynomials():
    # if L^k f = 0 the remainder vanishes and the expansion is exact
    f = GaussPolyFunction((0.0, 0.0, 1.0), 0.0)   # x^2, killed by L^3
    x, a = 1.1, 0.4
    assert dunkl_power(AL, f, 3).coeffs == (0.0,)
    rhs = sum(b_coeff(AL, p, x) * dunkl_power(AL, f, p)(a) for p in range(3))
    assert translate(AL, f, x, a) == pytest.approx(rhs, rel=1e-12)
    assert remainder(AL, 3, f, x, a, mode="integral") == pytest.approx(
        0.0, abs=1e-14)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_taylor_identity(k):
    for x, a in [(0.9, 0.35), (-1.4, 0.0), (2.0, -0.7)]:
        scale = abs(translate(AL, F, x, a)) + 1.0
        assert taylor_identity_residual(AL, k, F, x, a) / scale < 1e-9


def test_remainder_recursion():
    for k in (2, 3):
        assert remainder_recursion_residual(AL, k, F, 1.1, 0.45) < 1e-9


def test_remainder_profile_vectorizes():
    prof = remainder_profile(AL, 2, F, 0.9)
    us = np.array([-0.8, 0.0, 0.5, 1.3])
    ref = [remainder(AL, 2, F, 0.9, float(u), mode="recurrence") for u in us]
    np.testing.assert_allclose(prof(us), ref, rtol=1e-11, atol=1e-13)


def test_iterated_integral_identities_fd():
    # L^k I_k(x, f) = R_k(x, f), the operator acting in the evaluation point
    x, a = 1.2, 0.45
    for k in (1, 2):
        g = lambda u, kk=k: iterated_integral_I(AL, kk, F, x, float(u))
        lhs = (dunkl_fd(AL, g, a, h=1e-3) if k == 1
               else _fd2(g, a))
        rhs = remainder(AL, k, F, x, a, mode="recurrence")
        assert lhs == pytest.approx(rhs, rel=1e-4, abs=1e-6)


def _fd2(g, a, h=1e-2):
    # two nested first-order Dunkl differences, cached
    from dunkl_lab.funcalg import dunkl_fd_power
    return dunkl_fd_power(AL, g, a, 2, h=h)


def test_iterated_integral_refuses_deep_nesting():
    with pytest.raises(ValueError):
        iterated_integral_I(AL, 5, F, 1.0, 0.3)
    with pytest.raises(ValueError):
        iterated_integral_I(AL, 1, F, 0.0, 0.3)


def test_symmetric_remainder_matches_direct_sum():
    for k in (1, 2, 3):
        assert symmetric_remainder_residual(AL, k, F, 1.3, 0.4) < 1e-9


def test_symmetric_remainder_even_in_x():
    v1 = symmetric_remainder(AL, 2, F, 0.9, 0.35)
    v2 = symmetric_remainder(AL, 2, F, -0.9, 0.35)
    assert v1 == pytest.approx(v2, rel=1e-11)


def test_norm_coefficients():
    assert remainder_norm_coeff(AL, 1, 2.0) == pytest.approx(math.sqrt(2.0))
    c = remainder_norm_coeff(AL, 3, 1.5)
    assert c == pytest.approx(math.sqrt(2.0) * (b_coeff(AL, 2, 1.5)
                                                + 1.5 * b_coeff(AL, 1, 1.5)))
    assert remainder_norm_coeff_same_order(AL, 3, 1.5) == pytest.approx(
        c + abs(b_coeff(AL, 2, 1.5)))
    with pytest.raises(ValueError):
        remainder_norm_coeff(AL, 0, 1.0)
