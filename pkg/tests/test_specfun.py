import math

import pytest

from hardykit.errors import (DomainError, PoleError, UnsupportedRangeError)
from hardykit.specfun import (bessel_j, bessel_ratio, bessel_ratio_dx, bessel_zero,
                              gamma, hyp2f1, hyp2f1_dz, rgamma)
from oracles import (bessel_series_direct, bisect_root, central_diff,
                     gauss_series_direct, mittag_leffler_ratio)


class TestGamma:
    def test_small_integers(self):
        assert gamma(1.0) == 1.0
        assert gamma(5.0) == 24.0

    def test_half(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_poles(self):
        for x in (0.0, -1.0, -2.0, -7.0):
            with pytest.raises(PoleError):
                gamma(x)

    def test_recurrence_identity(self):
        x = 0.5
        while x <= 50.0:
            assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)
            x += 0.37

    def test_reflection_region(self):
        # Gamma(-0.5) = -2 sqrt(pi)
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)

    def test_rgamma_pole_is_zero(self):
        assert rgamma(-3.0) == 0.0
        assert rgamma(2.5) == pytest.approx(1.0 / gamma(2.5), rel=1e-15)


class TestBesselJ:
    def test_at_zero(self):
        assert bessel_j(0.0, 0.0) == 1.0
        assert bessel_j(1.0, 0.0) == 0.0

    def test_first_zero_by_bisection_oracle(self):
        j01 = bisect_root(lambda x: bessel_series_direct(0.0, x), 2.0, 3.0)
        assert abs(bessel_j(0.0, j01)) < 1e-10

    def test_against_direct_series_moderate_x(self):
        for nu in (0.0, 0.5, 1.0, 3.3):
            for x in (0.3, 1.0, 4.0, 9.0):
                assert bessel_j(nu, x) == pytest.approx(
                    bessel_series_direct(nu, x), abs=1e-12)

    def test_half_integer_closed_form(self):
        # J_{1/2}(x) = sqrt(2/(pi x)) sin x
        for x in (0.7, 2.0, 40.0, 130.0):
            ref = math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
            assert bessel_j(0.5, x) == pytest.approx(ref, abs=1e-11)

    def test_large_argument_precision(self):
        # elevated-precision path: same series, more digits
        for nu, x in ((0.0, 50.0), (7.3, 193.0), (50.0, 200.0), (0.0, 200.0)):
            ref = math.sqrt(2.0 / (math.pi * x)) * math.cos(
                x - nu * math.pi / 2.0 - math.pi / 4.0)
            # asymptotic form is only O(1/x) accurate; use it as a sanity band
            assert abs(bessel_j(nu, x) - ref) < 2.0 / x + 0.2

    def test_box_limits(self):
        with pytest.raises(UnsupportedRangeError):
            bessel_j(51.0, 1.0)
        with pytest.raises(UnsupportedRangeError):
            bessel_j(0.0, 201.0)
        with pytest.raises(UnsupportedRangeError):
            bessel_j(0.0, -1.0)


class TestBesselZero:
    def test_first_zero_value(self):
        assert bessel_zero(0.0, 1) == pytest.approx(2.4048, abs=5e-5)

    def test_half_order_zeros_are_k_pi(self):
        for k in (1, 2, 5, 20):
            assert bessel_zero(0.5, k) == pytest.approx(k * math.pi, abs=1e-10)

    def test_j11_by_bisection_oracle(self):
        ref = bisect_root(lambda x: bessel_series_direct(1.0, x), 3.0, 4.0)
        assert bessel_zero(1.0, 1) == pytest.approx(ref, abs=1e-10)
        assert ref == pytest.approx(3.8317059702, abs=1e-9)

    def test_residual_at_reported_zeros(self):
        for nu in (0.0, 0.5, 1.0, 2.0, 5.0, 17.5, 50.0):
            for k in (1, 2, 3, 10, 20):
                assert abs(bessel_j(nu, bessel_zero(nu, k))) <= 1e-9

    def test_interlacing(self):
        for nu in (0.0, 0.5, 1.0, 2.0, 5.0):
            assert bessel_zero(nu, 1) < bessel_zero(nu + 1.0, 1) < bessel_zero(nu, 2)

    def test_zeros_strictly_increasing_in_k(self):
        for nu in (0.0, 3.0, 50.0):
            zs = [bessel_zero(nu, k) for k in range(1, 21)]
            assert all(a < b for a, b in zip(zs, zs[1:]))

    def test_range_limits(self):
        with pytest.raises(UnsupportedRangeError):
            bessel_zero(0.0, 0)
        with pytest.raises(UnsupportedRangeError):
            bessel_zero(0.0, 21)


class TestBesselRatio:
    def test_half_order_closed_form(self):
        # J_{3/2}/J_{1/2} = 1/x - cot x; at x = pi/2 this is 2/pi
        x = math.pi / 2.0
        assert bessel_ratio(0.5, x) == pytest.approx(2.0 / math.pi, rel=1e-12)

    def test_mittag_leffler_partial_sums(self):
        zeros = [bessel_zero(0.0, k) for k in range(1, 21)]
        ml = mittag_leffler_ratio(0.0, 1.0, zeros, K=20)
        assert bessel_ratio(0.0, 1.0) == pytest.approx(ml, abs=1e-6)

    def test_small_x_leading_term(self):
        assert bessel_ratio(0.0, 1e-4) / 1e-4 == pytest.approx(0.5, abs=1e-6)

    def test_positive_on_domain(self):
        for nu in (0.0, 1.0, 0.5, 1.5, 2.0):  # includes (n-2)/2 for n = 3..6
            j1 = bessel_zero(nu, 1)
            for i in range(1, 40):
                x = j1 * i / 40.0
                assert bessel_ratio(nu, x) > 0.0

    def test_domain_error_at_first_zero(self):
        j1 = bessel_zero(0.0, 1)
        with pytest.raises(DomainError):
            bessel_ratio(0.0, j1)
        with pytest.raises(DomainError):
            bessel_ratio(0.0, j1 + 0.5)

    def test_derivative_rule_vs_finite_difference(self):
        for nu, x in ((0.0, 1.0), (1.0, 2.5), (0.5, 1.2)):
            fd = central_diff(lambda y: bessel_ratio(nu, y), x, 1e-6)
            assert bessel_ratio_dx(nu, x) == pytest.approx(fd, abs=1e-7)


class TestHyp2f1:
    def test_at_zero(self):
        assert hyp2f1(0.3, 1.7, 2.2, 0.0) == 1.0

    def test_log_closed_form(self):
        # F(1,1;2;z) = -log(1-z)/z
        assert hyp2f1(1.0, 1.0, 2.0, -1.0) == pytest.approx(math.log(2.0), rel=1e-12)
        for z in (-0.5, -3.0, -30.0):
            assert hyp2f1(1.0, 1.0, 2.0, z) == pytest.approx(
                -math.log1p(-z) / z, rel=1e-11)

    def test_direct_series_oracle_small_z(self):
        for (a, b, c) in ((0.3, 1.7, 1.0), (-1.2, 2.0, 0.7), (2.0, 2.0, 3.5)):
            for z in (-0.1, -0.45):
                assert hyp2f1(a, b, c, z) == pytest.approx(
                    gauss_series_direct(a, b, c, z), rel=1e-12)

    def test_pfaff_self_consistency(self):
        # F(A-B, A+B; 1; -z) = (1+z)^(-A-B) F(1-A+B, A+B; 1; z/(1+z)); the
        # right side has a positive argument, evaluated by the direct-series
        # oracle (all terms positive, plain ratio-test convergence)
        A, B, z = 0.5, 1.0, 3.0
        lhs = hyp2f1(A - B, A + B, 1.0, -z)
        rhs = (1.0 + z) ** (-A - B) * _pfaff_rhs(A, B, z)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_symmetry_is_bitwise(self):
        for z in (-0.3, -2.0, -80.0):
            assert hyp2f1(0.3, 1.7, 1.0, z) == hyp2f1(1.7, 0.3, 1.0, z)

    def test_connection_formula_agrees_with_pfaff_series(self):
        # the two evaluation paths must agree where both converge
        from hardykit.specfun import _hyp2f1_bigz, _series_2f1

        for (a, b, c) in ((0.25, 1.85, 1.3), (0.3, 1.7, 1.0), (-0.4, 1.1, 2.0)):
            for z in (-50.0, -100.0, -2000.0):
                w = z / (z - 1.0)
                pfaff = (1.0 - z) ** (-a) * _series_2f1(a, c - b, c, w)
                bigz = _hyp2f1_bigz(a, b, c, z)
                assert bigz == pytest.approx(pfaff, rel=1e-9)

    def test_polynomial_termination(self):
        # a = -2 gives a quadratic in z: F(-2,b;c;z)
        b, c = 1.4, 2.2
        for z in (-0.7, -5.0):
            exact = 1.0 + (-2.0) * b / c * z + \
                ((-2.0) * (-1.0) / 2.0) * (b * (b + 1.0)) / (c * (c + 1.0)) * z * z
            assert hyp2f1(-2.0, b, c, z) == pytest.approx(exact, rel=1e-12)

    def test_c_pole_rejected(self):
        with pytest.raises(PoleError):
            hyp2f1(1.0, 1.0, 0.0, -1.0)
        with pytest.raises(PoleError):
            hyp2f1(1.0, 1.0, -3.0, -1.0)

    def test_positive_z_rejected(self):
        with pytest.raises(UnsupportedRangeError):
            hyp2f1(1.0, 1.0, 2.0, 0.5)


def _pfaff_rhs(A: float, B: float, z: float) -> float:
    # direct series for F(1-A+B, A+B; 1; w) at w = z/(1+z) in (0,1): fine as
    # an oracle since all terms are positive and the ratio test converges
    w = z / (1.0 + z)
    return gauss_series_direct(1.0 - A + B, A + B, 1.0, w, terms=2000)


class TestHyp2f1Derivative:
    def test_at_zero(self):
        a, b, c = 0.7, 1.9, 2.4
        assert hyp2f1_dz(a, b, c, 0.0) == pytest.approx(a * b / c, rel=1e-14)

    def test_log_case_derivative(self):
        # d/dz [-log(1-z)/z] at z = -1 equals log 2 - 1/2
        assert hyp2f1_dz(1.0, 1.0, 2.0, -1.0) == pytest.approx(
            math.log(2.0) - 0.5, rel=1e-11)

    def test_finite_difference(self):
        a, b, c, z = 0.3, 1.7, 1.0, -2.0
        fd = central_diff(lambda y: hyp2f1(a, b, c, y), z, 1e-6)
        assert hyp2f1_dz(a, b, c, z) == pytest.approx(fd, abs=1e-7)


class TestBesselBoxCrossCheck:
    def test_random_sample_against_mpmath(self):
        # mpmath.besselj uses hypercomb machinery, independent of the
        # ascending-series loop under test; the box bound is 1e-11 absolute
        import random

        import mpmath

        rng = random.Random(2718)
        worst = 0.0
        for _ in range(60):
            nu = rng.uniform(0.0, 50.0)
            x = rng.uniform(0.0, 200.0)
            ref = float(mpmath.besselj(nu, x))
            worst = max(worst, abs(bessel_j(nu, x) - ref))
        assert worst <= 1e-11, worst

    def test_zero_sample_against_mpmath(self):
        import mpmath

        for nu in (0.0, 2.5, 17.0, 50.0):
            for k in (1, 3, 20):
                ref = float(mpmath.besseljzero(nu, k))
                assert bessel_zero(nu, k) == pytest.approx(ref, abs=1e-10)
