import math

import pytest

from hardykit.errors import DomainError, ParameterError
from hardykit.exprdsl import parse
from hardykit.geometry import (ComparisonL, ModelGeometry, ball_volume, comparison_L,
                               ct, d_deficit, s, unit_ball_volume, volume_density)
from oracles import coth_exp, simpson, sinh_series

E2 = ModelGeometry(0.0, 2, 2.0)
E3 = ModelGeometry(0.0, 3, 2.0)
H1_2 = ModelGeometry(-1.0, 2, 2.0)
H1_3 = ModelGeometry(-1.0, 3, 2.0)
H1_4 = ModelGeometry(-1.0, 4, 2.0)


def log_grid(lo, hi, n):
    return [lo * (hi / lo) ** (i / (n - 1)) for i in range(n)]


class TestModelGeometry:
    def test_rejects_positive_curvature(self):
        with pytest.raises(ParameterError):
            ModelGeometry(0.5, 3, 2.0)

    def test_rejects_bad_dimension_and_exponent(self):
        with pytest.raises(ParameterError):
            ModelGeometry(0.0, 1, 2.0)
        with pytest.raises(ParameterError):
            ModelGeometry(0.0, 3, 1.0)

    def test_conjugate_exponent(self):
        geo = ModelGeometry(0.0, 3, 3.0)
        assert geo.p_conj == pytest.approx(1.5)


class TestCt:
    def test_flat_branch(self):
        assert ct(E3, 2.0) == 0.5

    def test_coth_limit_at_infinity(self):
        v = ct(H1_2, 50.0)
        assert 1.0 <= v <= 1.0 + 1e-12

    def test_against_exponential_oracle(self):
        # oracle: coth(1) = (e^2+1)/(e^2-1) = 1.3130352854993312
        assert ct(H1_2, 1.0) == pytest.approx(coth_exp(1.0), abs=1e-14)
        assert coth_exp(1.0) == pytest.approx(1.3130352855, abs=1e-10)

    def test_nonpositive_t_rejected(self):
        with pytest.raises(DomainError):
            ct(E3, 0.0)
        with pytest.raises(DomainError):
            ct(H1_2, -1.0)

    def test_strictly_decreasing(self):
        # strict monotonicity until coth saturates at its asymptote within
        # float resolution (sqrt(-kappa) t ~ 17.5); non-increasing beyond
        for geo in (E3, H1_2, ModelGeometry(-2.0, 3, 2.0)):
            t_strict = 1e3 if geo.kappa == 0.0 else 17.5 / math.sqrt(-geo.kappa)
            grid = log_grid(1e-6, t_strict, 150)
            vals = [ct(geo, t) for t in grid]
            assert all(a > b for a, b in zip(vals, vals[1:]))
            tail = [ct(geo, t) for t in log_grid(t_strict, 1e3, 60)]
            assert all(a >= b for a, b in zip(tail, tail[1:]))

    def test_taylor_window_smooth(self):
        # values straddling the series/direct switch agree to full precision
        for t in (0.9e-4, 1.0e-4, 1.1e-4):
            direct = math.sqrt(1.0) / math.tanh(t)  # kappa = -1
            assert ct(H1_2, t) == pytest.approx(direct, rel=1e-12)


class TestS:
    def test_flat_branch(self):
        assert s(E3, 3.0) == 3.0

    def test_zero(self):
        assert s(H1_2, 0.0) == 0.0

    def test_against_series_oracle(self):
        assert s(H1_2, 1.0) == pytest.approx(sinh_series(1.0), rel=1e-14)
        assert sinh_series(1.0) == pytest.approx(1.1752011936, abs=1e-10)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            s(H1_2, -0.1)

    def test_strictly_increasing(self):
        for geo in (E3, H1_2):
            grid = log_grid(1e-6, 1e2, 200)
            vals = [s(geo, t) for t in grid]
            assert all(a < b for a, b in zip(vals, vals[1:]))


class TestDeficit:
    def test_zero_at_origin(self):
        for geo in (E3, H1_2, ModelGeometry(-2.0, 2, 2.0)):
            assert d_deficit(geo, 0.0) == 0.0

    def test_flat_is_identically_zero(self):
        assert d_deficit(E3, 7.0) == 0.0

    def test_against_ct_oracle(self):
        assert d_deficit(H1_2, 1.0) == pytest.approx(coth_exp(1.0) - 1.0, abs=1e-13)

    def test_nonnegative_on_log_grids(self):
        for kappa in (0.0, -0.5, -1.0, -2.0):
            geo = ModelGeometry(kappa, 2, 2.0)
            for t in log_grid(1e-6, 1e3, 400):
                assert d_deficit(geo, t) >= 0.0

    def test_small_t_taylor_accuracy(self):
        # D ~ (-kappa) t^2/3; direct evaluation would cancel catastrophically
        for kappa in (-1.0, -2.0):
            geo = ModelGeometry(kappa, 2, 2.0)
            for t in (1e-8, 1e-6, 5e-5):
                expected = -kappa * t * t / 3.0
                assert d_deficit(geo, t) == pytest.approx(expected, rel=1e-8)


class TestVolumes:
    def test_density_examples(self):
        assert volume_density(E3, 2.0) == 4.0
        assert volume_density(ModelGeometry(0.0, 2, 2.0), 5.0) == 5.0
        assert volume_density(H1_2, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-15)

    def test_flat_ball_volumes(self):
        assert ball_volume(E2, 1.0) == pytest.approx(math.pi, rel=1e-15)
        assert ball_volume(E3, 2.0) == pytest.approx(4.0 * math.pi / 3.0 * 8.0, rel=1e-15)

    def test_hyperbolic_disk_closed_form(self):
        # oracle: 2 pi (cosh R - 1)
        assert ball_volume(H1_2, 1.0) == pytest.approx(
            2.0 * math.pi * (math.cosh(1.0) - 1.0), rel=1e-14)

    def test_omega_n(self):
        assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
        assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)

    def test_matches_quadrature_of_density(self):
        # independent oracle: composite Simpson on the density
        for geo, R in ((E3, 1.7), (H1_2, 2.3), (H1_4, 1.1),
                       (ModelGeometry(-0.3, 5, 2.0), 0.9),
                       (ModelGeometry(-1e-7, 3, 2.0), 1.0)):
            quad = geo.n * unit_ball_volume(geo.n) * simpson(
                lambda t: s(geo, t) ** (geo.n - 1), 0.0, R, 8192)
            assert ball_volume(geo, R) == pytest.approx(quad, rel=1e-10)


class TestComparisonL:
    def test_flat_curvature_kind(self):
        assert comparison_L(E3, "constant_curvature", 1.0) == 2.0

    def test_floor_value(self):
        assert comparison_L(H1_4, "constant_floor", 123.0) == 3.0

    def test_floor_rejected_for_flat(self):
        with pytest.raises(ParameterError):
            comparison_L(E3, "constant_floor", 1.0)

    def test_psi_kind_matches_curvature_kind(self):
        psi = parse("s(t)")
        for kappa in (0.0, -1.0, -2.0):
            geo = ModelGeometry(kappa, 3, 2.0)
            for t in (0.3, 1.0, 4.0):
                a = comparison_L(geo, "psi", t, psi=psi)
                b = comparison_L(geo, "constant_curvature", t)
                assert a == pytest.approx(b, rel=1e-12)

    def test_psi_sinh_explicit(self):
        psi = parse("sinh(t)")
        geo = ModelGeometry(-1.0, 2, 2.0)
        assert comparison_L(geo, "psi", 1.0, psi=psi) == pytest.approx(
            coth_exp(1.0), rel=1e-13)

    def test_psi_nonpositive_rejected(self):
        psi = parse("t - 5")
        with pytest.raises(DomainError):
            comparison_L(E3, "psi", 1.0, psi=psi)

    def test_curvature_dominates_floor(self):
        geo = ModelGeometry(-1.5, 4, 2.0)
        for t in log_grid(1e-3, 50.0, 50):
            assert comparison_L(geo, "constant_curvature", t) >= \
                comparison_L(geo, "constant_floor", t)

    def test_comparison_object_round_trip(self):
        layer = ComparisonL(H1_2, "constant_curvature")
        assert layer.eval(1.0) == pytest.approx(coth_exp(1.0), rel=1e-13)
