import math

import pytest

from hardykit.errors import ParameterError
from hardykit.geometry import ModelGeometry
from hardykit.specfun import bessel_j, bessel_zero
from hardykit.spectral import spectral_lambda1


class TestFlatBalls:
    def test_unit_disk(self):
        res = spectral_lambda1(ModelGeometry(0.0, 2, 2.0), 1.0, 1000)
        exact = bessel_zero(0.0, 1) ** 2
        assert res.lambda1 == pytest.approx(exact, rel=2e-3)
        assert res.lambda1 == pytest.approx(exact, rel=1e-8)  # far better in practice

    def test_four_dimensional_ball(self):
        res = spectral_lambda1(ModelGeometry(0.0, 4, 2.0), 1.0, 1000)
        assert res.lambda1 == pytest.approx(bessel_zero(1.0, 1) ** 2, rel=1e-8)

    def test_scaling_in_radius(self):
        res = spectral_lambda1(ModelGeometry(0.0, 3, 2.0), 2.0, 800)
        assert res.lambda1 == pytest.approx(math.pi**2 / 4.0, rel=1e-8)

    def test_eigenfunction_is_bessel_profile(self):
        res = spectral_lambda1(ModelGeometry(0.0, 2, 2.0), 1.0, 800)
        j01 = bessel_zero(0.0, 1)
        worst = max(abs(v - bessel_j(0.0, j01 * t)) for t, v in zip(res.ts, res.v))
        assert worst < 1e-6


class TestHyperbolicBalls:
    def test_large_ball_approaches_quarter(self):
        res = spectral_lambda1(ModelGeometry(-1.0, 2, 2.0), 40.0, 2000)
        assert 0.25 <= res.lambda1 <= 0.26

    def test_ordering_against_flat(self):
        for n in (2, 3):
            for R in (1.0, 2.0):
                hyp = spectral_lambda1(ModelGeometry(-1.0, n, 2.0), R, 600)
                flat = spectral_lambda1(ModelGeometry(0.0, n, 2.0), R, 600)
                err = abs(hyp.lambda1_raw - hyp.lambda1_coarse) \
                    + abs(flat.lambda1_raw - flat.lambda1_coarse)
                assert hyp.lambda1 - flat.lambda1 > 3.0 * err


class TestNumericalBehavior:
    def test_second_order_convergence(self):
        geo = ModelGeometry(0.0, 2, 2.0)
        lams = {N: spectral_lambda1(geo, 1.0, N).lambda1_raw
                for N in (250, 500, 1000)}
        d1 = abs(lams[250] - lams[500])
        d2 = abs(lams[500] - lams[1000])
        assert d1 / d2 >= 3.5

    def test_richardson_improves(self):
        geo = ModelGeometry(0.0, 2, 2.0)
        exact = bessel_zero(0.0, 1) ** 2
        res = spectral_lambda1(geo, 1.0, 500)
        assert abs(res.lambda1 - exact) < abs(res.lambda1_raw - exact)

    def test_validation(self):
        with pytest.raises(ParameterError):
            spectral_lambda1(ModelGeometry(0.0, 2, 2.5), 1.0, 400)
        with pytest.raises(ParameterError):
            spectral_lambda1(ModelGeometry(0.0, 2, 2.0), -1.0, 400)
        with pytest.raises(ParameterError):
            spectral_lambda1(ModelGeometry(0.0, 2, 2.0), 1.0, 100)
