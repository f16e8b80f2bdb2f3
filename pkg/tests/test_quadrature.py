import math

import numpy as np
import pytest

from twistmodel.numerics import quadrature
from twistmodel.numerics.errors import QuadratureError


def _half_disk_chord_integral(a: float, lower: float, upper: float) -> float:
    # Antiderivative of 2 sqrt(a^2 - x^2).
    def antiderivative(x):
        return x * math.sqrt(max(a * a - x * x, 0.0)) + a * a * math.asin(x / a)
    return antiderivative(upper) - antiderivative(lower)


class TestGaussLegendre:
    def test_weights_sum_to_interval_length(self):
        knots, weights = quadrature.gauss_legendre(2.0, 5.0, 16)
        assert len(knots) == 16
        np.testing.assert_allclose(weights.sum(), 3.0, rtol=1e-14)
        assert np.all((knots > 2.0) & (knots < 5.0))

    def test_exact_for_degree_2n_minus_1(self):
        # 5 points integrate x^9 exactly.
        value = quadrature.fixed_gauss(lambda x: x ** 9, 0.0, 1.0, 5)
        np.testing.assert_allclose(value, 0.1, rtol=1e-14)

    def test_constant_function_broadcasts(self):
        assert quadrature.fixed_gauss(lambda x: 2.5, 0.0, 3.0) == pytest.approx(7.5, rel=1e-14)


class TestIntegrate1d:
    def test_polynomial(self):
        assert abs(quadrature.integrate_1d(lambda x: x ** 2, 0.0, 1.0) - 1.0 / 3.0) < 1e-14

    def test_constant(self):
        assert quadrature.integrate_1d(lambda x: np.full_like(x, 2.5), 0.0, 3.0) == pytest.approx(7.5, rel=1e-14)

    def test_semicircle_chord_with_square_root_endpoint(self):
        value = quadrature.integrate_1d(
            lambda x: 2.0 * np.sqrt(np.maximum(144.0 - x ** 2, 0.0)), 9.0, 12.0, max_depth=20)
        expected = _half_disk_chord_integral(12.0, 9.0, 12.0)
        assert expected == pytest.approx(32.638, abs=1e-3)
        assert value == pytest.approx(expected, abs=1e-7)

    def test_empty_interval(self):
        assert quadrature.integrate_1d(np.sin, 1.0, 1.0) == 0.0

    def test_reversed_bounds(self):
        with pytest.raises(ValueError):
            quadrature.integrate_1d(np.sin, 1.0, 0.0)

    def test_non_finite_integrand(self):
        with pytest.raises(QuadratureError):
            quadrature.integrate_1d(lambda x: np.full_like(x, np.inf), 0.0, 1.0)

    def test_square_root_endpoint_does_not_converge(self):
        # 32 and 64 points differ by ~4e-6 relative on sqrt(x).
        with pytest.raises(QuadratureError):
            quadrature.integrate_1d(np.sqrt, 0.0, 1.0)

    def test_bisection_depth_exhausted(self):
        with pytest.raises(QuadratureError):
            quadrature.integrate_1d(np.sqrt, 0.0, 1.0, rtol=1e-15, max_depth=2)
