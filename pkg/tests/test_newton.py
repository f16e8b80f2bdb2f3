import math

import numpy as np
import pytest

from twistmodel.numerics.errors import SolverFailureError
from twistmodel.numerics.newton import SolverSettings, newton_stationary


def _quartic(x):
    return (x[0] ** 2 - 2.0) ** 2 + (x[0] * x[1] - 1.0) ** 2


def _quartic_gradient(x):
    a = x[0] ** 2 - 2.0
    b = x[0] * x[1] - 1.0
    return np.array([4.0 * x[0] * a + 2.0 * x[1] * b, 2.0 * x[0] * b])


class TestNewtonStationary:
    def test_quadratic_bowl(self):
        target = np.array([1.0, -2.0, 0.5])
        result = newton_stationary(lambda x: 2.0 * (x - target), np.array([10.0, 10.0, -10.0]))
        np.testing.assert_allclose(result.x, target, atol=1e-10)

    def test_quadratic_bowl_with_jacobian(self):
        target = np.array([1.0, -2.0])
        result = newton_stationary(
            lambda x: 2.0 * (x - target), np.zeros(2), jacobian=lambda x: 2.0 * np.eye(2))
        np.testing.assert_allclose(result.x, target, atol=1e-12)
        assert result.iterations == 1

    def test_nonconvex_matches_grid_search(self):
        result = newton_stationary(_quartic_gradient, np.array([1.3, 0.8]), objective=_quartic)

        xs = np.linspace(1.0, 2.0, 401)
        ys = np.linspace(0.0, 1.0, 401)
        grid_x, grid_y = np.meshgrid(xs, ys, indexing='ij')
        values = _quartic(np.array([grid_x, grid_y]))
        i, j = np.unravel_index(np.argmin(values), values.shape)
        spacing = xs[1] - xs[0]

        assert abs(result.x[0] - xs[i]) <= spacing
        assert abs(result.x[1] - ys[j]) <= spacing
        np.testing.assert_allclose(result.x, [math.sqrt(2.0), 1.0 / math.sqrt(2.0)], atol=1e-6)

    def test_stationary_seed(self):
        seed = np.array([math.sqrt(2.0), 1.0 / math.sqrt(2.0)])
        result = newton_stationary(_quartic_gradient, seed)
        assert result.iterations == 0
        np.testing.assert_array_equal(result.x, seed)

    def test_iteration_cap(self):
        settings = SolverSettings(max_iterations=1)
        with pytest.raises(SolverFailureError) as info:
            newton_stationary(lambda x: np.exp(x) - 1.0, np.array([10.0]), settings)
        assert info.value.iterations == 1
        assert info.value.best_x is not None
        assert info.value.residual > settings.gradient_tol


class TestSolverSettings:
    @pytest.mark.parametrize('kwargs', [
        {'gradient_tol': 0.0},
        {'max_iterations': 0},
        {'max_iterations': 2.5},
        {'fd_step': -1e-6},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SolverSettings(**kwargs)

    @pytest.mark.parametrize('factor', [1e-3, 7.0, 1e4])
    def test_gradient_scaling_keeps_the_root(self, factor):
        seed = np.array([1.3, 0.8])
        plain = newton_stationary(_quartic_gradient, seed, SolverSettings(gradient_tol=1e-12))
        scaled = newton_stationary(
            lambda x: factor * _quartic_gradient(x), seed, SolverSettings(gradient_tol=1e-12 * factor))
        np.testing.assert_allclose(scaled.x, plain.x, atol=1e-9)
