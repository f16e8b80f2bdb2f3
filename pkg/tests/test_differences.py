import numpy as np
import pytest

from twistmodel.numerics.differences import finite_diff_gradient, finite_diff_jacobian


class TestFiniteDiffGradient:
    def test_linear_function(self):
        slope = np.array([3.0, -1.5, 0.25])
        gradient = finite_diff_gradient(lambda x: float(slope @ x), np.array([0.3, 10.0, -2.0]))
        np.testing.assert_allclose(gradient, slope, rtol=1e-8)

    def test_square(self):
        gradient = finite_diff_gradient(lambda x: float(x[0] ** 2), np.array([2.0]), h=1e-6)
        assert abs(gradient[0] - 4.0) < 1e-6

    def test_step_scales_with_large_components(self):
        # The central difference of x^3 is 3 x^2 + s^2 for a step s.
        def cube(x):
            return float(x[0] ** 3)

        assert finite_diff_gradient(cube, np.array([0.5]), h=1e-3)[0] == pytest.approx(0.75 + 1e-6, rel=1e-9)
        assert finite_diff_gradient(cube, np.array([1000.0]), h=1e-3)[0] == pytest.approx(3e6 + 1.0, rel=1e-12)

    def test_non_positive_step(self):
        with pytest.raises(ValueError):
            finite_diff_gradient(lambda x: 0.0, np.zeros(2), h=0.0)


class TestFiniteDiffJacobian:
    def test_linear_map(self):
        matrix = np.array([[1.0, 2.0, 0.0], [0.0, -3.0, 4.0]])
        jacobian = finite_diff_jacobian(lambda x: matrix @ x, np.array([1.0, -1.0, 0.5]))
        np.testing.assert_allclose(jacobian, matrix, atol=1e-8)
