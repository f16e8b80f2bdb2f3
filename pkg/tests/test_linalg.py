import numpy as np
import pytest

from twistmodel.numerics import linalg
from twistmodel.numerics.errors import IndefiniteMatrixError


class TestSolveSymmetric:
    def test_identity(self):
        rhs = np.array([1.5, -2.0, 3.25])
        np.testing.assert_array_equal(linalg.solve_symmetric(np.eye(3), rhs), rhs)

    def test_random_spd(self):
        rng = np.random.default_rng(7)
        m = rng.normal(size=(6, 6))
        matrix = m.T @ m + np.eye(6)
        rhs = rng.normal(size=6)
        solution = linalg.solve_symmetric(matrix, rhs)
        np.testing.assert_allclose(matrix @ solution, rhs, atol=1e-10)

    def test_negative_eigenvalue(self):
        with pytest.raises(IndefiniteMatrixError):
            linalg.solve_symmetric(np.diag([1.0, -1.0, 2.0]), np.ones(3))

    def test_not_symmetric(self):
        with pytest.raises(ValueError):
            linalg.solve_symmetric(np.array([[2.0, 1.0], [0.0, 2.0]]), np.ones(2))


class TestIsPositiveDefinite:
    def test_values(self):
        assert linalg.is_positive_definite(np.diag([1.0, 2.0]))
        assert not linalg.is_positive_definite(np.diag([1.0, 0.0]))
        assert not linalg.is_positive_definite(np.array([[1.0, 2.0], [2.0, 1.0]]))
