import numpy as np
from scipy import linalg

from .errors import IndefiniteMatrixError


SYMMETRY_TOLERANCE: float = 1e-10


def _check_symmetric(matrix: np.ndarray) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {matrix.shape}.")

    scale = max(float(np.max(np.abs(matrix))), 1.0)
    if not np.allclose(matrix, matrix.T, rtol=0.0, atol=SYMMETRY_TOLERANCE * scale):
        raise ValueError("Matrix is not symmetric.")


def solve_symmetric(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """
    Solve A x = b for a symmetric positive definite A with a Cholesky factorization.

    :param matrix: numpy array (n, n), symmetric.
    :param rhs: numpy array (n,).
    :return: numpy array (n,), the solution.
    """

    matrix = np.asarray(matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    _check_symmetric(matrix)

    try:
        factor = linalg.cho_factor(matrix, lower=True, check_finite=True)
    except linalg.LinAlgError as e:
        raise IndefiniteMatrixError(f"Matrix is not positive definite: {e}") from e

    return linalg.cho_solve(factor, rhs)


def is_positive_definite(matrix: np.ndarray) -> bool:
    matrix = np.asarray(matrix, dtype=float)
    _check_symmetric(matrix)
    try:
        linalg.cho_factor(matrix, lower=True)
    except linalg.LinAlgError:
        return False
    return True
