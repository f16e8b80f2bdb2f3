from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DegenerateInputError


# Ratio of the smallest to the largest singular value of the centered points below which they count as collinear.
COLLINEAR_TOLERANCE: float = 1e-9


@dataclass(frozen=True)
class Circle2D:
    center: tuple[float, float]
    radius: float
    rms_residual: float


def fit_circle_2d(points) -> Circle2D:
    """
    Least-squares circle through 2D points.

    The algebraic (Coope) fit 2*xc*x + 2*yc*y + c = x^2 + y^2 gives the seed, then the sum of squared radial
    distances is minimized with a Levenberg-Marquardt (damped Gauss-Newton) refinement.
    Both stages work on coordinates centered on the point mean.

    :param points: array-like (N, 2), N >= 3 points not on a single line.
    :return: Circle2D.
    """

    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError(f"Expected an (N, 2) array of points, got shape {points.shape}.")
    if len(points) < 3:
        raise DegenerateInputError(f"Circle fitting needs at least 3 points, got {len(points)}.")
    if not np.all(np.isfinite(points)):
        raise ValueError("Points must be finite.")

    origin = points.mean(axis=0)
    centered = points - origin
    singular_values = np.linalg.svd(centered, compute_uv=False)
    if singular_values[0] == 0 or singular_values[-1] <= COLLINEAR_TOLERANCE * singular_values[0]:
        raise DegenerateInputError("Points are collinear, no circle passes through them.")

    seed = _algebraic_fit(centered)
    refined = optimize.least_squares(
        _radial_residuals, seed, jac=_radial_jacobian, args=(centered,), method='lm',
        xtol=1e-12, ftol=1e-12, gtol=1e-12)

    center_x, center_y, radius = refined.x
    residuals = _radial_residuals(refined.x, centered)
    return Circle2D(
        center=(float(center_x + origin[0]), float(center_y + origin[1])),
        radius=float(abs(radius)),
        rms_residual=float(np.sqrt(np.mean(residuals ** 2))))


def _algebraic_fit(points: np.ndarray) -> np.ndarray:
    problem_matrix = np.column_stack([2.0 * points[:, 0], 2.0 * points[:, 1], np.ones(len(points))])
    solution_vector = np.sum(points ** 2, axis=1)
    (center_x, center_y, c), *_ = np.linalg.lstsq(problem_matrix, solution_vector, rcond=None)
    radius_squared = c + center_x ** 2 + center_y ** 2
    if not radius_squared > 0:
        raise DegenerateInputError("Algebraic circle fit produced a non-positive squared radius.")
    return np.array([center_x, center_y, np.sqrt(radius_squared)])


def _radial_residuals(params: np.ndarray, points: np.ndarray) -> np.ndarray:
    center_x, center_y, radius = params
    return np.hypot(points[:, 0] - center_x, points[:, 1] - center_y) - radius


def _radial_jacobian(params: np.ndarray, points: np.ndarray) -> np.ndarray:
    center_x, center_y, _ = params
    dx = points[:, 0] - center_x
    dy = points[:, 1] - center_y
    distance = np.maximum(np.hypot(dx, dy), np.finfo(float).tiny)
    return np.column_stack([-dx / distance, -dy / distance, -np.ones(len(points))])
