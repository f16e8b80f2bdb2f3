import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .differences import finite_diff_jacobian
from .errors import SolverFailureError


logger = logging.getLogger(__name__)

# Sufficient-decrease constant of the Armijo test on the least-squares merit 0.5*|g|^2.
ARMIJO_CONSTANT: float = 1e-4
MAX_HALVINGS: int = 30


@dataclass(frozen=True)
class SolverSettings:
    gradient_tol: float = 1e-8
    max_iterations: int = 200
    fd_step: float = 1e-6

    def __post_init__(self):
        if not self.gradient_tol > 0:
            raise ValueError(f"gradient_tol must be positive, got {self.gradient_tol}.")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be an integer >= 1, got {self.max_iterations}.")
        if not self.fd_step > 0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}.")


@dataclass(frozen=True)
class NewtonResult:
    x: np.ndarray
    iterations: int
    residual: float


def newton_stationary(
        grad: Callable[[np.ndarray], np.ndarray],
        seed: np.ndarray,
        settings: SolverSettings = None,
        jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        objective: Optional[Callable[[np.ndarray], float]] = None
) -> NewtonResult:
    """
    Find a point where 'grad' vanishes with a damped Newton iteration.

    The step is halved until the least-squares merit 0.5*|grad|^2 passes an Armijo test. The iteration stops when
    the scaled residual max|grad| / max(1, |objective|) drops below settings.gradient_tol. Without an objective the
    residual is the plain max-norm of the gradient.

    :param grad: callable, takes a 1-D numpy array and returns the gradient vector.
    :param seed: numpy array, the starting point.
    :param settings: SolverSettings, default is SolverSettings().
    :param jacobian: callable, optional. Jacobian of 'grad'. If None, central finite differences are used.
    :param objective: callable, optional. The scalar function behind 'grad', used only to scale the residual.
    :return: NewtonResult.
    """

    if settings is None:
        settings = SolverSettings()

    def residual_of(point: np.ndarray, gradient: np.ndarray) -> float:
        scale = 1.0 if objective is None else max(1.0, abs(float(objective(point))))
        return float(np.max(np.abs(gradient))) / scale

    x = np.array(seed, dtype=float)
    g = np.asarray(grad(x), dtype=float)
    if not np.all(np.isfinite(g)):
        raise SolverFailureError("Gradient is not finite at the seed.", best_x=x, iterations=0)

    residual = residual_of(x, g)
    best_x, best_residual = x.copy(), residual

    for iteration in range(settings.max_iterations):
        logger.debug(f"Newton iteration {iteration}: residual={residual:.3e}")
        if residual < settings.gradient_tol:
            return NewtonResult(x=x, iterations=iteration, residual=residual)

        if jacobian is None:
            hessian = finite_diff_jacobian(grad, x, settings.fd_step)
        else:
            hessian = np.asarray(jacobian(x), dtype=float)

        step = _newton_step(hessian, g)
        x, g = _damped_update(grad, x, g, step)
        residual = residual_of(x, g)
        if residual < best_residual:
            best_x, best_residual = x.copy(), residual

    if residual < settings.gradient_tol:
        return NewtonResult(x=x, iterations=settings.max_iterations, residual=residual)

    raise SolverFailureError(
        f"Newton iteration did not converge in {settings.max_iterations} iterations, "
        f"best residual {best_residual:.3e}.",
        best_x=best_x, residual=best_residual, iterations=settings.max_iterations)


def _newton_step(hessian: np.ndarray, g: np.ndarray) -> np.ndarray:
    try:
        return -np.linalg.solve(hessian, g)
    except np.linalg.LinAlgError:
        # Singular Jacobian, fall back to the minimum-norm least-squares step.
        return -np.linalg.lstsq(hessian, g, rcond=None)[0]


def _damped_update(grad, x: np.ndarray, g: np.ndarray, step: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    merit = 0.5 * float(g @ g)
    alpha = 1.0
    best = None
    for _ in range(MAX_HALVINGS):
        trial = x + alpha * step
        trial_g = np.asarray(grad(trial), dtype=float)
        if np.all(np.isfinite(trial_g)):
            trial_merit = 0.5 * float(trial_g @ trial_g)
            # Along the Newton direction the merit slope is -2*merit.
            if trial_merit <= (1.0 - 2.0 * ARMIJO_CONSTANT * alpha) * merit:
                return trial, trial_g
            if best is None or trial_merit < best[2]:
                best = (trial, trial_g, trial_merit)
        alpha *= 0.5

    if best is None:
        raise SolverFailureError("Gradient is not finite along the Newton direction.", best_x=x)
    return best[0], best[1]
