from typing import Callable

import numpy as np


DEFAULT_STEP: float = 1e-6


def _steps(x: np.ndarray, h: float) -> np.ndarray:
    if not h > 0:
        raise ValueError(f"Finite difference step must be positive, got {h}.")
    # Relative step for large components, absolute step near zero.
    return h * np.maximum(1.0, np.abs(x))


def finite_diff_gradient(function: Callable[[np.ndarray], float], x: np.ndarray, h: float = DEFAULT_STEP) -> np.ndarray:
    """
    Central-difference gradient of a scalar function.

    :param function: callable, takes a 1-D numpy array and returns a float.
    :param x: numpy array, the evaluation point.
    :param h: float, default is 1e-6. Base step. The step actually taken along component i is h * max(1, |x_i|),
        so it is absolute near zero and relative for components larger than 1.
    :return: numpy array, same shape as x.
    """

    x = np.asarray(x, dtype=float)
    steps = _steps(x, h)
    gradient = np.empty_like(x)
    for i, step in enumerate(steps):
        forward = x.copy()
        backward = x.copy()
        forward[i] += step
        backward[i] -= step
        gradient[i] = (function(forward) - function(backward)) / (2.0 * step)
    return gradient


def finite_diff_jacobian(function: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = DEFAULT_STEP) -> np.ndarray:
    """
    Central-difference Jacobian of a vector function; row i is the derivative of output i.
    Steps are scaled per component like in finite_diff_gradient.
    """

    x = np.asarray(x, dtype=float)
    steps = _steps(x, h)
    columns = []
    for i, step in enumerate(steps):
        forward = x.copy()
        backward = x.copy()
        forward[i] += step
        backward[i] -= step
        columns.append((np.asarray(function(forward)) - np.asarray(function(backward))) / (2.0 * step))
    return np.column_stack(columns)
