import numpy as np


# Base for every failure raised by the numerical kernels.
class NumericsError(Exception):
    pass


class QuadratureError(NumericsError):
    pass


class IndefiniteMatrixError(NumericsError):
    pass


class DegenerateInputError(NumericsError, ValueError):
    pass


class SolverFailureError(NumericsError):
    """
    Raised when the stationarity solver runs out of iterations.
    The best state seen so far is attached, so callers can still inspect it.
    """

    def __init__(self, message: str, best_x: np.ndarray = None, residual: float = float('nan'), iterations: int = 0):
        super().__init__(message)
        self.best_x = best_x
        self.residual = residual
        self.iterations = iterations
