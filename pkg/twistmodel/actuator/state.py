import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import InvalidParameterError


# Order of the unknowns in every gradient, Hessian and solver vector.
VARIABLES: tuple[str, ...] = ('k1', 'k2', 'phi', 'e11', 'e22', 'e33', 'q')
# Order of the six strain unknowns inside the strain stiffness matrix: mid-surface strains, then their x3-gradients.
STRAIN_VARIABLES: tuple[str, ...] = ('e11', 'e22', 'e33', 'k1', 'k2', 'q')

PHASE_INDEX: int = VARIABLES.index('phi')
STRAIN_INDICES: np.ndarray = np.array([VARIABLES.index(name) for name in STRAIN_VARIABLES])


def normalize_phase(phi: float) -> float:
    """Map a phase angle onto [0, pi); the model only sees phi through sin^2, cos^2 and cos(2 phi)."""
    phi = math.fmod(phi, math.pi)
    if phi < 0:
        phi += math.pi
    # fmod of a tiny negative value can round up to pi.
    if phi >= math.pi:
        phi = 0.0
    return phi


@dataclass(frozen=True)
class EquilibriumState:
    """
    The seven unknowns of the stationarity system.
    e11, e22, e33 are mid-surface strains, k1, k2 curvatures in 1/mm, phi the phase angle in radians and
    q the strain gradient along x3 in 1/mm (it plays the role of k3 in eps33 = e33 + x3 * q).
    """
    e11: float = 0.0
    e22: float = 0.0
    e33: float = 0.0
    k1: float = 0.0
    k2: float = 0.0
    phi: float = 0.0
    q: float = 0.0

    def __post_init__(self):
        for field in fields(self):
            value = float(getattr(self, field.name))
            if not math.isfinite(value):
                raise InvalidParameterError(f"State field '{field.name}' is not finite: {value}.")
            object.__setattr__(self, field.name, value)
        object.__setattr__(self, 'phi', normalize_phase(self.phi))

    @classmethod
    def from_vector(cls, vector) -> 'EquilibriumState':
        return cls(**dict(zip(VARIABLES, (float(value) for value in vector))))

    @classmethod
    def from_strains(cls, strains, phi: float) -> 'EquilibriumState':
        values = dict(zip(STRAIN_VARIABLES, (float(value) for value in strains)))
        return cls(phi=phi, **values)

    def to_vector(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in VARIABLES], dtype=float)

    def strain_vector(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in STRAIN_VARIABLES], dtype=float)

    def is_unloaded(self) -> bool:
        return not np.any(self.strain_vector())
