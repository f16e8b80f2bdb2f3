import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from scipy import optimize

from .actuator import energy
from .actuator.errors import IllPosedModelError, InvalidParameterError, StraightConfigurationError, ActuatorModelError
from .actuator.parameters import ActuatorGeometry, MaterialModel
from .actuator.state import EquilibriumState, PHASE_INDEX
from .numerics import linalg
from .numerics.errors import IndefiniteMatrixError, NumericsError
from .numerics.newton import SolverSettings, newton_stationary


logger = logging.getLogger(__name__)

# The actuator only forms a visible loop from about this pressure on; samples below it are flagged.
PRE_LOOP_PRESSURE_KPA: float = 18.0
PHASE_SCAN_POINTS: int = 181
# Denominators of the twist radius below this are a straight actuator.
STRAIGHT_DENOMINATOR: float = 1e-12
# Relative potential difference under which two phase candidates are a tie (lowest phase wins).
PHASE_TIE_TOLERANCE: float = 1e-12


@dataclass(frozen=True)
class EquilibriumResult:
    state: EquilibriumState
    pressure_kpa: float
    residual: float
    iterations: int
    potential: float
    pre_loop: bool


@dataclass(frozen=True)
class TwistSample:
    """
    One point of a pressure sweep.
    twist_radius_mm is inf for a straight actuator and None when the solve failed ('error' holds the reason).
    """
    pressure_kpa: float
    twist_radius_mm: Optional[float]
    gradient_residual: float
    pre_loop: bool
    state: Optional[EquilibriumState] = None
    iterations: int = 0
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class TwistCurve:
    samples: tuple[TwistSample, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, 'samples', tuple(self.samples))
        pressures = self.pressures()
        if np.any(np.diff(pressures) <= 0):
            raise InvalidParameterError("Twist curve pressures must be strictly increasing.")
        for sample in self.samples:
            if not sample.pre_loop and sample.twist_radius_mm is not None and not sample.twist_radius_mm > 0:
                raise InvalidParameterError(
                    f"Non-positive twist radius {sample.twist_radius_mm} at {sample.pressure_kpa} kPa.")

    def __iter__(self):
        return iter(self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def pressures(self) -> np.ndarray:
        return np.array([sample.pressure_kpa for sample in self.samples], dtype=float)

    def radii(self) -> np.ndarray:
        """Twist radii with failed samples as NaN."""
        return np.array([
            np.nan if sample.twist_radius_mm is None else sample.twist_radius_mm for sample in self.samples], dtype=float)

    def is_monotone(self) -> bool:
        """
        Whether the finite radii past the loop onset move in one direction only. Reported as a diagnostic.
        """
        radii = np.array([
            sample.twist_radius_mm for sample in self.samples
            if not sample.pre_loop and not sample.failed and math.isfinite(sample.twist_radius_mm)])
        steps = np.diff(radii)
        return bool(np.all(steps <= 0) or np.all(steps >= 0))

    @property
    def failures(self) -> list[TwistSample]:
        return [sample for sample in self.samples if sample.failed]


def _relaxed_state(geometry, material, stiffness, pressure_kpa, phi) -> EquilibriumState:
    # For a fixed phase the potential is quadratic in the six strains, so the inner problem is linear.
    load = energy.pressure_load_vector(geometry, material, pressure_kpa, phi)
    try:
        strains = linalg.solve_symmetric(stiffness, load)
    except IndefiniteMatrixError as e:
        raise IllPosedModelError(f"Strain stiffness is not positive definite: {e}") from e
    return EquilibriumState.from_strains(strains, phi)


def nested_equilibrium(geometry: ActuatorGeometry, material: MaterialModel, pressure_kpa: float) -> EquilibriumState:
    """
    Equilibrium by the nested strategy: the strains solve a linear system for every phase, and the phase is the
    root of dPi/dphi found by a 1 degree scan over [0, pi] followed by Brent root refinement.
    Of all roots, the one with the lowest potential is kept; ties go to the lowest phase.

    :param geometry: ActuatorGeometry.
    :param material: MaterialModel.
    :param pressure_kpa: float, pressure >= 0.
    :return: EquilibriumState.
    """

    energy.validate_pressure(pressure_kpa)
    if pressure_kpa == 0:
        return EquilibriumState()

    stiffness = energy.strain_stiffness(geometry, material)

    def phase_slope(phi: float) -> float:
        state = _relaxed_state(geometry, material, stiffness, pressure_kpa, phi)
        return float(energy.potential_gradient(geometry, material, state, pressure_kpa)[PHASE_INDEX])

    grid = np.linspace(0.0, math.pi, PHASE_SCAN_POINTS)
    slopes = np.array([phase_slope(phi) for phi in grid])

    roots = []
    for i in range(len(grid) - 1):
        if slopes[i] == 0:
            roots.append(grid[i])
        elif slopes[i] * slopes[i + 1] < 0:
            roots.append(optimize.brentq(phase_slope, grid[i], grid[i + 1], xtol=1e-15))
    if not roots:
        # dPi/dphi vanishes identically only for an unloaded body.
        roots.append(0.0)

    candidates = []
    for phi in roots:
        state = _relaxed_state(geometry, material, stiffness, pressure_kpa, phi)
        candidates.append((energy.total_potential(geometry, material, state, pressure_kpa), state))

    lowest = min(potential for potential, _ in candidates)
    tolerance = PHASE_TIE_TOLERANCE * max(1.0, abs(lowest))
    best = min((state for potential, state in candidates if potential <= lowest + tolerance), key=lambda s: s.phi)
    logger.debug(f"Phase scan at {pressure_kpa} kPa: {len(roots)} roots, chose phi={best.phi:.6f} rad.")
    return best


def check_strain_block(geometry: ActuatorGeometry, material: MaterialModel, state: EquilibriumState,
                       pressure_kpa: float) -> None:
    """
    Raise IllPosedModelError unless the Hessian of Pi restricted to the six strain unknowns is positive definite.
    """

    hessian = energy.potential_hessian(geometry, material, state, pressure_kpa)
    keep = [i for i in range(hessian.shape[0]) if i != PHASE_INDEX]
    if not linalg.is_positive_definite(hessian[np.ix_(keep, keep)]):
        raise IllPosedModelError(
            f"Strain-block Hessian is not positive definite at {pressure_kpa} kPa; the equilibrium is not a minimum.")


def solve_equilibrium(
        geometry: ActuatorGeometry,
        material: MaterialModel,
        pressure_kpa: float,
        init: EquilibriumState = None,
        settings: SolverSettings = None
) -> EquilibriumResult:
    """
    Solve dPi/dx = 0 for the seven unknowns at a given pressure.

    :param geometry: ActuatorGeometry.
    :param material: MaterialModel.
    :param pressure_kpa: float, pressure >= 0.
    :param init: EquilibriumState, optional. Warm start. If None or unloaded, the nested strategy provides the seed.
    :param settings: SolverSettings, default is SolverSettings().
    :return: EquilibriumResult.
    """

    if settings is None:
        settings = SolverSettings()
    energy.validate_pressure(pressure_kpa)
    pre_loop = pressure_kpa < PRE_LOOP_PRESSURE_KPA

    if pressure_kpa == 0:
        return EquilibriumResult(
            state=EquilibriumState(), pressure_kpa=0.0, residual=0.0, iterations=0, potential=0.0, pre_loop=pre_loop)

    if init is None or init.is_unloaded():
        seed = nested_equilibrium(geometry, material, pressure_kpa)
    else:
        seed = init

    def gradient(vector):
        return energy.potential_gradient(geometry, material, EquilibriumState.from_vector(vector), pressure_kpa)

    def hessian(vector):
        return energy.potential_hessian(geometry, material, EquilibriumState.from_vector(vector), pressure_kpa)

    def potential(vector):
        return energy.total_potential(geometry, material, EquilibriumState.from_vector(vector), pressure_kpa)

    result = newton_stationary(gradient, seed.to_vector(), settings, jacobian=hessian, objective=potential)
    state = EquilibriumState.from_vector(result.x)
    check_strain_block(geometry, material, state, pressure_kpa)

    logger.debug(
        f"Equilibrium at {pressure_kpa} kPa after {result.iterations} iterations, residual {result.residual:.3e}.")
    return EquilibriumResult(
        state=state, pressure_kpa=float(pressure_kpa), residual=result.residual, iterations=result.iterations,
        potential=potential(result.x), pre_loop=pre_loop)


def twist_radius(state: EquilibriumState, signed: bool = False) -> float:
    """
    Radius of twist
        R_t = [k1 + k2 + (k1 - k2) cos 2phi] / [k1^2 + k2^2 + (k1 - k2)(k1 + k2) cos 2phi].

    :param state: EquilibriumState.
    :param signed: boolean, default is 'False'.
        'True': keep the sign of the expression, which follows the sign of the curvatures.
        'False': return the magnitude.
    :return: float, millimeters.
    """

    k1, k2 = state.k1, state.k2
    cos_2phi = math.cos(2.0 * state.phi)
    numerator = k1 + k2 + (k1 - k2) * cos_2phi
    denominator = k1 ** 2 + k2 ** 2 + (k1 - k2) * (k1 + k2) * cos_2phi
    if abs(denominator) < STRAIGHT_DENOMINATOR:
        raise StraightConfigurationError(
            f"Twist radius is unbounded: curvatures k1={k1}, k2={k2} at phi={state.phi} describe a straight actuator.")

    radius = numerator / denominator
    return radius if signed else abs(radius)


def predict_twist_curve(
        geometry: ActuatorGeometry,
        material: MaterialModel,
        pressures: Iterable[float],
        settings: SolverSettings = None,
        warm_start: bool = True
) -> TwistCurve:
    """
    Twist radius over a pressure sweep.

    :param geometry: ActuatorGeometry.
    :param material: MaterialModel.
    :param pressures: iterable of floats, strictly increasing, each >= 0, in kPa.
    :param settings: SolverSettings, default is SolverSettings().
    :param warm_start: boolean, default is 'True'.
        'True': every solve starts from the previous equilibrium (continuation).
        'False': every solve is cold-started, so the samples are independent of each other.
    :return: TwistCurve. A failed solve gives a sample with 'error' set; the sweep continues.
    """

    pressures = [float(pressure) for pressure in pressures]
    if any(pressure < 0 for pressure in pressures):
        raise InvalidParameterError("Pressures must be >= 0 kPa.")
    if any(later <= earlier for earlier, later in zip(pressures, pressures[1:])):
        raise InvalidParameterError("Pressures must be strictly increasing.")

    samples = []
    previous = None
    for pressure in pressures:
        try:
            result = solve_equilibrium(
                geometry, material, pressure, init=previous if warm_start else None, settings=settings)
        except (NumericsError, ActuatorModelError) as e:
            logger.warning(f"Equilibrium solve failed at {pressure} kPa: {e}")
            samples.append(TwistSample(
                pressure_kpa=pressure, twist_radius_mm=None, gradient_residual=getattr(e, 'residual', math.nan),
                pre_loop=pressure < PRE_LOOP_PRESSURE_KPA, error=str(e)))
            continue

        try:
            radius = twist_radius(result.state)
        except StraightConfigurationError:
            radius = math.inf

        samples.append(TwistSample(
            pressure_kpa=pressure, twist_radius_mm=radius, gradient_residual=result.residual,
            pre_loop=result.pre_loop, state=result.state, iterations=result.iterations))
        previous = result.state

    return TwistCurve(samples=tuple(samples))
