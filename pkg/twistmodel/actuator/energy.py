"""
Strain and energy functionals of one chamber and the total potential of the actuator.

Units: lengths in mm, pressures and moduli in kPa, energies in kPa*mm^3.
"""

import functools
import math

import numpy as np

from .errors import DegenerateGeometryError, InvalidParameterError
from .parameters import ActuatorGeometry, MaterialModel
from .state import EquilibriumState, PHASE_INDEX, STRAIN_INDICES, VARIABLES
from ..numerics import quadrature


# Below this sin(theta) the chamber width w / sin(theta) is not usable.
MIN_FIBER_SINE: float = 1e-12


def strain_components(state: EquilibriumState, x3):
    """
    Principal strains at height x3 (scalar or array, mm) by the Euler-Bernoulli relations
        eps11 = e11 + x3 k1, eps22 = e22 + x3 k2, eps33 = e33 + x3 q.

    :return: tuple (eps11, eps22, eps33).
    """

    return state.e11 + x3 * state.k1, state.e22 + x3 * state.k2, state.e33 + x3 * state.q


def strain_invariants(eps11, eps22, eps33):
    """
    :return: tuple (J1, J2), the sum and the sum of squares of the principal strains.
    """

    return eps11 + eps22 + eps33, eps11 ** 2 + eps22 ** 2 + eps33 ** 2


def strain_energy_density(j1, j2, material: MaterialModel):
    """
    W_s = 1/2 E/(1+v) J2 + E v (1-2v)/(1+v) J1^2, in kPa (energy per mm^3).
    """

    return 0.5 * material.deviatoric_coefficient * j2 + material.volumetric_coefficient * j1 ** 2


def _density_profile(state: EquilibriumState, material: MaterialModel):
    def density(x3):
        return strain_energy_density(*strain_invariants(*strain_components(state, x3)), material)
    return density


def chord_width(geometry: ActuatorGeometry, x3):
    """
    Width 2*sqrt(r^2 - x3^2) of the semicircular part 2 at height x3. Zero at x3 = r.
    """

    r = geometry.outer_radius_mm
    return 2.0 * np.sqrt(np.maximum(r ** 2 - np.square(x3), 0.0))


def _part1_width_factor(geometry: ActuatorGeometry) -> float:
    return geometry.pitch_mm * geometry.part1_width_mm / math.cos(geometry.fiber_angle_rad)


def _integrate_part1(geometry: ActuatorGeometry, function) -> float:
    return _part1_width_factor(geometry) * quadrature.integrate_1d(function, 0.0, geometry.wall_thickness_mm)


def _integrate_part2(geometry: ActuatorGeometry, function) -> float:
    """
    p * int_{r-t}^{r} f(x3) 2 sqrt(r^2 - x3^2) dx3.

    The chord width has a square-root endpoint at x3 = r, so the integral is taken in the angle u with
    x3 = r sin(u). Then dx3 = r cos(u) du = w / 2 du and the integrand f(x3) w^2 / 2 is smooth on
    [asin((r-t)/r), pi/2].
    """

    r, t = geometry.outer_radius_mm, geometry.wall_thickness_mm

    def in_angle(u):
        x3 = r * np.sin(u)
        return function(x3) * 0.5 * chord_width(geometry, x3) ** 2

    lower = math.asin((r - t) / r)
    return geometry.pitch_mm * quadrature.integrate_1d(in_angle, lower, math.pi / 2)


def elastic_energy_part1(geometry: ActuatorGeometry, material: MaterialModel, state: EquilibriumState) -> float:
    """
    W_m1 = p (W / cos theta) int_0^t W_s dx3, the strain energy of the flat part of one chamber.
    """

    return _integrate_part1(geometry, _density_profile(state, material))


def elastic_energy_part2(geometry: ActuatorGeometry, material: MaterialModel, state: EquilibriumState) -> float:
    """
    W_m2 = p int_{r-t}^{r} W_s 2 sqrt(r^2 - x3^2) dx3, the strain energy of the semicircular part of one chamber.
    """

    return _integrate_part2(geometry, _density_profile(state, material))


def _fiber_sine(geometry: ActuatorGeometry) -> float:
    sine = math.sin(geometry.fiber_angle_rad)
    if abs(sine) < MIN_FIBER_SINE:
        raise DegenerateGeometryError(f"Fiber angle {geometry.fiber_angle_rad} rad gives sin(theta) = 0.")
    return sine


def validate_pressure(pressure_kpa: float) -> None:
    if not pressure_kpa >= 0:
        raise InvalidParameterError(f"Pressure must be >= 0 kPa, got {pressure_kpa}.")


def pressure_load_vector(
        geometry: ActuatorGeometry, material: MaterialModel, pressure_kpa: float, phi: float) -> np.ndarray:
    """
    Coefficients of the strain unknowns (strain order e11, e22, e33, k1, k2, q) in the pressure work of one chamber.
    The chamber strains are taken on the mid-surface, so only e11 and e22 carry load.
    """

    validate_pressure(pressure_kpa)
    intensity = (material.correction_factor * pressure_kpa * geometry.chamber_height_mm
                 * geometry.part1_width_mm / _fiber_sine(geometry) * geometry.pitch_mm)
    offset = geometry.fiber_angle_rad - phi
    return np.array([intensity * math.sin(offset) ** 2, intensity * math.cos(offset) ** 2, 0.0, 0.0, 0.0, 0.0])


def pressure_work(
        geometry: ActuatorGeometry, material: MaterialModel, state: EquilibriumState, pressure_kpa: float) -> float:
    """
    W_F = c P h1 (w / sin theta) p [eps11 sin^2(theta - phi) + eps22 cos^2(theta - phi)] with eps at x3 = 0.
    """

    return float(pressure_load_vector(geometry, material, pressure_kpa, state.phi) @ state.strain_vector())


def total_potential(
        geometry: ActuatorGeometry, material: MaterialModel, state: EquilibriumState, pressure_kpa: float) -> float:
    """
    Pi = (n + 1) (W_m1 + W_m2 - W_F).
    """

    elastic = elastic_energy_part1(geometry, material, state) + elastic_energy_part2(geometry, material, state)
    return geometry.chamber_count * (elastic - pressure_work(geometry, material, state, pressure_kpa))


@functools.lru_cache(maxsize=64)
def section_moments(geometry: ActuatorGeometry) -> tuple[float, float, float]:
    """
    Zeroth, first and second moments in x3 of the chamber volume weight (part 1 plus part 2).
    """

    moments = []
    for power in range(3):
        def monomial(x3, power=power):
            return np.power(x3, power) * np.ones_like(x3)
        moments.append(_integrate_part1(geometry, monomial) + _integrate_part2(geometry, monomial))
    return moments[0], moments[1], moments[2]


def elasticity_matrix(material: MaterialModel) -> np.ndarray:
    """
    C with W_s = 1/2 eps^T C eps for eps = (eps11, eps22, eps33).
    """

    return material.deviatoric_coefficient * np.eye(3) + 2.0 * material.volumetric_coefficient * np.ones((3, 3))


def strain_stiffness(geometry: ActuatorGeometry, material: MaterialModel) -> np.ndarray:
    """
    Constant 6x6 Hessian of W_m1 + W_m2 of one chamber in strain order (e11, e22, e33, k1, k2, q).
    With eps(x3) = [I | x3 I] s, integrating the density gives kron([[M0, M1], [M1, M2]], C).
    """

    m0, m1, m2 = section_moments(geometry)
    return np.kron(np.array([[m0, m1], [m1, m2]]), elasticity_matrix(material))


def _load_phase_derivatives(geometry, material, pressure_kpa, phi) -> tuple[np.ndarray, np.ndarray]:
    # d/dphi sin^2(theta - phi) = -sin(2(theta - phi)), d/dphi cos^2(theta - phi) = sin(2(theta - phi)).
    unit = pressure_load_vector(geometry, material, pressure_kpa, geometry.fiber_angle_rad)[1]
    offset = 2.0 * (geometry.fiber_angle_rad - phi)
    first = np.zeros(6)
    second = np.zeros(6)
    first[:2] = unit * np.array([-math.sin(offset), math.sin(offset)])
    second[:2] = unit * np.array([2.0 * math.cos(offset), -2.0 * math.cos(offset)])
    return first, second


def potential_gradient(
        geometry: ActuatorGeometry, material: MaterialModel, state: EquilibriumState, pressure_kpa: float) -> np.ndarray:
    """
    Gradient of Pi in the variable order (k1, k2, phi, e11, e22, e33, q).
    """

    strains = state.strain_vector()
    load = pressure_load_vector(geometry, material, pressure_kpa, state.phi)
    load_slope, _ = _load_phase_derivatives(geometry, material, pressure_kpa, state.phi)

    gradient = np.empty(len(VARIABLES))
    gradient[STRAIN_INDICES] = strain_stiffness(geometry, material) @ strains - load
    gradient[PHASE_INDEX] = -load_slope @ strains
    return geometry.chamber_count * gradient


def potential_hessian(
        geometry: ActuatorGeometry, material: MaterialModel, state: EquilibriumState, pressure_kpa: float) -> np.ndarray:
    """
    Hessian of Pi in the variable order (k1, k2, phi, e11, e22, e33, q).
    """

    strains = state.strain_vector()
    load_slope, load_curvature = _load_phase_derivatives(geometry, material, pressure_kpa, state.phi)

    hessian = np.zeros((len(VARIABLES), len(VARIABLES)))
    hessian[np.ix_(STRAIN_INDICES, STRAIN_INDICES)] = strain_stiffness(geometry, material)
    hessian[STRAIN_INDICES, PHASE_INDEX] = -load_slope
    hessian[PHASE_INDEX, STRAIN_INDICES] = -load_slope
    hessian[PHASE_INDEX, PHASE_INDEX] = -load_curvature @ strains
    return geometry.chamber_count * hessian
