import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidParameterError, DegenerateGeometryError


@dataclass(frozen=True)
class ActuatorGeometry:
    """
    Semi-circular fiber-reinforced actuator. Lengths in millimeters, angle in radians.
    Defaults are the 170 mm x 12 mm actuator with 3 mm walls, 4 mm pitch and 5 degree winding.

    winding_count, chamber_height_mm and part1_width_mm are derived when left as None:
        winding_count = floor(length / pitch), chamber_height = r - t, part1_width = 2r.
    """
    length_mm: float = 170.0
    outer_radius_mm: float = 12.0
    wall_thickness_mm: float = 3.0
    pitch_mm: float = 4.0
    fiber_angle_rad: float = math.radians(5.0)
    winding_count: Optional[int] = None
    chamber_height_mm: Optional[float] = None
    part1_width_mm: Optional[float] = None

    def __post_init__(self):
        r, t = self.outer_radius_mm, self.wall_thickness_mm
        if not self.length_mm > 0:
            raise InvalidParameterError(f"length_mm must be positive, got {self.length_mm}.")
        if not 0 < t < r:
            raise InvalidParameterError(f"Expected 0 < wall_thickness_mm < outer_radius_mm, got t={t}, r={r}.")
        if not self.pitch_mm > 0:
            raise InvalidParameterError(f"pitch_mm must be positive, got {self.pitch_mm}.")
        if not 0 < self.fiber_angle_rad < math.pi / 2:
            raise DegenerateGeometryError(
                f"fiber_angle_rad must lie in (0, pi/2), got {self.fiber_angle_rad}.")

        # Derived defaults, see the class docstring.
        if self.winding_count is None:
            object.__setattr__(self, 'winding_count', math.floor(self.length_mm / self.pitch_mm))
        if self.chamber_height_mm is None:
            object.__setattr__(self, 'chamber_height_mm', r - t)
        if self.part1_width_mm is None:
            object.__setattr__(self, 'part1_width_mm', 2.0 * r)

        if int(self.winding_count) != self.winding_count or self.winding_count < 1:
            raise InvalidParameterError(f"winding_count must be an integer >= 1, got {self.winding_count}.")
        object.__setattr__(self, 'winding_count', int(self.winding_count))
        if not 0 < self.chamber_height_mm <= r - t:
            raise InvalidParameterError(
                f"chamber_height_mm must lie in (0, r - t] = (0, {r - t}], got {self.chamber_height_mm}.")
        if not 0 < self.part1_width_mm <= 2.0 * r:
            raise InvalidParameterError(
                f"part1_width_mm must lie in (0, 2r] = (0, {2.0 * r}], got {self.part1_width_mm}.")

    @classmethod
    def from_degrees(cls, fiber_angle_deg: float, **kwargs) -> 'ActuatorGeometry':
        return cls(fiber_angle_rad=math.radians(fiber_angle_deg), **kwargs)

    @property
    def fiber_angle_deg(self) -> float:
        return math.degrees(self.fiber_angle_rad)

    @property
    def chamber_count(self) -> int:
        # n windings split the body into n + 1 chambers.
        return self.winding_count + 1


@dataclass(frozen=True)
class MaterialModel:
    """
    Linear elastic constants of the silicone body (E in kPa) and the pressure-work correction factor c.
    Defaults: E = 125 kPa, v = 0.5, c = 0.003.
    """
    youngs_modulus_kpa: float = 125.0
    poisson_ratio: float = 0.5
    correction_factor: float = 0.003

    def __post_init__(self):
        if not self.youngs_modulus_kpa > 0:
            raise InvalidParameterError(f"youngs_modulus_kpa must be positive, got {self.youngs_modulus_kpa}.")
        if not 0 <= self.poisson_ratio <= 0.5:
            raise InvalidParameterError(f"poisson_ratio must lie in [0, 0.5], got {self.poisson_ratio}.")
        if not self.correction_factor > 0:
            raise InvalidParameterError(f"correction_factor must be positive, got {self.correction_factor}.")

    @property
    def deviatoric_coefficient(self) -> float:
        """E / (1 + v), the coefficient of J2 / 2 in the strain energy density."""
        return self.youngs_modulus_kpa / (1.0 + self.poisson_ratio)

    @property
    def volumetric_coefficient(self) -> float:
        """E v (1 - 2v) / (1 + v), the coefficient of J1^2. Zero for an incompressible body."""
        v = self.poisson_ratio
        return self.youngs_modulus_kpa * v * (1.0 - 2.0 * v) / (1.0 + v)
