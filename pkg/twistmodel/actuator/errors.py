# Base for failures of the actuator model.
class ActuatorModelError(Exception):
    pass


class InvalidParameterError(ActuatorModelError, ValueError):
    pass


# The fiber angle makes the chamber width w/sin(theta) blow up.
class DegenerateGeometryError(InvalidParameterError):
    pass


class IllPosedModelError(ActuatorModelError):
    pass


# Both curvatures vanish: the twist radius is infinite.
class StraightConfigurationError(ActuatorModelError):
    pass


class UndefinedConfigurationError(ActuatorModelError):
    pass
