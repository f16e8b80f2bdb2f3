import enum
import math

from .errors import UndefinedConfigurationError


# Humofit is rigid at or below STIFF_MAX_C and stretchable at or above SOFT_MIN_C.
STIFF_MAX_C: float = 10.0
SOFT_MIN_C: float = 28.0


class StiffnessState(enum.Enum):
    STIFF = 'stiff'
    TRANSITION = 'transition'
    SOFT = 'soft'


class MotionMode(enum.Enum):
    BENDING = 'bending'
    TWISTING = 'twisting'
    EXTENSION = 'extension'


# (Humofit1 wound thread, Humofit2 bottom strip) -> motion. The string stays stiff in every mode.
_MODE_TABLE: dict[tuple[StiffnessState, StiffnessState], MotionMode] = {
    (StiffnessState.STIFF, StiffnessState.STIFF): MotionMode.BENDING,
    (StiffnessState.SOFT, StiffnessState.STIFF): MotionMode.TWISTING,
    (StiffnessState.STIFF, StiffnessState.SOFT): MotionMode.EXTENSION,
}


def stiffness_state(temperature_c: float) -> StiffnessState:
    """
    Stiffness of a Humofit element at a given temperature.

    :param temperature_c: float, temperature in degrees Celsius.
    :return: StiffnessState.
    """

    if not math.isfinite(temperature_c):
        raise ValueError(f"Temperature must be finite, got {temperature_c}.")

    if temperature_c <= STIFF_MAX_C:
        return StiffnessState.STIFF
    elif temperature_c >= SOFT_MIN_C:
        return StiffnessState.SOFT
    else:
        return StiffnessState.TRANSITION


def motion_mode(humofit1_temp_c: float, humofit2_temp_c: float) -> MotionMode:
    """
    Motion produced under pressure for the given temperatures of the two Humofit elements.

    :param humofit1_temp_c: float, temperature of the wound Humofit thread.
    :param humofit2_temp_c: float, temperature of the Humofit strip under the body.
    :return: MotionMode.
    """

    states = (stiffness_state(humofit1_temp_c), stiffness_state(humofit2_temp_c))
    try:
        return _MODE_TABLE[states]
    except KeyError:
        raise UndefinedConfigurationError(
            f"No motion mode is defined for Humofit1 {states[0].value} ({humofit1_temp_c} C) and "
            f"Humofit2 {states[1].value} ({humofit2_temp_c} C).") from None


def mode_configuration(mode: MotionMode) -> tuple[StiffnessState, StiffnessState]:
    """
    Stiffness states (Humofit1, Humofit2) that select a motion mode.
    """

    for states, table_mode in _MODE_TABLE.items():
        if table_mode is mode:
            return states
    raise ValueError(f"Unknown motion mode: {mode!r}")
