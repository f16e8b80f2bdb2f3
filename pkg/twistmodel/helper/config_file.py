import configparser
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from ..actuator.errors import InvalidParameterError
from ..actuator.parameters import ActuatorGeometry, MaterialModel
from ..numerics.newton import SolverSettings


logger = logging.getLogger(__name__)

DEFAULT_CONFIG_NAME: str = 'actuator.ini'

GEOMETRY_KEYS: tuple[str, ...] = (
    'length_mm', 'outer_radius_mm', 'wall_thickness_mm', 'pitch_mm', 'fiber_angle_deg',
    'winding_count', 'chamber_height_mm', 'part1_width_mm')
MATERIAL_KEYS: tuple[str, ...] = ('youngs_modulus_kpa', 'poisson_ratio', 'correction_factor')
SOLVER_KEYS: tuple[str, ...] = ('gradient_tol', 'max_iterations', 'fd_step')
_SECTIONS: dict[str, tuple[str, ...]] = {'geometry': GEOMETRY_KEYS, 'material': MATERIAL_KEYS, 'solver': SOLVER_KEYS}
_INTEGER_KEYS = {'winding_count', 'max_iterations'}


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ActuatorConfig:
    geometry: ActuatorGeometry
    material: MaterialModel
    settings: SolverSettings
    source: Optional[Path] = None


def _read_value(section: configparser.SectionProxy, key: str):
    text = section[key].strip()
    try:
        value = int(text) if key in _INTEGER_KEYS else float(text)
    except ValueError:
        raise ConfigError(f"[{section.name}] {key} = {text!r} is not a number.") from None
    if not math.isfinite(value):
        raise ConfigError(f"[{section.name}] {key} = {text!r} is not finite.")
    return value


def parse_config(text: str, source: Path = None) -> ActuatorConfig:
    """
    Build the actuator parameters from INI text. Missing keys keep the defaults of the parameter classes.

    :param text: string, INI content with optional [geometry], [material] and [solver] sections.
    :param source: Path, optional. Only used in messages and kept on the result.
    :return: ActuatorConfig.
    """

    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=str(source) if source else '<string>')
    except configparser.Error as e:
        raise ConfigError(f"Malformed config: {e}") from e

    values: dict[str, dict] = {name: {} for name in _SECTIONS}
    for name in parser.sections():
        if name not in _SECTIONS:
            raise ConfigError(f"Unknown section [{name}], expected one of {', '.join(_SECTIONS)}.")
        for key in parser[name]:
            if key not in _SECTIONS[name]:
                raise ConfigError(f"Unknown key {key!r} in [{name}].")
            values[name][key] = _read_value(parser[name], key)

    geometry_values = dict(values['geometry'])
    fiber_angle_deg = geometry_values.pop('fiber_angle_deg', None)
    try:
        if fiber_angle_deg is None:
            geometry = ActuatorGeometry(**geometry_values)
        else:
            geometry = ActuatorGeometry.from_degrees(fiber_angle_deg, **geometry_values)
        material = MaterialModel(**values['material'])
        settings = SolverSettings(**values['solver'])
    except (InvalidParameterError, ValueError) as e:
        raise ConfigError(f"Invalid parameter: {e}") from e

    return ActuatorConfig(geometry=geometry, material=material, settings=settings, source=source)


def load_config(path: Union[str, Path, None] = None, required: bool = False) -> ActuatorConfig:
    """
    Read the actuator config file.

    :param path: string or Path, default is 'actuator.ini' in the working directory.
    :param required: boolean, default is 'False'.
        'True': a missing file is a ConfigError.
        'False': a missing file gives the default parameters.
    :return: ActuatorConfig.
    """

    path = Path(DEFAULT_CONFIG_NAME if path is None else path)
    if not path.is_file():
        if required:
            raise ConfigError(f"Config file {path} does not exist.")
        logger.info(f"No config file at {path}, using the default parameters.")
        return ActuatorConfig(geometry=ActuatorGeometry(), material=MaterialModel(), settings=SolverSettings())

    try:
        text = path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    return parse_config(text, source=path)
