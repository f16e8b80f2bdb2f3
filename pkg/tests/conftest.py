import math

import numpy as np
import pytest

from twistmodel.actuator.modes import MotionMode
from twistmodel.actuator.parameters import ActuatorGeometry, MaterialModel
from twistmodel.helper import tables
from twistmodel.mocap.trajectories import MarkerSample, MarkerTrajectory, TrialSet, TRIAL_COLUMNS, write_trajectories


HELIX_RADIUS_MM = 40.0
HELIX_CENTER_MM = (5.0, -3.0)
HELIX_MARKERS = 7

BENDING_VOLUME_MM3 = 10035.0
EXTENSION_VOLUME_MM3 = 5019.0

REPEATABILITY_MM = {MotionMode.BENDING: 2.1, MotionMode.TWISTING: 3.29, MotionMode.EXTENSION: 1.1}


@pytest.fixture
def default_geometry() -> ActuatorGeometry:
    return ActuatorGeometry()


@pytest.fixture
def default_material() -> MaterialModel:
    return MaterialModel()


def helix_trajectories(with_reference: bool = True) -> dict[str, MarkerTrajectory]:
    """
    Seven markers on a helix of radius 40 mm, all visible at frame 0. At frame 1 only two markers are visible.
    The optional 'ref' marker sits on the frame, well off the circle.
    """

    samples: dict[str, list[MarkerSample]] = {}
    for index in range(HELIX_MARKERS):
        angle = 2.0 * math.pi * index / HELIX_MARKERS * 0.8
        marker_id = f'm{index + 1}'
        position = (HELIX_CENTER_MM[0] + HELIX_RADIUS_MM * math.cos(angle),
                    HELIX_CENTER_MM[1] + HELIX_RADIUS_MM * math.sin(angle),
                    20.0 * index)
        samples[marker_id] = [MarkerSample(frame=0, time_s=0.0, marker_id=marker_id, position=position)]
        if index < 2:
            samples[marker_id].append(MarkerSample(frame=1, time_s=0.01, marker_id=marker_id, position=position))

    if with_reference:
        samples['ref'] = [
            MarkerSample(frame=frame, time_s=frame / 100.0, marker_id='ref', position=(0.0, 0.0, -50.0))
            for frame in (0, 1)]

    return {marker_id: MarkerTrajectory(marker_id, tuple(marker_samples)) for marker_id, marker_samples in samples.items()}


def cube_trajectories(edge_mm: float = 10.0) -> dict[str, MarkerTrajectory]:
    corners = np.array([[x, y, z] for x in (0, edge_mm) for y in (0, edge_mm) for z in (0, edge_mm)], dtype=float)
    # One marker traces the eight corners over eight frames.
    return {'tip': MarkerTrajectory.from_positions('tip', corners)}


def sector_area(radius_mm: float, span_rad: float, frames: int) -> float:
    # Shoelace area of the polygon: origin followed by the arc points.
    angles = np.linspace(0.0, span_rad, frames)
    x = np.concatenate([[0.0], radius_mm * np.cos(angles)])
    y = np.concatenate([[0.0], radius_mm * np.sin(angles)])
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def sector_sweep_trajectories(radius_mm: float, span_rad: float, frames: int, volume_mm3: float,
                              config: str = None) -> dict[str, MarkerTrajectory]:
    """
    A beam of fixed depth sweeping a circular sector: base markers stay at the origin, tip markers follow the arc.
    The swept hull is a prism over the sector polygon with the depth chosen to give 'volume_mm3'.
    """

    depth = volume_mm3 / sector_area(radius_mm, span_rad, frames)
    angles = np.linspace(0.0, span_rad, frames)
    tip = np.column_stack([radius_mm * np.cos(angles), radius_mm * np.sin(angles), np.zeros(frames)])
    base = np.zeros((frames, 3))
    offset = np.array([0.0, 0.0, depth])

    trajectories = {
        'base_top': MarkerTrajectory.from_positions('base_top', base),
        'base_bottom': MarkerTrajectory.from_positions('base_bottom', base + offset),
        'tip_top': MarkerTrajectory.from_positions('tip_top', tip),
        'tip_bottom': MarkerTrajectory.from_positions('tip_bottom', tip + offset),
    }
    if config is None:
        return trajectories
    return {marker_id: MarkerTrajectory(marker_id, tuple(
                MarkerSample(sample.frame, sample.time_s, marker_id, sample.position, config)
                for sample in trajectory.samples))
            for marker_id, trajectory in trajectories.items()}


def bending_arc_trajectories(config: str = None) -> dict[str, MarkerTrajectory]:
    return sector_sweep_trajectories(60.0, math.pi / 2.0, 25, BENDING_VOLUME_MM3, config)


def extension_trajectories(config: str = None) -> dict[str, MarkerTrajectory]:
    return sector_sweep_trajectories(40.0, math.pi / 3.0, 13, EXTENSION_VOLUME_MM3, config)


def two_config_trajectories(first: str = 'cold', second: str = 'hot') -> dict[str, MarkerTrajectory]:
    """
    The bending sweep labelled 'first' followed, 100 frames later, by the extension sweep labelled 'second'.
    """

    markers = bending_arc_trajectories(config=first)
    for marker_id, trajectory in extension_trajectories(config=second).items():
        shifted = [MarkerSample(sample.frame + 100, sample.time_s + 1.0, marker_id, sample.position, sample.config)
                   for sample in trajectory.samples]
        markers[marker_id] = MarkerTrajectory(marker_id, markers[marker_id].samples + tuple(shifted))
    return markers


def antipodal_endpoints(mean_deviation_mm: float, count: int = 30, seed: int = 0,
                        center=(100.0, 50.0, 20.0)) -> np.ndarray:
    """
    Endpoints in antipodal pairs around 'center', each at distance 'mean_deviation_mm' from it,
    so the mean endpoint is the center and every deviation is exactly the target.
    """

    rng = np.random.default_rng(seed)
    directions = rng.normal(size=(count // 2, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    offsets = mean_deviation_mm * directions
    return np.asarray(center) + np.concatenate([offsets, -offsets])


def repeatability_trial_sets() -> dict[MotionMode, TrialSet]:
    return {mode: TrialSet(mode, antipodal_endpoints(value, seed=index))
            for index, (mode, value) in enumerate(REPEATABILITY_MM.items())}


def write_trials(path, trial_sets) -> None:
    rows = []
    for trial_set in trial_sets.values():
        for trial, endpoint in enumerate(trial_set.endpoints, start=1):
            rows.append([trial, trial_set.mode.value, *endpoint])
    tables.write_rows(path, TRIAL_COLUMNS, rows)


@pytest.fixture
def helix_csv(tmp_path):
    path = tmp_path / 'helix.csv'
    write_trajectories(helix_trajectories(), path)
    return path


@pytest.fixture
def trials_csv(tmp_path):
    path = tmp_path / 'trials.csv'
    write_trials(path, repeatability_trial_sets())
    return path
