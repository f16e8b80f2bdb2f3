import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from .errors import InsufficientMarkersError, InsufficientDataError
from .trajectories import MarkerTrajectory, TrialSet
from ..actuator.modes import MotionMode
from ..numerics.circles import Circle2D, fit_circle_2d
from ..numerics.hulls import convex_hull_3d, hull_volume


logger = logging.getLogger(__name__)

Markers = Mapping[str, MarkerTrajectory]


@dataclass(frozen=True)
class RepeatabilityReport:
    per_mode: dict[MotionMode, float]
    overall: float
    per_trial: dict[MotionMode, np.ndarray]


def visible_markers(markers: Markers, frame: int, reference_ids: Iterable[str] = ()) -> dict[str, np.ndarray]:
    """
    Positions of the non-reference markers that were captured at a frame.
    """

    reference_ids = set(reference_ids)
    visible = {}
    for marker_id, trajectory in markers.items():
        if marker_id in reference_ids:
            continue
        position = trajectory.position_at(frame)
        if position is not None:
            visible[marker_id] = position
    return visible


def best_frame(markers: Markers, reference_ids: Iterable[str] = ()) -> int:
    """
    Frame with the most visible non-reference markers; the lowest such frame on ties.
    """

    reference_ids = set(reference_ids)
    counts: dict[int, int] = {}
    for marker_id, trajectory in markers.items():
        if marker_id in reference_ids:
            continue
        for frame in trajectory.frames:
            counts[int(frame)] = counts.get(int(frame), 0) + 1

    if not counts:
        raise InsufficientDataError("No non-reference marker samples to choose a frame from.")
    return min(counts, key=lambda frame: (-counts[frame], frame))


def experimental_twist_radius(markers: Markers, frame: int, reference_ids: Iterable[str] = ()) -> Circle2D:
    """
    Twist radius measured at one frame: the markers are seen from the top (x-y plane) and a circle is fitted.

    :param markers: dictionary marker_id -> MarkerTrajectory.
    :param frame: integer, the frame to use.
    :param reference_ids: iterable of strings, markers excluded from the fit (e.g. fixed to the frame).
    :return: Circle2D, its radius is the experimental twist radius in mm.
    """

    reference_ids = set(reference_ids)
    visible = visible_markers(markers, frame, reference_ids)
    if len(visible) < 3:
        missing = sorted(marker_id for marker_id in markers if marker_id not in reference_ids and marker_id not in visible)
        raise InsufficientMarkersError(
            f"Frame {frame} has {len(visible)} usable markers, at least 3 are needed; "
            f"missing: {', '.join(missing) or 'none'}.",
            missing_ids=missing)

    points = np.array([position[:2] for position in visible.values()])
    return fit_circle_2d(points)


def _positions_in_range(markers: Markers, frame_range: Optional[tuple[int, int]], config: str = None) -> np.ndarray:
    positions = []
    for trajectory in markers.values():
        for sample in trajectory.samples:
            if frame_range is not None and not frame_range[0] <= sample.frame <= frame_range[1]:
                continue
            if config is not None and sample.config != config:
                continue
            positions.append(sample.position)
    return np.array(positions, dtype=float).reshape(-1, 3)


def sweep_volume(markers: Markers, frame_range: Optional[tuple[int, int]] = None) -> float:
    """
    Volume swept by the actuator: the convex hull of every marker position over the frames.

    :param markers: dictionary marker_id -> MarkerTrajectory.
    :param frame_range: tuple (first, last) of frames, inclusive. If None, all frames.
    :return: float, mm^3.
    """

    positions = _positions_in_range(markers, frame_range)
    volume = hull_volume(convex_hull_3d(positions))
    logger.info(f"Swept volume of {len(positions)} positions: {volume:.1f} mm^3.")
    return volume


def sweep_volumes_by_config(markers: Markers) -> dict[str, float]:
    """
    Swept volume per configuration label of the samples, in order of first appearance. Empty without labels.
    """

    configs = []
    for trajectory in markers.values():
        for sample in trajectory.samples:
            if sample.config is not None and sample.config not in configs:
                configs.append(sample.config)

    return {config: hull_volume(convex_hull_3d(_positions_in_range(markers, None, config))) for config in configs}


def volume_increases(volumes: Mapping[str, float], baseline: str) -> dict[str, tuple[float, float]]:
    """
    Volume each entry adds over the working region of a baseline entry.

    :param volumes: dictionary label -> swept volume in mm^3, must contain 'baseline'.
    :param baseline: string, label of the reference region.
    :return: dictionary label -> (increase in mm^3, increase in percent of the baseline volume).
    """

    if baseline not in volumes:
        raise ValueError(f"Baseline {baseline!r} is not one of {', '.join(volumes) or 'no configs'}.")
    base = volumes[baseline]
    return {label: (volume - base, 100.0 * (volume - base) / base) for label, volume in volumes.items()}


def repeatability_stats(trials: Union[TrialSet, Iterable[TrialSet]]) -> RepeatabilityReport:
    """
    Repeatability of the endpoint over repeated actuations.
    The deviation of a trial is its Euclidean distance from the mean endpoint of its mode; the value of a mode is
    the mean deviation and the overall value is the mean over modes.

    :param trials: TrialSet, or iterable of TrialSet with distinct modes.
    :return: RepeatabilityReport.
    """

    if isinstance(trials, TrialSet):
        trials = [trials]

    per_mode = {}
    per_trial = {}
    for trial_set in trials:
        if trial_set.mode in per_mode:
            raise ValueError(f"Mode {trial_set.mode.value} appears more than once.")
        if len(trial_set) < 2:
            raise InsufficientDataError(
                f"Repeatability of {trial_set.mode.value} needs at least 2 trials, got {len(trial_set)}.")

        mean_endpoint = trial_set.endpoints.mean(axis=0)
        deviations = np.linalg.norm(trial_set.endpoints - mean_endpoint, axis=1)
        per_trial[trial_set.mode] = deviations
        per_mode[trial_set.mode] = float(deviations.mean())

    if not per_mode:
        raise InsufficientDataError("No trials given.")

    return RepeatabilityReport(
        per_mode=per_mode, overall=float(np.mean(list(per_mode.values()))), per_trial=per_trial)
