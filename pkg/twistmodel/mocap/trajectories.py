import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, TextIO, Union

import numpy as np
import pandas as pd

from .errors import TrajectoryParseError, DuplicateSampleError, InsufficientDataError
from ..actuator.modes import MotionMode
from ..helper import tables


MARKER_COLUMNS: list[str] = ['frame', 'time_s', 'marker_id', 'x_mm', 'y_mm', 'z_mm']
# Optional trailing column grouping frames into actuation configurations (e.g. one per temperature).
CONFIG_COLUMN: str = 'config'
TRIAL_COLUMNS: list[str] = ['trial', 'mode', 'x_mm', 'y_mm', 'z_mm']
TIP_MARKER_ID: str = 'tip'

Source = Union[str, Path, TextIO]


@dataclass(frozen=True)
class MarkerSample:
    frame: int
    time_s: float
    marker_id: str
    position: tuple[float, float, float]
    config: Optional[str] = None


@dataclass(frozen=True, eq=False)
class MarkerTrajectory:
    """
    Samples of one marker ordered by frame. Occluded frames are simply absent.
    """
    marker_id: str
    samples: tuple[MarkerSample, ...]

    def __post_init__(self):
        object.__setattr__(self, 'samples', tuple(sorted(self.samples, key=lambda sample: sample.frame)))
        object.__setattr__(self, '_by_frame', {sample.frame: sample for sample in self.samples})

    @classmethod
    def from_positions(cls, marker_id: str, positions, frames: Iterable[int] = None,
                       frame_rate_hz: float = 100.0) -> 'MarkerTrajectory':
        """
        Build a trajectory from an (N, 3) array. Frames default to 0..N-1, times to frame / frame_rate_hz.
        """
        positions = np.asarray(positions, dtype=float).reshape(-1, 3)
        frames = range(len(positions)) if frames is None else list(frames)
        samples = [
            MarkerSample(frame=int(frame), time_s=frame / frame_rate_hz, marker_id=marker_id,
                         position=tuple(float(value) for value in position))
            for frame, position in zip(frames, positions)]
        return cls(marker_id=marker_id, samples=tuple(samples))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def frames(self) -> np.ndarray:
        return np.array([sample.frame for sample in self.samples], dtype=int)

    @property
    def positions(self) -> np.ndarray:
        return np.array([sample.position for sample in self.samples], dtype=float).reshape(-1, 3)

    def position_at(self, frame: int) -> Optional[np.ndarray]:
        sample = self._by_frame.get(frame)
        return None if sample is None else np.array(sample.position, dtype=float)


@dataclass(frozen=True, eq=False)
class TrialSet:
    """
    One endpoint (x, y, z in mm) per actuation trial of a single motion mode.
    """
    mode: MotionMode
    endpoints: np.ndarray

    def __post_init__(self):
        endpoints = np.asarray(self.endpoints, dtype=float)
        if endpoints.ndim != 2 or endpoints.shape[1] != 3:
            raise ValueError(f"Endpoints must be an (N, 3) array, got shape {endpoints.shape}.")
        if not np.all(np.isfinite(endpoints)):
            raise ValueError("Endpoints must be finite.")
        object.__setattr__(self, 'endpoints', endpoints)

    def __len__(self) -> int:
        return len(self.endpoints)


def _read_table(source: Source, columns: list[str], optional: list[str] = None) -> pd.DataFrame:
    try:
        table = pd.read_csv(source, dtype=str, keep_default_na=False, encoding='utf-8')
    except pd.errors.EmptyDataError:
        raise TrajectoryParseError("file is empty, expected a header row", line=1) from None
    except pd.errors.ParserError as e:
        # pandas reports the physical line number inside the message.
        match = re.search(r'line (\d+)', str(e))
        raise TrajectoryParseError(f"malformed row: {e}", line=int(match.group(1)) if match else None) from e
    except UnicodeDecodeError as e:
        raise TrajectoryParseError(f"file is not UTF-8 text: {e.reason}", line=_undecodable_line(source)) from e

    header = list(table.columns)
    accepted = [columns] + ([columns + optional] if optional else [])
    if header not in accepted:
        raise TrajectoryParseError(f"unexpected header {','.join(header)!r}, expected {','.join(columns)!r}", line=1)
    return table.fillna('')


def _undecodable_line(source: Source) -> Optional[int]:
    # Only files on disk can be re-read byte by byte.
    if not isinstance(source, (str, Path)):
        return None
    with open(source, 'rb') as stream:
        for number, line in enumerate(stream, start=1):
            try:
                line.decode('utf-8')
            except UnicodeDecodeError:
                return number
    return None


def _line_of(row: int) -> int:
    # Line 1 is the header.
    return row + 2


def _numeric_column(table: pd.DataFrame, column: str) -> np.ndarray:
    values = pd.to_numeric(table[column], errors='coerce').to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise TrajectoryParseError(
            f"{column} value {table[column].iloc[row]!r} is not a finite number", line=_line_of(row))
    return values


def _integer_column(table: pd.DataFrame, column: str) -> np.ndarray:
    values = _numeric_column(table, column)
    bad = (values != np.floor(values)) | (values < 0)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise TrajectoryParseError(
            f"{column} value {table[column].iloc[row]!r} is not a non-negative integer", line=_line_of(row))
    return values.astype(int)


def _text_column(table: pd.DataFrame, column: str) -> np.ndarray:
    values = table[column].to_numpy(dtype=object)
    empty = np.array([value == '' for value in values], dtype=bool)
    if empty.any():
        row = int(np.flatnonzero(empty)[0])
        raise TrajectoryParseError(f"{column} is empty", line=_line_of(row))
    return values


def load_trajectories(source: Source) -> dict[str, MarkerTrajectory]:
    """
    Read a marker CSV with header 'frame,time_s,marker_id,x_mm,y_mm,z_mm' (optionally followed by 'config').

    :param source: string or Path to the file, or an open text stream.
    :return: dictionary marker_id -> MarkerTrajectory, in order of first appearance.
    """

    table = _read_table(source, MARKER_COLUMNS, optional=[CONFIG_COLUMN])
    frames = _integer_column(table, 'frame')
    times = _numeric_column(table, 'time_s')
    marker_ids = _text_column(table, 'marker_id')
    positions = np.column_stack([_numeric_column(table, column) for column in ('x_mm', 'y_mm', 'z_mm')])
    configs = table[CONFIG_COLUMN].to_numpy(dtype=object) if CONFIG_COLUMN in table.columns else None

    duplicated = pd.DataFrame({'frame': frames, 'marker_id': marker_ids}).duplicated().to_numpy()
    if duplicated.any():
        row = int(np.flatnonzero(duplicated)[0])
        raise DuplicateSampleError(
            f"duplicate sample for marker {marker_ids[row]!r} at frame {frames[row]}", line=_line_of(row))

    rows_by_marker: dict[str, list[int]] = {}
    for row, marker_id in enumerate(marker_ids):
        rows_by_marker.setdefault(str(marker_id), []).append(row)

    trajectories = {}
    for marker_id, rows in rows_by_marker.items():
        rows = sorted(rows, key=lambda row: frames[row])
        for earlier, later in zip(rows, rows[1:]):
            if times[later] < times[earlier]:
                raise TrajectoryParseError(
                    f"time_s decreases for marker {marker_id!r} at frame {frames[later]}", line=_line_of(later))
        samples = tuple(
            MarkerSample(
                frame=int(frames[row]), time_s=float(times[row]), marker_id=marker_id,
                position=(float(positions[row, 0]), float(positions[row, 1]), float(positions[row, 2])),
                config=None if configs is None or configs[row] == '' else str(configs[row]))
            for row in rows)
        trajectories[marker_id] = MarkerTrajectory(marker_id=marker_id, samples=samples)
    return trajectories


def write_trajectories(trajectories: Mapping[str, MarkerTrajectory], destination: Union[str, Path, TextIO]) -> None:
    """
    Write trajectories in the canonical marker CSV form: rows by frame, then by marker order of the mapping,
    numbers as the shortest repr that reads back to the same float.
    A canonical file read by 'load_trajectories' and written again is reproduced byte for byte.
    """

    samples = [sample for trajectory in trajectories.values() for sample in trajectory.samples]
    marker_order = {marker_id: index for index, marker_id in enumerate(trajectories)}
    samples.sort(key=lambda sample: (sample.frame, marker_order[sample.marker_id]))
    with_config = any(sample.config is not None for sample in samples)

    header = MARKER_COLUMNS + ([CONFIG_COLUMN] if with_config else [])
    rows = []
    for sample in samples:
        row = [str(sample.frame), tables.format_number(sample.time_s), sample.marker_id,
               *(tables.format_number(value) for value in sample.position)]
        if with_config:
            row.append(sample.config or '')
        rows.append(row)
    tables.write_rows(destination, header, rows)


def load_trials(source: Source) -> dict[MotionMode, TrialSet]:
    """
    Read a repeatability CSV with header 'trial,mode,x_mm,y_mm,z_mm', one endpoint per row.

    :param source: string or Path to the file, or an open text stream.
    :return: dictionary MotionMode -> TrialSet, in the order bending, twisting, extension, present modes only.
    """

    table = _read_table(source, TRIAL_COLUMNS)
    trials = _integer_column(table, 'trial')
    modes = _text_column(table, 'mode')
    positions = np.column_stack([_numeric_column(table, column) for column in ('x_mm', 'y_mm', 'z_mm')])

    known = {mode.value: mode for mode in MotionMode}
    for row, mode in enumerate(modes):
        if mode not in known:
            raise TrajectoryParseError(
                f"mode {mode!r} is not one of {'|'.join(known)}", line=_line_of(row))

    duplicated = pd.DataFrame({'trial': trials, 'mode': modes}).duplicated().to_numpy()
    if duplicated.any():
        row = int(np.flatnonzero(duplicated)[0])
        raise DuplicateSampleError(f"duplicate trial {trials[row]} for mode {modes[row]!r}", line=_line_of(row))

    trial_sets = {}
    for mode in MotionMode:
        rows = [row for row in range(len(modes)) if modes[row] == mode.value]
        if rows:
            rows.sort(key=lambda row: trials[row])
            trial_sets[mode] = TrialSet(mode=mode, endpoints=positions[rows])
    return trial_sets


def trial_endpoint(markers: Mapping[str, MarkerTrajectory], tip_id: str = TIP_MARKER_ID) -> np.ndarray:
    """
    Endpoint of one actuation trial: the tip marker position at the frame of maximum displacement from its first frame.

    :param markers: dictionary marker_id -> MarkerTrajectory of one trial.
    :param tip_id: string, default is 'tip'. Used when several markers are present; a single marker is used as is.
    :return: numpy array (3,).
    """

    if tip_id in markers:
        trajectory = markers[tip_id]
    elif len(markers) == 1:
        trajectory = next(iter(markers.values()))
    else:
        raise InsufficientDataError(f"No {tip_id!r} marker among {sorted(markers)} and more than one marker present.")

    positions = trajectory.positions
    if len(positions) == 0:
        raise InsufficientDataError(f"Marker {trajectory.marker_id!r} has no samples.")
    displacement = np.linalg.norm(positions - positions[0], axis=1)
    return positions[int(np.argmax(displacement))]
