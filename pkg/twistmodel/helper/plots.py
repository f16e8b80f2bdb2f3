from pathlib import Path
from typing import Sequence, Union

import matplotlib
from matplotlib.figure import Figure
import numpy as np


# Fixed hash salt and no date stamp keep the SVG output identical between runs.
_SVG_RC = {'svg.hashsalt': 'twistmodel', 'svg.fonttype': 'none'}


def _save_svg(figure: Figure, destination: Union[str, Path]) -> None:
    with matplotlib.rc_context(_SVG_RC):
        figure.savefig(destination, format='svg', metadata={'Date': None})


def line_chart(x: Sequence[float], y: Sequence[float], destination: Union[str, Path],
               xlabel: str = '', ylabel: str = '', title: str = '') -> None:
    """
    Save a line chart with markers as SVG. NaN and infinite values break the line.
    """

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    y = np.where(np.isfinite(y), y, np.nan)

    figure = Figure(figsize=(6.0, 4.0))
    axes = figure.add_subplot()
    axes.plot(x, y, marker='o', markersize=3, linewidth=1.2)
    axes.set_xlabel(xlabel)
    axes.set_ylabel(ylabel)
    if title:
        axes.set_title(title)
    axes.grid(True, linewidth=0.4, alpha=0.5)
    figure.tight_layout()
    _save_svg(figure, destination)


def scatter_top_view(points: np.ndarray, destination: Union[str, Path], title: str = '') -> None:
    """
    Save the x-y projection of a 3-D point cloud as SVG, equal axis scales.
    """

    points = np.asarray(points, dtype=float).reshape(-1, 3)
    figure = Figure(figsize=(5.0, 5.0))
    axes = figure.add_subplot()
    axes.scatter(points[:, 0], points[:, 1], s=4)
    axes.set_aspect('equal', adjustable='datalim')
    axes.set_xlabel('x [mm]')
    axes.set_ylabel('y [mm]')
    if title:
        axes.set_title(title)
    figure.tight_layout()
    _save_svg(figure, destination)
