from dataclasses import dataclass

import numpy as np
from scipy import spatial

from .errors import DegenerateInputError


# Point clouds thinner than this along their smallest principal axis are treated as planar.
PLANAR_THICKNESS_MM: float = 1e-6


@dataclass(frozen=True, eq=False)
class Hull3D:
    """
    Closed convex triangulated surface.
    'facets' index into 'vertices'; each triple is ordered counter-clockwise seen from outside.
    """
    vertices: np.ndarray
    facets: np.ndarray

    def planes(self) -> tuple[np.ndarray, np.ndarray]:
        """
        :return: tuple (normals (m, 3) unit outward normals, offsets (m,)), so that n.x <= offset inside.
        """
        a, b, c = (self.vertices[self.facets[:, i]] for i in range(3))
        normals = np.cross(b - a, c - a)
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        return normals, np.einsum('ij,ij->i', normals, a)


def convex_hull_3d(points) -> Hull3D:
    """
    Convex hull of a 3D point cloud computed with Qhull (quickhull).

    :param points: array-like (N, 3), at least 4 affinely independent points.
    :return: Hull3D with vertices in input order and outward-oriented triangular facets.
    """

    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 3:
        raise ValueError(f"Expected an (N, 3) array of points, got shape {points.shape}.")
    if len(points) < 4:
        raise DegenerateInputError(f"A 3D hull needs at least 4 points, got {len(points)}.")
    if not np.all(np.isfinite(points)):
        raise ValueError("Points must be finite.")

    centered = points - points.mean(axis=0)
    _, _, principal_axes = np.linalg.svd(centered, full_matrices=False)
    thickness = float(np.ptp(centered @ principal_axes[-1]))
    if thickness < PLANAR_THICKNESS_MM:
        raise DegenerateInputError(f"Point cloud is planar or lower-dimensional (thickness {thickness:.3e} mm).")

    try:
        qhull = spatial.ConvexHull(points)
    except spatial.QhullError as e:
        raise DegenerateInputError(f"Qhull rejected the point cloud: {e}") from e

    vertex_ids = np.sort(qhull.vertices)
    remap = np.full(len(points), -1, dtype=int)
    remap[vertex_ids] = np.arange(len(vertex_ids))

    simplices = qhull.simplices.copy()
    a, b, c = (points[simplices[:, i]] for i in range(3))
    facing = np.einsum('ij,ij->i', np.cross(b - a, c - a), qhull.equations[:, :3])
    # Qhull does not promise a winding, flip the triangles that face inward.
    flipped = facing < 0
    simplices[flipped] = simplices[flipped][:, [0, 2, 1]]

    facets = remap[simplices]
    return Hull3D(vertices=points[vertex_ids], facets=_canonical_facets(facets))


def _canonical_facets(facets: np.ndarray) -> np.ndarray:
    # Rotate each triple to start at its smallest index (keeps the winding), then sort the rows.
    rolled = np.array([np.roll(facet, -int(np.argmin(facet))) for facet in facets], dtype=int)
    order = np.lexsort((rolled[:, 2], rolled[:, 1], rolled[:, 0]))
    return rolled[order]


def hull_volume(hull: Hull3D) -> float:
    """
    Volume of a hull as the sum of signed tetrahedra spanned by each facet and the vertex centroid.

    :param hull: Hull3D.
    :return: float, volume in cubic units of the input.
    """

    centroid = hull.vertices.mean(axis=0)
    a, b, c = (hull.vertices[hull.facets[:, i]] - centroid for i in range(3))
    determinants = np.einsum('ij,ij->i', a, np.cross(b, c))
    return float(np.sum(determinants) / 6.0)
