"""
Convex polygons and box corners.

Polygons hold their vertices counter-clockwise. Corner order of a box with
heading u = (cos t, sin t) and left normal v = (-sin t, cos t):

    c - h/2 u - w/2 v,  c + h/2 u - w/2 v,  c + h/2 u + w/2 v,  c - h/2 u + w/2 v
"""

import math
from dataclasses import dataclass

import numpy as np

from radarbox.core import GeometryError, OrientedBox

CONVEXITY_TOLERANCE = 1e-12


def signed_area(vertices: np.ndarray) -> float:
    """Shoelace area; positive for counter-clockwise vertex order."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """
    Counter-clockwise convex polygon in meters.

    Attributes:
        vertices: (n, 2) array, n >= 3
    """

    vertices: np.ndarray

    def __post_init__(self):
        vertices = np.array(self.vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 2 or len(vertices) < 3:
            raise GeometryError(f"polygon needs at least 3 (x, y) vertices, got {vertices.shape}")
        edges = np.roll(vertices, -1, axis=0) - vertices
        following = np.roll(edges, -1, axis=0)
        cross = edges[:, 0] * following[:, 1] - edges[:, 1] * following[:, 0]
        if np.any(cross < -CONVEXITY_TOLERANCE):
            raise GeometryError("polygon is not convex or not counter-clockwise")
        if signed_area(vertices) <= 0:
            raise GeometryError("polygon has no positive area")
        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)

    @property
    def area(self) -> float:
        return signed_area(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def contains(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Vectorized point-in-polygon test (boundary counts as inside)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        inside = np.ones(np.broadcast(x, y).shape, dtype=bool)
        for (x0, y0), (x1, y1) in zip(self.vertices, np.roll(self.vertices, -1, axis=0), strict=True):
            inside &= (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) >= 0
        return inside

    def distance_to_boundary(self, x: float, y: float) -> float:
        """Euclidean distance from a point to the nearest edge."""
        best = math.inf
        point = np.array([x, y])
        for start, end in zip(self.vertices, np.roll(self.vertices, -1, axis=0), strict=True):
            edge = end - start
            t = np.clip(np.dot(point - start, edge) / np.dot(edge, edge), 0.0, 1.0)
            best = min(best, float(np.linalg.norm(start + t * edge - point)))
        return best


def box_corners(box: OrientedBox) -> np.ndarray:
    """(4, 2) counter-clockwise corners of a box."""
    c, s = math.cos(box.theta), math.sin(box.theta)
    u = np.array([c, s]) * (box.h / 2)
    v = np.array([-s, c]) * (box.w / 2)
    center = np.array([box.cx, box.cy])
    return np.stack([center - u - v, center + u - v, center + u + v, center - u + v])


def box_to_polygon(box: OrientedBox) -> ConvexPolygon:
    return ConvexPolygon(box_corners(box))
