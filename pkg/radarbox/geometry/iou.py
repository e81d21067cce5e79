"""
Oriented IoU by convex clipping.

Implementation:
    Sutherland-Hodgman clips polygon A against every edge of polygon B (both
    convex and counter-clockwise), then the shoelace formula gives the
    intersection area. Intersections below 1e-12 m^2 count as empty.
"""

import math

import numpy as np

from radarbox.core import OrientedBox

from .polygon import ConvexPolygon, box_corners, signed_area

AREA_EPSILON = 1e-12


def _cross(origin: np.ndarray, direction: np.ndarray, point: np.ndarray) -> float:
    return float(direction[0] * (point[1] - origin[1]) - direction[1] * (point[0] - origin[0]))


def clip_polygon(subject: np.ndarray, clipper: np.ndarray) -> np.ndarray:
    """
    Clip `subject` by the convex, counter-clockwise `clipper`.

    Returns:
        Vertices of the intersection, possibly fewer than 3 when empty.
    """
    output = [np.asarray(p, dtype=float) for p in subject]
    for start, end in zip(clipper, np.roll(clipper, -1, axis=0), strict=True):
        if not output:
            break
        direction = end - start
        points, output = output, []
        previous = points[-1]
        previous_side = _cross(start, direction, previous)
        for current in points:
            side = _cross(start, direction, current)
            if side >= 0:
                if previous_side < 0:
                    output.append(_intersect(previous, current, previous_side, side))
                output.append(current)
            elif previous_side >= 0:
                output.append(_intersect(previous, current, previous_side, side))
            previous, previous_side = current, side
    return np.array(output).reshape(-1, 2)


def _intersect(p: np.ndarray, q: np.ndarray, side_p: float, side_q: float) -> np.ndarray:
    t = side_p / (side_p - side_q)
    return p + t * (q - p)


def intersection_area(a: np.ndarray | ConvexPolygon, b: np.ndarray | ConvexPolygon) -> float:
    """Area of the intersection of two convex counter-clockwise polygons."""
    va = a.vertices if isinstance(a, ConvexPolygon) else np.asarray(a, dtype=float)
    vb = b.vertices if isinstance(b, ConvexPolygon) else np.asarray(b, dtype=float)
    clipped = clip_polygon(va, vb)
    if len(clipped) < 3:
        return 0.0
    area = signed_area(clipped)
    return area if area >= AREA_EPSILON else 0.0


def oriented_iou(a: OrientedBox, b: OrientedBox) -> float:
    """
    Intersection over union of two oriented boxes.

    Examples:
        >>> oriented_iou(OrientedBox(0, 0, 1, 1), OrientedBox(0.5, 0, 1, 1))  # doctest: +ELLIPSIS
        0.333...
    """
    if math.hypot(a.cx - b.cx, a.cy - b.cy) >= a.circumradius + b.circumradius:
        return 0.0
    inter = intersection_area(box_corners(a), box_corners(b))
    if inter == 0.0:
        return 0.0
    union = a.area + b.area - inter
    return min(1.0, max(0.0, inter / union))


def iou_matrix(boxes_a: list[OrientedBox], boxes_b: list[OrientedBox]) -> np.ndarray:
    """Pairwise oriented IoU, shape (len(a), len(b))."""
    result = np.zeros((len(boxes_a), len(boxes_b)))
    for i, a in enumerate(boxes_a):
        for j, b in enumerate(boxes_b):
            result[i, j] = oriented_iou(a, b)
    return result
