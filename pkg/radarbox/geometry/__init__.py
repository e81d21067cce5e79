"""
Radarbox Geometry - exact oriented-box geometry.

This module provides:
    - ConvexPolygon, box_to_polygon: box corners as polygons
    - oriented_iou: Sutherland-Hodgman clipping IoU
    - nms, soft_nms: hard and soft non-maximum suppression
"""

from .iou import clip_polygon, intersection_area, iou_matrix, oriented_iou
from .nms import DEFAULT_NMS_THRESHOLD, SoftNmsMode, nms, soft_nms
from .polygon import ConvexPolygon, box_corners, box_to_polygon, signed_area

__all__ = [
    # Polygons
    "ConvexPolygon",
    "box_corners",
    "box_to_polygon",
    "signed_area",
    # IoU
    "clip_polygon",
    "intersection_area",
    "oriented_iou",
    "iou_matrix",
    # Suppression
    "nms",
    "soft_nms",
    "SoftNmsMode",
    "DEFAULT_NMS_THRESHOLD",
]
