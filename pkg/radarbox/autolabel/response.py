"""
Response-concentration filter for auto-labels.

For a detection the BEV pixels inside the box, enlarged by 20% in w and h,
are sorted ascending and their normalized cumulative sum C_1..C_n is formed.
The AUC is the mean of C_i: (n + 1) / (2n) for a flat region, 1/n when one
pixel holds all the energy. A vehicle concentrates its energy in few pixels,
so detections are kept when the concentration 1 - AUC reaches a threshold.
An all-zero region is treated as flat.
"""

import logging
import math

import numpy as np

from radarbox.core import BevImage, ConfigError, DetectionSet, EmptyRegionError, OrientedBox
from radarbox.geometry import box_corners, box_to_polygon

logger = logging.getLogger(__name__)

DEFAULT_ENLARGE = 0.2
DEFAULT_CONCENTRATION_THRESHOLD = 0.6


def region_values(bev: BevImage, box: OrientedBox, enlarge: float = DEFAULT_ENLARGE) -> np.ndarray:
    """
    Pixel values whose centers lie inside the enlarged box.

    Raises:
        EmptyRegionError: If no pixel center falls inside.
    """
    if enlarge < 0:
        raise ConfigError(f"enlarge must be >= 0, got {enlarge}")
    grown = OrientedBox(box.cx, box.cy, box.w * (1 + enlarge), box.h * (1 + enlarge), box.theta)
    corners = box_corners(grown)
    rows, cols = bev.xy_to_pixel(corners[:, 0], corners[:, 1])
    n_rows, n_cols = bev.shape
    r0, r1 = max(0, math.floor(rows.min())), min(n_rows - 1, math.ceil(rows.max()))
    c0, c1 = max(0, math.floor(cols.min())), min(n_cols - 1, math.ceil(cols.max()))
    if r0 > r1 or c0 > c1:
        raise EmptyRegionError(f"box at ({box.cx:.2f}, {box.cy:.2f}) lies outside the image")

    rr, cc = np.meshgrid(np.arange(r0, r1 + 1), np.arange(c0, c1 + 1), indexing="ij")
    x, y = bev.pixel_to_xy(rr, cc)
    inside = box_to_polygon(grown).contains(x, y)
    if not inside.any():
        raise EmptyRegionError(f"box at ({box.cx:.2f}, {box.cy:.2f}) covers no pixel center")
    return bev.values[rr[inside], cc[inside]]


def cumulative_auc(values: np.ndarray) -> float:
    """Mean of the normalized cumulative sum of the ascending values."""
    values = np.sort(np.maximum(np.asarray(values, dtype=float).ravel(), 0.0))
    n = len(values)
    if n == 0:
        raise EmptyRegionError("AUC of an empty region")
    total = values.sum()
    if total <= 0:
        return (n + 1) / (2 * n)
    return min(1.0, float(np.mean(np.cumsum(values) / total)))


def response_auc(bev: BevImage, box: OrientedBox, enlarge: float = DEFAULT_ENLARGE) -> float:
    """AUC of the response inside the enlarged box, in (0, 1]."""
    return cumulative_auc(region_values(bev, box, enlarge))


def filter_low_response(
    dets: DetectionSet,
    bev: BevImage,
    threshold: float = DEFAULT_CONCENTRATION_THRESHOLD,
    enlarge: float = DEFAULT_ENLARGE,
) -> DetectionSet:
    """Keep detections whose concentration 1 - AUC is at least `threshold`."""
    kept = []
    for box in dets.boxes:
        try:
            concentration = 1.0 - response_auc(bev, box, enlarge)
        except EmptyRegionError as exc:
            logger.warning("frame %d: dropping detection: %s", dets.frame_id, exc)
            continue
        if concentration >= threshold:
            kept.append(box)
        else:
            logger.debug(
                "frame %d: discarding box at (%.2f, %.2f), concentration %.3f",
                dets.frame_id,
                box.cx,
                box.cy,
                concentration,
            )
    return dets.with_boxes(kept)
