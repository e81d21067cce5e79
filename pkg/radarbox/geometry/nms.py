"""
Hard and soft non-maximum suppression over oriented boxes.

Both operate on one frame and keep the frame id. Equal scores are resolved by
input order.
"""

import logging
import math
from enum import Enum

import numpy as np

from radarbox.core import DetectionSet, GeometryError, OrientedBox

from .iou import oriented_iou

logger = logging.getLogger(__name__)

# No two vehicles overlap in a BEV projection
DEFAULT_NMS_THRESHOLD = 1e-4


class SoftNmsMode(Enum):
    """Score decay applied to boxes overlapping the selected one."""

    LINEAR = "linear"
    GAUSSIAN = "gaussian"


def _scores(dets: DetectionSet) -> np.ndarray:
    scores = dets.scores
    if np.any(np.isnan(scores)):
        raise GeometryError(f"frame {dets.frame_id}: NMS requires every box to carry a score")
    return scores


def nms(dets: DetectionSet, iou_threshold: float = DEFAULT_NMS_THRESHOLD) -> DetectionSet:
    """
    Greedy suppression in descending score order.

    A box is dropped when its IoU with an already kept box exceeds
    `iou_threshold`, so survivors have pairwise IoU <= threshold.
    """
    scores = _scores(dets)
    order = np.argsort(-scores, kind="stable")
    kept: list[OrientedBox] = []
    for index in order:
        candidate = dets.boxes[index]
        if all(oriented_iou(candidate, other) <= iou_threshold for other in kept):
            kept.append(candidate)
    logger.debug("nms frame %d: kept %d of %d", dets.frame_id, len(kept), len(dets))
    return dets.with_boxes(kept)


def soft_nms(
    dets: DetectionSet,
    threshold: float = 0.3,
    mode: SoftNmsMode = SoftNmsMode.LINEAR,
    sigma: float = 0.5,
    score_floor: float = 0.001,
) -> DetectionSet:
    """
    Soft-NMS: decay instead of delete.

    Repeatedly select the highest remaining score and decay every other
    remaining box by its IoU with the selection:
        linear:   s <- s * (1 - IoU)      when IoU > threshold
        gaussian: s <- s * exp(-IoU^2 / sigma)
    Boxes scoring below `score_floor`, before or after decay, are dropped.

    Returns:
        Surviving boxes in selection order with their decayed scores.
    """
    mode = SoftNmsMode(mode)
    if mode is SoftNmsMode.GAUSSIAN and not sigma > 0:
        raise GeometryError(f"gaussian soft-NMS needs sigma > 0, got {sigma}")
    remaining = [
        [box, float(score)]
        for box, score in zip(dets.boxes, _scores(dets), strict=True)
        if score >= score_floor
    ]
    selected: list[OrientedBox] = []
    while remaining:
        best = max(range(len(remaining)), key=lambda i: (remaining[i][1], -i))
        box, score = remaining.pop(best)
        selected.append(box.with_score(score))
        survivors = []
        for entry in remaining:
            iou = oriented_iou(box, entry[0])
            if mode is SoftNmsMode.LINEAR:
                if iou > threshold:
                    entry[1] *= 1.0 - iou
            else:
                entry[1] *= math.exp(-(iou**2) / sigma)
            if entry[1] >= score_floor:
                survivors.append(entry)
        remaining = survivors
    return dets.with_boxes(selected)
