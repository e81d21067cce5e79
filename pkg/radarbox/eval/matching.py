"""
Greedy one-to-one matching of detections to ground truth within one frame.

Detections are visited by descending score (input order on ties); each takes
the still-unmatched ground truth of highest oriented IoU, provided the IoU
is positive and reaches the threshold (lowest index on ties). Everything else
is a false positive.
"""

from dataclasses import dataclass

import numpy as np

from radarbox.core import DetectionSet, GeometryError, GroundTruthSet
from radarbox.geometry import iou_matrix


@dataclass(frozen=True)
class FrameMatch:
    """
    Attributes:
        order: Detection indices in visiting order
        is_tp: Per detection (input order), True for a true positive
        matched_gt: Per detection, the matched ground-truth index or -1
    """

    order: tuple[int, ...]
    is_tp: tuple[bool, ...]
    matched_gt: tuple[int, ...]


def visiting_order(dets: DetectionSet) -> np.ndarray:
    scores = dets.scores
    if np.any(np.isnan(scores)):
        raise GeometryError(f"frame {dets.frame_id}: matching requires scored detections")
    return np.argsort(-scores, kind="stable")


def match_frame(dets: DetectionSet, gts: GroundTruthSet, iou_threshold: float) -> FrameMatch:
    order = visiting_order(dets)
    ious = iou_matrix(list(dets.boxes), list(gts.boxes))
    taken = np.zeros(len(gts), dtype=bool)
    matched = [-1] * len(dets)
    for d in order:
        if not len(gts):
            break
        candidates = np.where(taken, -1.0, ious[d])
        best = int(np.argmax(candidates))
        if candidates[best] > 0 and candidates[best] >= iou_threshold:
            taken[best] = True
            matched[d] = best
    return FrameMatch(
        order=tuple(int(i) for i in order),
        is_tp=tuple(m >= 0 for m in matched),
        matched_gt=tuple(matched),
    )
