"""
Average precision over a dataset.

Implementation:
    1. Match every frame independently (see matching.py).
    2. Sort all detections of all frames by descending score and accumulate
       true and false positives.
    3. AP is the area under the precision envelope (all-points
       interpolation): precision at each recall replaced by the best
       precision at any higher recall.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from radarbox.core import (
    DetectionSet,
    Frame,
    FrameMismatchError,
    GroundTruthSet,
    NoGroundTruthError,
    check_unique_frames,
)

from .matching import match_frame

DEFAULT_IOU_THRESHOLDS = (0.3, 0.5, 0.7)
DEFAULT_REGION_RANGE = 30.0
DEFAULT_REGION_AZIMUTH = math.radians(60.0)


class PrPoint(NamedTuple):
    recall: float
    precision: float
    score_threshold: float


@dataclass(frozen=True)
class PrCurve:
    """
    Precision-recall sweep.

    Attributes:
        points: One point per detection in sweep order
        ap: Area under the envelope
        envelope: Enveloped precision at each point
        iou_threshold: Matching threshold used
        num_ground_truth: Number of reference boxes
    """

    points: tuple[PrPoint, ...]
    ap: float
    envelope: tuple[float, ...]
    iou_threshold: float = 0.5
    num_ground_truth: int = 0


def _sweep(flags: np.ndarray, num_gt: int) -> tuple[np.ndarray, np.ndarray]:
    tp = np.cumsum(flags)
    fp = np.cumsum(~flags)
    recall = tp / num_gt
    precision = tp / np.maximum(tp + fp, 1)
    return recall, precision


def all_points_ap(recall: np.ndarray, precision: np.ndarray) -> tuple[float, np.ndarray]:
    """
    Area under the precision envelope.

    Returns:
        (ap, envelope) with the envelope aligned to the inputs.
    """
    mrec = np.concatenate([[0.0], recall, [1.0]])
    mpre = np.concatenate([[0.0], precision, [0.0]])
    mpre = np.maximum.accumulate(mpre[::-1])[::-1]
    steps = np.flatnonzero(mrec[1:] != mrec[:-1])
    ap = float(np.sum((mrec[steps + 1] - mrec[steps]) * mpre[steps + 1]))
    return ap, mpre[1:-1]


def average_precision(
    dataset_dets: Sequence[DetectionSet],
    dataset_gts: Sequence[GroundTruthSet],
    iou_threshold: float = 0.5,
) -> PrCurve:
    """
    Class-agnostic AP at one IoU threshold.

    Raises:
        NoGroundTruthError: If the dataset has no ground-truth boxes.
        FrameMismatchError: If detections name frames absent from the ground truth.
    """
    check_unique_frames(dataset_dets, "detections")
    check_unique_frames(dataset_gts, "ground truth")
    gts = {frame.frame_id: frame for frame in dataset_gts}
    missing = sorted({d.frame_id for d in dataset_dets} - set(gts))
    if missing:
        raise FrameMismatchError(f"detections for frames missing from ground truth: {missing}")
    num_gt = sum(len(frame) for frame in dataset_gts)
    if num_gt == 0:
        raise NoGroundTruthError("average precision is undefined without ground truth")

    scores: list[float] = []
    flags: list[bool] = []
    for dets in dataset_dets:
        match = match_frame(dets, gts[dets.frame_id], iou_threshold)
        for index in match.order:
            scores.append(float(dets.boxes[index].score))  # type: ignore[arg-type]
            flags.append(match.is_tp[index])

    order = np.argsort(-np.array(scores), kind="stable")
    sorted_scores = np.array(scores)[order]
    recall, precision = _sweep(np.array(flags, dtype=bool)[order], num_gt)
    ap, envelope = all_points_ap(recall, precision)
    points = tuple(
        PrPoint(float(r), float(p), float(s))
        for r, p, s in zip(recall, precision, sorted_scores, strict=True)
    )
    return PrCurve(points, ap, tuple(float(e) for e in envelope), iou_threshold, num_gt)


def restrict_to_region[F: Frame](
    frames: Sequence[F],
    max_range: float = DEFAULT_REGION_RANGE,
    max_azimuth: float = DEFAULT_REGION_AZIMUTH,
) -> list[F]:
    """Keep boxes whose centers lie within max_range and ±max_azimuth of boresight."""
    result = []
    for frame in frames:
        kept = [
            box
            for box in frame.boxes
            if math.hypot(box.cx, box.cy) <= max_range
            and abs(math.atan2(box.cy, box.cx)) <= max_azimuth
        ]
        result.append(frame.with_boxes(kept))
    return result
