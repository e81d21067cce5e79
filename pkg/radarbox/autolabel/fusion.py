"""Fusion of several detection sets of one frame by soft-NMS."""

import logging
from collections.abc import Sequence

from radarbox.core import ConfigError, DetectionSet, FrameMismatchError
from radarbox.geometry import SoftNmsMode, soft_nms

logger = logging.getLogger(__name__)

DEFAULT_FUSION_THRESHOLD = 0.9
DEFAULT_SCORE_FLOOR = 0.1


def fuse_detection_sets(
    sets: Sequence[DetectionSet],
    soft_nms_threshold: float = DEFAULT_FUSION_THRESHOLD,
    score_floor: float = DEFAULT_SCORE_FLOOR,
    mode: SoftNmsMode = SoftNmsMode.LINEAR,
    sigma: float = 0.5,
) -> DetectionSet:
    """
    Concatenate the sets and run soft-NMS; boxes scoring below the floor are dropped.

    Raises:
        FrameMismatchError: If the sets disagree on the frame id.
    """
    if not sets:
        raise ConfigError("fusion needs at least one detection set")
    frame_ids = sorted({s.frame_id for s in sets})
    if len(frame_ids) > 1:
        raise FrameMismatchError(f"cannot fuse detection sets of frames {frame_ids}")

    merged = DetectionSet(frame_ids[0], tuple(box for s in sets for box in s.boxes))
    fused = soft_nms(merged, soft_nms_threshold, mode=mode, sigma=sigma, score_floor=score_floor)
    kept = [box for box in fused.boxes if box.score is not None and box.score >= score_floor]
    logger.debug(
        "fused %d sets of frame %d: %d -> %d boxes", len(sets), merged.frame_id, len(merged), len(kept)
    )
    return fused.with_boxes(kept)
