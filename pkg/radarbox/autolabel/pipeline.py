"""
Auto-labeling of one frame.

Implementation:
    1. Every detector runs on all eight symmetric versions of the frame and
       its boxes are mapped back (2 detectors x 8 transforms = 16 sets).
    2. The sets are fused with soft-NMS.
    3. Detections without a concentrated radar response are discarded.
    4. Hard NMS removes any remaining overlap; cars never overlap in BEV.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from radarbox.core import (
    BevImage,
    ConfigError,
    DetectionSet,
    GroundTruthSet,
    make_rng,
)
from radarbox.geometry import DEFAULT_NMS_THRESHOLD, SoftNmsMode, nms

from .fusion import DEFAULT_FUSION_THRESHOLD, DEFAULT_SCORE_FLOOR, fuse_detection_sets
from .response import DEFAULT_CONCENTRATION_THRESHOLD, DEFAULT_ENLARGE, filter_low_response
from .synthetic import DEFAULT_DETECTORS, NoisyDetectorConfig, synthesize_detections
from .transforms import ALL_TRANSFORMS, inverse_transform_boxes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AutolabelParams:
    """Settings of the auto-labeling filters."""

    soft_nms_threshold: float = DEFAULT_FUSION_THRESHOLD
    score_floor: float = DEFAULT_SCORE_FLOOR
    soft_nms_mode: SoftNmsMode = SoftNmsMode.LINEAR
    soft_nms_sigma: float = 0.5
    concentration_threshold: float = DEFAULT_CONCENTRATION_THRESHOLD
    enlarge: float = DEFAULT_ENLARGE
    nms_threshold: float = DEFAULT_NMS_THRESHOLD
    detectors: tuple[NoisyDetectorConfig, ...] = DEFAULT_DETECTORS

    def __post_init__(self):
        object.__setattr__(self, "soft_nms_mode", SoftNmsMode(self.soft_nms_mode))
        if not 0 <= self.soft_nms_threshold <= 1:
            raise ConfigError(f"soft_nms_threshold must be in [0, 1], got {self.soft_nms_threshold}")
        if not 0 <= self.score_floor <= 1:
            raise ConfigError(f"score_floor must be in [0, 1], got {self.score_floor}")
        if not self.detectors:
            raise ConfigError("at least one detector is required")


def tta_detection_sets(
    truth: GroundTruthSet, params: AutolabelParams | None = None, seed: int = 0
) -> list[DetectionSet]:
    """
    Run every synthetic detector on every transform and map the boxes back.

    Set k = detector_index * 8 + transform_index; each run draws from its own
    stream of (seed, frame_id, detector_index, transform_index).
    """
    params = params or AutolabelParams()
    sets = []
    for d, detector in enumerate(params.detectors):
        for t, transform in enumerate(ALL_TRANSFORMS):
            rng = make_rng(seed, truth.frame_id, d, t)
            raw = synthesize_detections(truth.boxes, detector, rng, truth.frame_id, transform)
            sets.append(raw.with_boxes(inverse_transform_boxes(raw.boxes, transform)))
    return sets


def autolabel_detection_sets(
    sets: Sequence[DetectionSet], bev: BevImage, params: AutolabelParams | None = None
) -> DetectionSet:
    """Fuse, filter by response and suppress overlaps."""
    params = params or AutolabelParams()
    fused = fuse_detection_sets(
        sets,
        params.soft_nms_threshold,
        params.score_floor,
        params.soft_nms_mode,
        params.soft_nms_sigma,
    )
    filtered = filter_low_response(fused, bev, params.concentration_threshold, params.enlarge)
    labels = nms(filtered, params.nms_threshold)
    logger.debug(
        "frame %d auto-labels: %d fused, %d after response filter, %d after NMS",
        fused.frame_id,
        len(fused),
        len(filtered),
        len(labels),
    )
    return labels


def autolabel_frame(
    truth: GroundTruthSet, bev: BevImage, params: AutolabelParams | None = None, seed: int = 0
) -> DetectionSet:
    """Auto-label a frame from synthetic detector runs over its true boxes."""
    params = params or AutolabelParams()
    return autolabel_detection_sets(tta_detection_sets(truth, params, seed), bev, params)
