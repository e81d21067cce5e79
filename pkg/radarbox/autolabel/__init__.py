"""
Radarbox Autolabel - scalable label generation from detector ensembles.

This module provides:
    - SymmetryTransform, ALL_TRANSFORMS: the eight rotation/mirror symmetries
    - transform_boxes, inverse_transform_boxes: test-time augmentation on boxes
    - NoisyDetectorConfig, synthesize_detections: synthetic detector runs
    - fuse_detection_sets: soft-NMS fusion of detection sets
    - response_auc, filter_low_response: radar response concentration filter
    - autolabel_frame: the full per-frame pipeline
"""

from .fusion import DEFAULT_FUSION_THRESHOLD, DEFAULT_SCORE_FLOOR, fuse_detection_sets
from .pipeline import (
    AutolabelParams,
    autolabel_detection_sets,
    autolabel_frame,
    tta_detection_sets,
)
from .response import (
    DEFAULT_CONCENTRATION_THRESHOLD,
    DEFAULT_ENLARGE,
    cumulative_auc,
    filter_low_response,
    region_values,
    response_auc,
)
from .synthetic import (
    DEFAULT_DETECTORS,
    FAST_DETECTOR,
    PRECISE_DETECTOR,
    NoisyDetectorConfig,
    synthesize_detections,
)
from .transforms import (
    ALL_TRANSFORMS,
    IDENTITY,
    SymmetryTransform,
    from_matrix,
    inverse_transform_boxes,
    transform_boxes,
)

__all__ = [
    # Transforms
    "SymmetryTransform",
    "ALL_TRANSFORMS",
    "IDENTITY",
    "from_matrix",
    "transform_boxes",
    "inverse_transform_boxes",
    # Synthetic detectors
    "NoisyDetectorConfig",
    "FAST_DETECTOR",
    "PRECISE_DETECTOR",
    "DEFAULT_DETECTORS",
    "synthesize_detections",
    # Fusion
    "fuse_detection_sets",
    "DEFAULT_FUSION_THRESHOLD",
    "DEFAULT_SCORE_FLOOR",
    # Response filter
    "response_auc",
    "cumulative_auc",
    "region_values",
    "filter_low_response",
    "DEFAULT_ENLARGE",
    "DEFAULT_CONCENTRATION_THRESHOLD",
    # Pipeline
    "AutolabelParams",
    "autolabel_frame",
    "autolabel_detection_sets",
    "tta_detection_sets",
]
