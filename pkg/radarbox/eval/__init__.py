"""
Radarbox Eval - oriented-IoU average precision.

This module provides:
    - match_frame: greedy one-to-one matching within a frame
    - average_precision: all-points AP with its precision-recall curve
    - restrict_to_region: near-range, near-boresight subset of a dataset
    - evaluate_formats: AP table comparing the radar data formats
"""

from .ap import (
    DEFAULT_IOU_THRESHOLDS,
    DEFAULT_REGION_AZIMUTH,
    DEFAULT_REGION_RANGE,
    PrCurve,
    PrPoint,
    all_points_ap,
    average_precision,
    restrict_to_region,
)
from .matching import FrameMatch, match_frame, visiting_order
from .report import (
    FORMAT_LABELS,
    FORMATS,
    FormatReport,
    FormatRow,
    evaluate_formats,
    pr_curve_csv,
    write_pr_curve,
)

__all__ = [
    # Matching
    "FrameMatch",
    "match_frame",
    "visiting_order",
    # Average precision
    "PrPoint",
    "PrCurve",
    "all_points_ap",
    "average_precision",
    "restrict_to_region",
    "DEFAULT_IOU_THRESHOLDS",
    "DEFAULT_REGION_RANGE",
    "DEFAULT_REGION_AZIMUTH",
    # Report
    "FORMATS",
    "FORMAT_LABELS",
    "FormatRow",
    "FormatReport",
    "evaluate_formats",
    "pr_curve_csv",
    "write_pr_curve",
]
