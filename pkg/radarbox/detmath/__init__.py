"""
Radarbox Detmath - the mathematics of an anchor-based detection head.

This module provides:
    - Anchor, AnchorConfig, build_anchor_grid: oriented anchor grids
    - kmeans_orientations, mean_anchor_size: anchor priors from ground truth
    - assign_targets: one-to-one ground truth to anchor assignment
    - encode_box, decode_box: regression parameterization
    - smooth_l1, focal_loss, aleatoric_loss, total_loss: losses with gradients
    - anchor_features, fit_toy_head: a trainable linear head
"""

from .anchors import (
    ANCHORS_PER_CELL,
    DEFAULT_ANCHOR_ORIENTATIONS,
    DEFAULT_ANCHOR_SIZE,
    Anchor,
    AnchorConfig,
    anchors_to_array,
    build_anchor_grid,
    kmeans_orientations,
    mean_anchor_size,
    orientation_distance,
)
from .assign import anchor_ious, assign_targets, rank_anchors
from .encoding import BoxEncoding, decode_array, decode_box, encode_array, encode_box
from .losses import (
    DEFAULT_LOCALIZATION_WEIGHT,
    NUM_OUTPUTS,
    LossReport,
    LossTargets,
    aleatoric_loss,
    aleatoric_terms,
    build_targets,
    focal_loss,
    loss_from_targets,
    smooth_l1,
    total_loss,
)
from .toyhead import LossPoint, ToyHead, anchor_features, fit_toy_head

__all__ = [
    # Anchors
    "Anchor",
    "AnchorConfig",
    "ANCHORS_PER_CELL",
    "DEFAULT_ANCHOR_SIZE",
    "DEFAULT_ANCHOR_ORIENTATIONS",
    "build_anchor_grid",
    "anchors_to_array",
    "kmeans_orientations",
    "mean_anchor_size",
    "orientation_distance",
    # Assignment
    "assign_targets",
    "rank_anchors",
    "anchor_ious",
    # Encoding
    "BoxEncoding",
    "encode_box",
    "decode_box",
    "encode_array",
    "decode_array",
    # Losses
    "smooth_l1",
    "focal_loss",
    "aleatoric_loss",
    "aleatoric_terms",
    "total_loss",
    "build_targets",
    "loss_from_targets",
    "LossReport",
    "LossTargets",
    "NUM_OUTPUTS",
    "DEFAULT_LOCALIZATION_WEIGHT",
    # Toy head
    "anchor_features",
    "fit_toy_head",
    "ToyHead",
    "LossPoint",
]
