"""
Ground-truth to anchor assignment.

Each ground truth gets exactly one anchor and each anchor at most one ground
truth. Anchors are ranked per ground truth by (IoU descending, center distance
ascending, anchor index ascending); a ground truth with no overlapping anchor
falls back to the nearest center. Ground truths are served in order of their
best IoU (then index), each taking its best anchor not yet taken.
"""

from collections.abc import Sequence

import numpy as np

from radarbox.core import ConfigError, OrientedBox
from radarbox.geometry import oriented_iou

from .anchors import Anchor, anchors_to_array

# IoUs closer than this count as equal for ranking
_IOU_DECIMALS = 12


def anchor_ious(
    anchors: Sequence[Anchor], gt: OrientedBox, array: np.ndarray | None = None
) -> np.ndarray:
    """Oriented IoU between one box and every anchor; far anchors are skipped."""
    if array is None:
        array = anchors_to_array(anchors)
    ious = np.zeros(len(anchors))
    reach = 0.5 * np.hypot(array[:, 2], array[:, 3]) + gt.circumradius
    near = np.hypot(array[:, 0] - gt.cx, array[:, 1] - gt.cy) < reach
    for index in np.flatnonzero(near):
        ious[index] = oriented_iou(anchors[index].as_box(), gt)
    return ious


def rank_anchors(anchors: Sequence[Anchor], gt: OrientedBox) -> tuple[np.ndarray, np.ndarray]:
    """
    Anchor indices from best to worst for one ground truth.

    Returns:
        (order, ious) with ious indexed by anchor.
    """
    array = anchors_to_array(anchors)
    ious = anchor_ious(anchors, gt, array)
    distance = np.hypot(array[:, 0] - gt.cx, array[:, 1] - gt.cy)
    index = np.arange(len(anchors))
    order = np.lexsort((index, distance, -np.round(ious, _IOU_DECIMALS)))
    return order, ious


def assign_targets(anchors: Sequence[Anchor], gts: Sequence[OrientedBox]) -> dict[int, int]:
    """
    Map ground-truth index to anchor index.

    Ground truths left without a free anchor (more boxes than anchors) are absent
    from the result.
    """
    if not anchors:
        raise ConfigError("assignment needs at least one anchor")
    rankings = [rank_anchors(anchors, gt) for gt in gts]
    best = [float(np.round(ious[order[0]], _IOU_DECIMALS)) for order, ious in rankings]
    service = sorted(range(len(gts)), key=lambda g: (-best[g], g))

    taken: set[int] = set()
    assignment: dict[int, int] = {}
    for g in service:
        order, _ = rankings[g]
        for a in order:
            a = int(a)
            if a not in taken:
                taken.add(a)
                assignment[g] = a
                break
    return dict(sorted(assignment.items()))
