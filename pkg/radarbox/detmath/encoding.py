"""
Box regression parameterization.

Relative to an anchor a, a box g is encoded as

    x_o = (g.cx - a.cx) / a.w        w_o = log(g.w / a.w)
    y_o = (g.cy - a.cy) / a.h        h_o = log(g.h / a.h)
    (cos t_o, sin t_o) with t_o = wrap(g.theta - a.theta)

Decoding recovers t_o with atan2(sin, cos), so predicted pairs need not be
unit vectors.
"""

import math
from dataclasses import dataclass

import numpy as np

from radarbox.core import GeometryError, OrientedBox, wrap_angles

from .anchors import Anchor


@dataclass(frozen=True)
class BoxEncoding:
    """Regression targets in BOX_PARAMETERS order."""

    x_o: float
    y_o: float
    w_o: float
    h_o: float
    cos_theta_o: float
    sin_theta_o: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.x_o, self.y_o, self.w_o, self.h_o, self.cos_theta_o, self.sin_theta_o]
        )

    @classmethod
    def from_array(cls, values) -> BoxEncoding:
        return cls(*(float(v) for v in values))


def encode_box(anchor: Anchor, gt: OrientedBox) -> BoxEncoding:
    """Encode `gt` relative to `anchor`."""
    offset = math.remainder(gt.theta - anchor.theta, 2.0 * math.pi)
    return BoxEncoding(
        (gt.cx - anchor.cx) / anchor.w,
        (gt.cy - anchor.cy) / anchor.h,
        math.log(gt.w / anchor.w),
        math.log(gt.h / anchor.h),
        math.cos(offset),
        math.sin(offset),
    )


def decode_box(anchor: Anchor, encoding: BoxEncoding, score: float | None = None) -> OrientedBox:
    """Invert encode_box; the angle pair may have any positive scale."""
    offset = math.atan2(encoding.sin_theta_o, encoding.cos_theta_o)
    return OrientedBox(
        anchor.cx + encoding.x_o * anchor.w,
        anchor.cy + encoding.y_o * anchor.h,
        anchor.w * math.exp(encoding.w_o),
        anchor.h * math.exp(encoding.h_o),
        anchor.theta + offset,
        score=score,
    )


def encode_array(anchors: np.ndarray, boxes: np.ndarray) -> np.ndarray:
    """
    Vectorized encode_box.

    Args:
        anchors: (N, 5) of (cx, cy, w, h, theta)
        boxes: (N, 5) of (cx, cy, w, h, theta)

    Returns:
        (N, 6) encodings.
    """
    anchors = np.asarray(anchors, dtype=float).reshape(-1, 5)
    boxes = np.asarray(boxes, dtype=float).reshape(-1, 5)
    if anchors.shape != boxes.shape:
        raise GeometryError(f"anchor/box count mismatch: {anchors.shape} vs {boxes.shape}")
    if np.any(anchors[:, 2:4] <= 0) or np.any(boxes[:, 2:4] <= 0):
        raise GeometryError("box sizes must be positive")
    offset = wrap_angles(boxes[:, 4] - anchors[:, 4])
    return np.column_stack(
        [
            (boxes[:, 0] - anchors[:, 0]) / anchors[:, 2],
            (boxes[:, 1] - anchors[:, 1]) / anchors[:, 3],
            np.log(boxes[:, 2] / anchors[:, 2]),
            np.log(boxes[:, 3] / anchors[:, 3]),
            np.cos(offset),
            np.sin(offset),
        ]
    )


def decode_array(anchors: np.ndarray, encodings: np.ndarray) -> np.ndarray:
    """Vectorized decode_box; returns (N, 5) with theta wrapped to [-pi, pi)."""
    anchors = np.asarray(anchors, dtype=float).reshape(-1, 5)
    encodings = np.asarray(encodings, dtype=float).reshape(-1, 6)
    offset = np.arctan2(encodings[:, 5], encodings[:, 4])
    return np.column_stack(
        [
            anchors[:, 0] + encodings[:, 0] * anchors[:, 2],
            anchors[:, 1] + encodings[:, 1] * anchors[:, 3],
            anchors[:, 2] * np.exp(encodings[:, 2]),
            anchors[:, 3] * np.exp(encodings[:, 3]),
            wrap_angles(anchors[:, 4] + offset),
        ]
    )
