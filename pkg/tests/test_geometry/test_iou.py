"""Tests for oriented IoU module."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radarbox.core import OrientedBox
from radarbox.geometry import (
    box_to_polygon,
    clip_polygon,
    intersection_area,
    iou_matrix,
    oriented_iou,
)

SCAN_ROWS = 8192


def _y_reach(boxes: np.ndarray) -> np.ndarray:
    w, h, theta = boxes[:, 2], boxes[:, 3], boxes[:, 4]
    return np.abs(np.sin(theta)) * h / 2 + np.abs(np.cos(theta)) * w / 2


def scanline_ious(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    IoU of box pairs from chords on many horizontal lines.

    Each box is two slabs; a chord of the overlap is the interval common to
    all four. Midpoint integration over the shared y-range.

    Args:
        a, b: (n, 5) arrays of (cx, cy, w, h, theta)
    """
    lo = np.maximum(a[:, 1] - _y_reach(a), b[:, 1] - _y_reach(b))
    hi = np.minimum(a[:, 1] + _y_reach(a), b[:, 1] + _y_reach(b))
    dy = np.maximum(hi - lo, 0.0) / SCAN_ROWS
    y = lo[:, None] + (np.arange(SCAN_ROWS) + 0.5)[None, :] * dy[:, None]

    lower = np.full(y.shape, -np.inf)
    upper = np.full(y.shape, np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        for cx, cy, w, h, theta in (a.T[:, :, None], b.T[:, :, None]):
            c, s = np.cos(theta), np.sin(theta)
            for ax, ay, half in ((c, s, h / 2), (-s, c, w / 2)):
                offset = (y - cy) * ay
                first = cx + (-half - offset) / ax
                second = cx + (half - offset) / ax
                lower = np.maximum(lower, np.minimum(first, second))
                upper = np.minimum(upper, np.maximum(first, second))
    inter = np.maximum(upper - lower, 0.0).sum(axis=1) * dy
    return inter / (a[:, 2] * a[:, 3] + b[:, 2] * b[:, 3] - inter)


class TestOrientedIou:
    def test_identical(self, car):
        assert oriented_iou(car, car) == pytest.approx(1.0)

    def test_disjoint(self, make_box):
        assert oriented_iou(make_box(cx=0.0), make_box(cx=20.0)) == 0.0

    def test_touching_edges(self):
        assert oriented_iou(OrientedBox(0, 0, 1, 1), OrientedBox(1, 0, 1, 1)) == 0.0

    def test_half_shift(self):
        assert oriented_iou(OrientedBox(0, 0, 1, 1), OrientedBox(0.5, 0, 1, 1)) == pytest.approx(
            1 / 3
        )

    def test_rotated_square(self):
        square = OrientedBox(0, 0, 2, 2, 0.0)
        rotated = OrientedBox(0, 0, 2, 2, math.pi / 4)
        # octagon of area 8 (sqrt 2 - 1)
        inter = intersection_area(box_to_polygon(square), box_to_polygon(rotated))
        assert inter == pytest.approx(8 * (math.sqrt(2) - 1))
        assert oriented_iou(square, rotated) == pytest.approx(1 / math.sqrt(2))

    def test_heading_flip_is_same_box(self, car):
        flipped = OrientedBox(car.cx, car.cy, car.w, car.h, car.theta + math.pi)
        assert oriented_iou(car, flipped) == pytest.approx(1.0)

    def test_contained(self):
        outer = OrientedBox(0, 0, 4, 4, 0.3)
        inner = OrientedBox(0, 0, 1, 2, 1.1)
        assert oriented_iou(outer, inner) == pytest.approx(2 / 16)

    def test_symmetric_and_bounded(self, rng, random_boxes):
        boxes = random_boxes(rng, 30)
        for a, b in zip(boxes[::2], boxes[1::2], strict=True):
            value = oriented_iou(a, b)
            assert 0.0 <= value <= 1.0
            assert value == pytest.approx(oriented_iou(b, a), abs=1e-12)

    def test_rigid_motion_invariant(self):
        a = OrientedBox(1.0, 2.0, 1.5, 4.0, 0.2)
        b = OrientedBox(1.8, 2.5, 2.0, 3.5, 0.9)
        angle, dx, dy = 1.3, -4.0, 7.0
        c, s = math.cos(angle), math.sin(angle)

        def move(box):
            return OrientedBox(
                c * box.cx - s * box.cy + dx,
                s * box.cx + c * box.cy + dy,
                box.w,
                box.h,
                box.theta + angle,
            )

        assert oriented_iou(move(a), move(b)) == pytest.approx(oriented_iou(a, b))

    def test_matches_scanline(self, rng):
        n = 10_000
        a = np.column_stack(
            [
                rng.uniform(-5, 5, n),
                rng.uniform(-5, 5, n),
                rng.uniform(1, 3, n),
                rng.uniform(1, 5, n),
                rng.uniform(-math.pi, math.pi, n),
            ]
        )
        b = np.column_stack(
            [
                a[:, 0] + rng.uniform(-1.5, 1.5, n),
                a[:, 1] + rng.uniform(-1.5, 1.5, n),
                rng.uniform(1, 3, n),
                rng.uniform(1, 5, n),
                rng.uniform(-math.pi, math.pi, n),
            ]
        )
        exact = np.array(
            [
                oriented_iou(OrientedBox.from_array(p), OrientedBox.from_array(q))
                for p, q in zip(a, b, strict=True)
            ]
        )
        chunks = range(0, n, 128)
        scanned = np.concatenate([scanline_ious(a[i : i + 128], b[i : i + 128]) for i in chunks])
        assert np.count_nonzero(exact) > 0.8 * n
        assert np.abs(exact - scanned).max() <= 2e-3


class TestClipping:
    def test_disjoint_is_empty(self):
        square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        assert len(clip_polygon(square, square + 5.0)) == 0
        assert intersection_area(square, square + 5.0) == 0.0

    def test_clip_is_inside_both(self):
        square = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]])
        clipped = clip_polygon(square, square + 1.0)
        assert clipped.min() == pytest.approx(1.0)
        assert clipped.max() == pytest.approx(2.0)


class TestIouMatrix:
    def test_shape_and_values(self, car, make_box):
        other = make_box(cx=40.0)
        matrix = iou_matrix([car, other], [car])
        assert matrix.shape == (2, 1)
        assert matrix[:, 0] == pytest.approx([1.0, 0.0])

    def test_empty(self, car):
        assert iou_matrix([], [car]).shape == (0, 1)
