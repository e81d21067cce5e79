"""Tests for symmetry transforms module."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from radarbox.autolabel import (
    ALL_TRANSFORMS,
    IDENTITY,
    SymmetryTransform,
    from_matrix,
    inverse_transform_boxes,
    transform_boxes,
)
from radarbox.core import ConfigError, OrientedBox


class TestSymmetryTransform:
    def test_eight_distinct(self):
        matrices = {tuple(t.matrix.ravel()) for t in ALL_TRANSFORMS}
        assert len(matrices) == 8
        assert IDENTITY.is_identity
        assert sum(t.is_identity for t in ALL_TRANSFORMS) == 1

    def test_quarter_turn(self):
        quarter = SymmetryTransform(1)
        assert quarter.apply_points(np.array([[1.0, 0.0]])).tolist() == [[0.0, 1.0]]
        assert quarter.apply_heading(0.0) == pytest.approx(math.pi / 2)

    def test_mirror_before_rotation(self):
        transform = SymmetryTransform(1, mirror=True)
        # (1, 2) -> mirror (1, -2) -> rotate (2, 1)
        assert transform.apply_points(np.array([[1.0, 2.0]])).tolist() == [[2.0, 1.0]]

    @pytest.mark.parametrize("transform", ALL_TRANSFORMS, ids=str)
    def test_inverse(self, transform):
        assert transform.then(transform.inverse()) == IDENTITY
        assert transform.inverse().then(transform) == IDENTITY

    def test_closed_under_composition(self):
        for a, b in itertools.product(ALL_TRANSFORMS, repeat=2):
            assert a.then(b) in ALL_TRANSFORMS

    def test_then_order(self):
        mirror, quarter = SymmetryTransform(0, True), SymmetryTransform(1)
        assert mirror.then(quarter) == SymmetryTransform(1, True)
        assert quarter.then(mirror) == SymmetryTransform(3, True)

    def test_names(self):
        assert str(SymmetryTransform(3, True)) == "rot270+mirror"
        assert str(IDENTITY) == "rot0"

    def test_invalid(self):
        with pytest.raises(ConfigError, match="rotation_quarters"):
            SymmetryTransform(4)
        with pytest.raises(ConfigError, match="not a BEV symmetry"):
            from_matrix(np.array([[2, 0], [0, 1]]))


class TestTransformBoxes:
    @pytest.mark.parametrize("transform", ALL_TRANSFORMS, ids=str)
    def test_inverse_restores(self, transform):
        box = OrientedBox(12.0, -3.0, 1.8, 4.6, 0.7, score=0.8)
        (moved,) = transform_boxes([box], transform)
        (back,) = inverse_transform_boxes([moved], transform)
        assert back.as_array()[:4] == pytest.approx(box.as_array()[:4])
        assert math.cos(back.theta - box.theta) == pytest.approx(1.0)
        assert back.score == 0.8

    def test_heading_follows_points(self):
        box = OrientedBox(5.0, 1.0, 1.0, 4.0, 0.3)
        for transform in ALL_TRANSFORMS:
            (moved,) = transform_boxes([box], transform)
            tip = np.array([[box.cx + math.cos(box.theta), box.cy + math.sin(box.theta)]])
            mapped_tip = transform.apply_points(tip)[0]
            direction = mapped_tip - np.array([moved.cx, moved.cy])
            assert direction == pytest.approx([math.cos(moved.theta), math.sin(moved.theta)])

    def test_variances_swap_on_odd_turns(self):
        box = OrientedBox(1.0, 1.0, 1.0, 1.0, 0.0, score=0.5, variances=(1, 2, 3, 4, 5, 6))
        (odd,) = transform_boxes([box], SymmetryTransform(1))
        (even,) = transform_boxes([box], SymmetryTransform(2, True))
        assert odd.variances == (2.0, 1.0, 3.0, 4.0, 6.0, 5.0)
        assert even.variances == box.variances
