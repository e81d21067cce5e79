"""Tests for anchors module."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radarbox.core import ConfigError, EstimationError, OrientedBox
from radarbox.detmath import (
    DEFAULT_ANCHOR_ORIENTATIONS,
    Anchor,
    AnchorConfig,
    anchors_to_array,
    build_anchor_grid,
    kmeans_orientations,
    mean_anchor_size,
    orientation_distance,
)


class TestAnchorConfig:
    def test_defaults(self):
        config = AnchorConfig((4, 5), 2.0)
        assert config.num_anchors == 60
        assert config.anchor_size == (1.5, 4.2)
        assert config.anchor_orientations == DEFAULT_ANCHOR_ORIENTATIONS

    def test_three_orientations(self):
        with pytest.raises(ConfigError, match="exactly 3"):
            AnchorConfig((1, 1), 1.0, anchor_orientations=(0.0, 1.0))

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"grid_shape": (0, 3), "cell_size": 1.0},
            {"grid_shape": (3, 3), "cell_size": 0.0},
            {"grid_shape": (3, 3), "cell_size": 1.0, "anchor_size": (0.0, 4.0)},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            AnchorConfig(**kwargs)

    def test_covering(self):
        config = AnchorConfig.covering(30.0, 15.0, 15.0, 2.0)
        assert config.grid_shape == (15, 15)
        assert config.origin == (0.0, -15.0)
        first = build_anchor_grid(config)[0]
        assert (first.cx, first.cy) == pytest.approx((1.0, -14.0))

    def test_covering_rounds_up(self):
        assert AnchorConfig.covering(5.0, 1.0, 1.0, 2.0).grid_shape == (3, 1)


class TestAnchorGrid:
    def test_index_layout(self):
        orientations = (0.0, 1.0, 2.0)
        config = AnchorConfig((2, 3), 1.0, anchor_orientations=orientations)
        anchors = build_anchor_grid(config)
        assert len(anchors) == 18
        # row 1, col 2, orientation 1
        anchor = anchors[(1 * 3 + 2) * 3 + 1]
        assert (anchor.cx, anchor.cy, anchor.theta) == pytest.approx((1.5, 2.5, 1.0))

    def test_array(self):
        anchors = build_anchor_grid(AnchorConfig((1, 2), 1.0))
        array = anchors_to_array(anchors)
        assert array.shape == (6, 5)
        assert array[3, 1] == pytest.approx(1.5)
        assert anchors_to_array([]).shape == (0, 5)

    def test_anchor_as_box(self):
        box = Anchor(1.0, 2.0, 1.5, 4.2, 0.5).as_box()
        assert box.score is None
        assert box.area == pytest.approx(6.3)


class TestOrientationDistance:
    def test_half_turn_symmetry(self):
        assert orientation_distance(0.1, math.pi + 0.1) == pytest.approx(0.0)

    def test_maximum(self):
        assert orientation_distance(0.0, math.pi / 2) == pytest.approx(math.pi / 2)
        assert orientation_distance(0.2, math.pi - 0.2) == pytest.approx(0.4)


class TestPriors:
    def test_mean_size(self, make_box):
        boxes = [make_box(w=1.6, h=4.0), make_box(w=2.0, h=5.0)]
        assert mean_anchor_size(boxes) == pytest.approx((1.8, 4.5))

    def test_mean_size_needs_boxes(self):
        with pytest.raises(EstimationError):
            mean_anchor_size([])

    def test_recovers_clusters(self, rng):
        centers = np.array([0.3, 1.2, 2.4])
        headings = np.concatenate([rng.normal(c, 0.03, 40) for c in centers])
        found = kmeans_orientations(headings, seed=3)
        assert found == tuple(sorted(found))
        assert np.abs(np.array(found) - centers).max() < 0.05

    def test_cluster_across_wrap(self, rng):
        headings = np.concatenate([rng.normal(0.0, 0.03, 30), rng.normal(math.pi, 0.03, 30)])
        (found,) = kmeans_orientations(headings, k=1)
        assert 0.0 <= found < math.pi
        assert orientation_distance(found, 0.0) < 0.02

    def test_accepts_boxes(self, make_box):
        boxes = [make_box(theta=t) for t in (0.1, 0.12, 1.5, 1.52, 2.8, 2.82)]
        found = kmeans_orientations(boxes)
        assert found == pytest.approx((0.11, 1.51, 2.81), abs=1e-6)

    def test_deterministic(self, rng):
        headings = rng.uniform(-math.pi, math.pi, 50)
        assert kmeans_orientations(headings, seed=4) == kmeans_orientations(headings, seed=4)

    def test_too_few(self):
        with pytest.raises(EstimationError, match="at least 3"):
            kmeans_orientations([OrientedBox(0, 0, 1, 1)])
