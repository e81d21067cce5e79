"""Tests for toy head module."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radarbox.core import (
    BevImage,
    ConfigError,
    OrientedBox,
    ShapeMismatchError,
    TrainingDivergedError,
)
from radarbox.detmath import (
    Anchor,
    AnchorConfig,
    ToyHead,
    anchor_features,
    assign_targets,
    build_anchor_grid,
    fit_toy_head,
)

TRUTH = OrientedBox(5.0, 1.0, 1.8, 4.6, math.pi / 2)


@pytest.fixture
def bev():
    """10 x 10 m image, bright where the vehicle is."""
    values = np.full((100, 100), 0.05)
    image = BevImage(values, 0.1, 10.0, 5.0, 5.0)
    x, y = image.pixel_centers()
    inside = (np.abs(x - TRUTH.cx) <= TRUTH.w / 2) & (np.abs(y - TRUTH.cy) <= TRUTH.h / 2)
    values[inside] = 1.0
    return BevImage(values, 0.1, 10.0, 5.0, 5.0)


@pytest.fixture
def anchors():
    return build_anchor_grid(AnchorConfig.covering(10.0, 5.0, 5.0, 2.0))


class TestAnchorFeatures:
    def test_shape_and_range(self, bev, anchors):
        features = anchor_features(bev, anchors)
        assert features.shape == (len(anchors), 9)
        assert features.min() >= 0.0
        assert features.max() == pytest.approx(1.0)

    def test_anchor_on_vehicle_is_bright(self, bev):
        on = Anchor(TRUTH.cx, TRUTH.cy, 1.5, 4.2, math.pi / 2)
        off = Anchor(8.0, -3.0, 1.5, 4.2, math.pi / 2)
        features = anchor_features(bev, [on, off], lattice=2)
        assert features.shape == (2, 4)
        np.testing.assert_allclose(features[0], 1.0)
        np.testing.assert_allclose(features[1], 0.05)

    def test_outside_image_is_zero(self, bev):
        features = anchor_features(bev, [Anchor(50.0, 0.0, 1.0, 1.0, 0.0)])
        assert not features.any()

    def test_lattice(self, bev, anchors):
        with pytest.raises(ConfigError, match="lattice"):
            anchor_features(bev, anchors, lattice=0)


class TestFitToyHead:
    def test_loss_decreases(self, bev, anchors):
        features = anchor_features(bev, anchors)
        head = fit_toy_head(features, [TRUTH], steps=200, lr=0.05, anchors=anchors)
        assert [p.step for p in head.trace] == list(range(201))
        assert head.trace[-1].total < 0.5 * head.trace[0].total

    def test_deterministic(self, bev, anchors):
        features = anchor_features(bev, anchors)
        a = fit_toy_head(features, [TRUTH], steps=10, lr=0.05, anchors=anchors, seed=1)
        b = fit_toy_head(features, [TRUTH], steps=10, lr=0.05, anchors=anchors, seed=1)
        np.testing.assert_array_equal(a.weights, b.weights)

    def test_zero_steps(self, bev, anchors):
        features = anchor_features(bev, anchors)
        head = fit_toy_head(features, [TRUTH], steps=0, lr=0.05, anchors=anchors)
        assert len(head.trace) == 1
        assert head.detect(features, anchors) == []

    def test_without_variance(self, bev, anchors):
        features = anchor_features(bev, anchors)
        initial = fit_toy_head(features, [TRUTH], steps=0, lr=0.05, anchors=anchors)
        head = fit_toy_head(
            features, [TRUTH], steps=50, lr=0.05, anchors=anchors, use_variance=False
        )
        # log-sigma outputs receive no gradient
        np.testing.assert_array_equal(head.weights[:, 7:], initial.weights[:, 7:])
        assert not head.bias[7:].any()
        assert not np.array_equal(head.weights[:, 1:7], initial.weights[:, 1:7])

    def test_divergence(self, bev, anchors):
        features = anchor_features(bev, anchors)
        with pytest.raises(TrainingDivergedError) as info:
            fit_toy_head(
                features, [TRUTH], steps=20, lr=1e200, anchors=anchors, max_grad_norm=None
            )
        assert info.value.step >= 1

    def test_feature_rows_must_match(self, bev, anchors):
        features = anchor_features(bev, anchors)
        with pytest.raises(ShapeMismatchError):
            fit_toy_head(features[:-1], [TRUTH], steps=1, lr=0.1, anchors=anchors)

    def test_negative_rate(self, bev, anchors):
        features = anchor_features(bev, anchors)
        with pytest.raises(ConfigError):
            fit_toy_head(features, [TRUTH], steps=1, lr=-0.1, anchors=anchors)

    def test_detect_decodes_confident_anchors(self, anchors):
        weights = np.zeros((1, 13))
        bias = np.zeros(13)
        bias[0] = 5.0
        head = ToyHead(weights, bias)
        boxes = head.detect(np.zeros((len(anchors), 1)), anchors, confidence=0.9)
        assert len(boxes) == len(anchors)
        assert boxes[0].as_array()[:4] == pytest.approx(anchors[0].as_box().as_array()[:4])
        assert boxes[0].score == pytest.approx(1 / (1 + math.exp(-5.0)))


class TestPredictedSigma:
    CELLS = [(r, c) for r in (1, 4, 7) for c in (1, 4, 7)]

    @staticmethod
    def scene():
        """Bright anchors on a 20 x 20 m image; the anchors are the clean boxes."""
        anchors = build_anchor_grid(AnchorConfig.covering(20.0, 10.0, 10.0, 2.0))
        clean = [anchors[(r * 10 + c) * 3] for r, c in TestPredictedSigma.CELLS]
        values = np.full((200, 200), 0.05)
        image = BevImage(values, 0.1, 20.0, 10.0, 10.0)
        x, y = image.pixel_centers()
        for anchor in clean:
            dx, dy = x - anchor.cx, y - anchor.cy
            along = dx * math.cos(anchor.theta) + dy * math.sin(anchor.theta)
            across = -dx * math.sin(anchor.theta) + dy * math.cos(anchor.theta)
            values[(np.abs(along) <= anchor.h / 2) & (np.abs(across) <= anchor.w / 2)] = 1.0
        image = BevImage(values, 0.1, 20.0, 10.0, 10.0)
        return anchors, clean, anchor_features(image, anchors)

    def test_noisy_parameter_gets_larger_sigma(self):
        anchors, clean, features = self.scene()
        wins = 0
        for seed in range(20):
            rng = np.random.default_rng(seed)
            # x labels jitter, y labels are exact
            gts = [
                OrientedBox(a.cx + rng.normal(0.0, 0.5), a.cy, a.w, a.h, a.theta) for a in clean
            ]
            head = fit_toy_head(features, gts, steps=1500, lr=0.05, anchors=anchors, seed=seed)
            positives = sorted(assign_targets(anchors, gts).values())
            sigmas = head.sigmas(features)[positives]
            wins += sigmas[:, 0].mean() > sigmas[:, 1].mean()
        assert wins >= 15
