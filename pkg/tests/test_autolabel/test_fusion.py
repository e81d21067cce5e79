"""Tests for detection set fusion module."""

from __future__ import annotations

import pytest

from radarbox.autolabel import fuse_detection_sets
from radarbox.core import ConfigError, DetectionSet, FrameMismatchError, OrientedBox

CAR = OrientedBox(10.0, 0.0, 1.8, 4.6, 0.0)


class TestFuseDetectionSets:
    def test_duplicates_collapse(self):
        sets = [DetectionSet(1, (CAR.with_score(s),)) for s in (0.7, 0.9, 0.8)]
        fused = fuse_detection_sets(sets)
        assert fused.frame_id == 1
        assert [b.score for b in fused] == [0.9]

    def test_loose_overlap_survives_fusion(self):
        shifted = OrientedBox(10.5, 0.0, 1.8, 4.6, 0.0, score=0.6)
        sets = [DetectionSet(0, (CAR.with_score(0.9),)), DetectionSet(0, (shifted,))]
        fused = fuse_detection_sets(sets)
        assert [b.score for b in fused] == pytest.approx([0.9, 0.6])

    def test_low_threshold_decays(self):
        shifted = OrientedBox(10.5, 0.0, 1.8, 4.6, 0.0, score=0.6)
        sets = [DetectionSet(0, (CAR.with_score(0.9),)), DetectionSet(0, (shifted,))]
        fused = fuse_detection_sets(sets, soft_nms_threshold=0.3)
        assert fused.boxes[1].score < 0.6

    def test_score_floor(self):
        faint = OrientedBox(30.0, 5.0, 1.8, 4.6, 0.0, score=0.05)
        fused = fuse_detection_sets([DetectionSet(0, (CAR.with_score(0.9), faint))])
        assert len(fused) == 1

    def test_frames_must_agree(self):
        with pytest.raises(FrameMismatchError, match=r"\[0, 1\]"):
            fuse_detection_sets([DetectionSet(0), DetectionSet(1)])

    def test_needs_sets(self):
        with pytest.raises(ConfigError):
            fuse_detection_sets([])

    def test_empty_sets(self):
        assert len(fuse_detection_sets([DetectionSet(4), DetectionSet(4)])) == 0
