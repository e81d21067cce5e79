"""Tests for matching module."""

from __future__ import annotations

import numpy as np
import pytest

from radarbox.core import DetectionSet, GeometryError, GroundTruthSet, OrientedBox
from radarbox.eval import match_frame, visiting_order
from radarbox.geometry import oriented_iou

CAR = OrientedBox(10.0, 0.0, 1.8, 4.6, 0.0)
OTHER = OrientedBox(20.0, 5.0, 1.8, 4.6, 0.0)


class TestMatchFrame:
    def test_exact_hit(self):
        dets = DetectionSet(0, (CAR.with_score(0.5),))
        match = match_frame(dets, GroundTruthSet(0, (CAR,)), 0.5)
        assert match.is_tp == (True,)
        assert match.matched_gt == (0,)

    def test_ground_truth_consumed(self):
        dets = DetectionSet(0, (CAR.with_score(0.4), CAR.with_score(0.9)))
        match = match_frame(dets, GroundTruthSet(0, (CAR,)), 0.5)
        assert match.order == (1, 0)
        assert match.is_tp == (False, True)
        assert match.matched_gt == (-1, 0)

    def test_takes_best_overlap(self):
        near = OrientedBox(10.3, 0.0, 1.8, 4.6, 0.0)
        dets = DetectionSet(0, (CAR.with_score(0.9),))
        match = match_frame(dets, GroundTruthSet(0, (near, CAR)), 0.1)
        assert match.matched_gt == (1,)

    def test_falls_back_to_next_ground_truth(self):
        near = OrientedBox(10.3, 0.0, 1.8, 4.6, 0.0)
        dets = DetectionSet(0, (CAR.with_score(0.9), CAR.with_score(0.8)))
        match = match_frame(dets, GroundTruthSet(0, (near, CAR)), 0.1)
        assert match.matched_gt == (1, 0)

    def test_threshold(self):
        shifted = OrientedBox(11.0, 0.0, 1.8, 4.6, 0.0, score=0.9)
        gts = GroundTruthSet(0, (CAR,))
        assert match_frame(DetectionSet(0, (shifted,)), gts, 0.3).is_tp == (True,)
        assert match_frame(DetectionSet(0, (shifted,)), gts, 0.7).is_tp == (False,)

    def test_disjoint_never_matches(self):
        dets = DetectionSet(0, (OTHER.with_score(0.9),))
        match = match_frame(dets, GroundTruthSet(0, (CAR,)), 0.0)
        assert match.is_tp == (False,)

    def test_no_ground_truth(self):
        match = match_frame(DetectionSet(0, (CAR.with_score(0.9),)), GroundTruthSet(0), 0.5)
        assert match.is_tp == (False,)

    def test_score_ties_keep_input_order(self):
        dets = DetectionSet(0, (CAR.with_score(0.5), CAR.with_score(0.5)))
        assert visiting_order(dets).tolist() == [0, 1]
        assert match_frame(dets, GroundTruthSet(0, (CAR,)), 0.5).is_tp == (True, False)

    def test_requires_scores(self):
        with pytest.raises(GeometryError, match="scored"):
            match_frame(DetectionSet(0, (CAR,)), GroundTruthSet(0, (CAR,)), 0.5)


def greedy_oracle(dets, gts, threshold):
    """Visit every detection in score order and scan all free ground truths."""
    ranked = sorted(range(len(dets.boxes)), key=lambda i: (-dets.boxes[i].score, i))
    free = set(range(len(gts.boxes)))
    matched = [-1] * len(dets.boxes)
    for d in ranked:
        best, best_iou = -1, 0.0
        for g in sorted(free):
            iou = oriented_iou(dets.boxes[d], gts.boxes[g])
            if iou > best_iou:
                best, best_iou = g, iou
        if best >= 0 and best_iou >= threshold:
            matched[d] = best
            free.discard(best)
    return tuple(matched)


class TestAgainstOracle:
    @pytest.mark.parametrize("seed", range(10))
    def test_random_instances(self, seed, random_boxes):
        rng = np.random.default_rng(seed)
        truth = random_boxes(rng, 4)
        near = [
            OrientedBox(b.cx + rng.normal(0, 0.5), b.cy + rng.normal(0, 0.5), b.w, b.h, b.theta)
            for b in truth
        ]
        boxes = [b.with_score(float(rng.uniform())) for b in near + random_boxes(rng, 2)]
        dets = DetectionSet(0, tuple(boxes))
        gts = GroundTruthSet(0, tuple(truth))
        for threshold in (0.1, 0.3, 0.5):
            assert match_frame(dets, gts, threshold).matched_gt == greedy_oracle(dets, gts, threshold)
