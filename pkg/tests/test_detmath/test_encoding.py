"""Tests for box encoding module."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radarbox.core import GeometryError, OrientedBox
from radarbox.detmath import (
    Anchor,
    BoxEncoding,
    decode_array,
    decode_box,
    encode_array,
    encode_box,
)

ANCHOR = Anchor(10.0, 0.0, 1.8, 4.6, 0.0)


class TestEncodeBox:
    def test_known_values(self):
        encoding = encode_box(ANCHOR, OrientedBox(10.9, 2.3, 3.6, 4.6, math.pi / 2))
        assert encoding.as_array() == pytest.approx([0.5, 0.5, math.log(2.0), 0.0, 0.0, 1.0])

    def test_offset_wraps(self):
        anchor = Anchor(0.0, 0.0, 1.0, 1.0, 3.0)
        encoding = encode_box(anchor, OrientedBox(0.0, 0.0, 1.0, 1.0, -3.0))
        offset = 2 * math.pi - 6.0
        assert (encoding.cos_theta_o, encoding.sin_theta_o) == pytest.approx(
            (math.cos(offset), math.sin(offset))
        )

    def test_decode_inverts(self):
        box = OrientedBox(12.0, -1.5, 2.0, 5.0, -2.2)
        decoded = decode_box(ANCHOR, encode_box(ANCHOR, box), score=0.4)
        assert decoded.as_array() == pytest.approx(box.as_array())
        assert decoded.score == 0.4

    def test_angle_pair_scale_free(self):
        encoding = BoxEncoding(0.0, 0.0, 0.0, 0.0, 3.0, 3.0)
        assert decode_box(ANCHOR, encoding).theta == pytest.approx(math.pi / 4)

    def test_from_array(self):
        values = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]
        assert BoxEncoding.from_array(np.array(values)).as_array().tolist() == values


class TestVectorized:
    def test_matches_scalar(self, rng, random_boxes):
        boxes = random_boxes(rng, 10)
        anchors = [Anchor(b.cx + 1.0, b.cy - 1.0, 1.5, 4.2, 0.7) for b in boxes]
        anchor_array = np.array([[a.cx, a.cy, a.w, a.h, a.theta] for a in anchors])
        box_array = np.stack([b.as_array() for b in boxes])
        encoded = encode_array(anchor_array, box_array)
        expected = np.stack([encode_box(a, b).as_array() for a, b in zip(anchors, boxes)])
        np.testing.assert_allclose(encoded, expected, atol=1e-12)
        decoded = decode_array(anchor_array, encoded)
        np.testing.assert_allclose(decoded[:, :4], box_array[:, :4], atol=1e-9)
        np.testing.assert_allclose(np.cos(decoded[:, 4] - box_array[:, 4]), 1.0, atol=1e-9)

    def test_count_mismatch(self):
        with pytest.raises(GeometryError, match="mismatch"):
            encode_array(np.zeros((2, 5)), np.ones((3, 5)))

    def test_sizes_positive(self):
        anchors = np.array([[0.0, 0.0, 1.0, 1.0, 0.0]])
        with pytest.raises(GeometryError, match="positive"):
            encode_array(anchors, np.array([[0.0, 0.0, 0.0, 1.0, 0.0]]))
