"""Tests for polygon module."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radarbox.core import GeometryError, OrientedBox
from radarbox.geometry import ConvexPolygon, box_corners, box_to_polygon, signed_area

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


class TestSignedArea:
    def test_orientation(self):
        assert signed_area(UNIT_SQUARE) == pytest.approx(1.0)
        assert signed_area(UNIT_SQUARE[::-1]) == pytest.approx(-1.0)


class TestConvexPolygon:
    def test_clockwise_rejected(self):
        with pytest.raises(GeometryError, match="counter-clockwise"):
            ConvexPolygon(UNIT_SQUARE[::-1])

    def test_non_convex_rejected(self):
        dart = np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 0.5], [1.0, 2.0]])
        with pytest.raises(GeometryError):
            ConvexPolygon(dart)

    def test_too_few_vertices(self):
        with pytest.raises(GeometryError, match="at least 3"):
            ConvexPolygon(UNIT_SQUARE[:2])

    def test_vertices_read_only(self):
        polygon = ConvexPolygon(UNIT_SQUARE)
        with pytest.raises(ValueError):
            polygon.vertices[0, 0] = 5.0

    def test_contains(self):
        polygon = ConvexPolygon(UNIT_SQUARE)
        inside = polygon.contains(np.array([0.5, 1.0, 1.5]), np.array([0.5, 0.5, 0.5]))
        assert inside.tolist() == [True, True, False]

    def test_distance_to_boundary(self):
        polygon = ConvexPolygon(UNIT_SQUARE)
        assert polygon.distance_to_boundary(0.5, 0.2) == pytest.approx(0.2)
        assert polygon.distance_to_boundary(2.0, 2.0) == pytest.approx(math.sqrt(2.0))


class TestBoxCorners:
    def test_axis_aligned(self):
        corners = box_corners(OrientedBox(1.0, 2.0, 2.0, 4.0, 0.0))
        np.testing.assert_allclose(corners, [[-1, 1], [3, 1], [3, 3], [-1, 3]])

    def test_area_and_orientation(self, rng, random_boxes):
        for box in random_boxes(rng, 20):
            polygon = box_to_polygon(box)
            assert polygon.area == pytest.approx(box.area)
            assert len(polygon) == 4

    def test_heading_along_h(self):
        corners = box_corners(OrientedBox(0.0, 0.0, 1.0, 4.0, math.pi / 2))
        assert np.ptp(corners[:, 1]) == pytest.approx(4.0)
        assert np.ptp(corners[:, 0]) == pytest.approx(1.0)
