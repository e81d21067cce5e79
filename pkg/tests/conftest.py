"""Shared test fixtures for radarbox."""

import logging

import numpy as np
import pytest

from radarbox.core import DetectionSet, GroundTruthSet, OrientedBox, RadarConfig


@pytest.fixture(autouse=True)
def _reset_radarbox_logging():
    """Leave the radarbox logger as the library ships it after each test."""
    yield
    logger = logging.getLogger("radarbox")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def small_config():
    """19.2 m, 128 range bins, 16 antennas, 8 chirps."""
    return RadarConfig(
        max_range=19.2,
        range_resolution=0.15,
        num_samples=256,
        num_antennas=16,
        num_chirps=8,
    )


@pytest.fixture
def config():
    return RadarConfig()


@pytest.fixture
def car():
    """A car 15 m ahead, driving across the boresight."""
    return OrientedBox(15.0, 0.0, 1.8, 4.6, np.pi / 2)


@pytest.fixture
def make_box():
    def factory(cx=10.0, cy=0.0, w=1.8, h=4.6, theta=0.0, score=None):
        return OrientedBox(cx, cy, w, h, theta, score)

    return factory


@pytest.fixture
def random_boxes():
    """Factory of n random boxes in a 20 x 20 m area."""

    def factory(rng, n, scored=False):
        boxes = []
        for _ in range(n):
            boxes.append(
                OrientedBox(
                    rng.uniform(-10, 10),
                    rng.uniform(-10, 10),
                    rng.uniform(0.5, 5),
                    rng.uniform(0.5, 5),
                    rng.uniform(-np.pi, np.pi),
                    float(rng.uniform(0, 1)) if scored else None,
                )
            )
        return boxes

    return factory


@pytest.fixture
def frame_pair(car):
    """One frame of truth and a perfect detection of it."""
    return (
        DetectionSet(0, (car.with_score(0.9),)),
        GroundTruthSet(0, (car,)),
    )
