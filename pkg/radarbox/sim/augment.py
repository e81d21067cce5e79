"""
Cube-level augmentation with matching box transforms.

shift_range multiplies fast time by a linear phase, which moves every
scatterer's beat tone, hence its range, by the same amount. mirror_azimuth
reverses the antenna order: on a uniform linear array that maps the steering
vector of azimuth a onto that of -a up to a constant phase.
"""

import math
from collections.abc import Iterable

import numpy as np

from radarbox.core import OrientedBox, RadarCube


def shift_range(cube: RadarCube, meters: float) -> RadarCube:
    """Move every target `meters` further away (negative moves closer)."""
    config = cube.config
    n = np.arange(config.num_samples)
    ramp = np.exp(2j * np.pi * (meters / config.range_resolution) * n / config.num_samples)
    return RadarCube(cube.data * ramp, config)


def mirror_azimuth(cube: RadarCube) -> RadarCube:
    """Reflect the scene about the boresight (y -> -y)."""
    return RadarCube(cube.data[:, ::-1, :], cube.config)


def shift_boxes_range(boxes: Iterable[OrientedBox], meters: float) -> list[OrientedBox]:
    """Move box centers radially; headings and sizes are kept."""
    shifted = []
    for box in boxes:
        r = math.hypot(box.cx, box.cy)
        az = math.atan2(box.cy, box.cx)
        r_new = r + meters
        shifted.append(
            OrientedBox(r_new * math.cos(az), r_new * math.sin(az), box.w, box.h, box.theta, box.score)
        )
    return shifted


def mirror_boxes(boxes: Iterable[OrientedBox]) -> list[OrientedBox]:
    return [OrientedBox(b.cx, -b.cy, b.w, b.h, -b.theta, b.score) for b in boxes]
