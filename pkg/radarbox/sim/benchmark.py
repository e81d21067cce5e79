"""
Seeded synthetic benchmark scenes.

Default: 50 frames with 1-4 well separated cars each, centers at 5-30 m range
and within ±60° of boresight, sizes drawn around 1.8 x 4.6 m, arbitrary
headings. Frame i only depends on (seed, i).
"""

import math
from dataclasses import dataclass

from radarbox.core import ConfigError, OrientedBox, RadarConfig, derive_seed, make_rng

from .scene import Scatterer, Scene, boxes_outside_view

_MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class BenchmarkConfig:
    """Parameters of the synthetic benchmark."""

    num_frames: int = 50
    min_vehicles: int = 1
    max_vehicles: int = 4
    min_range: float = 5.0
    max_range: float = 30.0
    max_azimuth: float = math.radians(60.0)
    min_separation: float = 8.0
    width_mean: float = 1.8
    width_std: float = 0.1
    length_mean: float = 4.6
    length_std: float = 0.3
    clutter_per_frame: int = 0
    clutter_amplitude: float = 0.3
    scatterers_per_box_edge: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.num_frames < 0:
            raise ConfigError(f"num_frames must be >= 0, got {self.num_frames}")
        if not 1 <= self.min_vehicles <= self.max_vehicles:
            raise ConfigError(
                f"need 1 <= min_vehicles <= max_vehicles, got {self.min_vehicles}, {self.max_vehicles}"
            )
        if not 0 < self.min_range < self.max_range:
            raise ConfigError(f"invalid range interval [{self.min_range}, {self.max_range}]")


def _draw_vehicle(rng, bench: BenchmarkConfig) -> OrientedBox:
    r = rng.uniform(bench.min_range, bench.max_range)
    az = rng.uniform(-bench.max_azimuth, bench.max_azimuth)
    w = max(0.5, rng.normal(bench.width_mean, bench.width_std))
    h = max(1.0, rng.normal(bench.length_mean, bench.length_std))
    theta = rng.uniform(-math.pi, math.pi)
    return OrientedBox(r * math.cos(az), r * math.sin(az), w, h, theta)


def benchmark_scene(bench: BenchmarkConfig, index: int, config: RadarConfig | None = None) -> Scene:
    """Build frame `index` of the benchmark."""
    config = config or RadarConfig()
    rng = make_rng(bench.seed, index)
    count = int(rng.integers(bench.min_vehicles, bench.max_vehicles + 1))
    boxes: list[OrientedBox] = []
    attempts = 0
    while len(boxes) < count:
        attempts += 1
        if attempts > _MAX_ATTEMPTS:
            raise ConfigError(
                f"frame {index}: could not place {count} vehicles {bench.min_separation} m apart"
            )
        candidate = _draw_vehicle(rng, bench)
        if boxes_outside_view([candidate], config):
            continue
        if all(
            math.hypot(candidate.cx - b.cx, candidate.cy - b.cy) >= bench.min_separation
            for b in boxes
        ):
            boxes.append(candidate)

    clutter = []
    for _ in range(bench.clutter_per_frame):
        r = rng.uniform(bench.min_range, bench.max_range)
        az = rng.uniform(-bench.max_azimuth, bench.max_azimuth)
        clutter.append(Scatterer(r, az, bench.clutter_amplitude))

    return Scene(
        boxes=tuple(boxes),
        clutter=tuple(clutter),
        seed=derive_seed(bench.seed, index, 1),
        scatterers_per_box_edge=bench.scatterers_per_box_edge,
        frame_id=index,
    )


def generate_benchmark(bench: BenchmarkConfig, config: RadarConfig | None = None) -> list[Scene]:
    return [benchmark_scene(bench, i, config) for i in range(bench.num_frames)]
