"""
Per-frame pipeline stages shared by the subcommands and the demo.

Formats:
    data-fft    range_azimuth_fft polar map
    data-music  music_map polar map
    img-fft     data-fft resampled onto the BEV grid
    img-music   data-music resampled onto the BEV grid

Image formats compute their polar map only as far as the farthest BEV corner.
"""

import math
from dataclasses import dataclass, field, replace

from radarbox.core import (
    BevImage,
    ConfigError,
    DetectionSet,
    PolarMap,
    RadarCube,
)
from radarbox.dsp import (
    DEFAULT_AZIMUTH_POINTS,
    BaselineParams,
    BevParams,
    CfarParams,
    MusicParams,
    baseline_detect_boxes,
    baseline_detect_polar,
    music_map,
    polar_to_cartesian,
    range_azimuth_fft,
)
from radarbox.eval import FORMATS
from radarbox.geometry import DEFAULT_NMS_THRESHOLD, nms

DEFAULT_CONFIDENCE = 0.5


@dataclass(frozen=True)
class FormatSettings:
    """How cubes become maps and images."""

    bev: BevParams = field(default_factory=BevParams)
    music: MusicParams = field(default_factory=MusicParams)
    azimuth_grid_points: int = DEFAULT_AZIMUTH_POINTS
    max_range: float | None = None


@dataclass(frozen=True)
class DetectSettings:
    """Baseline detector plus the confidence and NMS post-processing."""

    cfar: CfarParams = field(default_factory=CfarParams)
    baseline: BaselineParams = field(default_factory=BaselineParams)
    confidence: float = DEFAULT_CONFIDENCE
    nms_threshold: float = DEFAULT_NMS_THRESHOLD

    def __post_init__(self):
        if not 0 <= self.confidence <= 1:
            raise ConfigError(f"confidence must be in [0, 1], got {self.confidence}")


def check_format(name: str) -> str:
    if name not in FORMATS:
        raise ConfigError(f"unknown format '{name}', expected one of {', '.join(FORMATS)}")
    return name


def _polar(cube: RadarCube, kind: str, settings: FormatSettings, max_range: float | None) -> PolarMap:
    if kind == "fft":
        return range_azimuth_fft(cube, settings.azimuth_grid_points, max_range=max_range)
    music = replace(settings.music, azimuth_grid_points=settings.azimuth_grid_points)
    return music_map(cube, music, max_range)


def compute_format(
    cube: RadarCube, name: str, settings: FormatSettings | None = None
) -> PolarMap | BevImage:
    """Produce one radar data format from a cube."""
    settings = settings or FormatSettings()
    source, kind = check_format(name).split("-")
    if source == "data":
        return _polar(cube, kind, settings, settings.max_range)

    bev = settings.bev
    needed = math.hypot(bev.extent_forward, max(bev.extent_left, bev.extent_right))
    reach = min(needed + cube.config.range_resolution, cube.config.max_range)
    if settings.max_range is not None:
        reach = min(reach, settings.max_range)
    return polar_to_cartesian(_polar(cube, kind, settings, reach), bev)


def detect(
    tensor: PolarMap | BevImage, frame_id: int, settings: DetectSettings | None = None
) -> DetectionSet:
    """Baseline detection, confidence filter, then hard NMS."""
    settings = settings or DetectSettings()
    if isinstance(tensor, BevImage):
        raw = baseline_detect_boxes(tensor, settings.cfar, settings.baseline, frame_id)
    else:
        raw = baseline_detect_polar(tensor, settings.cfar, settings.baseline, frame_id)
    confident = raw.with_boxes(
        [b for b in raw.boxes if b.score is not None and b.score >= settings.confidence]
    )
    return nms(confident, settings.nms_threshold)
