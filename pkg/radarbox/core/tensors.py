"""
Radar tensors: raw cubes, polar maps and bird's-eye-view images.

Layouts:
    RadarCube.data   complex (chirp, antenna, sample)
    PolarMap.values  real    (range_bin, azimuth_bin); bin k sits at k * range_bin_size,
                             azimuth bins are evenly spaced over [-extent, +extent]
    BevImage.values  real    (row, col); row i covers x = (i + 0.5) * mpp forward,
                             col j covers y = extent_left - (j + 0.5) * mpp

Arrays are copied and frozen on construction.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import RadarConfig
from .errors import ConfigError, ShapeMismatchError


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


class SpectrumKind(Enum):
    """How a polar map was estimated."""

    FFT = "fft"
    MUSIC = "music"


@dataclass(frozen=True, eq=False)
class RadarCube:
    """Raw complex samples of one frame."""

    data: np.ndarray
    config: RadarConfig

    def __post_init__(self):
        data = np.asarray(self.data)
        expected = (self.config.num_chirps, self.config.num_antennas, self.config.num_samples)
        if data.shape != expected:
            raise ShapeMismatchError(f"cube shape {data.shape} does not match config {expected}")
        if not np.all(np.isfinite(data)):
            raise ShapeMismatchError("cube contains non-finite samples")
        object.__setattr__(self, "data", _frozen(data.astype(np.complex128, copy=False)))

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.data.shape  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class PolarMap:
    """Range x azimuth intensity map (data-fft / data-music)."""

    values: np.ndarray
    range_extent: float
    azimuth_extent: float
    format_tag: SpectrumKind

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or min(values.shape) < 1:
            raise ShapeMismatchError(f"polar map needs a non-empty 2D array, got {values.shape}")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ShapeMismatchError("polar map values must be finite and non-negative")
        if not (self.range_extent > 0 and 0 < self.azimuth_extent <= math.pi / 2):
            raise ConfigError(
                f"invalid polar extents: range {self.range_extent}, azimuth {self.azimuth_extent}"
            )
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "format_tag", SpectrumKind(self.format_tag))

    @property
    def num_range_bins(self) -> int:
        return self.values.shape[0]

    @property
    def num_azimuth_bins(self) -> int:
        return self.values.shape[1]

    @property
    def range_bin_size(self) -> float:
        return self.range_extent / self.num_range_bins

    @property
    def ranges(self) -> np.ndarray:
        return np.arange(self.num_range_bins) * self.range_bin_size

    @property
    def azimuths(self) -> np.ndarray:
        return np.linspace(-self.azimuth_extent, self.azimuth_extent, self.num_azimuth_bins)

    @property
    def azimuth_step(self) -> float:
        if self.num_azimuth_bins == 1:
            return 2.0 * self.azimuth_extent
        return 2.0 * self.azimuth_extent / (self.num_azimuth_bins - 1)


@dataclass(frozen=True, eq=False)
class BevImage:
    """Cartesian bird's-eye-view image (img-fft / img-music)."""

    values: np.ndarray
    meters_per_pixel: float
    extent_forward: float
    extent_left: float
    extent_right: float

    def __post_init__(self):
        if not self.meters_per_pixel > 0:
            raise ConfigError(f"meters_per_pixel must be positive, got {self.meters_per_pixel}")
        values = np.asarray(self.values, dtype=float)
        expected = bev_shape(
            self.extent_forward, self.extent_left, self.extent_right, self.meters_per_pixel
        )
        if values.shape != expected:
            raise ShapeMismatchError(f"BEV shape {values.shape} does not match extents {expected}")
        if not np.all(np.isfinite(values)):
            raise ShapeMismatchError("BEV values must be finite")
        object.__setattr__(self, "values", _frozen(values))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape  # type: ignore[return-value]

    @property
    def origin(self) -> tuple[float, float]:
        """Sensor position in fractional (row, col) pixel coordinates."""
        return (-0.5, self.extent_left / self.meters_per_pixel - 0.5)

    def pixel_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (x, y) meshgrids of pixel-center coordinates."""
        rows, cols = self.shape
        x = (np.arange(rows) + 0.5) * self.meters_per_pixel
        y = self.extent_left - (np.arange(cols) + 0.5) * self.meters_per_pixel
        return np.meshgrid(x, y, indexing="ij")

    def xy_to_pixel(self, x, y) -> tuple[np.ndarray, np.ndarray]:
        """Metric coordinates to fractional (row, col) indices."""
        row = np.asarray(x, dtype=float) / self.meters_per_pixel - 0.5
        col = (self.extent_left - np.asarray(y, dtype=float)) / self.meters_per_pixel - 0.5
        return row, col

    def pixel_to_xy(self, row, col) -> tuple[np.ndarray, np.ndarray]:
        x = (np.asarray(row, dtype=float) + 0.5) * self.meters_per_pixel
        y = self.extent_left - (np.asarray(col, dtype=float) + 0.5) * self.meters_per_pixel
        return x, y


def bev_shape(forward: float, left: float, right: float, mpp: float) -> tuple[int, int]:
    """Grid shape for BEV extents, requiring each extent to be a whole number of pixels."""
    if min(forward, left + right) <= 0 or min(left, right) < 0:
        raise ConfigError(f"BEV extents must be positive, got {(forward, left, right)}")
    counts = []
    for name, extent in (("forward", forward), ("left", left), ("right", right)):
        pixels = extent / mpp
        if abs(pixels - round(pixels)) > 1e-6:
            raise ConfigError(f"extent_{name} {extent} is not a multiple of {mpp} m/pixel")
        counts.append(round(pixels))
    return (counts[0], counts[1] + counts[2])
