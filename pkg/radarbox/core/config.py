"""
Radar configuration.

RadarConfig carries the sensor constants every stage agrees on. The defaults
describe a 77 GHz corner radar with 153.6 m of range at 0.15 m resolution, a
±90° field of view, 3.7° native azimuth resolution, 50 Hz frame rate and a
32-element receive array.

Derived quantities:
    num_range_bins = max_range / range_resolution (must be integral)
    num_samples    = 2 * num_range_bins (the beat spectrum keeps its lower half)
"""

import math
from collections.abc import Mapping
from dataclasses import asdict, dataclass, fields
from typing import Any

import numpy as np

from .errors import ConfigError

SPEED_OF_LIGHT = 299_792_458.0

_BIN_TOLERANCE = 1e-6


@dataclass(frozen=True)
class RadarConfig:
    """
    Immutable radar constants.

    Attributes:
        max_range: Maximum unambiguous range in meters
        range_resolution: Range bin size in meters
        max_azimuth: Half-width of the field of view in radians
        azimuth_resolution: Native azimuth resolution in radians
        frame_rate: Frames per second
        num_antennas: Receive elements of the uniform linear array
        num_samples: Fast-time samples per chirp
        num_chirps: Chirps per frame (covariance snapshots)
        antenna_spacing: Element spacing in wavelengths
        carrier_wavelength: Carrier wavelength in meters
        noise_floor_db: Receiver noise floor relative to a unit reflector, dB
    """

    max_range: float = 153.6
    range_resolution: float = 0.15
    max_azimuth: float = math.pi / 2
    azimuth_resolution: float = math.radians(3.7)
    frame_rate: float = 50.0
    num_antennas: int = 32
    num_samples: int = 2048
    num_chirps: int = 16
    antenna_spacing: float = 0.5
    carrier_wavelength: float = 3e8 / 77e9
    noise_floor_db: float = -20.0

    def __post_init__(self):
        positive = ("max_range", "range_resolution", "azimuth_resolution", "frame_rate")
        for name in (*positive, "carrier_wavelength"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {value!r}")
        if not 0 < self.max_azimuth <= math.pi / 2:
            raise ConfigError(f"max_azimuth must be in (0, pi/2], got {self.max_azimuth!r}")
        if not 0 < self.antenna_spacing <= 0.5:
            raise ConfigError(
                f"antenna_spacing must be in (0, 0.5] wavelengths, got {self.antenna_spacing!r}"
            )
        if self.num_antennas < 2:
            raise ConfigError(f"num_antennas must be at least 2, got {self.num_antennas}")
        if self.num_chirps < 1:
            raise ConfigError(f"num_chirps must be at least 1, got {self.num_chirps}")
        if not math.isfinite(self.noise_floor_db):
            raise ConfigError("noise_floor_db must be finite")

        ratio = self.max_range / self.range_resolution
        bins = round(ratio)
        if bins < 1 or abs(ratio - bins) > _BIN_TOLERANCE * max(1.0, ratio):
            raise ConfigError(
                f"max_range / range_resolution must be an integer >= 1, got {ratio:.6f}"
            )
        if self.num_samples != 2 * bins:
            raise ConfigError(
                f"num_samples must equal 2 * num_range_bins = {2 * bins}, got {self.num_samples}"
            )

    @property
    def num_range_bins(self) -> int:
        return round(self.max_range / self.range_resolution)

    @property
    def range_bin_centers(self) -> np.ndarray:
        """Range of bin k is k * range_resolution."""
        return np.arange(self.num_range_bins) * self.range_resolution

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], where: str = "config") -> RadarConfig:
        """
        Build a config from a JSON object, defaulting missing fields.

        Raises:
            ConfigError: On unknown keys or values of the wrong type, naming the field path.
        """
        if not isinstance(data, Mapping):
            raise ConfigError(f"{where}: expected an object, got {type(data).__name__}")
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigError(f"{where}: unknown field(s) {', '.join(unknown)}")
        kwargs: dict[str, Any] = {}
        for name, value in data.items():
            expected = int if known[name].type in (int, "int") else float
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{where}.{name}: expected a number, got {value!r}")
            if expected is int and not float(value).is_integer():
                raise ConfigError(f"{where}.{name}: expected an integer, got {value!r}")
            kwargs[name] = expected(value)
        return cls(**kwargs)
