"""
Polar to bird's-eye-view resampling (the img-fft / img-music formats).

Each BEV pixel center is converted to (range, azimuth) and the polar map is
sampled bilinearly there. Pixels beyond the map's range extent or outside the
azimuth field of view are exactly zero.
"""

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from radarbox.core import BevImage, ConfigError, PolarMap, bev_shape

_EXTENT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BevParams:
    """
    BEV grid extents in meters; defaults span 40 m forward, left and right.

    Attributes:
        extent_forward: Coverage along +x
        extent_left: Coverage along +y
        extent_right: Coverage along -y
        meters_per_pixel: Pixel pitch
    """

    extent_forward: float = 40.0
    extent_left: float = 40.0
    extent_right: float = 40.0
    meters_per_pixel: float = 0.1

    def __post_init__(self):
        if not self.meters_per_pixel > 0:
            raise ConfigError(f"meters_per_pixel must be positive, got {self.meters_per_pixel}")
        bev_shape(self.extent_forward, self.extent_left, self.extent_right, self.meters_per_pixel)

    @property
    def shape(self) -> tuple[int, int]:
        return bev_shape(
            self.extent_forward, self.extent_left, self.extent_right, self.meters_per_pixel
        )

    def blank(self) -> BevImage:
        """All-zero image on this grid."""
        return BevImage(
            np.zeros(self.shape),
            self.meters_per_pixel,
            self.extent_forward,
            self.extent_left,
            self.extent_right,
        )


def polar_to_cartesian(polar: PolarMap, params: BevParams | None = None) -> BevImage:
    """
    Resample a polar map onto the BEV grid.

    Raises:
        ConfigError: If a BEV extent exceeds the map's range extent.
    """
    params = params or BevParams()
    limit = polar.range_extent + _EXTENT_TOLERANCE
    for name in ("extent_forward", "extent_left", "extent_right"):
        if getattr(params, name) > limit:
            raise ConfigError(
                f"{name} {getattr(params, name)} m exceeds the map range extent "
                f"{polar.range_extent} m"
            )

    image = params.blank()
    x, y = image.pixel_centers()
    r = np.hypot(x, y)
    theta = np.arctan2(y, x)

    rows = r / polar.range_bin_size
    extent = polar.azimuth_extent
    cols = (theta + extent) / (2.0 * extent) * (polar.num_azimuth_bins - 1)
    sampled = ndimage.map_coordinates(
        polar.values, [rows.ravel(), cols.ravel()], order=1, mode="constant", cval=0.0
    ).reshape(x.shape)

    outside = (r > polar.range_extent) | (np.abs(theta) > extent)
    sampled[outside] = 0.0
    return BevImage(
        np.maximum(sampled, 0.0),
        params.meters_per_pixel,
        params.extent_forward,
        params.extent_left,
        params.extent_right,
    )
