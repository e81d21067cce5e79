"""
Two-dimensional cell-averaging CFAR.

The map is squared (square-law detector) and each interior cell is compared
with alpha times the mean power of its training ring: the cells of the
(2*(train+guard)+1)^2 window outside the (2*guard+1)^2 guard block. Under
exponential noise alpha = N * (pfa^(-1/N) - 1) gives false-alarm rate pfa.

Cells closer than train+guard to the border are never tested. Cells below
`min_level_db` relative to the map's peak power are never detections; both the
threshold and the floor are ratios, so scaling the map does not change the result.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import ndimage

from radarbox.core import BevImage, ConfigError, PolarMap


class CfarDetection(NamedTuple):
    """A detected cell. For BEV input the indices are (row, col)."""

    range_bin: int
    azimuth_bin: int
    snr_estimate: float


@dataclass(frozen=True)
class CfarParams:
    """
    Attributes:
        train_cells: Training cells per side
        guard_cells: Guard cells per side
        pfa: Design false-alarm probability
        min_level_db: Power floor relative to the map peak, None to disable
    """

    train_cells: int = 8
    guard_cells: int = 16
    pfa: float = 1e-3
    min_level_db: float | None = -25.0

    def __post_init__(self):
        if self.train_cells < 1:
            raise ConfigError(f"train_cells must be >= 1, got {self.train_cells}")
        if self.guard_cells < 0:
            raise ConfigError(f"guard_cells must be >= 0, got {self.guard_cells}")
        if not 0 < self.pfa < 1:
            raise ConfigError(f"pfa must be in (0, 1), got {self.pfa}")

    @property
    def half_window(self) -> int:
        return self.train_cells + self.guard_cells

    @property
    def window(self) -> int:
        return 2 * self.half_window + 1

    @property
    def num_training_cells(self) -> int:
        return self.window**2 - (2 * self.guard_cells + 1) ** 2

    @property
    def alpha(self) -> float:
        n = self.num_training_cells
        return n * (self.pfa ** (-1.0 / n) - 1.0)


def _values(grid: PolarMap | BevImage | np.ndarray) -> np.ndarray:
    if isinstance(grid, (PolarMap, BevImage)):
        return grid.values
    return np.asarray(grid, dtype=float)


def _box_sum(power: np.ndarray, size: int) -> np.ndarray:
    return ndimage.uniform_filter(power, size=size, mode="constant", cval=0.0) * size**2


def cfar_statistics(
    grid: PolarMap | BevImage | np.ndarray, params: CfarParams | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """
    Detection mask and per-cell SNR estimate (power / ring mean).

    Returns:
        (mask, snr) arrays shaped like the map; border cells are False / 0.

    Raises:
        ConfigError: If the CFAR window does not fit inside the map.
    """
    params = params or CfarParams()
    values = _values(grid)
    if values.ndim != 2:
        raise ConfigError(f"CFAR needs a 2D map, got shape {values.shape}")
    if min(values.shape) < params.window:
        raise ConfigError(f"CFAR window {params.window} is larger than map {values.shape}")

    power = values**2
    outer = _box_sum(power, params.window)
    inner = _box_sum(power, 2 * params.guard_cells + 1)
    noise = np.maximum(outer - inner, 0.0) / params.num_training_cells

    cut = params.half_window
    interior = np.zeros(power.shape, dtype=bool)
    interior[cut : power.shape[0] - cut, cut : power.shape[1] - cut] = True

    mask = interior & (power > params.alpha * noise)
    if params.min_level_db is not None:
        mask &= power >= 10.0 ** (params.min_level_db / 10.0) * power.max()
    mask &= power > 0

    with np.errstate(divide="ignore", invalid="ignore"):
        snr = np.where(mask, power / noise, 0.0)
    return mask, snr


def ca_cfar_detect(
    grid: PolarMap | BevImage | np.ndarray, params: CfarParams | None = None
) -> list[CfarDetection]:
    """
    Run CA-CFAR and list detections in row-major order.

    snr_estimate is the linear power ratio to the training-ring mean; it is
    inf when the ring is empty of energy.
    """
    mask, snr = cfar_statistics(grid, params)
    rows, cols = np.nonzero(mask)
    return [CfarDetection(int(r), int(c), float(snr[r, c])) for r, c in zip(rows, cols)]
