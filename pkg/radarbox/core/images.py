"""
16-bit PGM renders of polar maps and BEV images.

Values are min-max normalized to [0, 1] (a constant image maps to 0), raised
to `gamma`, and written as binary P5 with maxval 65535. Polar maps and BEV
images are flipped vertically so near range / the sensor sits at the bottom.
"""

import os
from pathlib import Path

import numpy as np

from .errors import ConfigError, ShapeMismatchError
from .files import atomic_write_bytes
from .tensors import BevImage, PolarMap

MAXVAL = 65535


def to_gray16(values: np.ndarray, gamma: float = 1.0) -> np.ndarray:
    """Normalize and gamma-map a 2D array to uint16 gray levels."""
    if not gamma > 0:
        raise ConfigError(f"gamma must be positive, got {gamma}")
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.size == 0:
        raise ShapeMismatchError(f"cannot render an empty or non-2D image {values.shape}")
    low, high = float(values.min()), float(values.max())
    if high > low:
        unit = (values - low) / (high - low)
    else:
        unit = np.zeros_like(values)
    return np.round(unit**gamma * MAXVAL).astype(np.uint16)


def write_pgm(
    path: str | os.PathLike[str], image: BevImage | PolarMap | np.ndarray, gamma: float = 1.0
) -> Path:
    """Render `image` as a 16-bit binary PGM."""
    if isinstance(image, (BevImage, PolarMap)):
        values = image.values[::-1]
    else:
        values = np.asarray(image)
    gray = to_gray16(values, gamma)
    rows, cols = gray.shape
    header = f"P5\n{cols} {rows}\n{MAXVAL}\n".encode("ascii")
    return atomic_write_bytes(path, header + gray.astype(">u2").tobytes())
