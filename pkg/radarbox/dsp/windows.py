"""Cached FFT windows."""

from functools import lru_cache

import numpy as np
from scipy.signal import get_window

from radarbox.core import ConfigError


@lru_cache(maxsize=32)
def _hann(length: int) -> np.ndarray:
    window = get_window("hann", length, fftbins=True).astype(float)
    window.setflags(write=False)
    return window


def hann(length: int) -> np.ndarray:
    """Periodic Hann window of `length` samples (read-only)."""
    if length < 1:
        raise ConfigError(f"window length must be positive, got {length}")
    return _hann(int(length))


def coherent_gain(window: np.ndarray) -> float:
    """Sum of window weights: the FFT peak of a unit tone."""
    return float(np.sum(window))


def noise_gain(window: np.ndarray) -> float:
    """Sum of squared weights: the FFT output power of unit white noise."""
    return float(np.sum(window**2))
