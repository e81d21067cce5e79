"""
Radarbox DSP - radar data formats and a classical detector.

This module provides:
    - range_azimuth_fft: data-fft polar map
    - music_map: data-music polar map
    - polar_to_cartesian: img-fft / img-music BEV images
    - ca_cfar_detect: two-dimensional cell-averaging CFAR
    - baseline_detect_boxes, baseline_detect_polar: CFAR clusters to oriented boxes
"""

from .baseline import (
    BaselineParams,
    baseline_detect_boxes,
    baseline_detect_polar,
    complete_to_prior,
    minimum_area_rectangle,
)
from .cfar import CfarDetection, CfarParams, ca_cfar_detect, cfar_statistics
from .fft import (
    DEFAULT_AZIMUTH_FFT_SIZE,
    DEFAULT_AZIMUTH_POINTS,
    azimuth_grid,
    range_azimuth_fft,
    range_profiles,
    range_spectrum,
)
from .music import (
    DEFAULT_SUBARRAY_SIZE,
    MusicParams,
    count_sources,
    covariance,
    music_map,
    music_pseudospectrum,
    subarray_length,
)
from .resample import BevParams, polar_to_cartesian
from .windows import coherent_gain, hann, noise_gain

__all__ = [
    # FFT
    "range_azimuth_fft",
    "range_spectrum",
    "range_profiles",
    "azimuth_grid",
    "DEFAULT_AZIMUTH_POINTS",
    "DEFAULT_AZIMUTH_FFT_SIZE",
    "hann",
    "coherent_gain",
    "noise_gain",
    # MUSIC
    "MusicParams",
    "music_map",
    "music_pseudospectrum",
    "covariance",
    "count_sources",
    "subarray_length",
    "DEFAULT_SUBARRAY_SIZE",
    # BEV
    "BevParams",
    "polar_to_cartesian",
    # CFAR
    "CfarParams",
    "CfarDetection",
    "ca_cfar_detect",
    "cfar_statistics",
    # Baseline detector
    "BaselineParams",
    "baseline_detect_boxes",
    "baseline_detect_polar",
    "minimum_area_rectangle",
    "complete_to_prior",
]
