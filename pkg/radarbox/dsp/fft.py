"""
Range-azimuth FFT (the data-fft format).

Implementation:
    1. Hann window and FFT over fast time; keep the first num_range_bins bins.
    2. Hann window and zero-padded FFT over antennas. Bin p of the shifted
       spectrum corresponds to sin(az) = (p - P/2) / (P * d).
    3. Average magnitudes over chirps.
    4. Interpolate the sin-space spectrum linearly onto an even azimuth grid.

Both FFTs are divided by their window sums so a unit scatterer peaks at 1.
"""

import numpy as np

from radarbox.core import ConfigError, PolarMap, RadarCube, SpectrumKind

from .windows import coherent_gain, hann

DEFAULT_AZIMUTH_POINTS = 361
DEFAULT_AZIMUTH_FFT_SIZE = 256


def range_spectrum(cube: RadarCube) -> np.ndarray:
    """Full windowed FFT over fast time, shape (chirp, antenna, num_samples), unnormalized."""
    window = hann(cube.config.num_samples)
    return np.fft.fft(cube.data * window, axis=-1)


def cropped_bins(cube: RadarCube, max_range: float | None) -> int:
    """Number of leading range bins covering [0, max_range)."""
    config = cube.config
    if max_range is None:
        return config.num_range_bins
    if not 0 < max_range <= config.max_range + 1e-9:
        raise ConfigError(f"max_range must be in (0, {config.max_range}], got {max_range}")
    return max(1, round(max_range / config.range_resolution))


def range_profiles(cube: RadarCube, max_range: float | None = None) -> np.ndarray:
    """
    Positive-range bins normalized so a unit scatterer has magnitude 1.

    Returns:
        Complex array (chirp, antenna, range_bin).
    """
    bins = cropped_bins(cube, max_range)
    gain = coherent_gain(hann(cube.config.num_samples))
    return range_spectrum(cube)[..., :bins] / gain


def azimuth_grid(max_azimuth: float, points: int = DEFAULT_AZIMUTH_POINTS) -> np.ndarray:
    if points < 2:
        raise ConfigError(f"azimuth grid needs at least 2 points, got {points}")
    return np.linspace(-max_azimuth, max_azimuth, points)


def sin_space_to_grid(
    spectrum: np.ndarray, azimuths: np.ndarray, antenna_spacing: float
) -> np.ndarray:
    """
    Resample an fftshifted azimuth spectrum onto angles.

    Args:
        spectrum: (fft_size, ...) magnitudes, axis 0 fftshifted
        azimuths: Target angles in radians
        antenna_spacing: Element spacing in wavelengths

    Returns:
        (len(azimuths), ...) linearly interpolated values; the spectrum is periodic.
    """
    size = spectrum.shape[0]
    position = size / 2 + antenna_spacing * np.sin(azimuths) * size
    lower = np.floor(position).astype(int)
    frac = (position - lower).reshape((-1,) + (1,) * (spectrum.ndim - 1))
    return (1 - frac) * spectrum[lower % size] + frac * spectrum[(lower + 1) % size]


def range_azimuth_fft(
    cube: RadarCube,
    azimuth_grid_points: int = DEFAULT_AZIMUTH_POINTS,
    azimuth_fft_size: int = DEFAULT_AZIMUTH_FFT_SIZE,
    max_range: float | None = None,
) -> PolarMap:
    """
    Compute the data-fft polar map.

    Args:
        cube: Raw samples
        azimuth_grid_points: Output azimuth bins over ±max_azimuth
        azimuth_fft_size: Zero-padded FFT length over antennas
        max_range: Optional crop of the range axis

    Returns:
        PolarMap of shape (range_bins, azimuth_grid_points).
    """
    config = cube.config
    if azimuth_fft_size < config.num_antennas:
        raise ConfigError(
            f"azimuth_fft_size {azimuth_fft_size} is smaller than {config.num_antennas} antennas"
        )
    profiles = range_profiles(cube, max_range)
    window = hann(config.num_antennas)
    weighted = profiles * window[None, :, None]
    spectrum = np.fft.fftshift(np.fft.fft(weighted, n=azimuth_fft_size, axis=1), axes=1)
    magnitude = np.abs(spectrum).mean(axis=0) / coherent_gain(window)

    grid = azimuth_grid(config.max_azimuth, azimuth_grid_points)
    values = sin_space_to_grid(magnitude, grid, config.antenna_spacing).T
    bins = profiles.shape[-1]
    return PolarMap(
        values=np.maximum(values, 0.0),
        range_extent=bins * config.range_resolution,
        azimuth_extent=config.max_azimuth,
        format_tag=SpectrumKind.FFT,
    )
