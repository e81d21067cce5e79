"""
Raw cube synthesis.

Far-field, narrowband point scatterers seen by a uniform linear array. Each
scatterer contributes to cell (chirp, antenna k, sample n)

    amp * exp(-i 4 pi r / lambda) * exp(i 2 pi f n / N) * exp(i 2 pi d k sin(az))

with beat frequency f = r / range_resolution cycles per fast-time window, so
its range spectrum peaks at bin round(r / range_resolution). Chirps are
identical apart from independent noise (no Doppler).

Noise is circular complex white noise. `snr_db` is the per-range-bin SNR of a
unit-amplitude scatterer after the Hann-windowed range FFT, on one antenna and
one chirp. Absolute received power is otherwise arbitrary.
"""

import logging
from collections.abc import Sequence

import numpy as np

from radarbox.core import RadarConfig, RadarCube, SceneError, make_rng
from radarbox.dsp.windows import coherent_gain, hann, noise_gain

from .scene import Scatterer

logger = logging.getLogger(__name__)


def steering_matrix(config: RadarConfig, azimuths: np.ndarray) -> np.ndarray:
    """(num_antennas, len(azimuths)) ULA steering vectors referenced to element 0."""
    k = np.arange(config.num_antennas)[:, None]
    phase = 2j * np.pi * config.antenna_spacing * k * np.sin(np.asarray(azimuths))[None, :]
    return np.exp(phase)


def noise_sigma(config: RadarConfig, snr_db: float) -> float:
    """Standard deviation of complex noise per sample for the requested per-bin SNR."""
    window = hann(config.num_samples)
    processing_gain = coherent_gain(window) ** 2 / noise_gain(window)
    return float(np.sqrt(processing_gain / 10.0 ** (snr_db / 10.0)))


def check_scatterers(scatterers: Sequence[Scatterer], config: RadarConfig) -> None:
    outside = [i for i, s in enumerate(scatterers) if not s.in_view(config)]
    if outside:
        raise SceneError(f"scatterers outside range/azimuth limits: {outside}")


def simulate_cube(
    scatterers: Sequence[Scatterer],
    config: RadarConfig,
    snr_db: float | None = None,
    seed: int = 0,
) -> RadarCube:
    """
    Synthesize one frame of raw samples.

    Args:
        scatterers: Reflectors within the configured field of view
        config: Radar constants
        snr_db: Per-bin SNR of a unit reflector; None disables noise
        seed: Noise seed

    Returns:
        RadarCube of shape (num_chirps, num_antennas, num_samples).
    """
    check_scatterers(scatterers, config)
    shape = (config.num_chirps, config.num_antennas, config.num_samples)

    signal = np.zeros(shape[1:], dtype=np.complex128)
    if scatterers:
        ranges = np.array([s.range for s in scatterers])
        azimuths = np.array([s.azimuth for s in scatterers])
        amplitudes = np.array([s.rcs_amplitude for s in scatterers])
        carrier = np.exp(-4j * np.pi * ranges / config.carrier_wavelength)
        beat = ranges / config.range_resolution
        n = np.arange(config.num_samples)
        tones = np.exp(2j * np.pi * np.outer(beat, n) / config.num_samples)
        signal = steering_matrix(config, azimuths) @ ((amplitudes * carrier)[:, None] * tones)

    data = np.broadcast_to(signal, shape).copy()
    if snr_db is not None:
        sigma = noise_sigma(config, snr_db)
        rng = make_rng(seed)
        noise = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        data += noise * (sigma / np.sqrt(2.0))
    logger.debug("simulated %d scatterers, snr_db=%s, seed=%d", len(scatterers), snr_db, seed)
    return RadarCube(data, config)
