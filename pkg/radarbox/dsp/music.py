"""
MUSIC range-azimuth map (the data-music format).

Implementation, per range bin:
    1. Snapshots are the chirps' Hann-windowed range spectra at that bin.
    2. Antenna covariance, spatially smoothed over subarrays (12 elements by
       default, capped at the array) and forward-backward averaged, plus diagonal loading of
       `diagonal_loading * trace / L`.
    3. Eigendecomposition; the signal subspace size is fixed or chosen by the
       eigenvalue-ratio rule (see `count_sources`).
    4. Pseudo-spectrum 1 / (a^H En En^H a) over the azimuth grid.

The pseudo-spectrum is not a power estimate. The map stores
sqrt(bin_power * P / max P) per bin so empty bins stay dark and values share
the magnitude units of the FFT map.

Bins are independent and are processed in chunks.
"""

import logging
from dataclasses import dataclass

import numpy as np

from radarbox.core import ConfigError, EstimationError, PolarMap, RadarCube, SpectrumKind

from .fft import azimuth_grid, range_profiles

logger = logging.getLogger(__name__)

_CHUNK_BINS = 64
DEFAULT_SUBARRAY_SIZE = 12
# lower bound on a^H En En^H a relative to L, keeps P finite on noise-free input
_DENOMINATOR_FLOOR = 1e-12


@dataclass(frozen=True)
class MusicParams:
    """
    MUSIC settings.

    Attributes:
        num_sources: Signal subspace size, or None for the automatic rule
        eigenvalue_ratio_threshold: Ratio used by the automatic rule
        azimuth_grid_points: Output azimuth bins over ±max_azimuth
        forward_backward: Average the covariance with its flipped conjugate
        diagonal_loading: Loading as a fraction of the mean eigenvalue
        subarray_size: Spatial smoothing subarray length, capped at the array;
            None for the full array
    """

    num_sources: int | None = None
    eigenvalue_ratio_threshold: float = 0.05
    azimuth_grid_points: int = 361
    forward_backward: bool = True
    diagonal_loading: float = 1e-6
    subarray_size: int | None = DEFAULT_SUBARRAY_SIZE

    def __post_init__(self):
        if self.num_sources is not None and self.num_sources < 0:
            raise ConfigError(f"num_sources must be >= 0, got {self.num_sources}")
        if not 0 < self.eigenvalue_ratio_threshold < 1:
            raise ConfigError(
                f"eigenvalue_ratio_threshold must be in (0, 1), got {self.eigenvalue_ratio_threshold}"
            )
        if self.azimuth_grid_points < 2:
            raise ConfigError(f"azimuth_grid_points must be >= 2, got {self.azimuth_grid_points}")
        if self.diagonal_loading < 0:
            raise ConfigError(f"diagonal_loading must be >= 0, got {self.diagonal_loading}")
        if self.subarray_size is not None and self.subarray_size < 2:
            raise ConfigError(f"subarray_size must be >= 2, got {self.subarray_size}")


def subarray_length(params: MusicParams, antennas: int) -> int:
    """Smoothing subarray length for an array of `antennas` elements."""
    return min(params.subarray_size or antennas, antennas)


def covariance(snapshots: np.ndarray, params: MusicParams) -> np.ndarray:
    """
    Per-bin antenna covariance.

    Args:
        snapshots: Complex (chirp, antenna, bin)

    Returns:
        Hermitian (bin, L, L) matrices, L the subarray size.
    """
    chirps, antennas, _ = snapshots.shape
    length = subarray_length(params, antennas)
    full = np.einsum("cib,cjb->bij", snapshots, snapshots.conj()) / chirps
    count = antennas - length + 1
    cov = sum(full[:, i : i + length, i : i + length] for i in range(count)) / count
    if params.forward_backward:
        cov = 0.5 * (cov + cov[:, ::-1, ::-1].conj())
    if params.diagonal_loading > 0:
        trace = np.real(np.trace(cov, axis1=1, axis2=2))
        loading = params.diagonal_loading * trace / length
        cov = cov + loading[:, None, None] * np.eye(length)
    return cov


def count_sources(eigenvalues: np.ndarray, params: MusicParams, limit: int) -> np.ndarray:
    """
    Signal subspace size per bin from ascending eigenvalues (bin, L).

    Automatic rule: eigenvalue i is a source when lambda_i / lambda_max exceeds
    the ratio threshold and lambda_i / median exceeds its reciprocal. The
    median stands in for the noise level, so pure noise yields zero sources.
    """
    bins = eigenvalues.shape[0]
    if params.num_sources is not None:
        if params.num_sources >= limit:
            raise ConfigError(f"num_sources {params.num_sources} must be below {limit}")
        return np.full(bins, params.num_sources, dtype=int)
    ratio = params.eigenvalue_ratio_threshold
    largest = eigenvalues[:, -1:]
    median = np.median(eigenvalues, axis=1, keepdims=True)
    strong = (eigenvalues > ratio * largest) & (eigenvalues * ratio > median) & (largest > 0)
    return np.minimum(strong.sum(axis=1), limit - 1)


def music_pseudospectrum(
    snapshots: np.ndarray,
    azimuths: np.ndarray,
    antenna_spacing: float,
    params: MusicParams | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    MUSIC pseudo-spectrum for every bin of a snapshot tensor.

    Args:
        snapshots: Complex (chirp, antenna, bin)
        azimuths: Evaluation angles in radians
        antenna_spacing: Element spacing in wavelengths
        params: MUSIC settings

    Returns:
        (pseudo_spectrum (bin, grid), num_sources (bin,))

    Raises:
        EstimationError: If the covariance cannot be estimated or input is non-finite.
    """
    params = params or MusicParams()
    snapshots = np.asarray(snapshots)
    if snapshots.ndim != 3:
        raise EstimationError(f"snapshots must be (chirp, antenna, bin), got {snapshots.shape}")
    if snapshots.shape[0] < 2 and not params.forward_backward:
        raise EstimationError("covariance needs >= 2 chirps or forward-backward averaging")
    if not np.all(np.isfinite(snapshots)):
        raise EstimationError("snapshots contain non-finite values")

    length = subarray_length(params, snapshots.shape[1])
    k = np.arange(length)[:, None]
    steering = np.exp(2j * np.pi * antenna_spacing * k * np.sin(np.asarray(azimuths))[None, :])
    floor = _DENOMINATOR_FLOOR * length

    bins = snapshots.shape[2]
    spectrum = np.empty((bins, len(azimuths)))
    sources = np.empty(bins, dtype=int)
    for start in range(0, bins, _CHUNK_BINS):
        chunk = slice(start, min(bins, start + _CHUNK_BINS))
        cov = covariance(snapshots[:, :, chunk], params)
        try:
            eigenvalues, eigenvectors = np.linalg.eigh(cov)
        except np.linalg.LinAlgError as exc:
            raise EstimationError(f"eigendecomposition failed: {exc}") from exc
        count = count_sources(eigenvalues, params, length)
        noise = np.arange(length)[None, :] < (length - count)[:, None]
        projection = np.abs(np.einsum("bli,lg->big", eigenvectors.conj(), steering)) ** 2
        denominator = np.einsum("bi,big->bg", noise.astype(float), projection)
        spectrum[chunk] = 1.0 / np.maximum(denominator, floor)
        sources[chunk] = count
    return spectrum, sources


def music_map(
    cube: RadarCube, params: MusicParams | None = None, max_range: float | None = None
) -> PolarMap:
    """
    Compute the data-music polar map.

    Returns:
        PolarMap of shape (range_bins, params.azimuth_grid_points).
    """
    params = params or MusicParams()
    config = cube.config
    length = subarray_length(params, config.num_antennas)
    if params.num_sources is not None and params.num_sources >= length:
        raise ConfigError(
            f"num_sources {params.num_sources} must be below the {length}-element subarray"
            f" of {config.num_antennas} antennas"
        )
    profiles = range_profiles(cube, max_range)
    grid = azimuth_grid(config.max_azimuth, params.azimuth_grid_points)
    pseudo, sources = music_pseudospectrum(profiles, grid, config.antenna_spacing, params)

    bin_power = np.mean(np.abs(profiles) ** 2, axis=(0, 1))
    peak = pseudo.max(axis=1, keepdims=True)
    values = np.sqrt(bin_power[:, None] * pseudo / peak)
    logger.debug(
        "music map: %d bins, mean source count %.2f", profiles.shape[-1], float(sources.mean())
    )
    return PolarMap(
        values=values,
        range_extent=profiles.shape[-1] * config.range_resolution,
        azimuth_extent=config.max_azimuth,
        format_tag=SpectrumKind.MUSIC,
    )
