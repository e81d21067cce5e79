"""Tests for MUSIC module."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radarbox.core import ConfigError, EstimationError, RadarConfig, SpectrumKind
from radarbox.dsp import (
    DEFAULT_SUBARRAY_SIZE,
    MusicParams,
    azimuth_grid,
    count_sources,
    covariance,
    music_map,
    music_pseudospectrum,
    range_azimuth_fft,
    range_profiles,
    subarray_length,
)
from radarbox.sim import Scatterer, simulate_cube

SEPARATION = math.radians(3.0)
TWO_SOURCES = MusicParams(num_sources=2, subarray_size=24, azimuth_grid_points=1801)


def resolved(spectrum, grid, truths, tolerance=math.radians(1.0)):
    """Both truths have a local maximum nearby that rises above the midpoint."""
    interior = spectrum[1:-1]
    peaks = np.flatnonzero((interior > spectrum[:-2]) & (interior >= spectrum[2:])) + 1
    found = []
    for truth in truths:
        near = [p for p in peaks if abs(grid[p] - truth) <= tolerance]
        if not near:
            return False
        found.append(max(near, key=lambda p: spectrum[p]))
    midpoint = np.argmin(np.abs(grid - np.mean(truths)))
    return found[0] != found[1] and spectrum[midpoint] < min(spectrum[found[0]], spectrum[found[1]])


def bin_snapshots(cube, index):
    return range_profiles(cube)[:, :, index : index + 1]


class TestCovariance:
    def test_hermitian(self, rng):
        snapshots = rng.standard_normal((8, 6, 3)) + 1j * rng.standard_normal((8, 6, 3))
        cov = covariance(snapshots, MusicParams())
        np.testing.assert_allclose(cov, np.conj(np.swapaxes(cov, 1, 2)), atol=1e-12)

    def test_forward_backward_persymmetric(self, rng):
        snapshots = rng.standard_normal((4, 5, 1)) + 1j * rng.standard_normal((4, 5, 1))
        cov = covariance(snapshots, MusicParams(diagonal_loading=0.0))[0]
        np.testing.assert_allclose(cov, cov[::-1, ::-1].conj(), atol=1e-12)

    def test_subarray_size(self, rng):
        snapshots = rng.standard_normal((4, 8, 2)) + 0j
        assert covariance(snapshots, MusicParams(subarray_size=5)).shape == (2, 5, 5)
        assert covariance(snapshots, MusicParams(subarray_size=None)).shape == (2, 8, 8)

    def test_subarray_capped_at_array(self, rng):
        snapshots = rng.standard_normal((4, 8, 2)) + 0j
        assert covariance(snapshots, MusicParams(subarray_size=9)).shape == (2, 8, 8)
        assert subarray_length(MusicParams(subarray_size=9), 8) == 8

    def test_smoothing_on_by_default(self):
        assert MusicParams().subarray_size == DEFAULT_SUBARRAY_SIZE == 12
        assert subarray_length(MusicParams(), 32) == 12
        assert subarray_length(MusicParams(), 4) == 4


class TestCountSources:
    def test_automatic_rule(self):
        eigenvalues = np.array([[1.0, 1.0, 1.0, 1.0, 100.0, 1000.0]])
        assert count_sources(eigenvalues, MusicParams(), 6).tolist() == [2]

    def test_flat_spectrum_has_no_sources(self):
        eigenvalues = np.array([[0.5, 0.8, 1.0, 1.2, 1.5, 2.0]])
        assert count_sources(eigenvalues, MusicParams(), 6).tolist() == [0]

    def test_fixed_count_must_fit(self):
        with pytest.raises(ConfigError, match="below"):
            count_sources(np.ones((1, 4)), MusicParams(num_sources=4), 4)

    def test_noise_only_cube(self, small_config):
        cube = simulate_cube([], small_config, snr_db=0.0, seed=2)
        snapshots = range_profiles(cube)
        _, sources = music_pseudospectrum(
            snapshots, azimuth_grid(small_config.max_azimuth, 91), small_config.antenna_spacing
        )
        assert np.mean(sources == 0) > 0.9


class TestPseudospectrum:
    def test_resolves_close_sources_without_noise(self, config):
        truths = (0.0, SEPARATION)
        cube = simulate_cube([Scatterer(15.0, a) for a in truths], config)
        grid = azimuth_grid(config.max_azimuth, TWO_SOURCES.azimuth_grid_points)
        spectrum, sources = music_pseudospectrum(
            bin_snapshots(cube, 100), grid, config.antenna_spacing, TWO_SOURCES
        )
        assert sources.tolist() == [2]
        assert resolved(spectrum[0], grid, truths)

    def test_resolves_close_sources_with_noise(self, config):
        truths = (0.0, SEPARATION)
        grid = azimuth_grid(config.max_azimuth, TWO_SOURCES.azimuth_grid_points)
        music_hits = fft_merged = 0
        for seed in range(100):
            cube = simulate_cube(
                [Scatterer(15.0, a) for a in truths], config, snr_db=20.0, seed=seed
            )
            spectrum, _ = music_pseudospectrum(
                bin_snapshots(cube, 100), grid, config.antenna_spacing, TWO_SOURCES
            )
            music_hits += resolved(spectrum[0], grid, truths)
            fft = range_azimuth_fft(cube, azimuth_grid_points=1801, max_range=20.0)
            fft_merged += not resolved(fft.values[100], fft.azimuths, truths)
        assert music_hits >= 95
        assert fft_merged >= 95

    def test_non_finite_input(self):
        snapshots = np.full((2, 4, 1), np.nan, dtype=complex)
        with pytest.raises(EstimationError, match="non-finite"):
            music_pseudospectrum(snapshots, np.zeros(3), 0.5)

    def test_single_chirp_needs_forward_backward(self):
        snapshots = np.ones((1, 4, 1), dtype=complex)
        with pytest.raises(EstimationError, match="forward-backward"):
            music_pseudospectrum(snapshots, np.zeros(3), 0.5, MusicParams(forward_backward=False))

    def test_shape_checked(self):
        with pytest.raises(EstimationError, match="chirp, antenna, bin"):
            music_pseudospectrum(np.ones((4, 4)), np.zeros(3), 0.5)


class TestMusicMap:
    def test_single_source_is_sharp(self, small_config):
        azimuth = math.radians(10.0)
        polar = music_map(simulate_cube([Scatterer(12.0, azimuth)], small_config))
        assert polar.format_tag is SpectrumKind.MUSIC
        assert polar.values.shape == (128, 361)
        row = polar.values[80]
        peak = int(np.argmax(row))
        assert abs(polar.azimuths[peak] - azimuth) <= math.radians(0.5)
        sidelobes = np.delete(row, np.arange(peak - 2, peak + 3))
        assert sidelobes.max() < 0.1 * row[peak]

    def test_lower_sidelobes_than_fft(self, config):
        azimuth = math.radians(10.0)
        cube = simulate_cube([Scatterer(15.0, azimuth)], config, snr_db=20.0, seed=5)

        def peak_to_sidelobe_db(polar):
            row = polar.values[100]
            peak = int(np.argmax(row))
            off_peak = np.delete(row, np.arange(peak - 2, peak + 3))
            return 20 * math.log10(row[peak] / off_peak.max())

        music_db = peak_to_sidelobe_db(music_map(cube, max_range=20.0))
        fft_db = peak_to_sidelobe_db(range_azimuth_fft(cube, max_range=20.0))
        assert music_db >= fft_db + 10.0

    @pytest.mark.parametrize("degrees", [-30.0, -10.0, 0.0, 5.0, 20.0, 30.0])
    def test_argmax_agrees_with_fft(self, config, degrees):
        cube = simulate_cube([Scatterer(15.0, math.radians(degrees))], config)
        music = music_map(cube, max_range=20.0).values[100]
        fft = range_azimuth_fft(cube, max_range=20.0).values[100]
        assert abs(int(np.argmax(music)) - int(np.argmax(fft))) <= 1

    def test_empty_bins_are_dark(self, small_config):
        polar = music_map(simulate_cube([Scatterer(12.0, 0.0)], small_config))
        assert polar.values[20].max() < 1e-6 * polar.values[80].max()

    def test_num_sources_bounded_by_array(self):
        config = RadarConfig(
            max_range=1.5, range_resolution=0.15, num_samples=20, num_antennas=4, num_chirps=2
        )
        with pytest.raises(ConfigError, match="antennas"):
            music_map(simulate_cube([], config), MusicParams(num_sources=4))
