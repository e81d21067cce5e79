"""
Radarbox Sim - synthetic radar frames.

This module provides:
    - Scatterer, Scene: point reflectors and vehicle scenes (JSON round-trip)
    - scene_to_scatterers: boundary sampling with sensor-facing weighting
    - simulate_cube: beat-tone cube synthesis with calibrated noise
    - shift_range, mirror_azimuth: cube augmentation with box counterparts
    - BenchmarkConfig, generate_benchmark: seeded multi-frame benchmark
"""

from .augment import mirror_azimuth, mirror_boxes, shift_boxes_range, shift_range
from .benchmark import BenchmarkConfig, benchmark_scene, generate_benchmark
from .cube import check_scatterers, noise_sigma, simulate_cube, steering_matrix
from .scene import (
    Scatterer,
    Scene,
    boxes_outside_view,
    scene_from_dict,
    scene_to_dict,
    scene_to_scatterers,
    scenes_from_document,
)

__all__ = [
    # Scenes
    "Scatterer",
    "Scene",
    "scene_to_scatterers",
    "boxes_outside_view",
    "scene_from_dict",
    "scene_to_dict",
    "scenes_from_document",
    # Cubes
    "simulate_cube",
    "steering_matrix",
    "noise_sigma",
    "check_scatterers",
    # Augmentation
    "shift_range",
    "mirror_azimuth",
    "shift_boxes_range",
    "mirror_boxes",
    # Benchmark
    "BenchmarkConfig",
    "benchmark_scene",
    "generate_benchmark",
]
