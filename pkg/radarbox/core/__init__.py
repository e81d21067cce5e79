"""
Radarbox Core - shared types, configuration and file formats.

This module provides:
    - RadarConfig: sensor constants
    - OrientedBox, DetectionSet, GroundTruthSet: box types
    - RadarCube, PolarMap, BevImage: radar tensors
    - RTD tensor container, PGM renders, JSON-lines box records
    - Seeded random streams and the exception hierarchy
"""

from .boxes import (
    BOX_PARAMETERS,
    DetectionSet,
    Frame,
    GroundTruthSet,
    OrientedBox,
    boxes_to_array,
    check_unique_frames,
    normalize_angle,
    wrap_angles,
)
from .config import SPEED_OF_LIGHT, RadarConfig
from .errors import (
    ConfigError,
    EmptyRegionError,
    EstimationError,
    FrameMismatchError,
    GeometryError,
    MissingFormatError,
    NoGroundTruthError,
    RadarboxError,
    RecordError,
    RtdFormatError,
    SceneError,
    ShapeMismatchError,
    StageError,
    TrainingDivergedError,
)
from .files import atomic_write_bytes, atomic_write_json, atomic_write_text
from .images import to_gray16, write_pgm
from .records import (
    BoxRecord,
    box_to_record,
    group_detection_sets,
    group_detections,
    read_box_records,
    read_detections,
    read_ground_truth,
    record_to_box,
    write_box_records,
)
from .rng import derive_seed, make_rng
from .rtd import decode_tensor, encode_tensor, read_tensor, write_tensor
from .tensors import BevImage, PolarMap, RadarCube, SpectrumKind, bev_shape

__all__ = [
    # Config
    "RadarConfig",
    "SPEED_OF_LIGHT",
    # Boxes
    "OrientedBox",
    "Frame",
    "DetectionSet",
    "GroundTruthSet",
    "BOX_PARAMETERS",
    "normalize_angle",
    "wrap_angles",
    "boxes_to_array",
    "check_unique_frames",
    # Tensors
    "RadarCube",
    "PolarMap",
    "BevImage",
    "SpectrumKind",
    "bev_shape",
    # Files
    "write_tensor",
    "read_tensor",
    "encode_tensor",
    "decode_tensor",
    "write_pgm",
    "to_gray16",
    "atomic_write_bytes",
    "atomic_write_text",
    "atomic_write_json",
    # Records
    "BoxRecord",
    "record_to_box",
    "box_to_record",
    "read_box_records",
    "group_detections",
    "group_detection_sets",
    "read_detections",
    "read_ground_truth",
    "write_box_records",
    # Randomness
    "make_rng",
    "derive_seed",
    # Errors
    "RadarboxError",
    "ConfigError",
    "RtdFormatError",
    "RecordError",
    "SceneError",
    "GeometryError",
    "ShapeMismatchError",
    "FrameMismatchError",
    "EmptyRegionError",
    "NoGroundTruthError",
    "MissingFormatError",
    "EstimationError",
    "TrainingDivergedError",
    "StageError",
]
