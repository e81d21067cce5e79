"""
Scenes and boundary scatterers.

A Scene lists vehicles as oriented boxes plus free clutter scatterers. Each
box edge gets `scatterers_per_box_edge` stratified points. Amplitude follows
the cosine between the edge's outward normal and the direction to the sensor,
floored at `occluded_gain` for edges facing away, so returns concentrate on
the sensor-facing boundary.

Scene JSON:
    {"frame_id": 0, "seed": 1, "scatterers_per_box_edge": 8,
     "boxes": [{"cx": 15.0, "cy": 0.0, "w": 1.8, "h": 4.6, "theta": 1.57}],
     "clutter": [{"range": 20.0, "azimuth": 0.2, "rcs_amplitude": 0.3}]}
"""

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from radarbox.core import (
    GeometryError,
    OrientedBox,
    RadarConfig,
    RecordError,
    SceneError,
    make_rng,
)
from radarbox.geometry import box_corners


@dataclass(frozen=True)
class Scatterer:
    """
    Point reflector in polar sensor coordinates.

    Attributes:
        range: Meters from the sensor
        azimuth: Radians, positive to the left
        rcs_amplitude: Linear amplitude >= 0
    """

    range: float
    azimuth: float
    rcs_amplitude: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.range) and self.range > 0):
            raise SceneError(f"scatterer range must be positive, got {self.range!r}")
        if not math.isfinite(self.azimuth):
            raise SceneError(f"scatterer azimuth must be finite, got {self.azimuth!r}")
        if not (math.isfinite(self.rcs_amplitude) and self.rcs_amplitude >= 0):
            raise SceneError(f"scatterer amplitude must be >= 0, got {self.rcs_amplitude!r}")

    @property
    def xy(self) -> tuple[float, float]:
        return (self.range * math.cos(self.azimuth), self.range * math.sin(self.azimuth))

    @classmethod
    def from_xy(cls, x: float, y: float, rcs_amplitude: float = 1.0) -> Scatterer:
        return cls(math.hypot(x, y), math.atan2(y, x), rcs_amplitude)

    def in_view(self, config: RadarConfig) -> bool:
        return self.range <= config.max_range and abs(self.azimuth) <= config.max_azimuth


@dataclass(frozen=True)
class Scene:
    """
    One frame's worth of objects.

    Attributes:
        boxes: Vehicles
        clutter: Extra scatterers passed through unchanged
        seed: Determines scatterer placement along edges
        scatterers_per_box_edge: Points per box edge
        frame_id: Frame number carried into outputs
        box_amplitude: Peak amplitude of a fully facing edge
        occluded_gain: Amplitude factor floor for edges facing away
    """

    boxes: tuple[OrientedBox, ...] = field(default_factory=tuple)
    clutter: tuple[Scatterer, ...] = field(default_factory=tuple)
    seed: int = 0
    scatterers_per_box_edge: int = 8
    frame_id: int = 0
    box_amplitude: float = 1.0
    occluded_gain: float = 0.25

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(self.boxes))
        object.__setattr__(self, "clutter", tuple(self.clutter))
        if self.scatterers_per_box_edge < 1:
            raise SceneError(
                f"scatterers_per_box_edge must be >= 1, got {self.scatterers_per_box_edge}"
            )
        if self.seed < 0:
            raise SceneError(f"seed must be non-negative, got {self.seed}")
        if not 0 <= self.occluded_gain <= 1:
            raise SceneError(f"occluded_gain must lie in [0, 1], got {self.occluded_gain}")


def boxes_outside_view(boxes: Sequence[OrientedBox], config: RadarConfig) -> list[int]:
    """Indices of boxes with a corner beyond max range or the azimuth limits."""
    offending = []
    for index, box in enumerate(boxes):
        corners = box_corners(box)
        ranges = np.hypot(corners[:, 0], corners[:, 1])
        azimuths = np.arctan2(corners[:, 1], corners[:, 0])
        if (
            np.any(ranges <= 0)
            or np.any(ranges > config.max_range)
            or np.any(np.abs(azimuths) > config.max_azimuth)
        ):
            offending.append(index)
    return offending


def scene_to_scatterers(scene: Scene, config: RadarConfig | None = None) -> list[Scatterer]:
    """
    Sample scatterers on every box boundary and append the clutter.

    Raises:
        SceneError: If any box leaves the field of view; the message lists them.
    """
    config = config or RadarConfig()
    offending = boxes_outside_view(scene.boxes, config)
    if offending:
        raise SceneError(f"boxes outside field of view: {offending}")

    n = scene.scatterers_per_box_edge
    scatterers: list[Scatterer] = []
    for index, box in enumerate(scene.boxes):
        rng = make_rng(scene.seed, index)
        corners = box_corners(box)
        for edge in range(4):
            start, end = corners[edge], corners[(edge + 1) % 4]
            direction = end - start
            # counter-clockwise corners: outward normal is the right-hand normal
            normal = np.array([direction[1], -direction[0]]) / np.linalg.norm(direction)
            offsets = (np.arange(n) + rng.random(n)) / n
            for t in offsets:
                point = start + t * direction
                to_sensor = -point / np.linalg.norm(point)
                gain = max(float(np.dot(normal, to_sensor)), scene.occluded_gain)
                scatterers.append(Scatterer.from_xy(point[0], point[1], scene.box_amplitude * gain))
    scatterers.extend(scene.clutter)
    return scatterers


# JSON


def _get_number(data: Mapping[str, Any], key: str, where: str, default: float | None = None) -> float:
    if key not in data:
        if default is None:
            raise RecordError(f"{where}: missing field '{key}'")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise RecordError(f"{where}.{key}: expected a finite number, got {value!r}")
    return float(value)


def _get_int(data: Mapping[str, Any], key: str, where: str, default: int) -> int:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise RecordError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def _get_list(data: Mapping[str, Any], key: str, where: str) -> list[Any]:
    value = data.get(key, [])
    if not isinstance(value, list):
        raise RecordError(f"{where}.{key}: expected a list, got {type(value).__name__}")
    return value


_SCENE_KEYS = {
    "boxes",
    "clutter",
    "seed",
    "scatterers_per_box_edge",
    "frame_id",
    "box_amplitude",
    "occluded_gain",
}


def scene_from_dict(data: Any, where: str = "scene", default_seed: int = 0) -> Scene:
    """
    Parse a scene JSON object.

    Raises:
        RecordError: On schema violations, with the field path of the culprit.
    """
    if not isinstance(data, Mapping):
        raise RecordError(f"{where}: expected an object, got {type(data).__name__}")
    unknown = sorted(set(data) - _SCENE_KEYS)
    if unknown:
        raise RecordError(f"{where}: unknown field(s) {', '.join(unknown)}")

    boxes = []
    for i, raw in enumerate(_get_list(data, "boxes", where)):
        path = f"{where}.boxes[{i}]"
        if not isinstance(raw, Mapping):
            raise RecordError(f"{path}: expected an object")
        values = [_get_number(raw, key, path) for key in ("cx", "cy", "w", "h")]
        theta = _get_number(raw, "theta", path, default=0.0)
        try:
            boxes.append(OrientedBox(*values, theta))
        except GeometryError as exc:
            raise RecordError(f"{path}: {exc}") from exc

    clutter = []
    for i, raw in enumerate(_get_list(data, "clutter", where)):
        path = f"{where}.clutter[{i}]"
        if not isinstance(raw, Mapping):
            raise RecordError(f"{path}: expected an object")
        try:
            clutter.append(
                Scatterer(
                    _get_number(raw, "range", path),
                    _get_number(raw, "azimuth", path),
                    _get_number(raw, "rcs_amplitude", path, default=1.0),
                )
            )
        except SceneError as exc:
            raise RecordError(f"{path}: {exc}") from exc

    try:
        return Scene(
            boxes=tuple(boxes),
            clutter=tuple(clutter),
            seed=_get_int(data, "seed", where, default_seed),
            scatterers_per_box_edge=_get_int(data, "scatterers_per_box_edge", where, 8),
            frame_id=_get_int(data, "frame_id", where, 0),
            box_amplitude=_get_number(data, "box_amplitude", where, default=1.0),
            occluded_gain=_get_number(data, "occluded_gain", where, default=0.25),
        )
    except SceneError as exc:
        raise RecordError(f"{where}: {exc}") from exc


def scene_to_dict(scene: Scene) -> dict[str, Any]:
    return {
        "frame_id": scene.frame_id,
        "seed": scene.seed,
        "scatterers_per_box_edge": scene.scatterers_per_box_edge,
        "box_amplitude": scene.box_amplitude,
        "occluded_gain": scene.occluded_gain,
        "boxes": [
            {"cx": b.cx, "cy": b.cy, "w": b.w, "h": b.h, "theta": b.theta} for b in scene.boxes
        ],
        "clutter": [
            {"range": s.range, "azimuth": s.azimuth, "rcs_amplitude": s.rcs_amplitude}
            for s in scene.clutter
        ],
    }


def scenes_from_document(document: Any, default_seed: int = 0) -> list[Scene]:
    """
    Accept either a single scene object or {"frames": [scene, ...]}.

    Frames without an explicit frame_id are numbered by position; frames
    without a seed get one derived from `default_seed` and their position.
    """
    single = not (isinstance(document, Mapping) and "frames" in document)
    if not single:
        if set(document) != {"frames"}:
            extra = sorted(set(document) - {"frames"})
            raise RecordError(f"document: unknown field(s) {', '.join(extra)}")
        raw_frames = document["frames"]
        if not isinstance(raw_frames, list):
            raise RecordError("document.frames: expected a list")
    else:
        raw_frames = [document]

    scenes = []
    for index, raw in enumerate(raw_frames):
        where = "scene" if single else f"frames[{index}]"
        scene = scene_from_dict(raw, where, default_seed=default_seed + index)
        if not (isinstance(raw, Mapping) and "frame_id" in raw):
            scene = replace(scene, frame_id=index)
        scenes.append(scene)
    ids = [s.frame_id for s in scenes]
    if len(set(ids)) != len(ids):
        raise RecordError(f"document: duplicate frame_id values {sorted(ids)}")
    return scenes
