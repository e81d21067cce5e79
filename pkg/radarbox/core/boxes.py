"""
Oriented boxes and per-frame box collections.

Coordinates are metric BEV sensor coordinates: x forward, y left, angles in
radians counter-clockwise from +x. `h` is measured along the heading and `w`
across it. Sizes are meters; a 15 x 42 pixel box on a 0.1 m/pixel grid is
1.5 x 4.2 m.

Structure:
    OrientedBox    = (cx, cy, w, h, theta, score?, variances?)
    DetectionSet   = (frame_id, boxes)   scored boxes
    GroundTruthSet = (frame_id, boxes)   unscored boxes
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import GeometryError, RecordError

TWO_PI = 2.0 * math.pi

# Order of the localization parameters everywhere a 6-vector appears
BOX_PARAMETERS = ("x", "y", "w", "h", "cos_theta", "sin_theta")


def normalize_angle(theta: float) -> float:
    """
    Wrap an angle into [-pi, pi).

    Examples:
        >>> normalize_angle(math.pi)
        -3.141592653589793
        >>> normalize_angle(0.5 + 4 * math.pi)  # doctest: +ELLIPSIS
        0.5...
    """
    wrapped = math.fmod(theta + math.pi, TWO_PI)
    if wrapped < 0:
        wrapped += TWO_PI
    wrapped -= math.pi
    # fmod rounding can land exactly on +pi
    if wrapped >= math.pi:
        wrapped -= TWO_PI
    return wrapped


def wrap_angles(theta: np.ndarray) -> np.ndarray:
    """Vectorized normalize_angle."""
    wrapped = np.mod(np.asarray(theta, dtype=float) + np.pi, TWO_PI) - np.pi
    return np.where(wrapped >= np.pi, wrapped - TWO_PI, wrapped)


@dataclass(frozen=True)
class OrientedBox:
    """
    Immutable oriented rectangle.

    theta is normalized to [-pi, pi) on construction.

    Attributes:
        cx, cy: Center in meters
        w: Width across the heading in meters
        h: Length along the heading in meters
        theta: Heading in radians
        score: Confidence in [0, 1], absent for ground truth
        variances: Optional positive 6-vector for (x, y, w, h, cos, sin)
    """

    cx: float
    cy: float
    w: float
    h: float
    theta: float = 0.0
    score: float | None = None
    variances: tuple[float, ...] | None = None

    def __post_init__(self):
        for name in ("cx", "cy", "w", "h", "theta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise GeometryError(f"box {name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.w <= 0 or self.h <= 0:
            raise GeometryError(f"box sizes must be positive, got w={self.w}, h={self.h}")
        object.__setattr__(self, "theta", normalize_angle(self.theta))
        if self.score is not None:
            if not 0.0 <= self.score <= 1.0:
                raise GeometryError(f"box score must lie in [0, 1], got {self.score!r}")
            object.__setattr__(self, "score", float(self.score))
        if self.variances is not None:
            variances = tuple(float(v) for v in self.variances)
            if len(variances) != len(BOX_PARAMETERS):
                raise GeometryError(f"box variances need 6 entries, got {len(variances)}")
            if not all(math.isfinite(v) and v > 0 for v in variances):
                raise GeometryError(f"box variances must be positive, got {variances}")
            object.__setattr__(self, "variances", variances)

    @property
    def area(self) -> float:
        return self.w * self.h

    @property
    def center(self) -> tuple[float, float]:
        return (self.cx, self.cy)

    @property
    def heading(self) -> tuple[float, float]:
        """Unit vector along h."""
        return (math.cos(self.theta), math.sin(self.theta))

    @property
    def circumradius(self) -> float:
        return 0.5 * math.hypot(self.w, self.h)

    def with_score(self, score: float | None) -> OrientedBox:
        return replace(self, score=score)

    def without_score(self) -> OrientedBox:
        return replace(self, score=None, variances=None)

    def as_array(self) -> np.ndarray:
        """(cx, cy, w, h, theta) as a float array."""
        return np.array([self.cx, self.cy, self.w, self.h, self.theta])

    @classmethod
    def from_array(cls, values: Iterable[float], score: float | None = None) -> OrientedBox:
        cx, cy, w, h, theta = (float(v) for v in values)
        return cls(cx, cy, w, h, theta, score=score)


def boxes_to_array(boxes: Iterable[OrientedBox]) -> np.ndarray:
    """Stack boxes into an (N, 5) array of (cx, cy, w, h, theta)."""
    rows = [box.as_array() for box in boxes]
    if not rows:
        return np.zeros((0, 5))
    return np.stack(rows)


@dataclass(frozen=True)
class Frame:
    """Boxes observed in one radar frame."""

    frame_id: int
    boxes: tuple[OrientedBox, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if isinstance(self.frame_id, bool) or int(self.frame_id) != self.frame_id:
            raise RecordError(f"frame_id must be an integer, got {self.frame_id!r}")
        object.__setattr__(self, "frame_id", int(self.frame_id))
        object.__setattr__(self, "boxes", tuple(self.boxes))

    def __len__(self) -> int:
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    @property
    def scores(self) -> np.ndarray:
        return np.array([b.score if b.score is not None else np.nan for b in self.boxes])

    def with_boxes(self, boxes: Iterable[OrientedBox]):
        return replace(self, boxes=tuple(boxes))


@dataclass(frozen=True)
class DetectionSet(Frame):
    """Detector output for one frame."""


@dataclass(frozen=True)
class GroundTruthSet(Frame):
    """Reference boxes for one frame; scores are never present."""

    def __post_init__(self):
        super().__post_init__()
        for index, box in enumerate(self.boxes):
            if box.score is not None:
                raise RecordError(
                    f"ground truth frame {self.frame_id} box {index} carries a score"
                )


def check_unique_frames(frames: Iterable[Frame], what: str = "dataset") -> None:
    """Raise RecordError if a frame id appears twice."""
    seen: set[int] = set()
    for frame in frames:
        if frame.frame_id in seen:
            raise RecordError(f"{what}: duplicate frame_id {frame.frame_id}")
        seen.add(frame.frame_id)
