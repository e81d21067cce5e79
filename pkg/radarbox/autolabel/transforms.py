"""
The eight rotation/mirror symmetries of the BEV plane.

A SymmetryTransform mirrors first (y -> -y) when `mirror` is set, then
rotates by quarter turns counter-clockwise about the sensor origin. Matrices
are integer so points map exactly.
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from radarbox.core import ConfigError, OrientedBox

_QUARTER = (
    ((1, 0), (0, 1)),
    ((0, -1), (1, 0)),
    ((-1, 0), (0, -1)),
    ((0, 1), (-1, 0)),
)
_MIRROR = np.array([[1, 0], [0, -1]])


@dataclass(frozen=True)
class SymmetryTransform:
    """Element of the dihedral group of the square."""

    rotation_quarters: int = 0
    mirror: bool = False

    def __post_init__(self):
        if self.rotation_quarters not in (0, 1, 2, 3):
            raise ConfigError(f"rotation_quarters must be 0-3, got {self.rotation_quarters}")

    @property
    def rotation_degrees(self) -> int:
        return 90 * self.rotation_quarters

    @property
    def matrix(self) -> np.ndarray:
        rotation = np.array(_QUARTER[self.rotation_quarters])
        return rotation @ _MIRROR if self.mirror else rotation

    @property
    def is_identity(self) -> bool:
        return self.rotation_quarters == 0 and not self.mirror

    def inverse(self) -> SymmetryTransform:
        if self.mirror:
            return self
        return SymmetryTransform((-self.rotation_quarters) % 4, False)

    def then(self, other: SymmetryTransform) -> SymmetryTransform:
        """The transform applying self first and other second."""
        return from_matrix(other.matrix @ self.matrix)

    def apply_points(self, points: np.ndarray) -> np.ndarray:
        """Map (N, 2) points."""
        return np.asarray(points, dtype=float) @ self.matrix.T

    def apply_heading(self, theta: float) -> float:
        heading = -theta if self.mirror else theta
        return heading + self.rotation_quarters * math.pi / 2

    def __str__(self) -> str:
        return f"rot{self.rotation_degrees}{'+mirror' if self.mirror else ''}"


ALL_TRANSFORMS: tuple[SymmetryTransform, ...] = tuple(
    SymmetryTransform(q, m) for m in (False, True) for q in range(4)
)
IDENTITY = ALL_TRANSFORMS[0]


def from_matrix(matrix: np.ndarray) -> SymmetryTransform:
    """Find the group element with this matrix."""
    for transform in ALL_TRANSFORMS:
        if np.array_equal(transform.matrix, matrix):
            return transform
    raise ConfigError(f"matrix is not a BEV symmetry: {np.asarray(matrix).tolist()}")


def transform_boxes(boxes: Iterable[OrientedBox], transform: SymmetryTransform) -> list[OrientedBox]:
    """
    Map box centers and headings; sizes and scores are kept.

    Odd quarter turns swap the x/y and cos/sin variance entries.
    """
    result = []
    m = transform.matrix
    swap = transform.rotation_quarters % 2 == 1
    for box in boxes:
        variances = box.variances
        if variances is not None and swap:
            vx, vy, vw, vh, vc, vs = variances
            variances = (vy, vx, vw, vh, vs, vc)
        cx = m[0, 0] * box.cx + m[0, 1] * box.cy
        cy = m[1, 0] * box.cx + m[1, 1] * box.cy
        result.append(
            OrientedBox(
                cx, cy, box.w, box.h, transform.apply_heading(box.theta), box.score, variances
            )
        )
    return result


def inverse_transform_boxes(
    boxes: Iterable[OrientedBox], transform: SymmetryTransform
) -> list[OrientedBox]:
    return transform_boxes(boxes, transform.inverse())
