"""
Anchor grid and anchor priors.

Every grid cell holds three oriented anchors of one common size. The size is
the mean ground-truth size and the orientations come from k-means on the
ground-truth headings. Boxes are symmetric under a half turn, so orientation
distance is taken modulo pi:

    d(a, b) = min over m of |a - b - m*pi|

Clustering works on the doubled-angle unit vectors (cos 2a, sin 2a), where
that distance is monotone in chord length and centroids are circular means.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from radarbox.core import ConfigError, EstimationError, OrientedBox, make_rng

logger = logging.getLogger(__name__)

DEFAULT_ANCHOR_SIZE = (1.5, 4.2)
DEFAULT_ANCHOR_ORIENTATIONS = (math.radians(30.0), math.radians(115.0), math.radians(136.0))
ANCHORS_PER_CELL = 3


@dataclass(frozen=True)
class Anchor:
    """A preset box at a grid-cell center."""

    cx: float
    cy: float
    w: float
    h: float
    theta: float

    def __post_init__(self):
        if not (self.w > 0 and self.h > 0):
            raise ConfigError(f"anchor sizes must be positive, got w={self.w}, h={self.h}")

    def as_box(self) -> OrientedBox:
        return OrientedBox(self.cx, self.cy, self.w, self.h, self.theta)


@dataclass(frozen=True)
class AnchorConfig:
    """
    Anchor grid layout.

    Cell (r, c) is centered at origin + ((r + 0.5) * cell_size, (c + 0.5) * cell_size);
    anchor index is (r * cols + c) * 3 + k for orientation k.

    Attributes:
        grid_shape: (rows, cols)
        cell_size: Cell pitch in meters
        anchor_size: (w, h) in meters
        anchor_orientations: Exactly three headings in radians
        origin: Corner of cell (0, 0) in meters
    """

    grid_shape: tuple[int, int]
    cell_size: float
    anchor_size: tuple[float, float] = DEFAULT_ANCHOR_SIZE
    anchor_orientations: tuple[float, ...] = DEFAULT_ANCHOR_ORIENTATIONS
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        rows, cols = self.grid_shape
        if rows < 1 or cols < 1:
            raise ConfigError(f"grid_shape must be positive, got {self.grid_shape}")
        if not self.cell_size > 0:
            raise ConfigError(f"cell_size must be positive, got {self.cell_size}")
        if len(self.anchor_size) != 2 or min(self.anchor_size) <= 0:
            raise ConfigError(f"anchor_size must be two positive sizes, got {self.anchor_size}")
        if len(self.anchor_orientations) != ANCHORS_PER_CELL:
            raise ConfigError(
                f"need exactly {ANCHORS_PER_CELL} anchor orientations, "
                f"got {len(self.anchor_orientations)}"
            )
        object.__setattr__(self, "grid_shape", (int(rows), int(cols)))
        object.__setattr__(self, "anchor_size", tuple(float(v) for v in self.anchor_size))
        object.__setattr__(
            self, "anchor_orientations", tuple(float(v) for v in self.anchor_orientations)
        )

    @property
    def num_anchors(self) -> int:
        return self.grid_shape[0] * self.grid_shape[1] * ANCHORS_PER_CELL

    @classmethod
    def covering(
        cls,
        extent_forward: float,
        extent_left: float,
        extent_right: float,
        cell_size: float,
        **kwargs,
    ) -> AnchorConfig:
        """Grid covering a BEV area: rows along +x, columns along +y from the right edge."""
        rows = max(1, math.ceil(extent_forward / cell_size - 1e-9))
        cols = max(1, math.ceil((extent_left + extent_right) / cell_size - 1e-9))
        return cls((rows, cols), cell_size, origin=(0.0, -extent_right), **kwargs)


def build_anchor_grid(config: AnchorConfig) -> list[Anchor]:
    rows, cols = config.grid_shape
    w, h = config.anchor_size
    x0, y0 = config.origin
    anchors = []
    for r in range(rows):
        for c in range(cols):
            cx = x0 + (r + 0.5) * config.cell_size
            cy = y0 + (c + 0.5) * config.cell_size
            anchors.extend(Anchor(cx, cy, w, h, theta) for theta in config.anchor_orientations)
    return anchors


def anchors_to_array(anchors: Sequence[Anchor]) -> np.ndarray:
    """(N, 5) array of (cx, cy, w, h, theta)."""
    if not anchors:
        return np.zeros((0, 5))
    return np.array([[a.cx, a.cy, a.w, a.h, a.theta] for a in anchors], dtype=float)


def mean_anchor_size(gt_boxes: Sequence[OrientedBox]) -> tuple[float, float]:
    """Arithmetic mean (w, h) of the boxes."""
    if not gt_boxes:
        raise EstimationError("mean anchor size needs at least one box")
    sizes = np.array([[b.w, b.h] for b in gt_boxes], dtype=float)
    w, h = sizes.mean(axis=0)
    return (float(w), float(h))


def orientation_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance between headings modulo pi, in [0, pi/2]."""
    diff = np.mod(np.asarray(a) - np.asarray(b), math.pi)
    return np.minimum(diff, math.pi - diff)


def _circular_mean(angles: np.ndarray) -> float:
    doubled = 2.0 * angles
    return 0.5 * math.atan2(float(np.sin(doubled).sum()), float(np.cos(doubled).sum()))


def _seed_centroids(angles: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding under the orientation distance."""
    centroids = [angles[rng.integers(len(angles))]]
    for _ in range(1, k):
        d2 = np.min(orientation_distance(angles[:, None], np.array(centroids)[None, :]), axis=1) ** 2
        total = d2.sum()
        if total <= 0:
            index = rng.integers(len(angles))
        else:
            index = rng.choice(len(angles), p=d2 / total)
        centroids.append(angles[index])
    return np.array(centroids)


def _lloyd(angles: np.ndarray, centroids: np.ndarray, max_iter: int) -> tuple[np.ndarray, float]:
    labels = None
    for _ in range(max_iter):
        distances = orientation_distance(angles[:, None], centroids[None, :])
        new_labels = distances.argmin(axis=1)
        if labels is not None and np.array_equal(labels, new_labels):
            break
        labels = new_labels
        for j in range(len(centroids)):
            members = angles[labels == j]
            if len(members):
                centroids[j] = _circular_mean(members)
    distances = orientation_distance(angles[:, None], centroids[None, :])
    inertia = float(np.sum(distances.min(axis=1) ** 2))
    return centroids, inertia


def kmeans_orientations(
    gt_boxes: Sequence[OrientedBox] | np.ndarray,
    k: int = ANCHORS_PER_CELL,
    seed: int = 0,
    restarts: int = 10,
    max_iter: int = 100,
) -> tuple[float, ...]:
    """
    Cluster headings into k anchor orientations.

    Args:
        gt_boxes: Boxes, or an array of headings in radians
        k: Number of orientations
        seed: Seed for the k-means++ initializations
        restarts: Independent runs; the lowest inertia wins
        max_iter: Lloyd iterations per run

    Returns:
        k orientations in [0, pi), ascending.

    Raises:
        EstimationError: If there are fewer boxes than k.
    """
    if isinstance(gt_boxes, np.ndarray):
        angles = np.asarray(gt_boxes, dtype=float).ravel()
    else:
        angles = np.array([b.theta for b in gt_boxes], dtype=float)
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    if len(angles) < k:
        raise EstimationError(f"k-means needs at least {k} boxes, got {len(angles)}")
    angles = np.mod(angles, math.pi)

    best_centroids, best_inertia = None, math.inf
    for run in range(max(1, restarts)):
        rng = make_rng(seed, run)
        centroids, inertia = _lloyd(angles, _seed_centroids(angles, k, rng), max_iter)
        if inertia < best_inertia:
            best_centroids, best_inertia = centroids, inertia
    assert best_centroids is not None
    logger.debug("orientation k-means: k=%d inertia=%.6g", k, best_inertia)
    wrapped = np.mod(best_centroids, math.pi)
    wrapped[wrapped >= math.pi] = 0.0
    return tuple(sorted(float(c) for c in wrapped))
