"""
A linear detection head trained with the loss stack.

Features are BEV intensities pooled inside each anchor; a single linear map
turns them into the 13 head outputs. Plain gradient descent on total_loss
with optional global gradient-norm clipping.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.special import expit

from radarbox.core import (
    BevImage,
    ConfigError,
    OrientedBox,
    ShapeMismatchError,
    TrainingDivergedError,
    make_rng,
)

from .anchors import Anchor, anchors_to_array
from .encoding import decode_array
from .losses import (
    BOX_SLICE,
    DEFAULT_LOCALIZATION_WEIGHT,
    LOG_SIGMA_SLICE,
    LOGIT,
    NUM_OUTPUTS,
    build_targets,
    loss_from_targets,
)

logger = logging.getLogger(__name__)

# sigmoid(-4.6) ~ 0.01: start from a low-objectiveness prior
INITIAL_LOGIT_BIAS = -4.6


def anchor_features(bev: BevImage, anchors: Sequence[Anchor], lattice: int = 3) -> np.ndarray:
    """
    Bilinear BEV samples on a lattice x lattice grid inside every anchor.

    Samples are divided by the image peak so features lie in [0, 1].

    Returns:
        (len(anchors), lattice**2) features.
    """
    if lattice < 1:
        raise ConfigError(f"lattice must be >= 1, got {lattice}")
    array = anchors_to_array(anchors)
    fractions = (np.arange(lattice) + 0.5) / lattice - 0.5
    along, across = np.meshgrid(fractions, fractions, indexing="ij")
    along, across = along.ravel(), across.ravel()

    cos_t, sin_t = np.cos(array[:, 4:5]), np.sin(array[:, 4:5])
    du = along[None, :] * array[:, 3:4]
    dv = across[None, :] * array[:, 2:3]
    x = array[:, 0:1] + du * cos_t - dv * sin_t
    y = array[:, 1:2] + du * sin_t + dv * cos_t
    rows, cols = bev.xy_to_pixel(x, y)
    samples = ndimage.map_coordinates(
        bev.values, [rows.ravel(), cols.ravel()], order=1, mode="constant", cval=0.0
    ).reshape(x.shape)

    peak = float(bev.values.max()) if bev.values.size else 0.0
    if peak > 0:
        samples = samples / peak
    return np.maximum(samples, 0.0)


@dataclass(frozen=True)
class LossPoint:
    step: int
    total: float
    objectiveness: float
    localization: float


@dataclass(eq=False)
class ToyHead:
    """Linear head: outputs = features @ weights + bias."""

    weights: np.ndarray
    bias: np.ndarray
    trace: list[LossPoint] = field(default_factory=list)

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.asarray(features, dtype=float) @ self.weights + self.bias

    def sigmas(self, features: np.ndarray) -> np.ndarray:
        """(A, 6) predicted standard deviations."""
        return np.exp(self.predict(features)[:, LOG_SIGMA_SLICE])

    def detect(
        self, features: np.ndarray, anchors: Sequence[Anchor], confidence: float = 0.5
    ) -> list[OrientedBox]:
        """Decode anchors whose objectiveness exceeds `confidence`."""
        outputs = self.predict(features)
        scores = expit(outputs[:, LOGIT])
        keep = np.flatnonzero(scores >= confidence)
        if not len(keep):
            return []
        decoded = decode_array(anchors_to_array(anchors)[keep], outputs[keep][:, BOX_SLICE])
        return [
            OrientedBox.from_array(row, score=float(scores[i]))
            for row, i in zip(decoded, keep, strict=True)
        ]


def fit_toy_head(
    features: np.ndarray,
    gts: Sequence[OrientedBox],
    steps: int,
    lr: float,
    *,
    anchors: Sequence[Anchor],
    seed: int = 0,
    max_grad_norm: float | None = 1.0,
    use_variance: bool = True,
    w0: float = DEFAULT_LOCALIZATION_WEIGHT,
) -> ToyHead:
    """
    Fit a linear head by gradient descent.

    Args:
        features: (A, F) per-anchor features
        gts: Ground-truth boxes of the frame
        steps: Number of updates
        lr: Learning rate
        anchors: Anchor grid matching the feature rows
        seed: Weight initialization seed
        max_grad_norm: Global gradient norm limit, None for no clipping
        use_variance: False trains with plain smooth L1
        w0: Localization weight

    Returns:
        The head with a trace of steps + 1 loss points (before each update and
        after the last).

    Raises:
        TrainingDivergedError: If the loss becomes non-finite.
    """
    features = np.asarray(features, dtype=float)
    if features.ndim != 2 or len(features) != len(anchors):
        raise ShapeMismatchError(f"features must be ({len(anchors)}, F), got {features.shape}")
    if steps < 0 or lr < 0:
        raise ConfigError(f"steps and lr must be non-negative, got {steps}, {lr}")

    rng = make_rng(seed)
    weights = rng.normal(0.0, 0.01, size=(features.shape[1], NUM_OUTPUTS))
    bias = np.zeros(NUM_OUTPUTS)
    bias[LOGIT] = INITIAL_LOGIT_BIAS
    targets = build_targets(anchors, gts)
    head = ToyHead(weights, bias)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for step in range(steps + 1):
            report = loss_from_targets(head.predict(features), targets, w0, use_variance)
            if not (math.isfinite(report.total) and np.all(np.isfinite(report.gradients))):
                raise TrainingDivergedError(step)
            head.trace.append(
                LossPoint(step, report.total, report.objectiveness, report.localization)
            )
            if step == steps:
                break
            grad_w = features.T @ report.gradients
            grad_b = report.gradients.sum(axis=0)
            if max_grad_norm is not None:
                norm = math.sqrt(float(np.sum(grad_w**2) + np.sum(grad_b**2)))
                if norm > max_grad_norm:
                    grad_w = grad_w * (max_grad_norm / norm)
                    grad_b = grad_b * (max_grad_norm / norm)
            head.weights = head.weights - lr * grad_w
            head.bias = head.bias - lr * grad_b

    logger.info(
        "toy head: %d steps, loss %.4g -> %.4g",
        steps,
        head.trace[0].total,
        head.trace[-1].total,
    )
    return head
