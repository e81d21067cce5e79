"""
Detection losses with analytic gradients.

Implementation:
    - smooth_l1: 0.5 d^2 for |d| < 1, |d| - 0.5 otherwise
    - focal_loss: alpha-balanced focal loss on a logit
    - aleatoric_loss: exp(-s) * SL1(pred - gt) + s per parameter, s = log sigma
    - total_loss: focal objectiveness over all anchors, normalized by the
      number of positives, plus w0 times the aleatoric localization summed over
      assigned anchors

Prediction rows hold 13 values: objectiveness logit, six box parameters
(BOX_PARAMETERS order) and six log-sigmas.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from radarbox.core import BOX_PARAMETERS, OrientedBox, ShapeMismatchError

from .anchors import Anchor, anchors_to_array
from .assign import assign_targets
from .encoding import encode_array

NUM_OUTPUTS = 1 + 2 * len(BOX_PARAMETERS)
LOGIT = 0
BOX_SLICE = slice(1, 1 + len(BOX_PARAMETERS))
LOG_SIGMA_SLICE = slice(1 + len(BOX_PARAMETERS), NUM_OUTPUTS)
DEFAULT_LOCALIZATION_WEIGHT = 100.0


def smooth_l1(d) -> tuple[np.ndarray, np.ndarray]:
    """
    Smooth L1 with beta 1.

    Returns:
        (value, d value / d d), elementwise.
    """
    d = np.asarray(d, dtype=float)
    magnitude = np.abs(d)
    value = np.where(magnitude < 1.0, 0.5 * d**2, magnitude - 0.5)
    return value, np.clip(d, -1.0, 1.0)


def focal_loss(logit, is_positive, alpha: float = 0.25, gamma: float = 2.0):
    """
    Focal loss of p = sigmoid(logit).

        positive: -alpha (1 - p)^gamma log p
        negative: -(1 - alpha) p^gamma log(1 - p)

    Logs are taken from the logit directly, so saturated logits stay finite.

    Returns:
        (value, d value / d logit), elementwise.
    """
    z = np.asarray(logit, dtype=float)
    positive = np.asarray(is_positive, dtype=bool)
    p = expit(z)
    q = expit(-z)
    log_p = -np.logaddexp(0.0, -z)
    log_q = -np.logaddexp(0.0, z)

    pos_value = -alpha * q**gamma * log_p
    pos_grad = alpha * q**gamma * (gamma * p * log_p - q)
    neg_value = -(1.0 - alpha) * p**gamma * log_q
    neg_grad = (1.0 - alpha) * p**gamma * (p - gamma * q * log_q)
    return np.where(positive, pos_value, neg_value), np.where(positive, pos_grad, neg_grad)


def aleatoric_terms(pred, gt, log_sigma, use_variance: bool = True):
    """
    Per-parameter uncertainty-weighted regression terms.

    With use_variance False every term is the plain smooth L1 and the log-sigma
    gradient is zero.

    Returns:
        (terms, d terms / d pred, d terms / d log_sigma), elementwise.
    """
    s = np.asarray(log_sigma, dtype=float)
    sl1, dsl1 = smooth_l1(np.asarray(pred, dtype=float) - np.asarray(gt, dtype=float))
    if not use_variance:
        return sl1, dsl1, np.zeros_like(s)
    precision = np.exp(-s)
    return precision * sl1 + s, precision * dsl1, 1.0 - precision * sl1


def aleatoric_loss(pred, gt, log_sigma, use_variance: bool = True):
    """
    Summed aleatoric regression loss.

    Returns:
        (value, d value / d pred, d value / d log_sigma)
    """
    terms, grad_pred, grad_log_sigma = aleatoric_terms(pred, gt, log_sigma, use_variance)
    return float(np.sum(terms)), grad_pred, grad_log_sigma


@dataclass(frozen=True, eq=False)
class LossTargets:
    """
    Training targets of one frame.

    Attributes:
        positive: (A,) mask of anchors with an assigned ground truth
        anchor_indices: Assigned anchors, in ground-truth order
        encodings: (P, 6) regression targets for anchor_indices
    """

    positive: np.ndarray
    anchor_indices: np.ndarray
    encodings: np.ndarray

    @property
    def num_positive(self) -> int:
        return len(self.anchor_indices)


@dataclass(frozen=True, eq=False)
class LossReport:
    """
    Attributes:
        total: objectiveness + w0 * localization
        objectiveness: Focal loss over all anchors / max(1, positives)
        localization: Aleatoric loss summed over assigned anchors
        per_parameter: (6,) localization split by box parameter
        gradients: (A, 13) d total / d predictions
    """

    total: float
    objectiveness: float
    localization: float
    per_parameter: np.ndarray
    gradients: np.ndarray


def build_targets(anchors: Sequence[Anchor], gts: Sequence[OrientedBox]) -> LossTargets:
    positive = np.zeros(len(anchors), dtype=bool)
    if not gts:
        return LossTargets(positive, np.zeros(0, dtype=int), np.zeros((0, len(BOX_PARAMETERS))))
    assignment = assign_targets(anchors, gts)
    gt_order = sorted(assignment)
    indices = np.array([assignment[g] for g in gt_order], dtype=int)
    positive[indices] = True
    boxes = np.array([gts[g].as_array() for g in gt_order])
    encodings = encode_array(anchors_to_array(anchors)[indices], boxes)
    return LossTargets(positive, indices, encodings)


def loss_from_targets(
    predictions: np.ndarray,
    targets: LossTargets,
    w0: float = DEFAULT_LOCALIZATION_WEIGHT,
    use_variance: bool = True,
    alpha: float = 0.25,
    gamma: float = 2.0,
) -> LossReport:
    predictions = np.asarray(predictions, dtype=float)
    if predictions.shape != (len(targets.positive), NUM_OUTPUTS):
        raise ShapeMismatchError(
            f"predictions must be ({len(targets.positive)}, {NUM_OUTPUTS}), got {predictions.shape}"
        )
    gradients = np.zeros_like(predictions)

    normalizer = max(1, targets.num_positive)
    focal, focal_grad = focal_loss(predictions[:, LOGIT], targets.positive, alpha, gamma)
    objectiveness = float(focal.sum()) / normalizer
    gradients[:, LOGIT] = focal_grad / normalizer

    per_parameter = np.zeros(len(BOX_PARAMETERS))
    if targets.num_positive:
        rows = predictions[targets.anchor_indices]
        terms, grad_pred, grad_log_sigma = aleatoric_terms(
            rows[:, BOX_SLICE], targets.encodings, rows[:, LOG_SIGMA_SLICE], use_variance
        )
        per_parameter = terms.sum(axis=0)
        gradients[targets.anchor_indices, BOX_SLICE] = w0 * grad_pred
        gradients[targets.anchor_indices, LOG_SIGMA_SLICE] = w0 * grad_log_sigma
    localization = float(per_parameter.sum())

    return LossReport(
        total=objectiveness + w0 * localization,
        objectiveness=objectiveness,
        localization=localization,
        per_parameter=per_parameter,
        gradients=gradients,
    )


def total_loss(
    predictions: np.ndarray,
    anchors: Sequence[Anchor],
    gts: Sequence[OrientedBox],
    w0: float = DEFAULT_LOCALIZATION_WEIGHT,
    use_variance: bool = True,
) -> LossReport:
    """
    Weighted sum of objectiveness and localization losses for one frame.

    Args:
        predictions: (len(anchors), 13) raw head outputs
        anchors: Anchor grid
        gts: Ground-truth boxes
        w0: Localization weight
        use_variance: False fixes sigma at 1 (plain smooth L1)

    Raises:
        ShapeMismatchError: If predictions do not match the anchors.
    """
    return loss_from_targets(predictions, build_targets(anchors, gts), w0, use_variance)
