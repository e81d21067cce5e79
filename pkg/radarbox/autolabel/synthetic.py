"""
Synthetic noisy detectors.

Stand-ins for the point-cloud detectors that feed auto-labeling: each true
box is detected with probability 1 - miss_rate, jittered in center, size and
heading, and scored high; a Poisson number of false positives with lower
scores is scattered over the field of view.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from radarbox.core import ConfigError, DetectionSet, OrientedBox

from .transforms import SymmetryTransform, transform_boxes


@dataclass(frozen=True)
class NoisyDetectorConfig:
    """
    Noise model of one synthetic detector.

    Attributes:
        name: Label used in logs and set ids
        center_sigma: Center jitter, meters
        size_sigma: Relative size jitter
        heading_sigma: Heading jitter, radians
        miss_rate: Probability of dropping a true box
        false_positives: Mean false positives per frame
        true_score_range: Uniform score interval of detections of true boxes
        false_score_range: Uniform score interval of false positives
        region: (x_min, x_max, y_min, y_max) where false positives appear
    """

    name: str = "detector"
    center_sigma: float = 0.2
    size_sigma: float = 0.05
    heading_sigma: float = math.radians(3.0)
    miss_rate: float = 0.05
    false_positives: float = 1.0
    true_score_range: tuple[float, float] = (0.6, 1.0)
    false_score_range: tuple[float, float] = (0.1, 0.7)
    region: tuple[float, float, float, float] = (3.0, 38.0, -35.0, 35.0)

    def __post_init__(self):
        if min(self.center_sigma, self.size_sigma, self.heading_sigma) < 0:
            raise ConfigError(f"{self.name}: noise levels must be non-negative")
        if not 0 <= self.miss_rate <= 1:
            raise ConfigError(f"{self.name}: miss_rate must be in [0, 1], got {self.miss_rate}")
        if self.false_positives < 0:
            raise ConfigError(f"{self.name}: false_positives must be >= 0")
        for label, (low, high) in (
            ("true_score_range", self.true_score_range),
            ("false_score_range", self.false_score_range),
        ):
            if not 0 <= low <= high <= 1:
                raise ConfigError(f"{self.name}: {label} must satisfy 0 <= low <= high <= 1")
        x_min, x_max, y_min, y_max = self.region
        if not (x_min < x_max and y_min < y_max):
            raise ConfigError(f"{self.name}: empty false-positive region {self.region}")


# A fast bird's-eye-view detector: looser boxes, more clutter
FAST_DETECTOR = NoisyDetectorConfig(
    name="fast",
    center_sigma=0.3,
    size_sigma=0.08,
    heading_sigma=math.radians(5.0),
    miss_rate=0.1,
    false_positives=2.0,
)

# A slower point-based detector: tighter boxes, fewer false alarms
PRECISE_DETECTOR = NoisyDetectorConfig(
    name="precise",
    center_sigma=0.12,
    size_sigma=0.03,
    heading_sigma=math.radians(2.0),
    miss_rate=0.05,
    false_positives=0.5,
)

DEFAULT_DETECTORS = (FAST_DETECTOR, PRECISE_DETECTOR)


def _false_positive(rng: np.random.Generator, config: NoisyDetectorConfig) -> OrientedBox:
    x_min, x_max, y_min, y_max = config.region
    return OrientedBox(
        rng.uniform(x_min, x_max),
        rng.uniform(y_min, y_max),
        max(0.5, rng.normal(1.8, 0.2)),
        max(1.0, rng.normal(4.6, 0.5)),
        rng.uniform(-math.pi, math.pi),
        score=rng.uniform(*config.false_score_range),
    )


def synthesize_detections(
    truth: Sequence[OrientedBox],
    config: NoisyDetectorConfig,
    rng: np.random.Generator,
    frame_id: int = 0,
    transform: SymmetryTransform | None = None,
) -> DetectionSet:
    """
    Simulate one detector run.

    With a transform, the detector sees the transformed frame: true boxes and
    false positives are mapped by it before the noise is applied, and the
    result stays in transformed coordinates.
    """
    false_boxes = [_false_positive(rng, config) for _ in range(rng.poisson(config.false_positives))]
    true_boxes = list(truth)
    if transform is not None:
        true_boxes = transform_boxes(true_boxes, transform)
        false_boxes = transform_boxes(false_boxes, transform)

    detections = []
    for box in true_boxes:
        if rng.random() < config.miss_rate:
            continue
        detections.append(
            OrientedBox(
                box.cx + rng.normal(0.0, config.center_sigma),
                box.cy + rng.normal(0.0, config.center_sigma),
                box.w * math.exp(rng.normal(0.0, config.size_sigma)),
                box.h * math.exp(rng.normal(0.0, config.size_sigma)),
                box.theta + rng.normal(0.0, config.heading_sigma),
                score=rng.uniform(*config.true_score_range),
            )
        )
    detections.extend(false_boxes)
    return DetectionSet(frame_id, tuple(detections))
