"""
Exception hierarchy.

Every failure raised on purpose by radarbox derives from RadarboxError so the
command line can report it uniformly. Argument-style failures also derive from
ValueError.
"""


class RadarboxError(Exception):
    """Base class for all radarbox errors."""


class ConfigError(RadarboxError, ValueError):
    """Invalid configuration value or combination of values."""


class RtdFormatError(RadarboxError, ValueError):
    """Malformed or unsupported RTD tensor container."""


class RecordError(RadarboxError, ValueError):
    """Schema violation in a JSON document or JSON-lines record."""


class SceneError(RadarboxError, ValueError):
    """Scene or scatterer outside the simulated field of view."""


class GeometryError(RadarboxError, ValueError):
    """Degenerate box or polygon."""


class ShapeMismatchError(RadarboxError, ValueError):
    """Array shape does not match what the operation expects."""


class FrameMismatchError(RadarboxError, ValueError):
    """Detection sets or records disagree on frame ids."""


class EmptyRegionError(RadarboxError, ValueError):
    """An image region selected by a box contains no pixels."""


class NoGroundTruthError(RadarboxError, ValueError):
    """Average precision requested over a dataset without ground truth."""


class MissingFormatError(RadarboxError, KeyError):
    """A report needs a radar data format that was not supplied."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class EstimationError(RadarboxError, ValueError):
    """Too little data to estimate a statistic."""


class TrainingDivergedError(RadarboxError):
    """Loss became non-finite during gradient descent."""

    def __init__(self, step: int, message: str | None = None):
        self.step = step
        self.message = message or f"loss became non-finite at step {step}"
        super().__init__(self.message)

    def __reduce__(self):
        return (type(self), (self.step, self.message))


class StageError(RadarboxError):
    """A pipeline stage failed; wraps the underlying error with the stage name."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        self.message = message
        super().__init__(f"stage '{stage}' failed: {message}")

    # rebuild from both fields when crossing a process boundary
    def __reduce__(self):
        return (type(self), (self.stage, self.message))
