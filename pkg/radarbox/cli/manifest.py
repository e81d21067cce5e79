"""
Run manifests.

A manifest records what a run consumed and produced: the seed, config files,
every output path per stage, the tool version and stage timings. Stage
failures are re-raised as StageError so the command line can name the stage.
"""

import json
import logging
import os
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from radarbox import __version__
from radarbox.core import RadarboxError, RecordError, StageError, atomic_write_json

logger = logging.getLogger(__name__)


@dataclass
class RunManifest:
    """
    Attributes:
        seed: Master seed of the run
        config_paths: Config files by role
        outputs: Output paths per stage, in creation order
        version: radarbox version that produced the run
        timings_ms: Wall-clock duration per stage
        parameters: Free-form run settings (frame count, SNR, ...)
    """

    seed: int
    config_paths: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, list[str]] = field(default_factory=dict)
    version: str = __version__
    timings_ms: dict[str, float] = field(default_factory=dict)
    parameters: dict[str, Any] = field(default_factory=dict)

    def add_output(self, stage: str, path: str | os.PathLike[str]) -> None:
        self.outputs.setdefault(stage, []).append(str(path))

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time a stage; radarbox errors inside it become StageError(name)."""
        logger.info("stage %s started", name)
        start = time.perf_counter()
        try:
            yield
        except StageError:
            raise
        except RadarboxError as exc:
            raise StageError(name, str(exc)) from exc
        finally:
            elapsed = (time.perf_counter() - start) * 1000.0
            self.timings_ms[name] = self.timings_ms.get(name, 0.0) + elapsed
        logger.info("stage %s finished in %.1f ms", name, elapsed)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Any) -> RunManifest:
        if not isinstance(data, dict) or not isinstance(data.get("seed"), int):
            raise RecordError("manifest: expected an object with an integer 'seed'")
        known = {"seed", "config_paths", "outputs", "version", "timings_ms", "parameters"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise RecordError(f"manifest: unknown field(s) {', '.join(unknown)}")
        return cls(**data)

    def write(self, path: str | os.PathLike[str]) -> Path:
        return atomic_write_json(path, self.to_dict())

    @classmethod
    def read(cls, path: str | os.PathLike[str]) -> RunManifest:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise RecordError(f"{Path(path).name}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc
        return cls.from_dict(data)
