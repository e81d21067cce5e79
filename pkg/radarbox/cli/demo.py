"""
End-to-end synthetic run.

Implementation:
    1. Generate the seeded benchmark scenes.
    2. Per frame (in a process pool): simulate the cube, compute the four
       formats, run the baseline detector on each and auto-label the frame
       against the img-music image.
    3. Evaluate every format and the auto-labels against the truth, with
       in-region rows.
    4. Write boxes, reports, PR curves and the run manifest.

Frames only depend on (seed, frame_id), so the artifacts do not depend on the
number of workers.
"""

import argparse
import logging
import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from pathlib import Path

from radarbox.autolabel import AutolabelParams, autolabel_frame
from radarbox.core import (
    BevImage,
    DetectionSet,
    GroundTruthSet,
    RadarboxError,
    RadarConfig,
    StageError,
    atomic_write_text,
    derive_seed,
    write_box_records,
)
from radarbox.eval import (
    DEFAULT_IOU_THRESHOLDS,
    DEFAULT_REGION_AZIMUTH,
    DEFAULT_REGION_RANGE,
    FORMATS,
    FormatReport,
    evaluate_formats,
)
from radarbox.sim import BenchmarkConfig, Scene, generate_benchmark, scene_to_scatterers, simulate_cube

from .commands import write_report
from .manifest import RunManifest
from .registry import register_command
from .stages import DetectSettings, FormatSettings, compute_format, detect

logger = logging.getLogger(__name__)

AUTOLABEL_FORMAT = "autolabel"
DEFAULT_WORKERS = min(8, os.cpu_count() or 1)


@dataclass(frozen=True)
class DemoSettings:
    """
    Attributes:
        seed: Master seed
        num_frames: Benchmark size
        snr_db: Per-bin SNR of a unit reflector
        workers: Process pool size; 1 runs inline
        formats: Map and image settings; polar maps are cropped to 40 m
        detection: Baseline detector settings
        autolabel: Auto-labeling settings
        iou_thresholds: AP columns
    """

    seed: int = 0
    num_frames: int = 50
    snr_db: float | None = 20.0
    workers: int = 1
    formats: FormatSettings = field(default_factory=lambda: FormatSettings(max_range=40.0))
    detection: DetectSettings = field(default_factory=DetectSettings)
    autolabel: AutolabelParams = field(default_factory=AutolabelParams)
    iou_thresholds: tuple[float, ...] = DEFAULT_IOU_THRESHOLDS


@dataclass(frozen=True)
class FrameOutcome:
    truth: GroundTruthSet
    detections: dict[str, DetectionSet]
    autolabels: DetectionSet


@dataclass(frozen=True)
class DemoResult:
    report: FormatReport
    autolabel_report: FormatReport
    outcomes: tuple[FrameOutcome, ...]
    manifest: RunManifest


def run_frame(scene: Scene, settings: DemoSettings, config: RadarConfig) -> FrameOutcome:
    """All per-frame stages; failures name the stage and frame."""
    frame_id = scene.frame_id
    stage = "simulate"
    try:
        seed = derive_seed(settings.seed, frame_id, 2)
        cube = simulate_cube(scene_to_scatterers(scene, config), config, settings.snr_db, seed)
        detections: dict[str, DetectionSet] = {}
        images: dict[str, BevImage] = {}
        for name in FORMATS:
            stage = "process"
            tensor = compute_format(cube, name, settings.formats)
            if isinstance(tensor, BevImage):
                images[name] = tensor
            stage = "detect"
            detections[name] = detect(tensor, frame_id, settings.detection)
        stage = "autolabel"
        truth = GroundTruthSet(frame_id, scene.boxes)
        labels = autolabel_frame(truth, images["img-music"], settings.autolabel, settings.seed)
    except RadarboxError as exc:
        raise StageError(stage, f"frame {frame_id}: {exc}") from exc
    logger.debug(
        "frame %d: %s",
        frame_id,
        ", ".join(f"{name} {len(dets)}" for name, dets in detections.items()),
    )
    return FrameOutcome(truth, detections, labels)


def run_frames(
    scenes: Sequence[Scene], settings: DemoSettings, config: RadarConfig
) -> list[FrameOutcome]:
    if settings.workers <= 1:
        return [run_frame(scene, settings, config) for scene in scenes]
    with ProcessPoolExecutor(max_workers=settings.workers) as pool:
        return list(pool.map(run_frame, scenes, repeat(settings), repeat(config)))


def run_demo(
    settings: DemoSettings | None = None, out: str | os.PathLike[str] | None = None
) -> DemoResult:
    """
    Run the synthetic benchmark end to end.

    Args:
        settings: Run settings
        out: Directory for artifacts, None to only compute

    Raises:
        StageError: Naming the stage that failed.
    """
    settings = settings or DemoSettings()
    config = RadarConfig()
    manifest = RunManifest(
        seed=settings.seed,
        parameters={
            "num_frames": settings.num_frames,
            "snr_db": settings.snr_db,
            "iou_thresholds": list(settings.iou_thresholds),
        },
    )

    with manifest.stage("benchmark"):
        scenes = generate_benchmark(
            BenchmarkConfig(num_frames=settings.num_frames, seed=settings.seed), config
        )
    with manifest.stage("frames"):
        outcomes = run_frames(scenes, settings, config)

    truth = [o.truth for o in outcomes]
    region = (DEFAULT_REGION_RANGE, DEFAULT_REGION_AZIMUTH)
    with manifest.stage("eval"):
        detections = {name: [o.detections[name] for o in outcomes] for name in FORMATS}
        report = evaluate_formats(detections, truth, settings.iou_thresholds, region=region)
        autolabel_report = evaluate_formats(
            {AUTOLABEL_FORMAT: [o.autolabels for o in outcomes]},
            truth,
            settings.iou_thresholds,
            formats=(AUTOLABEL_FORMAT,),
            region=region,
        )

    result = DemoResult(report, autolabel_report, tuple(outcomes), manifest)
    if out is not None:
        with manifest.stage("write"):
            write_demo(Path(out), result)
        manifest.write(Path(out) / "manifest.json")
    return result


def write_demo(out: Path, result: DemoResult) -> None:
    manifest = result.manifest
    manifest.add_output("benchmark", write_box_records(out / "gt.jsonl", [o.truth for o in result.outcomes]))
    for name in FORMATS:
        path = write_box_records(
            out / f"detections_{name}.jsonl", [o.detections[name] for o in result.outcomes]
        )
        manifest.add_output("frames", path)
    manifest.add_output(
        "frames", write_box_records(out / "autolabels.jsonl", [o.autolabels for o in result.outcomes])
    )
    for path in write_report(out, result.report, list(FORMATS)):
        manifest.add_output("eval", path)
    manifest.add_output(
        "eval",
        atomic_write_text(out / "autolabel_report.txt", result.autolabel_report.to_text()),
    )


def _demo_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--frames", type=int, default=50, help="benchmark frames")
    parser.add_argument("--snr-db", type=float, default=20.0)
    parser.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="process pool size")
    parser.add_argument("--out", required=True, help="output directory")


@register_command("demo", "Run the synthetic benchmark end to end", _demo_arguments)
def cmd_demo(args: argparse.Namespace) -> int:
    settings = DemoSettings(
        seed=args.seed, num_frames=args.frames, snr_db=args.snr_db, workers=args.workers
    )
    result = run_demo(settings, args.out)
    print(result.report.to_text(), end="")
    print(result.autolabel_report.to_text(), end="")
    return 0
