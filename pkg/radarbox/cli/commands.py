"""
Pipeline subcommands: simulate, process, detect, autolabel, fit-demo, eval.

Every tensor is written as RTD with a JSON sidecar of the same stem that says
what it holds (see docs/formats.md). Box files are JSON lines.
"""

import argparse
import csv
import io
import json
import logging
import os
from pathlib import Path
from typing import Any

import numpy as np

from radarbox.autolabel import (
    DEFAULT_CONCENTRATION_THRESHOLD,
    DEFAULT_ENLARGE,
    DEFAULT_FUSION_THRESHOLD,
    DEFAULT_SCORE_FLOOR,
    AutolabelParams,
    autolabel_detection_sets,
    tta_detection_sets,
)
from radarbox.core import (
    BevImage,
    ConfigError,
    DetectionSet,
    FrameMismatchError,
    GroundTruthSet,
    PolarMap,
    RadarConfig,
    RadarCube,
    RecordError,
    RtdFormatError,
    SpectrumKind,
    atomic_write_json,
    atomic_write_text,
    check_unique_frames,
    derive_seed,
    group_detection_sets,
    read_box_records,
    read_detections,
    read_ground_truth,
    read_tensor,
    write_box_records,
    write_pgm,
    write_tensor,
)
from radarbox.detmath import (
    AnchorConfig,
    anchor_features,
    build_anchor_grid,
    fit_toy_head,
    kmeans_orientations,
    mean_anchor_size,
)
from radarbox.dsp import BaselineParams, BevParams, CfarParams, MusicParams
from radarbox.eval import (
    DEFAULT_IOU_THRESHOLDS,
    DEFAULT_REGION_AZIMUTH,
    DEFAULT_REGION_RANGE,
    FORMATS,
    FormatReport,
    evaluate_formats,
    write_pr_curve,
)
from radarbox.sim import (
    BenchmarkConfig,
    benchmark_scene,
    generate_benchmark,
    mirror_azimuth,
    mirror_boxes,
    scene_to_scatterers,
    scenes_from_document,
    simulate_cube,
)

from .registry import register_command
from .stages import DEFAULT_CONFIDENCE, DetectSettings, FormatSettings, compute_format, detect

logger = logging.getLogger(__name__)

CUBE_PATTERN = "cube_{:05d}"
GT_FILE = "gt.jsonl"


# Files


def read_json(path: str | os.PathLike[str]) -> Any:
    """Decode a JSON file; syntax errors carry line and column."""
    name = Path(path).name
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RecordError(f"{name}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc


def load_config(path: str | None) -> RadarConfig:
    if path is None:
        return RadarConfig()
    return RadarConfig.from_dict(read_json(path), where=Path(path).name)


def sidecar_path(tensor_path: str | os.PathLike[str]) -> Path:
    return Path(tensor_path).with_suffix(".json")


def tensor_sidecar(tensor: RadarCube | PolarMap | BevImage, frame_id: int, **extra: Any) -> dict[str, Any]:
    if isinstance(tensor, RadarCube):
        document = {"kind": "cube", "config": tensor.config.to_dict()}
    elif isinstance(tensor, PolarMap):
        document = {
            "kind": "polar",
            "range_extent": tensor.range_extent,
            "azimuth_extent": tensor.azimuth_extent,
            "format_tag": tensor.format_tag.value,
        }
    else:
        document = {
            "kind": "bev",
            "meters_per_pixel": tensor.meters_per_pixel,
            "extent_forward": tensor.extent_forward,
            "extent_left": tensor.extent_left,
            "extent_right": tensor.extent_right,
            "origin": list(tensor.origin),
        }
    return {"frame_id": frame_id, **document, **extra}


def save_tensor(
    path: str | os.PathLike[str], tensor: RadarCube | PolarMap | BevImage, frame_id: int, **extra: Any
) -> Path:
    """Write the RTD file and its sidecar."""
    data = tensor.data if isinstance(tensor, RadarCube) else tensor.values
    written = write_tensor(path, data)
    atomic_write_json(sidecar_path(path), tensor_sidecar(tensor, frame_id, **extra))
    return written


def _sidecar_number(document: dict[str, Any], key: str, where: str) -> float:
    value = document.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RecordError(f"{where}.{key}: expected a number, got {value!r}")
    return float(value)


def load_tensor(path: str | os.PathLike[str]) -> tuple[RadarCube | PolarMap | BevImage, int]:
    """
    Read an RTD file through its sidecar.

    Returns:
        (tensor, frame_id)

    Raises:
        RecordError: If the sidecar is missing or malformed.
    """
    side = sidecar_path(path)
    if not side.exists():
        raise RecordError(f"{Path(path).name}: missing sidecar {side.name}")
    document = read_json(side)
    where = side.name
    if not isinstance(document, dict):
        raise RecordError(f"{where}: expected an object")
    frame_id = document.get("frame_id")
    if isinstance(frame_id, bool) or not isinstance(frame_id, int):
        raise RecordError(f"{where}.frame_id: expected an integer, got {frame_id!r}")
    data = read_tensor(path)
    kind = document.get("kind")
    if kind == "cube":
        config = RadarConfig.from_dict(document.get("config", {}), where=f"{where}.config")
        return RadarCube(data, config), frame_id
    if np.iscomplexobj(data):
        raise RtdFormatError(f"{Path(path).name}: {kind} tensors must be real")
    if kind == "polar":
        tag = document.get("format_tag")
        if tag not in {k.value for k in SpectrumKind}:
            raise RecordError(f"{where}.format_tag: expected fft or music, got {tag!r}")
        tensor = PolarMap(
            data,
            _sidecar_number(document, "range_extent", where),
            _sidecar_number(document, "azimuth_extent", where),
            SpectrumKind(tag),
        )
        return tensor, frame_id
    if kind == "bev":
        tensor = BevImage(
            data,
            _sidecar_number(document, "meters_per_pixel", where),
            _sidecar_number(document, "extent_forward", where),
            _sidecar_number(document, "extent_left", where),
            _sidecar_number(document, "extent_right", where),
        )
        return tensor, frame_id
    raise RecordError(f"{where}.kind: expected cube, polar or bev, got {kind!r}")


# simulate


def _simulate_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("scene", help="scene JSON: one scene or {\"frames\": [...]}")
    parser.add_argument("--config", help="radar config JSON (defaults for missing fields)")
    parser.add_argument("--seed", type=int, default=0, help="noise and placement seed")
    parser.add_argument("--snr-db", type=float, help="per-bin SNR of a unit reflector")
    parser.add_argument("--no-noise", action="store_true", help="noise-free cubes")
    parser.add_argument("--out", required=True, help="output directory")


@register_command("simulate", "Simulate raw radar cubes from scenes", _simulate_arguments)
def cmd_simulate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    scenes = scenes_from_document(read_json(args.scene), default_seed=args.seed)
    snr_db = None if args.no_noise else (
        args.snr_db if args.snr_db is not None else -config.noise_floor_db
    )
    out = Path(args.out)
    truth = []
    for scene in scenes:
        seed = derive_seed(args.seed, scene.frame_id)
        cube = simulate_cube(scene_to_scatterers(scene, config), config, snr_db, seed)
        save_tensor(
            out / f"{CUBE_PATTERN.format(scene.frame_id)}.rtd",
            cube,
            scene.frame_id,
            snr_db=snr_db,
            seed=seed,
        )
        truth.append(GroundTruthSet(scene.frame_id, scene.boxes))
    write_box_records(out / GT_FILE, truth)
    logger.info("simulated %d frame(s) into %s", len(scenes), out)
    return 0


# process


def _bev_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--extent-forward", type=float, default=40.0)
    parser.add_argument("--extent-left", type=float, default=40.0)
    parser.add_argument("--extent-right", type=float, default=40.0)
    parser.add_argument("--mpp", type=float, default=0.1, help="meters per BEV pixel")


def _process_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("cubes", nargs="+", help="cube RTD files")
    parser.add_argument(
        "--format",
        dest="formats",
        action="append",
        choices=FORMATS,
        help="output format; repeat for several (default: all four)",
    )
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--max-range", type=float, help="crop the range axis (meters)")
    parser.add_argument("--azimuth-points", type=int, default=361)
    parser.add_argument("--music-sources", type=int, help="fixed MUSIC source count")
    parser.add_argument("--gamma", type=float, default=1.0, help="PGM gamma")
    _bev_arguments(parser)


def format_settings(args: argparse.Namespace) -> FormatSettings:
    return FormatSettings(
        bev=BevParams(args.extent_forward, args.extent_left, args.extent_right, args.mpp),
        music=MusicParams(num_sources=args.music_sources),
        azimuth_grid_points=args.azimuth_points,
        max_range=args.max_range,
    )


@register_command("process", "Turn cubes into polar maps and BEV images", _process_arguments)
def cmd_process(args: argparse.Namespace) -> int:
    settings = format_settings(args)
    formats = args.formats or list(FORMATS)
    out = Path(args.out)
    for path in args.cubes:
        cube, frame_id = load_tensor(path)
        if not isinstance(cube, RadarCube):
            raise RecordError(f"{Path(path).name}: expected a cube, got a processed tensor")
        stem = Path(path).stem
        for name in formats:
            tensor = compute_format(cube, name, settings)
            target = out / f"{stem}_{name}.rtd"
            save_tensor(target, tensor, frame_id, format=name)
            write_pgm(target.with_suffix(".pgm"), tensor, args.gamma)
            logger.debug("frame %d: wrote %s", frame_id, target)
    return 0


# detect


def _detect_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("images", nargs="+", help="BEV image RTD files")
    parser.add_argument("--out", required=True, help="detections JSON lines")
    _detector_arguments(parser)


def _detector_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--train-cells", type=int, default=8)
    parser.add_argument("--guard-cells", type=int, default=16)
    parser.add_argument("--pfa", type=float, default=1e-3)
    parser.add_argument("--min-level-db", type=float, default=-25.0)
    parser.add_argument("--merge-distance", type=float, default=1.0)
    parser.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
    parser.add_argument("--nms-iou", type=float, default=1e-4)


def detect_settings(args: argparse.Namespace) -> DetectSettings:
    return DetectSettings(
        cfar=CfarParams(args.train_cells, args.guard_cells, args.pfa, args.min_level_db),
        baseline=BaselineParams(merge_distance=args.merge_distance),
        confidence=args.confidence,
        nms_threshold=args.nms_iou,
    )


@register_command("detect", "Detect boxes on BEV images", _detect_arguments)
def cmd_detect(args: argparse.Namespace) -> int:
    settings = detect_settings(args)
    results = []
    for path in args.images:
        tensor, frame_id = load_tensor(path)
        if not isinstance(tensor, BevImage):
            raise RecordError(f"{Path(path).name}: detect expects a BEV image, not a polar map or cube")
        dets = detect(tensor, frame_id, settings)
        logger.debug("frame %d: %d detections", frame_id, len(dets))
        results.append(dets)
    check_unique_frames(results, "BEV inputs")
    write_box_records(args.out, sorted(results, key=lambda d: d.frame_id))
    return 0


# autolabel


def _autolabel_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--sets", help="detection sets as JSON lines with set_id")
    source.add_argument("--truth", help="ground truth; run the synthetic detector ensemble on it")
    parser.add_argument("--bev", nargs="+", required=True, help="BEV image RTD per frame")
    parser.add_argument("--out", required=True, help="auto-labels JSON lines")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--fusion-iou", type=float, default=DEFAULT_FUSION_THRESHOLD)
    parser.add_argument("--score-floor", type=float, default=DEFAULT_SCORE_FLOOR)
    parser.add_argument("--concentration", type=float, default=DEFAULT_CONCENTRATION_THRESHOLD)
    parser.add_argument("--enlarge", type=float, default=DEFAULT_ENLARGE)


@register_command("autolabel", "Fuse detection sets into auto-labels", _autolabel_arguments)
def cmd_autolabel(args: argparse.Namespace) -> int:
    params = AutolabelParams(
        soft_nms_threshold=args.fusion_iou,
        score_floor=args.score_floor,
        concentration_threshold=args.concentration,
        enlarge=args.enlarge,
    )
    images: dict[int, BevImage] = {}
    for path in args.bev:
        tensor, frame_id = load_tensor(path)
        if not isinstance(tensor, BevImage):
            raise RecordError(f"{Path(path).name}: autolabel expects a BEV image")
        if frame_id in images:
            raise FrameMismatchError(f"two BEV images for frame {frame_id}")
        images[frame_id] = tensor

    if args.sets is not None:
        sets_by_frame = group_detection_sets(read_box_records(args.sets, scored=True))
    else:
        sets_by_frame = {
            truth.frame_id: tta_detection_sets(truth, params, args.seed)
            for truth in read_ground_truth(args.truth)
        }
    missing = sorted(set(sets_by_frame) - set(images))
    if missing:
        raise FrameMismatchError(f"no BEV image for frame(s) {missing}")

    labels = [
        autolabel_detection_sets(sets_by_frame[fid], images[fid], params)
        for fid in sorted(sets_by_frame)
    ]
    write_box_records(args.out, labels)
    logger.info("auto-labeled %d frame(s), %d boxes", len(labels), sum(len(frame) for frame in labels))
    return 0


# fit-demo


def _fit_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--lr", type=float, default=0.05)
    parser.add_argument("--snr-db", type=float, default=20.0)
    parser.add_argument("--cell-size", type=float, default=2.0, help="anchor grid pitch (meters)")
    parser.add_argument(
        "--format",
        choices=("img-music", "img-fft"),
        default="img-music",
        help="BEV image the features are pooled from",
    )
    parser.add_argument("--no-variance", action="store_true", help="plain smooth-L1 regression")
    parser.add_argument("--mirror", action="store_true", help="train on the mirrored frame")
    parser.add_argument("--out", required=True, help="loss trace CSV")
    _bev_arguments(parser)


def loss_trace_csv(trace) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["step", "total", "objectiveness", "localization"])
    for point in trace:
        values = (point.total, point.objectiveness, point.localization)
        writer.writerow([point.step, *(f"{value:.9g}" for value in values)])
    return buffer.getvalue()


@register_command("fit-demo", "Train the linear toy head on one synthetic frame", _fit_arguments)
def cmd_fit_demo(args: argparse.Namespace) -> int:
    config = RadarConfig()
    bev_params = BevParams(args.extent_forward, args.extent_left, args.extent_right, args.mpp)

    # anchor priors from the benchmark's labels, as a detector would from its training set
    bench = BenchmarkConfig(seed=args.seed)
    labels = [box for scene in generate_benchmark(bench, config) for box in scene.boxes]
    anchor_config = AnchorConfig.covering(
        bev_params.extent_forward,
        bev_params.extent_left,
        bev_params.extent_right,
        args.cell_size,
        anchor_size=mean_anchor_size(labels),
        anchor_orientations=tuple(kmeans_orientations(labels, seed=args.seed)),
    )
    anchors = build_anchor_grid(anchor_config)

    scene = benchmark_scene(bench, 0, config)
    cube = simulate_cube(scene_to_scatterers(scene, config), config, args.snr_db, scene.seed)
    boxes = list(scene.boxes)
    if args.mirror:
        cube, boxes = mirror_azimuth(cube), mirror_boxes(boxes)
    bev = compute_format(cube, args.format, FormatSettings(bev=bev_params))
    if not isinstance(bev, BevImage):
        raise ConfigError(f"{args.format} did not produce a BEV image")

    head = fit_toy_head(
        anchor_features(bev, anchors),
        boxes,
        args.steps,
        args.lr,
        anchors=anchors,
        seed=args.seed,
        use_variance=not args.no_variance,
    )
    atomic_write_text(args.out, loss_trace_csv(head.trace))
    first, last = head.trace[0].total, head.trace[-1].total
    print(f"loss {first:.6g} -> {last:.6g} over {args.steps} steps")
    return 0


# eval


def _eval_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "detections", nargs="+", help="detections JSON lines, optionally NAME=PATH per format"
    )
    parser.add_argument("--gt", required=True, help="ground truth JSON lines")
    parser.add_argument("--iou", type=float, nargs="+", default=list(DEFAULT_IOU_THRESHOLDS))
    parser.add_argument("--no-region", action="store_true", help="skip the in-region rows")
    parser.add_argument("--out", required=True, help="report directory")


def parse_named_path(value: str) -> tuple[str, str]:
    name, sep, path = value.partition("=")
    if not sep:
        return Path(value).stem, value
    if not name or not path:
        raise ConfigError(f"expected NAME=PATH, got '{value}'")
    return name, path


def write_report(out: Path, report: FormatReport, curves_for: list[str]) -> list[Path]:
    """Write report.json, report.txt and one PR curve CSV per format and threshold."""
    written = [
        atomic_write_json(out / "report.json", report.to_dict()),
        atomic_write_text(out / "report.txt", report.to_text()),
    ]
    for name in curves_for:
        row = report.row(name)
        for t, curve in row.curves.items():
            written.append(write_pr_curve(out / f"pr_{name}_iou{t:g}.csv", curve))
    return written


@register_command("eval", "Average precision of detections against ground truth", _eval_arguments)
def cmd_eval(args: argparse.Namespace) -> int:
    gts = read_ground_truth(args.gt)
    detections: dict[str, list[DetectionSet]] = {}
    for value in args.detections:
        name, path = parse_named_path(value)
        if name in detections:
            raise ConfigError(f"format '{name}' given twice")
        detections[name] = read_detections(path)
    region = None if args.no_region else (DEFAULT_REGION_RANGE, DEFAULT_REGION_AZIMUTH)
    report = evaluate_formats(detections, gts, args.iou, formats=list(detections), region=region)
    write_report(Path(args.out), report, list(detections))
    print(report.to_text(), end="")
    return 0
