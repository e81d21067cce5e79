"""
JSON-lines records for detections and ground truth.

One box per line:
    {"frame_id": 3, "cx": 12.1, "cy": -2.0, "w": 1.8, "h": 4.6, "theta": 0.3,
     "score": 0.87, "variances": [...], "set_id": 0}

`score` is required for detections and forbidden for ground truth. `variances`
and `set_id` are optional. Parse errors name the line and field.
"""

import json
import math
import os
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .boxes import DetectionSet, Frame, GroundTruthSet, OrientedBox
from .errors import GeometryError, RecordError
from .files import atomic_write_text

_BOX_FIELDS = ("cx", "cy", "w", "h", "theta")
_ALLOWED = {"frame_id", *_BOX_FIELDS, "score", "variances", "set_id"}


@dataclass(frozen=True)
class BoxRecord:
    """A parsed line: the box plus the frame and optional detection-set it belongs to."""

    frame_id: int
    box: OrientedBox
    set_id: int | None = None


def _number(record: Mapping[str, Any], key: str, where: str) -> float:
    if key not in record:
        raise RecordError(f"{where}: missing field '{key}'")
    value = record[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise RecordError(f"{where}.{key}: expected a finite number, got {value!r}")
    return float(value)


def _integer(record: Mapping[str, Any], key: str, where: str) -> int:
    value = record.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise RecordError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def record_to_box(record: Any, where: str, *, scored: bool | None = None) -> BoxRecord:
    """
    Validate one JSON object and turn it into a BoxRecord.

    Args:
        record: Decoded JSON value
        where: Location prefix used in error messages
        scored: True requires a score, False forbids one, None accepts either

    Raises:
        RecordError: On any schema violation.
    """
    if not isinstance(record, Mapping):
        raise RecordError(f"{where}: expected an object, got {type(record).__name__}")
    unknown = sorted(set(record) - _ALLOWED)
    if unknown:
        raise RecordError(f"{where}: unknown field(s) {', '.join(unknown)}")
    if "frame_id" not in record:
        raise RecordError(f"{where}: missing field 'frame_id'")
    frame_id = _integer(record, "frame_id", where)
    values = {key: _number(record, key, where) for key in _BOX_FIELDS}

    score = None
    if "score" in record:
        if scored is False:
            raise RecordError(f"{where}.score: ground truth must not carry a score")
        score = _number(record, "score", where)
    elif scored:
        raise RecordError(f"{where}: missing field 'score'")

    variances = None
    if "variances" in record:
        raw = record["variances"]
        if not isinstance(raw, list):
            raise RecordError(f"{where}.variances: expected a list of 6 numbers")
        variances = tuple(_number({"v": v}, "v", f"{where}.variances[{i}]") for i, v in enumerate(raw))

    set_id = _integer(record, "set_id", where) if "set_id" in record else None
    try:
        box = OrientedBox(**values, score=score, variances=variances)
    except GeometryError as exc:
        raise RecordError(f"{where}: {exc}") from exc
    return BoxRecord(frame_id=frame_id, box=box, set_id=set_id)


def box_to_record(box: OrientedBox, frame_id: int, set_id: int | None = None) -> dict[str, Any]:
    record: dict[str, Any] = {"frame_id": frame_id}
    record.update({key: getattr(box, key) for key in _BOX_FIELDS})
    if box.score is not None:
        record["score"] = box.score
    if box.variances is not None:
        record["variances"] = list(box.variances)
    if set_id is not None:
        record["set_id"] = set_id
    return record


def read_box_records(path: str | os.PathLike[str], *, scored: bool | None = None) -> list[BoxRecord]:
    """Read a JSON-lines file; blank lines are skipped."""
    records = []
    name = Path(path).name
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            where = f"{name}:{lineno}"
            try:
                decoded = json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordError(f"{where}: invalid JSON ({exc.msg})") from exc
            records.append(record_to_box(decoded, where, scored=scored))
    return records


def group_detections(records: Iterable[BoxRecord]) -> list[DetectionSet]:
    """Group records into one DetectionSet per frame, ordered by frame id."""
    by_frame: dict[int, list[OrientedBox]] = defaultdict(list)
    for record in records:
        by_frame[record.frame_id].append(record.box)
    return [DetectionSet(fid, tuple(by_frame[fid])) for fid in sorted(by_frame)]


def group_detection_sets(records: Iterable[BoxRecord]) -> dict[int, list[DetectionSet]]:
    """Group records by frame, then by set id (records without a set id form set 0)."""
    nested: dict[int, dict[int, list[OrientedBox]]] = defaultdict(lambda: defaultdict(list))
    for record in records:
        nested[record.frame_id][record.set_id or 0].append(record.box)
    return {
        fid: [DetectionSet(fid, tuple(nested[fid][sid])) for sid in sorted(nested[fid])]
        for fid in sorted(nested)
    }


def read_detections(path: str | os.PathLike[str]) -> list[DetectionSet]:
    return group_detections(read_box_records(path, scored=True))


def read_ground_truth(path: str | os.PathLike[str]) -> list[GroundTruthSet]:
    sets = group_detections(read_box_records(path, scored=False))
    return [GroundTruthSet(s.frame_id, s.boxes) for s in sets]


def write_box_records(path: str | os.PathLike[str], frames: Iterable[Frame]) -> Path:
    """Write frames as JSON lines in frame order, atomically."""
    lines = []
    for frame in frames:
        for box in frame.boxes:
            lines.append(json.dumps(box_to_record(box, frame.frame_id)))
    return atomic_write_text(path, "".join(line + "\n" for line in lines))
