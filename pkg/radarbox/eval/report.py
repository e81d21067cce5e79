"""
Format comparison report.

One row per radar data format with AP at each IoU threshold, optionally
repeated for the near region (30 m, ±60°) where radar detection is reliable.
"""

import csv
import io
import os
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from radarbox.core import (
    DetectionSet,
    GroundTruthSet,
    MissingFormatError,
    NoGroundTruthError,
    atomic_write_text,
)

from .ap import DEFAULT_IOU_THRESHOLDS, PrCurve, average_precision, restrict_to_region

FORMATS = ("data-fft", "data-music", "img-fft", "img-music")
FORMAT_LABELS = {
    "data-fft": "data-fft",
    "data-music": "data-music",
    "img-fft": "image-fft",
    "img-music": "image-music",
}


@dataclass(frozen=True)
class FormatRow:
    """AP per IoU threshold for one format; region_ap entries are None without ground truth."""

    format: str
    ap: dict[float, float]
    region_ap: dict[float, float | None] | None = None
    curves: dict[float, PrCurve] = field(default_factory=dict, compare=False, repr=False)

    @property
    def label(self) -> str:
        return FORMAT_LABELS.get(self.format, self.format)


@dataclass(frozen=True)
class FormatReport:
    thresholds: tuple[float, ...]
    rows: tuple[FormatRow, ...]

    def row(self, name: str) -> FormatRow:
        for row in self.rows:
            if row.format == name:
                return row
        raise MissingFormatError(f"report has no row for format '{name}'")

    def to_dict(self) -> dict[str, Any]:
        return {
            "iou_thresholds": list(self.thresholds),
            "rows": [
                {
                    "format": row.label,
                    "ap": {f"{t:g}": row.ap[t] for t in self.thresholds},
                    **(
                        {"region_ap": {f"{t:g}": row.region_ap[t] for t in self.thresholds}}
                        if row.region_ap is not None
                        else {}
                    ),
                }
                for row in self.rows
            ],
        }

    def to_text(self) -> str:
        """Aligned plain-text table, AP in percent."""
        header = ["format"] + [f"AP@{t:g}" for t in self.thresholds]
        lines = [header]
        for row in self.rows:
            lines.append([row.label] + [f"{100 * row.ap[t]:.2f}" for t in self.thresholds])
        for row in self.rows:
            if row.region_ap is None:
                continue
            lines.append(
                [f"{row.label} (in region)"]
                + [_percent(row.region_ap[t]) for t in self.thresholds]
            )
        widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
        text = [
            "  ".join(
                cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i])
                for i, cell in enumerate(line)
            )
            for line in lines
        ]
        return "\n".join(text) + "\n"


def _percent(value: float | None) -> str:
    return "-" if value is None else f"{100 * value:.2f}"


def evaluate_formats(
    detections: Mapping[str, Sequence[DetectionSet]],
    gts: Sequence[GroundTruthSet],
    iou_thresholds: Sequence[float] = DEFAULT_IOU_THRESHOLDS,
    formats: Sequence[str] = FORMATS,
    region: tuple[float, float] | None = None,
) -> FormatReport:
    """
    AP table for every format.

    Args:
        detections: Detections per format name
        gts: Ground truth shared by all formats
        iou_thresholds: Columns of the table
        formats: Rows of the table, in order
        region: Optional (max_range, max_azimuth) for in-region rows

    Raises:
        MissingFormatError: If a requested format has no detections entry.
    """
    missing = [name for name in formats if name not in detections]
    if missing:
        raise MissingFormatError(f"no detections for format(s): {', '.join(missing)}")
    thresholds = tuple(float(t) for t in iou_thresholds)

    region_gts = restrict_to_region(gts, *region) if region is not None else None
    rows = []
    for name in formats:
        curves = {t: average_precision(detections[name], gts, t) for t in thresholds}
        region_ap = None
        if region_gts is not None:
            region_dets = restrict_to_region(detections[name], *region)  # type: ignore[misc]
            region_ap = {}
            for t in thresholds:
                try:
                    region_ap[t] = average_precision(region_dets, region_gts, t).ap
                except NoGroundTruthError:
                    region_ap[t] = None
        rows.append(FormatRow(name, {t: c.ap for t, c in curves.items()}, region_ap, curves))
    return FormatReport(thresholds, tuple(rows))


def pr_curve_csv(curve: PrCurve) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["recall", "precision", "envelope", "score_threshold"])
    for point, env in zip(curve.points, curve.envelope, strict=True):
        writer.writerow(
            [f"{value:.6f}" for value in (point.recall, point.precision, env, point.score_threshold)]
        )
    return buffer.getvalue()


def write_pr_curve(path: str | os.PathLike[str], curve: PrCurve) -> Path:
    return atomic_write_text(path, pr_curve_csv(curve))
