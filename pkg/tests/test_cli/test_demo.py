"""Tests for end-to-end demo module."""

from __future__ import annotations

import json

import pytest

from radarbox.cli import DemoSettings, FormatSettings, RunManifest, run_demo
from radarbox.cli.demo import DEFAULT_WORKERS
from radarbox.cli.main import main
from radarbox.core import StageError, read_detections, read_ground_truth
from radarbox.dsp import BevParams
from radarbox.eval import FORMATS

SETTINGS = DemoSettings(seed=2, num_frames=2, workers=1)


@pytest.fixture(scope="module")
def demo(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo")
    return run_demo(SETTINGS, out), out


@pytest.fixture(scope="module")
def benchmark_report():
    return run_demo(DemoSettings(workers=DEFAULT_WORKERS)).report


class TestRunDemo:
    def test_report(self, demo):
        result, _ = demo
        assert [row.format for row in result.report.rows] == list(FORMATS)
        for row in result.report.rows:
            assert set(row.ap) == {0.3, 0.5, 0.7}
            assert all(0.0 <= ap <= 1.0 for ap in row.ap.values())
            assert row.region_ap is not None
        assert [row.format for row in result.autolabel_report.rows] == ["autolabel"]

    def test_outcomes(self, demo):
        result, _ = demo
        assert [o.truth.frame_id for o in result.outcomes] == [0, 1]
        for outcome in result.outcomes:
            assert 1 <= len(outcome.truth) <= 4
            assert set(outcome.detections) == set(FORMATS)
            assert outcome.autolabels.frame_id == outcome.truth.frame_id

    def test_artifacts(self, demo):
        result, out = demo
        truth = read_ground_truth(out / "gt.jsonl")
        assert truth == [o.truth for o in result.outcomes]
        for name in FORMATS:
            written = read_detections(out / f"detections_{name}.jsonl")
            expected = sum(len(o.detections[name]) for o in result.outcomes)
            assert sum(len(f) for f in written) == expected
            assert (out / f"pr_{name}_iou0.7.csv").exists()
        assert json.loads((out / "report.json").read_text())["rows"][3]["format"] == "image-music"
        assert (out / "autolabel_report.txt").read_text().startswith("format")

    def test_manifest(self, demo):
        result, out = demo
        manifest = RunManifest.read(out / "manifest.json")
        assert manifest.seed == 2
        assert manifest.parameters["num_frames"] == 2
        assert set(manifest.timings_ms) == {"benchmark", "frames", "eval", "write"}
        assert str(out / "gt.jsonl") in manifest.outputs["benchmark"]
        assert len(manifest.outputs["eval"]) == 2 + 4 * 3 + 1
        assert manifest.outputs == result.manifest.outputs

    def test_workers_do_not_change_results(self, demo):
        result, _ = demo
        parallel = run_demo(DemoSettings(seed=2, num_frames=2, workers=2))
        assert parallel.outcomes == result.outcomes
        assert parallel.report == result.report

    def test_failing_stage_is_named(self):
        wide = FormatSettings(bev=BevParams(extent_forward=60.0), max_range=40.0)
        with pytest.raises(StageError) as info:
            run_demo(DemoSettings(num_frames=1, formats=wide))
        assert info.value.stage == "process"
        assert "frame 0" in info.value.message


class TestCmdDemo:
    def test_prints_tables(self, tmp_path, capsys):
        status = main(["demo", "--frames", "1", "--workers", "1", "--out", str(tmp_path)])
        assert status == 0
        out = capsys.readouterr().out
        assert out.count("format") == 2
        assert "image-music" in out
        assert "autolabel" in out
        assert (tmp_path / "manifest.json").exists()


class TestBenchmarkAcceptance:
    """The seeded 50-frame benchmark at 20 dB."""

    def test_image_music_reaches_target(self, benchmark_report):
        assert benchmark_report.row("img-music").ap[0.3] >= 0.9

    def test_image_music_beats_polar_fft(self, benchmark_report):
        music, fft = benchmark_report.row("img-music"), benchmark_report.row("data-fft")
        assert music.ap[0.3] >= fft.ap[0.3]

    def test_stricter_thresholds_never_score_higher(self, benchmark_report):
        for row in benchmark_report.rows:
            assert row.ap[0.7] <= row.ap[0.5] <= row.ap[0.3]
