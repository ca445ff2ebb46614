import math

import pytest

from skelcal import GaitDirection, read_capture, read_profile
from skelcal.cli import main


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def synth_files(tmp_path):
    truth = tmp_path / "truth.csv"
    raw = tmp_path / "raw.csv"
    code = run(
        "synth", "--frames", 60, "--tilt-deg", 7, "--sensor-height", 0.75,
        "--beta-coeffs", "2.0,-1.0", "--noise-std", 0.003, "--seed", 11,
        "--out-truth", truth, "--out-raw", raw,
    )
    assert code == 0
    return truth, raw


class TestSynth:
    def test_writes_parseable_captures(self, synth_files):
        truth, raw = synth_files
        t = read_capture(truth, GaitDirection.VERTICAL)
        r = read_capture(raw, GaitDirection.VERTICAL)
        assert len(t.frames) == len(r.frames) == 60

    def test_seed_reproducible(self, tmp_path):
        args = ["synth", "--frames", 30, "--noise-std", 0.005, "--seed", 3,
                "--tilt-deg", 5, "--sensor-height", 0.5]
        run(*args, "--out-truth", tmp_path / "t1.csv", "--out-raw", tmp_path / "r1.csv")
        run(*args, "--out-truth", tmp_path / "t2.csv", "--out-raw", tmp_path / "r2.csv")
        assert (tmp_path / "r1.csv").read_bytes() == (tmp_path / "r2.csv").read_bytes()

    def test_invalid_scenario_exits_nonzero(self, tmp_path, capsys):
        code = run("synth", "--frames", 1,
                   "--out-truth", tmp_path / "t.csv", "--out-raw", tmp_path / "r.csv")
        assert code != 0
        captured = capsys.readouterr()
        assert "error" in captured.err

    def test_rewrite_round_trip_byte_identical(self, synth_files, tmp_path):
        from skelcal import write_capture

        _, raw = synth_files
        back = read_capture(raw, GaitDirection.VERTICAL)
        again = tmp_path / "again.csv"
        write_capture(back, again)
        assert again.read_bytes() == raw.read_bytes()


class TestCalibrateApplyDiagnose:
    @pytest.fixture
    def captures(self, tmp_path):
        paths = []
        for i in range(4):
            truth = tmp_path / f"truth{i}.csv"
            raw = tmp_path / f"raw{i}.csv"
            run("synth", "--frames", 60, "--tilt-deg", 7, "--sensor-height", 0.75,
                "--beta-coeffs", "2.0,-1.0", "--noise-std", 0.002, "--seed", i,
                "--out-truth", truth, "--out-raw", raw)
            paths.append(raw)
        return paths

    def test_calibrate_then_apply(self, tmp_path, captures):
        profile_path = tmp_path / "profile.json"
        code = run("calibrate", "--sensor-height", 0.75, "--degree", 2,
                   "--out-profile", profile_path, *captures[:3])
        assert code == 0
        profile = read_profile(profile_path)
        assert profile.gait_count == 3
        assert profile.tilt.tilt_rad == pytest.approx(
            math.atan(math.sin(math.radians(7))), abs=2e-3
        )

        corrected = tmp_path / "corrected.csv"
        assert run("apply", "--profile", profile_path, "--in", captures[3],
                   "--out", corrected) == 0
        out = read_capture(corrected, GaitDirection.VERTICAL)
        assert len(out.frames) == 60

    def test_apply_warns_on_calibrated_input(self, tmp_path, captures, capsys):
        profile_path = tmp_path / "profile.json"
        run("calibrate", "--sensor-height", 0.75, "--out-profile", profile_path, *captures[:3])
        first = tmp_path / "walk.calibrated.csv"
        run("apply", "--profile", profile_path, "--in", captures[3], "--out", first)
        capsys.readouterr()
        run("apply", "--profile", profile_path, "--in", first, "--out", tmp_path / "twice.csv")
        assert "already calibrated" in capsys.readouterr().err

    def test_diagnose_ydiff_report(self, tmp_path, captures):
        report = tmp_path / "report.csv"
        assert run("diagnose", "--in", captures[0], "--report", "ydiff", "--out", report) == 0
        lines = report.read_text().splitlines()
        assert lines[0].startswith("frame,head,neck")
        assert len(lines) == 61

    def test_diagnose_both_reports_with_profile(self, tmp_path, captures):
        profile_path = tmp_path / "profile.json"
        run("calibrate", "--sensor-height", 0.75, "--out-profile", profile_path, *captures[:3])
        out = tmp_path / "report.csv"
        assert run("diagnose", "--in", captures[3], "--profile", profile_path,
                   "--report", "both", "--out", out) == 0
        assert (tmp_path / "report_ydiff.csv").exists()
        assert (tmp_path / "report_bones.csv").exists()
        bones = (tmp_path / "report_bones.csv").read_text().splitlines()
        assert len(bones) == 25  # header + 24 edges

    def test_missing_capture_exits_nonzero(self, tmp_path, capsys):
        code = run("calibrate", "--sensor-height", 0.75,
                   "--out-profile", tmp_path / "p.json", tmp_path / "missing.csv")
        assert code != 0
        assert "error" in capsys.readouterr().err

    def test_corrupt_profile_exits_nonzero(self, tmp_path, captures, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema_version": 99}')
        code = run("apply", "--profile", bad, "--in", captures[0], "--out", tmp_path / "o.csv")
        assert code != 0
        assert "SchemaError" in capsys.readouterr().err
