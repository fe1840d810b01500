import json

import pytest
from typer.testing import CliRunner

from cli import __version__
from cli.exit_codes import ExitCode
from cli.main import app

runner = CliRunner()


def invoke(out_dir, *args, workers=1):
    return runner.invoke(app, ["--workers", str(workers), "--out", str(out_dir), *args])


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


# crossing

def test_crossing_certifies_at_time_zero(out_dir):
    result = invoke(out_dir, "crossing", "--t", "0", "--side", "10")
    assert result.exit_code == ExitCode.CERTIFIED, result.output
    report = read_json(out_dir / "crossing.json")
    assert report["counts"] == {"trials": 63, "successes": 63}
    assert report["verdict"] == "certified"
    assert "wall_time" not in report
    assert "workers" not in report["config"]


def test_crossing_report_independent_of_workers(out_dir):
    assert invoke(out_dir, "crossing", "--t", "0.05", "--side", "10", "--max-trials", "200").exit_code in (0, 1, 2)
    first = (out_dir / "crossing.json").read_bytes()
    assert invoke(out_dir, "crossing", "--t", "0.05", "--side", "10", "--max-trials", "200", workers=2).exit_code in (0, 1, 2)
    assert (out_dir / "crossing.json").read_bytes() == first


def test_crossing_per_trial_csv(out_dir):
    invoke(out_dir, "crossing", "--t", "0", "--side", "10", "--per-trial")
    lines = (out_dir / "crossing_trials.csv").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 64


def test_crossing_negative_time(out_dir):
    assert invoke(out_dir, "crossing", "--t", "-1").exit_code == ExitCode.INVALID_INPUT


def test_timing_adds_wall_time(out_dir):
    runner.invoke(app, ["--workers", "1", "--out", str(out_dir), "--timing", "crossing", "--t", "0", "--side", "10"])
    assert "wall_time" in read_json(out_dir / "crossing.json")


# Глобальные параметры и конфигурация

def test_seed_out_of_range(out_dir):
    result = invoke(out_dir, "--seed", str(2 ** 64), "verify", "--only", "threshold-constant-true")
    assert result.exit_code == ExitCode.INVALID_SEED


def test_missing_config(out_dir, tmp_path):
    result = invoke(out_dir, "--config", str(tmp_path / "absent.json"), "verify")
    assert result.exit_code == ExitCode.FILE_READ_ERROR


@pytest.mark.parametrize("content", ["{not json", '{"seed": "many"}', '{"crossing": 5}'])
def test_bad_config(out_dir, tmp_path, content):
    path = tmp_path / "config.json"
    path.write_text(content, encoding="utf-8")
    result = invoke(out_dir, "--config", str(path), "verify")
    assert result.exit_code == ExitCode.INVALID_CONFIG


def test_config_section_below_flags(out_dir, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"seed": 9, "crossing": {"t": 0.0, "side": 10.0, "max_trials": 30}}), encoding="utf-8")
    invoke(out_dir, "--config", str(path), "crossing", "--max-trials", "63")
    report = read_json(out_dir / "crossing.json")
    assert report["seed"] == 9
    assert report["params"]["t"] == 0.0
    assert report["params"]["max_trials"] == 63


# lab

def test_lab_lists_experiments(out_dir):
    result = invoke(out_dir, "lab")
    assert result.exit_code == 0
    assert "path-law" in result.output


def test_lab_unknown_experiment(out_dir):
    assert invoke(out_dir, "lab", "percolate-everything").exit_code == ExitCode.UNKNOWN_EXPERIMENT


def test_lab_unit_radii(out_dir):
    result = invoke(out_dir, "lab", "unit-radii")
    assert result.exit_code == 0, result.output
    report = read_json(out_dir / "lab_unit-radii.json")
    assert report["verdict"] == "consistent"
    assert report["details"]["lattice"] < report["details"]["poisson"]


def test_lab_repeated_list_flag(out_dir):
    result = invoke(out_dir, "lab", "j-size", "--delta", "0.25", "--delta", "0.1")
    assert result.exit_code == 0, result.output
    assert read_json(out_dir / "lab_j-size.json")["params"]["deltas"] == [0.25, 0.1]


def test_lab_flag_without_value(out_dir):
    # значение флага проверяется по типу
    result = invoke(out_dir, "lab", "path-law", "--epsilon", "--trials", "10")
    assert result.exit_code == 2
    assert not (out_dir / "lab_path-law.json").exists()


def test_lab_unknown_parameter(out_dir):
    assert invoke(out_dir, "lab", "j-size", "--colour", "red").exit_code == 2


def test_lab_config_section(out_dir, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"lab": {"j-size": {"deltas": [0.5]}}}), encoding="utf-8")
    invoke(out_dir, "--config", str(path), "lab", "j-size")
    assert read_json(out_dir / "lab_j-size.json")["params"]["deltas"] == [0.5]


def test_lab_bad_config_value(out_dir, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"lab": {"path-law": {"m": "three"}}}), encoding="utf-8")
    assert invoke(out_dir, "--config", str(path), "lab", "path-law").exit_code == ExitCode.INVALID_INPUT


def test_lab_report_independent_of_workers(out_dir):
    args = ("lab", "square-lattice", "--t", "0.05", "--box", "6", "--trials", "40")
    assert invoke(out_dir, *args).exit_code == 0
    first = (out_dir / "lab_square-lattice.json").read_bytes()
    assert invoke(out_dir, *args, workers=2).exit_code == 0
    assert (out_dir / "lab_square-lattice.json").read_bytes() == first


@pytest.mark.slow
def test_lab_figure2_non_monotone(out_dir):
    result = invoke(out_dir, "lab", "figure2", "--t", "0.001", "--t", "1000", "--seeds", "5")
    assert result.exit_code == 0, result.output
    report = read_json(out_dir / "lab_figure2.json")
    early, late = report["details"]["rows"]
    assert (early["t"], early["crossings"]) == (0.001, 0)
    assert late["t"] == 1000.0
    assert late["frequency"] > 0.5
    assert report["verdict"] == "consistent"


# render

def test_render_reproducible(out_dir):
    args = ("render", "--process", "triangular", "--window", "5", "--t", "0.1", "--points")
    assert invoke(out_dir, *args).exit_code == 0
    first = (out_dir / "render.svg").read_bytes()
    assert invoke(out_dir, *args).exit_code == 0
    assert (out_dir / "render.svg").read_bytes() == first
    assert (out_dir / "render_points.csv").exists()
    assert read_json(out_dir / "render.json")["result"]["balls"] > 0


def test_render_unknown_process(out_dir):
    assert invoke(out_dir, "render", "--process", "hexagonal").exit_code == ExitCode.INVALID_INPUT


# verify

def test_verify_single_check(out_dir):
    result = invoke(out_dir, "verify", "--only", "threshold-constant-true")
    assert result.exit_code == 0, result.output
    report = read_json(out_dir / "verify.json")
    assert (report["passed"], report["failed"]) == (1, 0)


def test_verify_unknown_check(out_dir):
    assert invoke(out_dir, "verify", "--only", "no-such-check").exit_code == ExitCode.INVALID_INPUT


# critical

def test_critical_radius_at_time_zero(out_dir):
    result = invoke(out_dir, "critical", "--mode", "radius", "--t", "0", "--box", "10", "--trials", "2", "--steps", "6")
    assert result.exit_code == 0, result.output
    report = read_json(out_dir / "critical.json")
    assert report["verdict"] == "verified"
    assert report["result"]["bracket"][1] == 0.5
    header = (out_dir / "critical_sweep.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "param,trials,successes,phat,lo,hi"


def test_critical_unknown_mode(out_dir):
    assert invoke(out_dir, "critical", "--mode", "volume").exit_code == ExitCode.INVALID_INPUT


def test_critical_report_independent_of_workers(out_dir):
    args = ("critical", "--mode", "radius", "--t", "0.001", "--box", "6", "--trials", "8", "--steps", "4")
    assert invoke(out_dir, *args).exit_code == 0
    first = (out_dir / "critical.json").read_bytes()
    sweep = (out_dir / "critical_sweep.csv").read_bytes()
    assert invoke(out_dir, *args, workers=2).exit_code == 0
    assert (out_dir / "critical.json").read_bytes() == first
    assert (out_dir / "critical_sweep.csv").read_bytes() == sweep


def test_critical_boxes_must_increase(out_dir):
    result = invoke(out_dir, "critical", "--mode", "lambda", "--boxes", "8", "--boxes", "6")
    assert result.exit_code == ExitCode.INVALID_INPUT
