"""Command line surface: artifacts, exit codes, and failure modes."""

import json
import shutil

import pytest

from riskbench.datafiles import data_path
from riskbench.fileio import read_text

from conftest import run_cli

MODEL = data_path("corner.riskml")
SCENARIO = data_path("corner_cell.scenario")


def write_config(path, **overrides):
    entries = {
        "model": str(MODEL),
        "scenario": str(SCENARIO),
        "situation": "low_light_rush",
        "event": "insufficient_distance",
        "algorithm": "random",
        "budget": 15,
        "seed": 4,
        "sim_seed": 11,
        "threshold": 0.5,
        "out": "camp",
    }
    entries.update(overrides)
    lines = [f"{key} = {value}" for key, value in entries.items()
             if value is not None]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture()
def campaign(tmp_path):
    """One small finished campaign to explain and replay against."""
    write_config(tmp_path / "c.config")
    result = run_cli("run", "--config", "c.config", cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    return tmp_path


# -- validate -----------------------------------------------------------------


def test_validate_accepts_the_shipped_models(tmp_path):
    for name in ("default.riskml", "corner.riskml"):
        result = run_cli("validate", "--model", data_path(name))
        assert result.returncode == 0
        assert "ok" in result.stdout


def test_validate_reports_diagnostics(tmp_path):
    bad = tmp_path / "bad.riskml"
    bad.write_text('actor a\ngoal g owner ghost "g"\n')
    result = run_cli("validate", "--model", bad)
    assert result.returncode == 1
    assert "ghost" in result.stderr


def test_validate_missing_file_is_an_io_error():
    result = run_cli("validate", "--model", "/nonexistent/m.riskml")
    assert result.returncode == 2


# -- cases --------------------------------------------------------------------


def test_cases_writes_the_case_file(tmp_path):
    result = run_cli("cases", "--model", MODEL, cwd=tmp_path)
    assert result.returncode == 0
    doc = json.loads((tmp_path / "cases.json").read_text())
    assert len(doc["cases"]) == 1
    assert doc["cases"][0]["goal"] == "safe_collaboration"


def test_cases_warns_when_nothing_to_argue(tmp_path):
    model = tmp_path / "calm.riskml"
    model.write_text("""
actor a
goal g owner a "g"
feature f continuous [0, 1] ratio binds environment.contrast
event fine positive when min_margin > 0 impacts +g
situation s "x" scenario "f.scenario" exposes fine features f
""")
    result = run_cli("cases", "--model", model, "--out", "out.json",
                     cwd=tmp_path)
    assert result.returncode == 0
    assert json.loads((tmp_path / "out.json").read_text())["cases"] == []
    assert "no" in result.stderr.lower()


# -- run ------------------------------------------------------------------------


def test_run_produces_the_campaign_artifacts(campaign):
    out = campaign / "camp"
    assert (out / "archive.csv").exists()
    assert (out / "summary.txt").exists()
    header = json.loads((out / "campaign.json").read_text())
    assert header["evaluations"] == 15
    assert header["config"]["algorithm"] == "random"
    assert header["threshold"] == 0.5
    summary = (out / "summary.txt").read_text().strip().split("\n")
    assert len(summary) == 3
    assert summary[0] == ("situation low_light_rush, "
                          "event insufficient_distance, algorithm random")
    assert summary[1].startswith("evaluations 15, violations ")
    assert summary[2].startswith("best robustness ")
    rows = (out / "archive.csv").read_text().strip().split("\n")
    assert len(rows) == 16


def test_run_flag_overrides_beat_the_config(tmp_path):
    write_config(tmp_path / "c.config")
    result = run_cli("run", "--config", "c.config", "--budget", 7,
                     "--out", "other", cwd=tmp_path)
    assert result.returncode == 0
    rows = (tmp_path / "other" / "archive.csv").read_text().strip().split("\n")
    assert len(rows) == 8


def test_run_resolves_inputs_relative_to_the_config(tmp_path):
    shutil.copy(MODEL, tmp_path / "m.riskml")
    shutil.copy(SCENARIO, tmp_path / "corner_cell.scenario")
    nested = tmp_path / "cfg"
    nested.mkdir()
    write_config(nested / "c.config", model="../m.riskml", scenario=None,
                 budget=5)
    result = run_cli("run", "--config", nested / "c.config", cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    assert (tmp_path / "camp" / "archive.csv").exists()


def test_run_zero_budget_means_no_evaluations(tmp_path):
    write_config(tmp_path / "c.config", budget=0)
    result = run_cli("run", "--config", "c.config", cwd=tmp_path)
    assert result.returncode == 3
    assert "no evaluations" in result.stderr


def test_run_unknown_config_key(tmp_path):
    write_config(tmp_path / "c.config", warp=9)
    result = run_cli("run", "--config", "c.config", cwd=tmp_path)
    assert result.returncode == 2
    assert "warp" in result.stderr


def test_run_unknown_situation(tmp_path):
    write_config(tmp_path / "c.config", situation="elsewhere")
    result = run_cli("run", "--config", "c.config", cwd=tmp_path)
    assert result.returncode == 1


def test_run_missing_config_file(tmp_path):
    result = run_cli("run", "--config", "missing.config", cwd=tmp_path)
    assert result.returncode == 2


# -- explain ----------------------------------------------------------------------


def test_explain_produces_the_report_bundle(campaign):
    out = campaign / "camp"
    result = run_cli("explain", out / "archive.csv", "--model", MODEL,
                     cwd=campaign)
    assert result.returncode == 0, result.stderr
    for name in ("tree.json", "rules.txt", "rules.json", "augmentation.json",
                 "annotated.riskml", "report.json"):
        assert (out / name).exists(), name
    report = json.loads((out / "report.json").read_text())
    assert report["evaluations"] == 15
    assert report["threshold"] == 0.5
    assert report["event"] == "insufficient_distance"
    assert report["event_likelihood"]["samples"] == 15
    # The annotated model must still parse and carry the estimate.
    check = run_cli("validate", "--model", out / "annotated.riskml")
    assert check.returncode == 0
    assert "likelihood" in (out / "annotated.riskml").read_text()


def test_explain_zero_violation_archive(tmp_path):
    # This seeded 15-point campaign finds nothing, so the rule list is
    # empty and the annotation records a zero fraction.
    write_config(tmp_path / "c.config", seed=0)
    assert run_cli("run", "--config", "c.config", cwd=tmp_path).returncode == 0
    out = tmp_path / "camp"
    assert "violations 0" in (out / "summary.txt").read_text()
    result = run_cli("explain", out / "archive.csv", "--model", MODEL,
                     cwd=tmp_path)
    assert result.returncode == 0
    assert "no rules met" in (out / "rules.txt").read_text()
    assert "likelihood 0.0 of 15" in (out / "annotated.riskml").read_text()


def test_explain_threshold_flag_beats_the_header(campaign):
    out = campaign / "camp"
    result = run_cli("explain", out / "archive.csv", "--model", MODEL,
                     "--threshold", "0.05", cwd=campaign)
    assert result.returncode == 0
    report = json.loads((out / "report.json").read_text())
    assert report["threshold"] == 0.05


def test_explain_detects_model_drift(campaign, tmp_path):
    out = campaign / "camp"
    drifted = tmp_path / "drifted.riskml"
    drifted.write_text(read_text(str(MODEL)) + "\n# tuned later\n")
    result = run_cli("explain", out / "archive.csv", "--model", drifted,
                     cwd=campaign)
    assert result.returncode == 1
    assert "model digest mismatch" in result.stderr


def test_explain_needs_the_campaign_header(campaign, tmp_path):
    orphan = tmp_path / "archive.csv"
    shutil.copy(campaign / "camp" / "archive.csv", orphan)
    result = run_cli("explain", orphan, "--model", MODEL, cwd=tmp_path)
    assert result.returncode == 2


# -- replay -----------------------------------------------------------------------


def test_replay_reproduces_an_archive_row(campaign):
    out = campaign / "camp"
    header, first = (out / "archive.csv").read_text().strip().split("\n")[:2]
    columns = header.split(",")
    cells = first.split(",")
    row = dict(zip(columns, cells))
    assignment = {"illuminance": float(row["illuminance"]),
                  "belt_speed": float(row["belt_speed"]),
                  "operator_speed": float(row["operator_speed"])}
    (campaign / "point.json").write_text(json.dumps(assignment))
    result = run_cli("replay", "point.json", "--model", MODEL,
                     "--scenario", SCENARIO, "--out", "replayed",
                     cwd=campaign)
    assert result.returncode == 0, result.stderr
    verdict = json.loads((campaign / "replayed" / "verdict.json").read_text())
    situation = verdict["situations"]["low_light_rush"]
    assert situation["label"] == row["label"]
    event = situation["events"]["insufficient_distance"]
    assert repr(event["robustness"]) == row["robustness"]
    assert (campaign / "replayed" / "trace.csv").exists()
    assert f"low_light_rush: {row['label']}" in result.stdout


def test_replay_rejects_out_of_domain_points(campaign):
    (campaign / "far.json").write_text(json.dumps({"illuminance": 1e6}))
    result = run_cli("replay", "far.json", "--model", MODEL,
                     "--scenario", SCENARIO, cwd=campaign)
    assert result.returncode == 1
    assert "outside" in result.stderr


def test_replay_requires_a_json_object(campaign):
    (campaign / "list.json").write_text("[1, 2]")
    result = run_cli("replay", "list.json", "--model", MODEL,
                     "--scenario", SCENARIO, cwd=campaign)
    assert result.returncode == 2
    assert "JSON object" in result.stderr
