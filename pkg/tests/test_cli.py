"""Tests for the command-line entry point and its exit codes"""

import json

import pytest
from typer.testing import CliRunner

from cli import app
from stability.solver import StabilityError

pytestmark = pytest.mark.integration

runner = CliRunner()


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / "results"


def test_solve_succeeds(out_dir):
    """Test exit code 0 and the printed artifact list"""
    result = runner.invoke(
        app,
        ["solve", "--elements", "16", "--re", "2000", "--alpha", "1", "--out-dir", str(out_dir)],
    )

    assert result.exit_code == 0, result.output
    assert "spectrum.csv" in result.output
    assert (out_dir / "run.json").exists()


def test_solve_from_config_document(tmp_path, out_dir):
    """Test that --config supplies the settings"""
    document = tmp_path / "solve.json"
    document.write_text(
        json.dumps({"elements": 8, "re": 1000, "alpha": 1.0, "out_dir": str(out_dir)})
    )
    result = runner.invoke(app, ["solve", "--config", str(document)])

    assert result.exit_code == 0, result.output
    assert (out_dir / "spectrum.csv").exists()


@pytest.mark.parametrize(
    "args",
    [
        ["solve", "--re", "2000", "--alpha", "1"],
        ["solve", "--elements", "8", "--re", "2000"],
        ["sweep", "--elements", "8", "--re-list", "1000,abc", "--alpha", "1"],
        ["neutral", "--elements", "8", "--re", "1000", "--alpha-lo", "1.5", "--alpha-hi", "0.5"],
        ["solve", "--elements", "8", "--re", "1", "--alpha", "1", "--profile", "tabulated"],
    ],
    ids=["no_elements", "no_alpha", "bad_list", "reversed_bracket", "table_without_file"],
)
def test_usage_errors_exit_2(args, out_dir):
    """Test exit code 2 for bad or contradictory input"""
    result = runner.invoke(app, args + ["--out-dir", str(out_dir)])

    assert result.exit_code == 2
    assert "Usage error" in result.output


def test_numerical_failure_exits_1(monkeypatch, out_dir):
    """Test exit code 1 when the solver fails"""

    def failing(system, profile, options=None):
        raise StabilityError(system.params.re, system.params.alpha, 8, "no convergence")

    monkeypatch.setattr("orchestrator.runner.solve_system", failing)
    result = runner.invoke(
        app,
        ["solve", "--elements", "8", "--re", "500", "--alpha", "1", "--out-dir", str(out_dir)],
    )

    assert result.exit_code == 1
    assert "no convergence" in result.output


def test_non_numeric_profile_file_exits_2(tmp_path, out_dir):
    """Test that a tabulated profile with a text sample is a usage error"""
    table = tmp_path / "profile.csv"
    table.write_text("y,U\n0,0\n1,abc\n2,0\n")
    result = runner.invoke(
        app,
        [
            "solve", "--profile-file", str(table), "--a", "2", "--elements", "8",
            "--re", "500", "--alpha", "1", "--out-dir", str(out_dir),
        ],
    )

    assert result.exit_code == 2
    assert "non-numeric" in result.output
