"""Tests for the command-line interface."""

import json

import pytest
from click.testing import CliRunner

from main import cli
from src.report_generator import load_table


@pytest.fixture
def runner():
    return CliRunner()


class TestListExperiments:

    def test_lists_registry(self, runner):
        result = runner.invoke(cli, ["list-experiments"])
        assert result.exit_code == 0
        assert "sweep" in result.output
        assert "fig1" in result.output


class TestValidateCommand:

    def test_refusal_exit_code(self, runner):
        result = runner.invoke(cli, ["validate", "fig1", "--n", "40"])
        assert result.exit_code == 1
        assert "refusal" in result.output

    def test_ok(self, runner):
        result = runner.invoke(cli, ["validate", "fig1", "--realizations", "0"])
        assert result.exit_code == 0
        assert "ok" in result.output

    def test_missing_experiment(self, runner):
        result = runner.invoke(cli, ["validate"])
        assert result.exit_code == 2

    def test_bad_list(self, runner):
        result = runner.invoke(cli, ["validate", "sweep", "--cuts", "a,b"])
        assert result.exit_code == 2

    def test_config_file(self, runner, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"experiment": "sweep", "n": 6, "d": 2, "realizations": 0}))
        result = runner.invoke(cli, ["validate", "--config", str(path)])
        assert result.exit_code == 0


class TestRunCommand:

    def test_run_sweep(self, runner, tmp_path):
        result = runner.invoke(cli, [
            "run", "sweep", "--n", "6", "--d", "2", "--t-max", "2",
            "--realizations", "0", "--out", str(tmp_path),
        ])
        assert result.exit_code == 0, result.output
        metadata, frame = load_table(tmp_path / "sweep_purity.csv")
        assert metadata["n"] == "6"
        assert len(frame) == 3 * 5
        assert (tmp_path / "sweep_summary.md").exists()

    def test_run_json(self, runner, tmp_path):
        result = runner.invoke(cli, [
            "run", "purity-d234", "--n", "8", "--t-max", "3",
            "--format", "json", "--out", str(tmp_path),
        ])
        assert result.exit_code == 0, result.output
        metadata, frame = load_table(tmp_path / "purity-d234_purity.json")
        assert metadata["experiment"] == "purity-d234"
        assert len(frame) == 12

    def test_run_refused(self, runner, tmp_path):
        result = runner.invoke(cli, ["run", "fig1", "--n", "40", "--out", str(tmp_path)])
        assert result.exit_code == 1
        assert "错误" in result.output
        assert not list(tmp_path.iterdir())
