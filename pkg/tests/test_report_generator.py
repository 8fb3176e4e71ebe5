"""Unit tests for table writing and loading."""

import os

import numpy as np
import pandas as pd
import pytest

from src.config import OutputConfig
from src.models.experiment import ExperimentId, ExperimentResult
from src.report_generator import ReportGenerator, load_table, split_complex


@pytest.fixture
def result():
    frame = pd.DataFrame({
        "t": [0, 1, 2],
        "k": [2, 2, 2],
        "purity": [1.0, 0.72, 1 / 3],
        "purity_exact": ["1/1", "18/25", "1/3"],
        "mc_mean": [1.0, np.nan, 0.5],
        "kernel_matters": [True, False, False],
    })
    return ExperimentResult(
        experiment=ExperimentId.SWEEP,
        tables={"purity": frame},
        metadata={"experiment": "sweep", "d": 2, "n": 6, "seed": 0, "spec_hash": "abc123"},
        notes=["realizations = 0: Monte Carlo column skipped"],
    )


class TestSplitComplex:
    """Tests for complex column splitting."""

    def test_complex_column_split_in_place(self):
        frame = pd.DataFrame({"j": [1, 2], "lambda": [1 + 2j, 3 - 1j], "x": [0.5, 0.25]})
        split = split_complex(frame)
        assert list(split.columns) == ["j", "lambda_re", "lambda_im", "x"]
        assert list(split["lambda_im"]) == [2.0, -1.0]

    def test_real_frame_unchanged(self):
        frame = pd.DataFrame({"a": [1.0, 2.0]})
        pd.testing.assert_frame_equal(split_complex(frame), frame)


class TestSaveResult:
    """Tests for ReportGenerator.save_result."""

    def test_csv_round_trip(self, result, tmp_path):
        paths = ReportGenerator().save_result(result, tmp_path, "csv")
        assert paths["purity"].name == "sweep_purity.csv"

        metadata, frame = load_table(paths["purity"])
        pd.testing.assert_frame_equal(frame, result.tables["purity"])
        assert metadata["d"] == "2"
        assert metadata["table"] == "purity"
        assert metadata["spec_hash"] == "abc123"

    def test_csv_header_lines(self, result, tmp_path):
        paths = ReportGenerator().save_result(result, tmp_path, "csv")
        lines = paths["purity"].read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# experiment: sweep"
        assert lines[5] == "# table: purity"
        assert lines[6] == "t,k,purity,purity_exact,mc_mean,kernel_matters"

    def test_json_round_trip(self, result, tmp_path):
        paths = ReportGenerator().save_result(result, tmp_path, "json")
        assert paths["purity"].suffix == ".json"

        metadata, frame = load_table(paths["purity"])
        pd.testing.assert_frame_equal(frame, result.tables["purity"])
        assert metadata["d"] == 2

    def test_summary_written(self, result, tmp_path):
        paths = ReportGenerator().save_result(result, tmp_path)
        summary = paths["summary"].read_text(encoding="utf-8")
        assert "sweep" in summary
        assert "abc123" in summary
        assert "Monte Carlo column skipped" in summary
        assert "sweep_purity.csv" in summary

    def test_summary_disabled(self, result, tmp_path):
        generator = ReportGenerator(OutputConfig(generate_markdown=False))
        paths = generator.save_result(result, tmp_path)
        assert "summary" not in paths
        assert not (tmp_path / "sweep_summary.md").exists()

    def test_creates_directory_without_leftovers(self, result, tmp_path):
        target = tmp_path / "nested" / "out"
        ReportGenerator().save_result(result, target)
        names = sorted(p.name for p in target.iterdir())
        assert names == ["sweep_purity.csv", "sweep_summary.md"]

    def test_rewrite_is_identical(self, result, tmp_path):
        generator = ReportGenerator()
        first = generator.save_result(result, tmp_path)["purity"].read_bytes()
        second = generator.save_result(result, tmp_path)["purity"].read_bytes()
        assert first == second

    def test_complex_table_written_split(self, tmp_path):
        result = ExperimentResult(
            experiment=ExperimentId.FIG4C,
            tables={"finite_spectrum": pd.DataFrame({"j": [1], "lambda": [0.5 + 0j]})},
        )
        paths = ReportGenerator().save_result(result, tmp_path)
        _, frame = load_table(paths["finite_spectrum"])
        assert list(frame.columns) == ["j", "lambda_re", "lambda_im"]


class TestAtomicWrites:
    """A failed rename must leave the earlier result set untouched."""

    @staticmethod
    def failing_second_rename(monkeypatch):
        original = os.replace
        calls = {"staged": 0}

        def replace(src, dst):
            if str(src).endswith(".tmp"):
                calls["staged"] += 1
                if calls["staged"] == 2:
                    raise OSError("disk full")
            return original(src, dst)

        monkeypatch.setattr(os, "replace", replace)

    def test_rollback_restores_previous_files(self, result, tmp_path, monkeypatch):
        result.tables["extra"] = pd.DataFrame({"x": [1.0]})
        generator = ReportGenerator()
        first = generator.save_result(result, tmp_path)
        before = {path.name: path.read_bytes() for path in first.values()}

        result.tables["purity"] = result.tables["purity"].assign(purity=0.5)
        result.tables["extra"] = pd.DataFrame({"x": [2.0]})
        self.failing_second_rename(monkeypatch)
        with pytest.raises(OSError):
            generator.save_result(result, tmp_path)

        after = {path.name: path.read_bytes() for path in tmp_path.iterdir()}
        assert after == before

    def test_rollback_on_fresh_directory(self, result, tmp_path, monkeypatch):
        result.tables["extra"] = pd.DataFrame({"x": [1.0]})
        self.failing_second_rename(monkeypatch)
        with pytest.raises(OSError):
            ReportGenerator().save_result(result, tmp_path)
        assert list(tmp_path.iterdir()) == []
