"""Unit tests for data models."""

import json
import os

import pytest
from pydantic import ValidationError

from src.config import AppConfig, OutputConfig
from src.models.circuit import Bipartition, Protocol
from src.models.experiment import ExperimentId, ExperimentSpec, ValidationReport, VerdictLevel
from src.models.purity import KernelCensus


class TestExperimentSpec:
    """Tests for ExperimentSpec."""

    def test_defaults(self):
        spec = ExperimentSpec(experiment="fig1")
        assert spec.experiment == ExperimentId.FIG1
        assert (spec.d, spec.n, spec.t_max, spec.seed) == (3, 20, 40, 0)
        assert spec.protocol == Protocol.STAIRCASE

    def test_merge_skips_none_and_empty(self):
        spec = ExperimentSpec(experiment="sweep", n=8, cuts=[2, 3])
        merged = spec.merge_overrides(n=None, cuts=[], d=4)
        assert merged.n == 8
        assert merged.cuts == [2, 3]
        assert merged.d == 4

    def test_merge_revalidates(self):
        with pytest.raises(ValidationError):
            ExperimentSpec(experiment="sweep").merge_overrides(d=1)

    def test_hash_ignores_output_directory(self):
        a = ExperimentSpec(experiment="fig1", out="a")
        b = ExperimentSpec(experiment="fig1", out="b")
        assert a.spec_hash == b.spec_hash
        assert a.spec_hash != ExperimentSpec(experiment="fig1", seed=1).spec_hash

    def test_from_file(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"experiment": "fig4c", "n": 30, "epsilon": [1e-9]}))
        spec = ExperimentSpec.from_file(path)
        assert spec.experiment == ExperimentId.FIG4C
        assert spec.epsilon == [1e-9]

    def test_unknown_experiment(self):
        with pytest.raises(ValidationError):
            ExperimentSpec(experiment="fig2")


class TestValidationReport:

    def test_warning_is_ok(self):
        report = ValidationReport(experiment="sweep")
        report.add(VerdictLevel.WARNING, "slow")
        assert report.ok
        report.add(VerdictLevel.UNSUPPORTED, "odd n")
        assert not report.ok


class TestBipartition:

    def test_mask_must_fit(self):
        with pytest.raises(ValidationError):
            Bipartition(n=3, mask=8)


class TestKernelCensus:

    def test_consistent_totals(self):
        census = KernelCensus(n=6, d=2, dimension=32, blocks={3: 4, 2: 4, 1: 8}, algebraic=28, geometric=16)
        assert census.nonzero_count == 4

    def test_inconsistent_totals(self):
        with pytest.raises(ValidationError):
            KernelCensus(n=6, d=2, dimension=32, blocks={3: 4}, algebraic=28, geometric=4)


class TestAppConfig:
    """Tests for settings loading."""

    def test_from_args_keeps_defaults(self):
        config = AppConfig.from_args(n_jobs=4)
        assert config.simulation.n_jobs == 4
        assert config.spectra.epsilon == 1e-15
        assert config.log_level == "INFO"

    def test_env_prefix(self, monkeypatch):
        monkeypatch.setenv("SIM_MAX_AMPLITUDES", "1024")
        monkeypatch.setenv("PHANTOM_DEFAULT_FORMAT", "json")
        config = AppConfig.from_env()
        assert config.simulation.max_amplitudes == 1024
        assert config.output.default_format == "json"

    def test_env_file(self, tmp_path, monkeypatch):
        monkeypatch.delenv("SPECTRA_SYMBOL_GRID", raising=False)
        env_file = tmp_path / ".env"
        env_file.write_text("SPECTRA_SYMBOL_GRID=512\n")
        try:
            config = AppConfig.from_env(str(env_file))
        finally:
            os.environ.pop("SPECTRA_SYMBOL_GRID", None)
        assert config.spectra.symbol_grid == 512

    def test_ensure_output_dir(self, tmp_path):
        config = OutputConfig(output_dir=tmp_path / "a" / "b")
        config.ensure_output_dir()
        assert config.output_dir.is_dir()
