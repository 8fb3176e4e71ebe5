"""Experiment request, validation and result models."""

import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from .circuit import CircuitConfig, GatePolicy, NumericMode, Protocol


class ExperimentId(str, Enum):
    """Reproducible experiments."""
    FIG1 = "fig1"
    FIG3 = "fig3"
    FIG4A = "fig4a"
    FIG4B = "fig4b"
    FIG4C = "fig4c"
    LAMBDA_EFF = "lambda-eff"
    PURITY_D234 = "purity-d234"
    JORDAN_WINDOW = "jordan-window"
    SWEEP = "sweep"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class ExperimentSpec(BaseModel):
    """Everything that determines one experiment run."""
    model_config = ConfigDict(use_enum_values=False)

    experiment: ExperimentId = Field(..., description="Experiment identifier")
    d: int = Field(3, ge=2, description="Local dimension")
    n: int = Field(20, ge=2, description="Number of sites")
    protocol: Protocol = Field(Protocol.STAIRCASE)
    gate_policy: GatePolicy = Field(GatePolicy.IID)
    t_max: int = Field(40, ge=0)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    cuts: list[int] = Field(default_factory=list, description="Contiguous cuts k; empty = experiment default")
    sizes: list[int] = Field(default_factory=list, description="System sizes for multi-n experiments")
    realizations: int = Field(1, ge=0, description="Monte Carlo realizations (0 = skip MC)")
    epsilon: list[float] = Field(default_factory=list, description="Perturbation strengths")
    trials: int = Field(1, ge=1, description="Pseudospectrum trials per (n, eps)")
    mode: NumericMode = Field(NumericMode.FLOAT)
    out: Optional[Path] = Field(None, description="Output directory")
    format: OutputFormat = Field(OutputFormat.CSV)

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentSpec":
        """Load a JSON mirror of the spec."""
        with open(path, "r", encoding="utf-8") as f:
            return cls.model_validate(json.load(f))

    def merge_overrides(self, **overrides: Any) -> "ExperimentSpec":
        """Return a copy with every non-None override applied (and re-validated)."""
        data = self.model_dump()
        for key, value in overrides.items():
            if value is None:
                continue
            if isinstance(value, (list, tuple)) and len(value) == 0:
                continue
            data[key] = value
        return ExperimentSpec.model_validate(data)

    def circuit(self, n: Optional[int] = None, d: Optional[int] = None) -> CircuitConfig:
        """Circuit configuration implied by the spec."""
        return CircuitConfig(
            d=d or self.d,
            n=n or self.n,
            protocol=self.protocol,
            gate_policy=self.gate_policy,
            t_max=self.t_max,
            seed=self.seed,
        )

    def canonical_json(self) -> str:
        """Deterministic JSON of the fields that influence results."""
        data = self.model_dump(mode="json", exclude={"out"})
        return json.dumps(data, sort_keys=True, separators=(",", ":"))

    @property
    def spec_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()[:16]


class VerdictLevel(str, Enum):
    OK = "ok"
    WARNING = "warning"
    REFUSAL = "refusal"
    UNSUPPORTED = "unsupported"


class Verdict(BaseModel):
    level: VerdictLevel
    message: str


class ValidationReport(BaseModel):
    """Dry-run outcome of a spec."""
    experiment: ExperimentId
    verdicts: list[Verdict] = Field(default_factory=list)
    memory_bytes: int = 0
    runtime_class: str = "instant"

    @property
    def ok(self) -> bool:
        return all(v.level in (VerdictLevel.OK, VerdictLevel.WARNING) for v in self.verdicts)

    def add(self, level: VerdictLevel, message: str):
        self.verdicts.append(Verdict(level=level, message=message))


class ExperimentResult(BaseModel):
    """Tables produced by one experiment plus their shared metadata."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    experiment: ExperimentId
    tables: dict[str, pd.DataFrame] = Field(default_factory=dict)
    metadata: dict[str, Any] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)
