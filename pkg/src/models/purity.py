"""Purity containers for the Monte Carlo, full transfer-matrix and reduced descriptions."""

from enum import Enum
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .circuit import Bipartition, Protocol


Number = Union[float, Fraction]


class Representation(str, Enum):
    """Representations of the averaged 2-site gate."""
    KUO = "kuo"                                 # purity basis, any d
    SYMMETRIC_XY_D2 = "symmetric_xy_d2"         # XY-chain form, d = 2 only
    NON_SYMMETRIC_D2 = "non_symmetric_d2"       # coefficient basis, d = 2 only


class GateMatrix4(BaseModel):
    """A 4x4 matrix in the local basis {00, 10, 01, 11} (site j bit first)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    representation: Representation
    d: int = Field(..., ge=2)
    entries: tuple[tuple[Fraction, ...], ...] = Field(..., description="Row-major exact entries")

    @model_validator(mode="after")
    def _check_shape(self) -> "GateMatrix4":
        if len(self.entries) != 4 or any(len(row) != 4 for row in self.entries):
            raise ValueError("gate matrix must be 4x4")
        return self

    def as_float(self) -> np.ndarray:
        """Float copy of the entries."""
        return np.array([[float(x) for x in row] for row in self.entries])

    def as_exact(self) -> np.ndarray:
        """Object array of Fractions."""
        out = np.empty((4, 4), dtype=object)
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                out[i, j] = Fraction(x)
        return out


class PurityVectorFull(BaseModel):
    """Values over all 2^n bipartition masks at one time."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    d: int
    t: int = 0
    representation: Representation = Representation.KUO
    exact: bool = False
    values: np.ndarray = Field(..., description="Length 2^n; float64 or object (Fraction)")

    @model_validator(mode="after")
    def _check_length(self) -> "PurityVectorFull":
        if self.values.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} values, got {self.values.shape}")
        return self

    def __getitem__(self, mask: int) -> Number:
        return self.values[mask]


class KernelCensus(BaseModel):
    """Jordan structure of the zero eigenvalue of M restricted to the even sector."""

    n: int
    d: int
    dimension: int = Field(..., description="2^(n-1)")
    blocks: dict[int, int] = Field(default_factory=dict, description="block size -> count")
    algebraic: int
    geometric: int
    rank_profile: list[int] = Field(default_factory=list, description="rank(M_even^p), p = 0, 1, ...")

    @model_validator(mode="after")
    def _check_totals(self) -> "KernelCensus":
        if sum(size * count for size, count in self.blocks.items()) != self.algebraic:
            raise ValueError("block sizes do not add up to the algebraic multiplicity")
        if sum(self.blocks.values()) != self.geometric:
            raise ValueError("block counts do not add up to the geometric multiplicity")
        return self

    @property
    def nonzero_count(self) -> int:
        """Dimension of the part with nonzero eigenvalues."""
        return self.dimension - self.algebraic


class PuritySeries(BaseModel):
    """Monte Carlo mean purity and standard error per time and bipartition.

    Columns are keyed by the bipartition mask; an integer cut k stands for the
    contiguous mask with sites 1..k.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    d: int
    n: int
    masks: list[int] = Field(..., description="Subsystem-A mask per column, LSB = site 1")
    times: list[int]
    realizations: int = Field(..., ge=1)
    mean: np.ndarray = Field(..., description="shape (len(times), len(masks))")
    stderr: np.ndarray = Field(..., description="shape (len(times), len(masks))")

    def column(self, cut: Union[int, Bipartition]) -> int:
        mask = cut.mask if isinstance(cut, Bipartition) else (1 << int(cut)) - 1
        return self.masks.index(mask)

    def value(self, t: int, cut: Union[int, Bipartition]) -> float:
        return float(self.mean[self.times.index(t), self.column(cut)])

    def error(self, t: int, cut: Union[int, Bipartition]) -> float:
        return float(self.stderr[self.times.index(t), self.column(cut)])

    def to_frame(self) -> pd.DataFrame:
        """Long-format table with columns t, mask, k, mean, stderr, realizations.

        k is the contiguous cut size, missing for non-contiguous masks.
        """
        rows = []
        for i, t in enumerate(self.times):
            for c, mask in enumerate(self.masks):
                contiguous = (mask & (mask + 1)) == 0
                rows.append({
                    "t": t,
                    "mask": mask,
                    "k": mask.bit_length() if contiguous else None,
                    "mean": float(self.mean[i, c]),
                    "stderr": float(self.stderr[i, c]),
                    "realizations": self.realizations,
                })
        frame = pd.DataFrame(rows)
        frame["k"] = frame["k"].astype("Int64")
        return frame


class ReducedPurity(BaseModel):
    """Contiguous-cut purities I_k at one time (k = 2..n-1, or even k for brick-wall)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    d: int
    t: int = 0
    protocol: Protocol = Protocol.STAIRCASE
    exact: bool = False
    cuts: tuple[int, ...]
    values: tuple[Any, ...]

    @model_validator(mode="after")
    def _check_lengths(self) -> "ReducedPurity":
        if len(self.cuts) != len(self.values):
            raise ValueError("one value per cut is required")
        return self

    def __getitem__(self, k: int) -> Number:
        return self.values[self.cuts.index(k)]

    def as_array(self) -> np.ndarray:
        """Float copy of the values."""
        return np.array([float(v) for v in self.values])

    def with_values(self, values, t: Optional[int] = None) -> "ReducedPurity":
        """Copy carrying new values (and time)."""
        return self.model_copy(update={
            "values": tuple(values),
            "t": self.t + 1 if t is None else t,
        })
