"""Spectral models: closed-form eigen-data, symbol samples, pseudospectra and rates."""

from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field


class SpectralData(BaseModel):
    """Closed-form spectrum of T (and of the affine matrix A) for even n."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    d: int
    angles: np.ndarray = Field(..., description="phi_j = j*pi/n, j = 1..n/2-1")
    eigenvalues: np.ndarray = Field(..., description="4 alpha^2 cos^2(phi_j)")
    right: np.ndarray = Field(..., description="Unnormalized R_j as rows, k = 1..n-2")
    left: np.ndarray = Field(..., description="Unnormalized L_j as rows, k = 1..n-2")
    overlaps: np.ndarray = Field(..., description="<L_j|R_j>")
    border_lifts: np.ndarray = Field(..., description="([L~_j]_1, [L~_j]_n) per j")
    zero_algebraic: int = Field(..., description="Algebraic multiplicity of eigenvalue 0")
    zero_geometric: int = 1
    steady_right: tuple[Fraction, ...] = Field(..., description="R of A: 1, I_2(inf)..I_{n-1}(inf), 1")
    steady_left: tuple[Fraction, ...] = Field(..., description="L of A: (1/2, 0, ..., 0, 1/2)")
    chain_right: Optional[tuple[tuple[Fraction, ...], ...]] = Field(
        None, description="r_1..r_{n/2-1} with T r_1 = 0, T r_{k+1} = r_k"
    )
    chain_left: Optional[tuple[tuple[Fraction, ...], ...]] = Field(
        None, description="l_1..l_{n/2-1} biorthonormal to the right chain"
    )

    @property
    def size(self) -> int:
        """Dimension n-2 of T."""
        return self.n - 2


class SymbolCurve(BaseModel):
    """Samples of a(e^{i theta}) on a uniform grid including both endpoints."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    d: int
    grid: int
    theta: np.ndarray
    values: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "theta": self.theta,
            "a_re": self.values.real,
            "a_im": self.values.imag,
        })


class MembershipVerdict(str, Enum):
    """Position of a point relative to the operator spectrum."""
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


class PseudospectrumCloud(BaseModel):
    """Eigenvalues of T + eps*E collected over independent trials."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    d: int
    epsilon: float
    seed: int
    trials: list[int] = Field(default_factory=list, description="Trials that converged")
    eigenvalues: list[np.ndarray] = Field(default_factory=list, description="n-2 values per trial")
    perturbation_norms: list[float] = Field(default_factory=list, description="||eps*E||_2 per trial")
    failed_trials: dict[int, str] = Field(default_factory=dict, description="trial -> error")

    @property
    def points(self) -> np.ndarray:
        """All eigenvalues of all converged trials."""
        if not self.eigenvalues:
            return np.empty(0, dtype=complex)
        return np.concatenate(self.eigenvalues)

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for trial, values in zip(self.trials, self.eigenvalues):
            for z in values:
                rows.append({
                    "n": self.n,
                    "epsilon": self.epsilon,
                    "trial": trial,
                    "lambda_re": float(z.real),
                    "lambda_im": float(z.imag),
                })
        return pd.DataFrame(rows, columns=["n", "epsilon", "trial", "lambda_re", "lambda_im"])


class RateSeries(BaseModel):
    """Effective decay rate at half-integer times."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: Optional[int] = None
    d: Optional[int] = None
    cut: Optional[int] = None
    subtracted: bool = False
    times: np.ndarray
    rates: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.times, "lambda_eff": self.rates})
