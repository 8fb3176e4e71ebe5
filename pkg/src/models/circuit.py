"""Circuit and bipartition models."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Protocol(str, Enum):
    """Order in which nearest-neighbour gates are applied within one time step."""
    STAIRCASE = "staircase"   # (1,2),(2,3),...,(n-1,n)
    BRICKWALL = "brickwall"   # odd pairs, then even pairs


class GatePolicy(str, Enum):
    """How Haar gates are drawn in the Monte Carlo oracle."""
    IID = "iid"         # fresh gate per slot and step
    SINGLE = "single"   # one gate reused everywhere


class NumericMode(str, Enum):
    """Arithmetic used by the deterministic propagators."""
    FLOAT = "float"
    RATIONAL = "rational"


class CircuitConfig(BaseModel):
    """A random circuit: local dimension, size, gate ordering and randomness."""
    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=2, description="Local Hilbert-space dimension")
    n: int = Field(..., ge=2, description="Number of sites")
    protocol: Protocol = Field(Protocol.STAIRCASE, description="Gate ordering")
    gate_policy: GatePolicy = Field(GatePolicy.IID, description="Gate sampling policy")
    t_max: int = Field(0, ge=0, description="Number of time steps")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="64-bit unsigned seed")

    @property
    def hilbert_dimension(self) -> int:
        """Number of amplitudes d^n."""
        return self.d ** self.n


class Bipartition(BaseModel):
    """Bipartition of n sites; bit j-1 of mask is set iff site j belongs to A."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of sites")
    mask: int = Field(..., ge=0, description="Subsystem-A bit mask, LSB = site 1")

    @model_validator(mode="after")
    def _check_mask(self) -> "Bipartition":
        if self.mask >= 1 << self.n:
            raise ValueError(f"mask {self.mask} does not fit in {self.n} bits")
        return self

    @property
    def weight(self) -> int:
        """Number of sites in A."""
        return bin(self.mask).count("1")

    @property
    def sites(self) -> list[int]:
        """1-based site labels in A."""
        return [j + 1 for j in range(self.n) if self.mask >> j & 1]

    def complement(self) -> "Bipartition":
        """The bipartition with A and B exchanged."""
        return Bipartition(n=self.n, mask=self.mask ^ ((1 << self.n) - 1))

    def is_contiguous_cut(self) -> bool:
        """Whether A is the first k sites."""
        return self.mask == (1 << self.weight) - 1


class TwoQuditGate(BaseModel):
    """A d^2 x d^2 unitary acting on sites (j, j+1); index = a*d + b with a on site j."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray
    j: Optional[int] = Field(None, ge=1, description="Left site of the target pair")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def unitarity_error(self) -> float:
        """||U^dagger U - 1||_F."""
        u = self.matrix
        return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


class StateVector(BaseModel):
    """Pure state of n qudits; axis j-1 of the (d,)*n tensor is site j."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    d: int = Field(..., ge=2)
    n: int = Field(..., ge=1)
    amplitudes: np.ndarray

    @model_validator(mode="after")
    def _check_length(self) -> "StateVector":
        if self.amplitudes.shape != (self.d ** self.n,):
            raise ValueError(f"expected {self.d ** self.n} amplitudes, got {self.amplitudes.shape}")
        return self

    @classmethod
    def product_zero(cls, d: int, n: int) -> "StateVector":
        """The fiducial |0...0>."""
        amplitudes = np.zeros(d ** n, dtype=complex)
        amplitudes[0] = 1.0
        return cls(d=d, n=n, amplitudes=amplitudes)

    @classmethod
    def basis(cls, d: int, n: int, digits: list[int]) -> "StateVector":
        """Computational basis state |digits[0] ... digits[n-1]>."""
        tensor = np.zeros((d,) * n, dtype=complex)
        tensor[tuple(digits)] = 1.0
        return cls(d=d, n=n, amplitudes=tensor.reshape(-1))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))
