"""Verification report models."""

from typing import Any, Optional
from pydantic import BaseModel, Field

from .purity import Representation


class CheckResult(BaseModel):
    """Outcome of a single identity check."""
    name: str = Field(..., description="Short identifier of the identity")
    passed: bool
    exact: bool = Field(False, description="Checked in exact arithmetic")
    max_error: float = Field(0.0, description="Largest deviation seen (0 for exact checks)")
    details: dict[str, Any] = Field(default_factory=dict)


class DecompositionReport(BaseModel):
    """Eigen / SVD / similarity checks of a 2-site gate representation."""
    representation: Representation
    d: int
    eigen: CheckResult
    svd: CheckResult
    similarity: Optional[CheckResult] = Field(None, description="Only defined for d = 2")

    @property
    def passed(self) -> bool:
        checks = [self.eigen, self.svd] + ([self.similarity] if self.similarity else [])
        return all(c.passed for c in checks)

    def raise_for_failure(self):
        """Raise VerificationError if any identity failed."""
        if not self.passed:
            from ..exceptions import VerificationError
            raise VerificationError(
                f"gate identities failed for {self.representation.value}, d={self.d}", report=self
            )


class CharacteristicReport(BaseModel):
    """Checks of det(T - x) against the closed spectrum."""
    n: int
    d: int
    chebyshev_match: bool = Field(..., description="Exact charpoly equals the Chebyshev form")
    zero_multiplicity: int = Field(..., description="Order of the root at x = 0")
    root_residuals: list[float] = Field(default_factory=list, description="Relative |q(lambda_j)|")
    determinants: list[float] = Field(default_factory=list, description="|det(T - lambda_j)| in float")
    midpoints: list[str] = Field(default_factory=list, description="Rational midpoints tested")
    midpoint_nonzero: bool = True
    tolerance: float = 1e-10

    @property
    def passed(self) -> bool:
        return (
            self.chebyshev_match
            and self.zero_multiplicity == self.n // 2 - 1
            and all(r <= self.tolerance for r in self.root_residuals)
            and self.midpoint_nonzero
        )

    def raise_for_failure(self):
        if not self.passed:
            from ..exceptions import VerificationError
            raise VerificationError(f"characteristic check failed for n={self.n}, d={self.d}", report=self)
