"""Data models for the purity-dynamics toolkit."""

from .circuit import (
    Protocol,
    GatePolicy,
    NumericMode,
    CircuitConfig,
    Bipartition,
    TwoQuditGate,
    StateVector,
)

from .purity import (
    Representation,
    GateMatrix4,
    PurityVectorFull,
    KernelCensus,
    PuritySeries,
    ReducedPurity,
)

from .spectral import (
    SpectralData,
    SymbolCurve,
    MembershipVerdict,
    PseudospectrumCloud,
    RateSeries,
)

from .checks import (
    CheckResult,
    DecompositionReport,
    CharacteristicReport,
)

from .experiment import (
    ExperimentId,
    OutputFormat,
    ExperimentSpec,
    VerdictLevel,
    Verdict,
    ValidationReport,
    ExperimentResult,
)

__all__ = [
    # Circuit models
    "Protocol",
    "GatePolicy",
    "NumericMode",
    "CircuitConfig",
    "Bipartition",
    "TwoQuditGate",
    "StateVector",
    # Purity models
    "Representation",
    "GateMatrix4",
    "PurityVectorFull",
    "KernelCensus",
    "PuritySeries",
    "ReducedPurity",
    # Spectral models
    "SpectralData",
    "SymbolCurve",
    "MembershipVerdict",
    "PseudospectrumCloud",
    "RateSeries",
    # Reports
    "CheckResult",
    "DecompositionReport",
    "CharacteristicReport",
    # Experiments
    "ExperimentId",
    "OutputFormat",
    "ExperimentSpec",
    "VerdictLevel",
    "Verdict",
    "ValidationReport",
    "ExperimentResult",
]
