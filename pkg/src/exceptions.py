"""Error types raised by the purity-dynamics toolkit."""

from typing import Any, Optional


class PhantomPurityError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(PhantomPurityError, ValueError):
    """Raised for out-of-range d, n, k, w or site indices."""


class CapacityError(PhantomPurityError):
    """Raised before allocating when a request exceeds a configured capacity."""

    def __init__(self, message: str, limit: Optional[int] = None, requested: Optional[int] = None):
        super().__init__(message)
        self.limit = limit
        self.requested = requested


class UnsupportedRepresentationError(PhantomPurityError, ValueError):
    """Raised when a 2-site matrix representation is not defined for the given d."""


class UnsupportedSizeError(PhantomPurityError, ValueError):
    """Raised when an operation needs even n (closed spectrum, brick-wall reduction)."""


class SymbolDomainError(PhantomPurityError, ValueError):
    """Raised when the symbol is evaluated at one of its poles."""


class VerificationError(PhantomPurityError):
    """Raised when an identity check fails; carries the failing report."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class ChainConstructionError(PhantomPurityError):
    """Raised when the exact Jordan chain of T cannot be built."""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
