"""Shared quantities: the coupling constant, bipartition masks and random-state purities."""

import numbers
from fractions import Fraction

from .exceptions import InvalidDimensionError
from .models.circuit import Bipartition, Protocol


def check_dimension(d: int) -> int:
    """Reject local dimensions below 2; returns d as a plain int (numpy integers accepted)."""
    if isinstance(d, bool) or not isinstance(d, numbers.Integral) or d < 2:
        raise InvalidDimensionError(f"local dimension must be an integer >= 2, got {d!r}")
    return int(d)


def alpha(d: int) -> Fraction:
    """Coupling constant d/(d^2+1) of the averaged 2-site gate."""
    d = check_dimension(d)
    return Fraction(d, d * d + 1)


def beta(d: int) -> Fraction:
    """1 - alpha(d)."""
    return 1 - alpha(d)


def lubkin_purity(d: int, n: int, w: int) -> Fraction:
    """Average purity of a Haar-random state for a subsystem of w out of n sites.

    Args:
        d: Local dimension
        n: Number of sites
        w: Number of sites in subsystem A

    Returns:
        (d^w + d^(n-w)) / (1 + d^n)
    """
    check_dimension(d)
    if not 0 <= w <= n:
        raise InvalidDimensionError(f"subsystem size {w} outside 0..{n}")
    return Fraction(d ** w + d ** (n - w), 1 + d ** n)


def contiguous_mask(n: int, k: int) -> Bipartition:
    """Bipartition with the first k sites in A."""
    if not 0 <= k <= n:
        raise InvalidDimensionError(f"cut {k} outside 0..{n}")
    return Bipartition(n=n, mask=(1 << k) - 1)


def flip(mask: int, n: int) -> int:
    """Complement of a mask (global spin flip)."""
    return mask ^ ((1 << n) - 1)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def gate_pairs(protocol: Protocol, n: int) -> list[tuple[int, int]]:
    """1-based site pairs in the order they act during one time step."""
    if n < 2:
        raise InvalidDimensionError(f"need at least 2 sites, got {n}")
    if Protocol(protocol) == Protocol.STAIRCASE:
        return [(j, j + 1) for j in range(1, n)]
    odd = [(j, j + 1) for j in range(1, n, 2)]
    even = [(j, j + 1) for j in range(2, n, 2)]
    return odd + even


def rational_string(x: Fraction) -> str:
    """Canonical "p/q" text form (q = 1 is still written)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
