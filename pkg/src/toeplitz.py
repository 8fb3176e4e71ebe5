"""Reduced description of contiguous-cut purities.

For the staircase protocol the n-2 purities I_2..I_{n-1} obey the affine map
I(t+1) = a + T I(t) with a lower-Hessenberg Toeplitz T; the brick-wall protocol
gives a tridiagonal T on the even cuts. This module builds both maps, iterates
them (float or exact), and evaluates the closed-form spectrum, eigenvectors and
Jordan chains of T.
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from scipy.linalg import toeplitz as scipy_toeplitz
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from . import exact_linalg
from .config import SimulationConfig
from .core import alpha, check_dimension, lubkin_purity
from .exceptions import (
    CapacityError,
    ChainConstructionError,
    InvalidDimensionError,
    UnsupportedSizeError,
    VerificationError,
)
from .models.checks import CharacteristicReport
from .models.circuit import NumericMode, Protocol
from .models.purity import ReducedPurity
from .models.spectral import SpectralData

logger = logging.getLogger(__name__)

F = Fraction
Matrix = Union[np.ndarray, list]


def _require_interior(n: int):
    if n < 4:
        raise InvalidDimensionError(f"the reduced description needs n >= 4, got n = {n}")


def _require_even(n: int, what: str):
    _require_interior(n)
    if n % 2:
        raise UnsupportedSizeError(f"{what} requires even n, got n = {n}")


def _is_exact(mode: NumericMode) -> bool:
    return NumericMode(mode) == NumericMode.RATIONAL


def reduced_cuts(n: int, protocol: Protocol = Protocol.STAIRCASE) -> tuple[int, ...]:
    """Cuts k carried by the reduced vector (even k only for brick-wall)."""
    if Protocol(protocol) == Protocol.BRICKWALL:
        return tuple(range(2, n - 1, 2))
    return tuple(range(2, n))


# -- matrices ---------------------------------------------------------------

def toeplitz_matrix(n: int, d: int, mode: NumericMode = NumericMode.FLOAT) -> Matrix:
    """(n-2)x(n-2) staircase matrix with T_ij = a_{i-j}, a_{-1} = alpha, a_p = alpha^(p+2) for p >= 0."""
    _require_interior(n)
    a = alpha(d)
    m = n - 2
    if _is_exact(mode):
        return [
            [a ** (i - j + 2) if i >= j else (a if j == i + 1 else F(0)) for j in range(m)]
            for i in range(m)
        ]
    x = float(a)
    column = x ** np.arange(2, m + 2)
    row = np.zeros(m)
    row[0] = x * x
    if m > 1:
        row[1] = x
    return scipy_toeplitz(column, row)


def affine_parts(n: int, d: int, mode: NumericMode = NumericMode.FLOAT):
    """(a1, a2): couplings of the interior cuts to the fixed purities I_1 = 1 and I_n = 1."""
    _require_interior(n)
    a = alpha(d)
    a1 = [a ** k for k in range(2, n)]
    a2 = [F(0)] * (n - 3) + [a]
    if _is_exact(mode):
        return a1, a2
    return np.array([float(x) for x in a1]), np.array([float(x) for x in a2])


def affine_vector(n: int, d: int, mode: NumericMode = NumericMode.FLOAT):
    """a = a1 + a2 = (alpha^2, ..., alpha^(n-2), alpha^(n-1) + alpha)."""
    a1, a2 = affine_parts(n, d, mode)
    if _is_exact(mode):
        return [x + y for x, y in zip(a1, a2)]
    return a1 + a2


def affine_matrix(n: int, d: int, mode: NumericMode = NumericMode.FLOAT) -> Matrix:
    """n x n matrix acting on (1, I_2, ..., I_{n-1}, 1); border rows are unit vectors."""
    t = toeplitz_matrix(n, d, NumericMode.RATIONAL)
    a1, a2 = affine_parts(n, d, NumericMode.RATIONAL)
    rows = [[F(1)] + [F(0)] * (n - 1)]
    for i in range(n - 2):
        rows.append([a1[i]] + list(t[i]) + [a2[i]])
    rows.append([F(0)] * (n - 1) + [F(1)])
    if _is_exact(mode):
        return rows
    return np.array([[float(x) for x in row] for row in rows])


def brickwall_matrix(n: int, d: int, mode: NumericMode = NumericMode.FLOAT) -> Matrix:
    """(n/2-1)-dimensional tridiagonal map on (I_2, I_4, ..., I_{n-2})."""
    _require_even(n, "the brick-wall reduction")
    a2 = alpha(d) ** 2
    m = n // 2 - 1
    if _is_exact(mode):
        return [
            [2 * a2 if i == j else (a2 if abs(i - j) == 1 else F(0)) for j in range(m)]
            for i in range(m)
        ]
    first = np.zeros(m)
    first[0] = 2 * float(a2)
    if m > 1:
        first[1] = float(a2)
    return scipy_toeplitz(first)


def similarity_normalize(n: int, d: int) -> list[list[Fraction]]:
    """R^-1 T R with R = diag(alpha, ..., alpha^(n-2)); every nonzero entry equals alpha^2."""
    t = toeplitz_matrix(n, d, NumericMode.RATIONAL)
    a = alpha(d)
    m = n - 2
    normalized = [[t[i][j] * a ** (j - i) for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            expected = a * a if i >= j - 1 else F(0)
            if normalized[i][j] != expected:
                raise VerificationError(
                    f"normalized entry ({i + 1},{j + 1}) is {normalized[i][j]}, expected {expected}"
                )
    return normalized


def _hessenberg_pattern(m: int) -> DomainMatrix:
    """0/1 lower-Hessenberg matrix; T = alpha^2 R H R^-1."""
    rows = [[ZZ(1) if i >= j - 1 else ZZ(0) for j in range(m)] for i in range(m)]
    return DomainMatrix(rows, (m, m), ZZ).convert_to(QQ)


def kernel_rank_profile(n: int, d: int) -> list[int]:
    """Exact rank(T^p) for p = 0..n/2; T is similar to a scaled 0/1 pattern, so ranks come from it."""
    check_dimension(d)
    _require_even(n, "the kernel rank profile")
    m = n - 2
    h = _hessenberg_pattern(m)
    ranks = [m]
    power = h
    for _ in range(1, n // 2 + 1):
        ranks.append(exact_linalg.rank(power))
        power = power * h
    return ranks


# -- iteration --------------------------------------------------------------

def ones_reduced(n: int, d: int, mode: NumericMode = NumericMode.FLOAT,
                 protocol: Protocol = Protocol.STAIRCASE) -> ReducedPurity:
    """Reduced vector at t = 0 (all purities 1)."""
    _require_interior(n)
    cuts = reduced_cuts(n, protocol)
    one = F(1) if _is_exact(mode) else 1.0
    return ReducedPurity(n=n, d=d, t=0, protocol=protocol, exact=_is_exact(mode),
                         cuts=cuts, values=(one,) * len(cuts))


def recursion_step(purity: ReducedPurity, d: Optional[int] = None) -> ReducedPurity:
    """One staircase step I_k <- alpha^k + sum_{r=2}^{k+1} alpha^(k+2-r) I_r with I_n = 1.

    Runs in O(n) with the running sum S_k = alpha S_{k-1} + alpha I_{k+1}.
    """
    n = purity.n
    _require_interior(n)
    if d is not None and d != purity.d:
        raise InvalidDimensionError(f"purity vector is for d = {purity.d}, got d = {d}")
    if purity.cuts != tuple(range(2, n)):
        raise InvalidDimensionError("recursion_step needs the full staircase vector I_2..I_{n-1}")

    a = alpha(purity.d)
    if not purity.exact:
        a = float(a)
    values = list(purity.values) + [1]
    out = []
    running = a * values[0]
    power = a
    for i in range(n - 2):
        running = a * running + a * values[i + 1]
        power = power * a
        out.append(power + running)
    return purity.with_values(out)


def brickwall_step(purity: ReducedPurity) -> ReducedPurity:
    """One brick-wall step I_k <- alpha^2 (I_{k-2} + 2 I_k + I_{k+2}) with I_0 = I_n = 1."""
    if purity.cuts != reduced_cuts(purity.n, Protocol.BRICKWALL):
        raise InvalidDimensionError("brickwall_step needs the even-cut vector I_2, I_4, ..., I_{n-2}")
    a2 = alpha(purity.d) ** 2
    if not purity.exact:
        a2 = float(a2)
    padded = [1] + list(purity.values) + [1]
    out = [a2 * (padded[i - 1] + 2 * padded[i] + padded[i + 1]) for i in range(1, len(padded) - 1)]
    return purity.with_values(out)


def propagate_reduced(
    n: int,
    d: int,
    t: int,
    mode: NumericMode = NumericMode.FLOAT,
    protocol: Protocol = Protocol.STAIRCASE,
) -> list[ReducedPurity]:
    """Reduced purities at times 0..t, iterating the affine map from all ones.

    Args:
        n: Number of sites (even for brick-wall)
        d: Local dimension
        t: Final time
        mode: Float (dense Toeplitz product) or exact rational recursion
        protocol: Staircase or brick-wall

    Returns:
        t + 1 ReducedPurity snapshots
    """
    check_dimension(d)
    if t < 0:
        raise InvalidDimensionError(f"time must be non-negative, got {t}")
    protocol = Protocol(protocol)
    if protocol == Protocol.BRICKWALL:
        _require_even(n, "the brick-wall reduction")
    current = ones_reduced(n, d, mode, protocol)
    series = [current]

    if protocol == Protocol.BRICKWALL:
        for _ in range(t):
            current = brickwall_step(current)
            series.append(current)
        return series

    if _is_exact(mode):
        for _ in range(t):
            current = recursion_step(current)
            series.append(current)
        return series

    matrix = toeplitz_matrix(n, d)
    a = affine_vector(n, d)
    values = np.ones(n - 2)
    for _ in range(t):
        values = a + matrix @ values
        current = current.with_values(values.tolist())
        series.append(current)
    return series


def steady_reduced(n: int, d: int, protocol: Protocol = Protocol.STAIRCASE) -> list[Fraction]:
    """I_k(inf) for the cuts of the reduced vector."""
    return [lubkin_purity(d, n, k) for k in reduced_cuts(n, protocol)]


def deviation_series(
    n: int,
    d: int,
    k: int,
    t_max: int,
    protocol: Protocol = Protocol.STAIRCASE,
) -> np.ndarray:
    """I_k(t) - I_k(inf) for t = 0..t_max, iterated as T^t (1 - I(inf)) to avoid cancellation."""
    protocol = Protocol(protocol)
    if protocol == Protocol.BRICKWALL:
        matrix = brickwall_matrix(n, d)
    else:
        matrix = toeplitz_matrix(n, d)
    cuts = reduced_cuts(n, protocol)
    if k not in cuts:
        raise InvalidDimensionError(f"cut {k} is not carried by the {protocol.value} reduction")

    index = cuts.index(k)
    y = np.array([float(1 - v) for v in steady_reduced(n, d, protocol)])
    out = np.empty(t_max + 1)
    out[0] = y[index]
    for t in range(1, t_max + 1):
        y = matrix @ y
        out[t] = y[index]
    return out


# -- closed forms -----------------------------------------------------------

def in_boundary_free_window(k: int, n: int, t: int) -> bool:
    """Whether the right boundary I_n = 1 has not yet influenced I_k(t)."""
    return k + t <= n


def closed_form_small_t(k: int, n: int, d: int, t: int) -> Fraction:
    """Exact I_k(t) for t = 1, 2, 3 from the small-time closed forms.

    The forms describe a chain without a right boundary; they agree with the
    bounded map while k + t <= n (see in_boundary_free_window).
    """
    check_dimension(d)
    if t not in (1, 2, 3):
        raise InvalidDimensionError(f"closed forms exist for t in (1, 2, 3), got t = {t}")
    if n < 2 * t:
        raise InvalidDimensionError(f"closed form at t = {t} needs n >= {2 * t}, got n = {n}")
    if not 1 <= k <= n - 1:
        raise InvalidDimensionError(f"cut {k} outside 1..{n - 1}")

    a = alpha(d)
    b = 1 - a
    rate = a / b
    if t == 1:
        return rate + (1 - 2 * a) / b * a ** k
    if t == 2:
        return rate ** 2 + a ** k * (1 - 2 * a) / b * (1 / b + a * a * k)
    bracket = (1 - a * b) + k * a ** 2 * b * (1 + F(3, 2) * a ** 2 * b) + k ** 2 * a ** 4 * b ** 2 / 2
    return rate ** 3 + a ** k * (1 - 2 * a) * bracket / b ** 3


def phantom_polynomial_degree(n: int, d: int, t: int) -> int:
    """Degree in k of (I_k(t) - lambda_ph^t) / alpha^k over the boundary-free cuts."""
    if t < 1:
        raise InvalidDimensionError(f"need t >= 1, got t = {t}")
    window = [k for k in range(2, n) if in_boundary_free_window(k, n, t)]
    if len(window) < t + 1:
        raise InvalidDimensionError(f"n = {n} leaves too few boundary-free cuts at t = {t}")

    a = alpha(d)
    rate = a / (1 - a)
    final = propagate_reduced(n, d, t, NumericMode.RATIONAL)[-1]
    samples = [(final[k] - rate ** t) / a ** k for k in window]

    degree = 0
    differences = samples
    while any(differences[i] != differences[0] for i in range(len(differences))):
        differences = [y - x for x, y in zip(differences, differences[1:])]
        degree += 1
        if len(differences) < 2:
            raise InvalidDimensionError(f"n = {n} is too small to resolve the degree at t = {t}")
    return degree


def lambda2(n: int, d: int) -> float:
    """Largest eigenvalue 4 alpha^2 cos^2(pi/n) of the finite T."""
    _require_even(n, "the closed spectrum")
    return float(4 * alpha(d) ** 2) * np.cos(np.pi / n) ** 2


def lambda2_tdl(d: int) -> Fraction:
    """lambda_2 as n -> infinity: 4 d^2 / (d^2 + 1)^2."""
    return 4 * alpha(d) ** 2


def chebyshev_u(k: int) -> list[int]:
    """Integer coefficients of U_k, lowest degree first."""
    if k < 0:
        raise InvalidDimensionError(f"Chebyshev degree must be >= 0, got {k}")
    previous, current = [1], [0, 2]
    if k == 0:
        return previous
    for _ in range(k - 1):
        shifted = [0] + [2 * c for c in current]
        padded = previous + [0] * (len(shifted) - len(previous))
        previous, current = current, [x - y for x, y in zip(shifted, padded)]
    return current


def closed_eigenvectors(n: int, d: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized (R_j, L_j) over k = 1..n-2; L_j is R_j reflected."""
    _require_even(n, "the closed spectrum")
    if not 1 <= j <= n // 2 - 1:
        raise InvalidDimensionError(f"eigenvector index {j} outside 1..{n // 2 - 1}")
    phi = j * np.pi / n
    base = 2 * float(alpha(d)) * np.cos(phi)
    k = np.arange(1, n - 1)
    right = base ** (k - 2.0) * np.sin((k + 1) * phi) / np.sin(phi)
    left = base ** (n - 3.0 - k) * np.sin((n - k) * phi) / np.sin(phi)
    return right, left


def closed_steady_state(n: int, d: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Unit-eigenvalue pair of A: R = (1, I_2(inf), ..., I_{n-1}(inf), 1), L = (1/2, 0, ..., 0, 1/2)."""
    _require_interior(n)
    right = (F(1),) + tuple(steady_reduced(n, d)) + (F(1),)
    left = (F(1, 2),) + (F(0),) * (n - 2) + (F(1, 2),)
    return right, left


def jordan_chains(
    n: int,
    d: int,
    settings: Optional[SimulationConfig] = None,
) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[tuple[Fraction, ...], ...]]:
    """Exact chain r_1..r_m (T r_1 = 0, T r_{k+1} = r_k) and a biorthonormal left chain.

    m = n/2 - 1. Kernels of T^p are read off the 0/1 Hessenberg pattern H through
    T = alpha^2 R H R^-1 with R = diag(alpha^k).
    """
    settings = settings or SimulationConfig()
    _require_even(n, "the Jordan chain")
    if n > settings.max_chain_sites:
        raise CapacityError(
            f"exact Jordan chains support n <= {settings.max_chain_sites}, got n = {n}",
            limit=settings.max_chain_sites,
            requested=n,
        )
    a = alpha(d)
    size = n - 2
    depth = n // 2 - 1
    t_rows = toeplitz_matrix(n, d, NumericMode.RATIONAL)
    h = _hessenberg_pattern(size)
    h_rows = exact_linalg.to_rows(h)

    top = h ** depth
    candidates = exact_linalg.nullspace(top)
    seed = None
    for w in candidates:
        image = list(w)
        for _ in range(depth - 1):
            image = exact_linalg.matvec(h_rows, image)
        if any(image):
            seed = w
            break
    if seed is None:
        raise ChainConstructionError(
            f"no generator of the nilpotent block found for n = {n}",
            diagnostics={"kernel_dimension": len(candidates), "depth": depth},
        )

    chain = [None] * depth
    chain[-1] = [a ** (i + 1) * x for i, x in enumerate(seed)]
    for i in range(depth - 2, -1, -1):
        chain[i] = exact_linalg.matvec(t_rows, chain[i + 1])

    left_basis = exact_linalg.nullspace(top.transpose())
    left_basis = [[x / a ** (i + 1) for i, x in enumerate(w)] for w in left_basis]
    gram = [[sum((x * y for x, y in zip(w, r)), F(0)) for r in chain] for w in left_basis]
    try:
        gram_inverse = exact_linalg.inverse(gram)
    except Exception as exc:
        raise ChainConstructionError(
            f"left and right generalized kernels are not dual for n = {n}",
            diagnostics={"left_dimension": len(left_basis), "depth": depth},
        ) from exc
    left = [
        [sum((gram_inverse[b][c] * left_basis[c][i] for c in range(depth)), F(0)) for i in range(size)]
        for b in range(depth)
    ]

    if any(exact_linalg.matvec(t_rows, chain[0])):
        raise ChainConstructionError("r_1 is not annihilated by T", diagnostics={"n": n, "d": d})
    for b in range(depth):
        for c in range(depth):
            value = sum((x * y for x, y in zip(left[b], chain[c])), F(0))
            if value != (1 if b == c else 0):
                raise ChainConstructionError(
                    "left chain is not biorthonormal to the right chain",
                    diagnostics={"pair": (b + 1, c + 1), "value": str(value)},
                )
    logger.debug("built Jordan chain of length %d for n=%d d=%d", depth, n, d)
    return tuple(tuple(r) for r in chain), tuple(tuple(l) for l in left)


def closed_spectrum(
    n: int,
    d: int,
    with_chains: bool = False,
    settings: Optional[SimulationConfig] = None,
) -> SpectralData:
    """Closed-form eigen-data of T and A for even n.

    Args:
        n: Number of sites (even, >= 4)
        d: Local dimension
        with_chains: Also build the exact Jordan chains of eigenvalue 0
        settings: Capacity limits for the chain construction

    Returns:
        SpectralData with n/2-1 nonzero eigenvalues, zero of algebraic multiplicity n/2-1
    """
    check_dimension(d)
    _require_even(n, "the closed spectrum")
    count = n // 2 - 1
    angles = np.arange(1, count + 1) * np.pi / n
    a = float(alpha(d))
    eigenvalues = 4 * a * a * np.cos(angles) ** 2

    pairs = [closed_eigenvectors(n, d, j) for j in range(1, count + 1)]
    right = np.array([r for r, _ in pairs])
    left = np.array([l for _, l in pairs])
    overlaps = np.sum(right * left, axis=1)

    a1, a2 = affine_parts(n, d)
    border_lifts = np.column_stack([
        left @ a1 / (eigenvalues - 1),
        left @ a2 / (eigenvalues - 1),
    ])
    steady_right, steady_left = closed_steady_state(n, d)

    chain_right = chain_left = None
    if with_chains:
        chain_right, chain_left = jordan_chains(n, d, settings)

    return SpectralData(
        n=n, d=d, angles=angles, eigenvalues=eigenvalues,
        right=right, left=left, overlaps=overlaps, border_lifts=border_lifts,
        zero_algebraic=count, zero_geometric=1,
        steady_right=steady_right, steady_left=steady_left,
        chain_right=chain_right, chain_left=chain_left,
    )


def spectral_series(
    n: int,
    d: int,
    t_max: int,
    include_kernel: bool = True,
    data: Optional[SpectralData] = None,
    settings: Optional[SimulationConfig] = None,
) -> list[ReducedPurity]:
    """A^t applied to all ones, t = 0..t_max, assembled from the spectral decomposition.

    The unit-eigenvalue pair gives I(inf); each nonzero eigenvalue contributes
    lambda_j^t c_j R_j with c_j = <L~_j|1>/<L_j|R_j> (border lifts included); the
    nilpotent part shifts the chain, r_k -> r_{k-t}, and vanishes for t >= n/2 - 1.
    """
    if data is None or (include_kernel and data.chain_right is None):
        data = closed_spectrum(n, d, with_chains=include_kernel, settings=settings)

    steady = np.array([float(x) for x in data.steady_right[1:-1]])
    lifted = data.left.sum(axis=1) + data.border_lifts.sum(axis=1)
    coefficients = lifted / data.overlaps

    kernel_coefficients = None
    if include_kernel:
        y0 = [1 - x for x in data.steady_right[1:-1]]
        kernel_coefficients = [sum((x * y for x, y in zip(l, y0)), F(0)) for l in data.chain_left]
    depth = n // 2 - 1

    cuts = reduced_cuts(n)
    series = []
    for t in range(t_max + 1):
        values = steady + (coefficients * data.eigenvalues ** t) @ data.right
        if include_kernel and t < depth:
            kernel = [F(0)] * (n - 2)
            for k in range(depth - t):
                c = kernel_coefficients[k + t]
                if c:
                    kernel = [x + c * y for x, y in zip(kernel, data.chain_right[k])]
            values = values + np.array([float(x) for x in kernel])
        series.append(ReducedPurity(
            n=n, d=d, t=t, protocol=Protocol.STAIRCASE, exact=False,
            cuts=cuts, values=tuple(values.tolist()),
        ))
    return series


def spectral_propagate(
    n: int,
    d: int,
    t: int,
    include_kernel: bool = True,
    settings: Optional[SimulationConfig] = None,
) -> ReducedPurity:
    """I(t) from the spectral decomposition of A; without the kernel it is exact only for t >= n/2 - 1."""
    if t < 0:
        raise InvalidDimensionError(f"time must be non-negative, got {t}")
    return spectral_series(n, d, t, include_kernel, settings=settings)[-1]


def _poly_eval(coefficients: Sequence[float], x: float) -> tuple[float, float]:
    """(value, sum |c_k| x^k) at a non-negative x."""
    value = np.polynomial.polynomial.polyval(x, coefficients)
    scale = np.polynomial.polynomial.polyval(abs(x), np.abs(coefficients))
    return float(value), float(scale)


def characteristic_check(
    n: int,
    d: int,
    tolerance: float = 1e-10,
    settings: Optional[SimulationConfig] = None,
) -> CharacteristicReport:
    """Check det(x - T) against alpha^(n-1) x^((n-3)/2) U_{n-1}(sqrt(x)/(2 alpha)) and the closed roots.

    Args:
        n: Number of sites (even)
        d: Local dimension
        tolerance: Relative residual accepted at the closed-form roots
        settings: Capacity limits

    Returns:
        CharacteristicReport
    """
    settings = settings or SimulationConfig()
    check_dimension(d)
    _require_even(n, "the characteristic check")
    if n > settings.max_characteristic_sites:
        raise CapacityError(
            f"exact characteristic check supports n <= {settings.max_characteristic_sites}, got n = {n}",
            limit=settings.max_characteristic_sites,
            requested=n,
        )
    a = alpha(d)
    t_rows = toeplitz_matrix(n, d, NumericMode.RATIONAL)
    poly = exact_linalg.charpoly(t_rows)

    # U_{n-1} is odd, so every x^m maps to an integer power (m + n - 3) / 2
    expected = [F(0)] * (n - 1)
    for m, u in enumerate(chebyshev_u(n - 1)):
        if u:
            expected[(m + n - 3) // 2] += u * a ** (n - 1 - m) / 2 ** m
    chebyshev_match = expected == poly

    zero_multiplicity = 0
    while zero_multiplicity < len(poly) and poly[zero_multiplicity] == 0:
        zero_multiplicity += 1
    deflated = [float(c) for c in poly[zero_multiplicity:]]

    spectrum = closed_spectrum(n, d)
    t_float = np.array([[float(x) for x in row] for row in t_rows])
    residuals, determinants = [], []
    for value in spectrum.eigenvalues:
        q, scale = _poly_eval(deflated, value)
        residuals.append(abs(q) / scale)
        determinants.append(float(abs(np.linalg.det(t_float - value * np.eye(n - 2)))))

    points = sorted([0.0] + spectrum.eigenvalues.tolist())
    midpoints = [F((x + y) / 2).limit_denominator(10 ** 6) for x, y in zip(points, points[1:])]
    midpoint_nonzero = all(sum((c * x ** i for i, c in enumerate(poly)), F(0)) != 0 for x in midpoints)

    report = CharacteristicReport(
        n=n, d=d,
        chebyshev_match=chebyshev_match,
        zero_multiplicity=zero_multiplicity,
        root_residuals=residuals,
        determinants=determinants,
        midpoints=[f"{x.numerator}/{x.denominator}" for x in midpoints],
        midpoint_nonzero=midpoint_nonzero,
        tolerance=tolerance,
    )
    logger.debug("characteristic check n=%d d=%d passed=%s", n, d, report.passed)
    return report
