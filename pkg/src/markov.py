"""Exact average-purity dynamics on the full space of 2^n bipartitions.

The averaged circuit acts on the vector of purities I_s, one entry per bit mask s,
as a product of 4x4 two-site matrices. Everything here is matrix-free except the
explicit oracle matrix and the even-sector kernel census, which are exact.
"""

import logging
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import exact_linalg
from .config import SimulationConfig
from .core import alpha, check_dimension, flip, gate_pairs, lubkin_purity, popcount
from .exceptions import CapacityError, InvalidDimensionError, UnsupportedRepresentationError, UnsupportedSizeError
from .models.checks import CheckResult, DecompositionReport
from .models.circuit import Bipartition, CircuitConfig, NumericMode, Protocol
from .models.purity import GateMatrix4, KernelCensus, PurityVectorFull, ReducedPurity, Representation

logger = logging.getLogger(__name__)

F = Fraction
_TOLERANCE = 1e-12


def gate_matrix(rep: Representation, d: int) -> GateMatrix4:
    """The averaged 2-site matrix in the local basis {00, 10, 01, 11}.

    Args:
        rep: Representation tag
        d: Local dimension (the XY and coefficient forms exist for d = 2 only)

    Returns:
        GateMatrix4 with exact entries
    """
    check_dimension(d)
    rep = Representation(rep)
    if rep != Representation.KUO and d != 2:
        raise UnsupportedRepresentationError(f"{rep.value} is only defined for d = 2, got d = {d}")

    if rep == Representation.KUO:
        a = alpha(d)
        rows = [
            (F(1), F(0), F(0), F(0)),
            (a, F(0), F(0), a),
            (a, F(0), F(0), a),
            (F(0), F(0), F(0), F(1)),
        ]
    elif rep == Representation.SYMMETRIC_XY_D2:
        rows = [
            (F(9, 10), F(0), F(0), F(3, 10)),
            (F(0), F(1, 2), F(1, 2), F(0)),
            (F(0), F(1, 2), F(1, 2), F(0)),
            (F(3, 10), F(0), F(0), F(1, 10)),
        ]
    else:
        fifth = F(1, 5)
        rows = [
            (F(1), F(0), F(0), F(0)),
            (F(0), fifth, fifth, fifth),
            (F(0), fifth, fifth, fifth),
            (F(0), 3 * fifth, 3 * fifth, 3 * fifth),
        ]
    return GateMatrix4(representation=rep, d=d, entries=tuple(rows))


def _projector_pairs(rep: Representation, d: int) -> list[tuple[list[Fraction], list[Fraction]]]:
    """(r_i, l_i) with M = sum_i |r_i><l_i| and <l_i|r_j> = delta_ij."""
    if rep == Representation.KUO:
        a = alpha(d)
        return [
            ([F(1), F(0), F(0), F(-1)], [F(1), F(0), F(0), F(0)]),
            ([F(0), a, a, F(1)], [F(1), F(0), F(0), F(1)]),
        ]
    if rep == Representation.NON_SYMMETRIC_D2:
        return [
            ([F(1), F(0), F(0), F(0)], [F(1), F(0), F(0), F(0)]),
            ([F(0), F(1, 5), F(1, 5), F(3, 5)], [F(0), F(1), F(1), F(1)]),
        ]
    return [
        ([F(3, 10), F(0), F(0), F(1, 10)], [F(3), F(0), F(0), F(1)]),
        ([F(0), F(1, 2), F(1, 2), F(0)], [F(0), F(1), F(1), F(0)]),
    ]


def _expected_singular_values(rep: Representation, d: int) -> np.ndarray:
    if rep == Representation.KUO:
        a = float(alpha(d))
        return np.array([np.sqrt(1 + 4 * a * a), 1.0, 0.0, 0.0])
    if rep == Representation.NON_SYMMETRIC_D2:
        return np.array([np.sqrt(33) / 5, 1.0, 0.0, 0.0])
    return np.array([1.0, 1.0, 0.0, 0.0])


def _eigen_check(gate: GateMatrix4) -> CheckResult:
    m = [list(row) for row in gate.entries]
    pairs = _projector_pairs(gate.representation, gate.d)

    reconstruction = [[sum((r[i] * l[j] for r, l in pairs), F(0)) for j in range(4)] for i in range(4)]
    reconstructs = reconstruction == m
    biorthonormal = all(
        sum((x * y for x, y in zip(l, r)), F(0)) == (1 if i == k else 0)
        for i, (_, l) in enumerate(pairs)
        for k, (r, _) in enumerate(pairs)
    )
    right_fixed = all(exact_linalg.matvec(m, r) == r for r, _ in pairs)
    left_fixed = all(exact_linalg.matvec(exact_linalg.transpose(m), l) == l for _, l in pairs)
    matrix_rank = exact_linalg.rank(exact_linalg.dense(m))

    return CheckResult(
        name="two_projector_form",
        passed=reconstructs and biorthonormal and right_fixed and left_fixed and matrix_rank == 2,
        exact=True,
        details={
            "reconstructs": reconstructs,
            "biorthonormal": biorthonormal,
            "unit_eigenvectors": right_fixed and left_fixed,
            "rank": matrix_rank,
        },
    )


def _svd_check(gate: GateMatrix4) -> CheckResult:
    m = gate.as_float()
    sigma = np.linalg.svd(m, compute_uv=False)
    expected = _expected_singular_values(gate.representation, gate.d)
    error = float(np.max(np.abs(sigma - expected)))
    details = {"singular_values": sigma.tolist()}

    if gate.representation == Representation.KUO:
        a = float(alpha(gate.d))
        v1 = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2)
        u1 = np.array([1.0, 2 * a, 2 * a, 1.0])
        u1 /= np.linalg.norm(u1)
        v2 = np.array([1.0, 0.0, 0.0, -1.0]) / np.sqrt(2)
        error = max(
            error,
            float(np.max(np.abs(m @ v1 - expected[0] * u1))),
            float(np.max(np.abs(m @ v2 - v2))),
        )
        details["singular_vectors_checked"] = True

    return CheckResult(name="singular_values", passed=error <= _TOLERANCE, max_error=error, details=details)


def _similarity_check() -> CheckResult:
    """(A1 x A1)^-1 Kuo (A1 x A1) = XY for d = 2, with A1 = [[sqrt3, 1], [sqrt3, -1]].

    Writing A1 = P1 + sqrt(3) Q1 keeps the check in rationals: A = P + sqrt(3) Q with
    P = P1xP1 + 3 Q1xQ1 and Q = P1xQ1 + Q1xP1, and M A = A S holds iff M P = P S and M Q = Q S.
    """
    p1 = np.array([[F(0), F(1)], [F(0), F(-1)]], dtype=object)
    q1 = np.array([[F(1), F(0)], [F(1), F(0)]], dtype=object)
    p = np.kron(p1, p1) + 3 * np.kron(q1, q1)
    q = np.kron(p1, q1) + np.kron(q1, p1)

    kuo = gate_matrix(Representation.KUO, 2).as_exact()
    xy = gate_matrix(Representation.SYMMETRIC_XY_D2, 2).as_exact()
    exact_match = bool(np.all(kuo.dot(p) == p.dot(xy)) and np.all(kuo.dot(q) == q.dot(xy)))

    a1 = np.array([[np.sqrt(3), 1.0], [np.sqrt(3), -1.0]])
    a = np.kron(a1, a1)
    transformed = np.linalg.solve(a, kuo.astype(float) @ a)
    error = float(np.max(np.abs(transformed - xy.astype(float))))

    return CheckResult(
        name="xy_similarity",
        passed=exact_match and error <= _TOLERANCE,
        exact=True,
        max_error=error,
        details={"exact_match": exact_match},
    )


def gate_decomposition_checks(rep: Representation, d: int) -> DecompositionReport:
    """Verify the projector form, singular values and (d = 2) the XY similarity of a gate."""
    gate = gate_matrix(rep, d)
    similarity = None
    if d == 2 and gate.representation != Representation.NON_SYMMETRIC_D2:
        similarity = _similarity_check()
    report = DecompositionReport(
        representation=gate.representation,
        d=d,
        eigen=_eigen_check(gate),
        svd=_svd_check(gate),
        similarity=similarity,
    )
    logger.debug("gate checks %s d=%d passed=%s", gate.representation.value, d, report.passed)
    return report


def _check_full_capacity(n: int, mode: NumericMode, settings: SimulationConfig):
    limit = settings.max_full_rational_sites if mode == NumericMode.RATIONAL else settings.max_full_float_sites
    if n > limit:
        raise CapacityError(
            f"full propagation in {mode.value} mode supports n <= {limit}, got n = {n}",
            limit=limit,
            requested=n,
        )


def _apply_local(values: np.ndarray, gate: np.ndarray, j: int, n: int) -> np.ndarray:
    """Apply a 4x4 matrix to bits (j-1, j) of every mask."""
    view = values.reshape(1 << (n - j - 1), 4, 1 << (j - 1))
    out = np.zeros_like(view)
    for a in range(4):
        for b in range(4):
            if gate[a, b] != 0:
                out[:, a, :] += gate[a, b] * view[:, b, :]
    return out.reshape(-1)


def ones_vector(n: int, d: int, mode: NumericMode = NumericMode.FLOAT,
                rep: Representation = Representation.KUO) -> PurityVectorFull:
    """The t = 0 vector (1, ..., 1) of a product initial state."""
    exact = NumericMode(mode) == NumericMode.RATIONAL
    if exact:
        values = np.empty(1 << n, dtype=object)
        values[:] = [F(1)] * (1 << n)
    else:
        values = np.ones(1 << n)
    return PurityVectorFull(n=n, d=d, t=0, representation=rep, exact=exact, values=values)


def step_full(vector: PurityVectorFull, protocol: Protocol = Protocol.STAIRCASE) -> PurityVectorFull:
    """One circuit time step: every gate of the protocol, left pair first."""
    gate = gate_matrix(vector.representation, vector.d)
    local = gate.as_exact() if vector.exact else gate.as_float()
    values = vector.values
    for j, _ in gate_pairs(protocol, vector.n):
        values = _apply_local(values, local, j, vector.n)
    return vector.model_copy(update={"values": values, "t": vector.t + 1})


def iterate_full(
    config: CircuitConfig,
    rep: Representation = Representation.KUO,
    mode: NumericMode = NumericMode.FLOAT,
    initial: Optional[PurityVectorFull] = None,
    settings: Optional[SimulationConfig] = None,
) -> Iterator[PurityVectorFull]:
    """Yield the full purity vector at t = 0..config.t_max."""
    settings = settings or SimulationConfig()
    mode = NumericMode(mode)
    _check_full_capacity(config.n, mode, settings)
    vector = initial or ones_vector(config.n, config.d, mode, rep)
    if (vector.n, vector.d) != (config.n, config.d):
        raise InvalidDimensionError("initial vector does not match the circuit configuration")
    yield vector
    for _ in range(config.t_max):
        vector = step_full(vector, config.protocol)
        yield vector


def propagate_full(
    config: CircuitConfig,
    t: int,
    rep: Representation = Representation.KUO,
    mode: NumericMode = NumericMode.FLOAT,
    initial: Optional[PurityVectorFull] = None,
    settings: Optional[SimulationConfig] = None,
) -> PurityVectorFull:
    """Full purity vector after t steps, starting from all ones.

    Args:
        config: Supplies d, n and the protocol (t_max is ignored)
        t: Number of time steps
        rep: Two-site representation
        mode: Float or exact rational arithmetic
        initial: Optional starting vector instead of all ones
        settings: Capacity limits

    Returns:
        PurityVectorFull at time t
    """
    if t < 0:
        raise InvalidDimensionError(f"time must be non-negative, got {t}")
    vector = None
    for vector in iterate_full(config.model_copy(update={"t_max": t}), rep, mode, initial, settings):
        pass
    return vector


def explicit_transfer_matrix(
    n: int,
    d: int,
    protocol: Protocol = Protocol.STAIRCASE,
    rep: Representation = Representation.KUO,
    settings: Optional[SimulationConfig] = None,
) -> DomainMatrix:
    """The 2^n x 2^n one-step matrix M as an exact sparse DomainMatrix over QQ."""
    settings = settings or SimulationConfig()
    if n > settings.max_explicit_sites:
        raise CapacityError(
            f"explicit transfer matrix supports n <= {settings.max_explicit_sites}, got n = {n}",
            limit=settings.max_explicit_sites,
            requested=n,
        )
    gate = gate_matrix(rep, d).entries
    size = 1 << n
    total = None
    for j, _ in gate_pairs(protocol, n):
        shift = j - 1
        dod: dict[int, dict[int, object]] = {}
        for u in range(size):
            b = (u >> shift) & 3
            base = u & ~(3 << shift)
            for a in range(4):
                if gate[a][b] != 0:
                    dod.setdefault(base | (a << shift), {})[u] = exact_linalg.to_qq(gate[a][b])
        factor = DomainMatrix(dod, (size, size), QQ)
        total = factor if total is None else factor * total
    return total


def extract_from_coefficients(x: PurityVectorFull, bipartition: Bipartition):
    """Purity from a d = 2 coefficient vector: (1/2^w) sum of x over submasks of A."""
    if x.representation != Representation.NON_SYMMETRIC_D2:
        raise UnsupportedRepresentationError(
            f"coefficient readout needs {Representation.NON_SYMMETRIC_D2.value}, got {x.representation.value}"
        )
    if bipartition.n != x.n:
        raise InvalidDimensionError(f"bipartition for n={bipartition.n} applied to n={x.n}")
    mask = bipartition.mask
    total = x.values[0]
    sub = mask
    while sub:
        total = total + x.values[sub]
        sub = (sub - 1) & mask
    weight = popcount(mask)
    if x.exact:
        return F(total) / (1 << weight)
    return float(total) / (1 << weight)


def extract_purity(vector: PurityVectorFull, bipartition: Bipartition):
    """Purity of subsystem A at the vector's time."""
    if bipartition.n != vector.n:
        raise InvalidDimensionError(f"bipartition for n={bipartition.n} applied to n={vector.n}")
    if vector.representation == Representation.KUO:
        return vector.values[bipartition.mask]
    if vector.representation == Representation.NON_SYMMETRIC_D2:
        return extract_from_coefficients(vector, bipartition)
    raise UnsupportedRepresentationError("the XY form has no direct purity readout")


def steady_state_vector(
    n: int,
    d: int,
    rep: Representation = Representation.KUO,
    mode: NumericMode = NumericMode.RATIONAL,
) -> PurityVectorFull:
    """Fixed point reached from all ones: random-state purities (or their d = 2 coefficients)."""
    rep = Representation(rep)
    gate_matrix(rep, d)
    if rep == Representation.KUO:
        values = [lubkin_purity(d, n, popcount(s)) for s in range(1 << n)]
    elif rep == Representation.NON_SYMMETRIC_D2:
        scale = F((1 << n) - 1, 4 ** n - 1)
        values = [F(1)] + [3 ** popcount(s) * scale for s in range(1, 1 << n)]
    else:
        raise UnsupportedRepresentationError("the XY steady state is not rational")

    exact = NumericMode(mode) == NumericMode.RATIONAL
    if exact:
        array = np.empty(1 << n, dtype=object)
        array[:] = values
    else:
        array = np.array([float(v) for v in values])
    return PurityVectorFull(n=n, d=d, t=0, representation=rep, exact=exact, values=array)


def complement(vector: PurityVectorFull) -> PurityVectorFull:
    """Vector with every mask replaced by its complement (global spin flip)."""
    return vector.model_copy(update={"values": vector.values[::-1].copy()})


def contiguous_series(
    vectors: Sequence[PurityVectorFull],
    cuts: Optional[Sequence[int]] = None,
    protocol: Protocol = Protocol.STAIRCASE,
) -> list[ReducedPurity]:
    """Contiguous-cut purities I_k (default k = 2..n-1) read from full vectors."""
    series = []
    for vector in vectors:
        ks = tuple(cuts) if cuts is not None else tuple(range(2, vector.n))
        values = tuple(
            extract_purity(vector, Bipartition(n=vector.n, mask=(1 << k) - 1)) for k in ks
        )
        series.append(ReducedPurity(
            n=vector.n, d=vector.d, t=vector.t, protocol=protocol,
            exact=vector.exact, cuts=ks, values=values,
        ))
    return series


def _integer_gate(d: int) -> list[list[int]]:
    """Kuo gate scaled by d^2 + 1 (ranks are unchanged)."""
    s = d * d + 1
    return [[s, 0, 0, 0], [d, 0, 0, d], [d, 0, 0, d], [0, 0, 0, s]]


def _propagate_sparse(mask: int, n: int, gate: list[list[int]]) -> dict[int, int]:
    vec = {mask: 1}
    for j in range(1, n):
        shift = j - 1
        out: dict[int, int] = {}
        for u, value in vec.items():
            b = (u >> shift) & 3
            base = u & ~(3 << shift)
            for a in range(4):
                g = gate[a][b]
                if g:
                    key = base | (a << shift)
                    out[key] = out.get(key, 0) + g * value
        vec = {k: v for k, v in out.items() if v}
    return vec


def even_sector_kernel_census(n: int, d: int = 2, settings: Optional[SimulationConfig] = None) -> KernelCensus:
    """Jordan blocks of eigenvalue 0 of the staircase M restricted to flip-symmetric vectors.

    The basis is e_s + e_flip(s) for masks s with the top bit clear. Block counts
    follow from the exact rank sequence of powers (Weyr characteristic).
    """
    settings = settings or SimulationConfig()
    check_dimension(d)
    if n % 2 or n < 4:
        raise UnsupportedSizeError(f"kernel census needs even n >= 4, got n = {n}")
    if n > settings.max_census_sites:
        raise CapacityError(
            f"kernel census supports n <= {settings.max_census_sites}, got n = {n}",
            limit=settings.max_census_sites,
            requested=n,
        )

    dimension = 1 << (n - 1)
    gate = _integer_gate(d)
    entries: dict[int, dict[int, int]] = {}
    for s in range(dimension):
        column = _propagate_sparse(s, n, gate)
        for u, value in column.items():
            row = u if u < dimension else flip(u, n)
            entries.setdefault(row, {})
            entries[row][s] = entries[row].get(s, 0) + value
    matrix = exact_linalg.sparse_integer(entries, (dimension, dimension))

    ranks = exact_linalg.power_ranks(matrix, n)
    algebraic = dimension - ranks[-1]
    geometric = dimension - ranks[1]
    at_least = [ranks[p - 1] - ranks[p] for p in range(1, len(ranks))] + [0]
    blocks = {
        p: at_least[p - 1] - at_least[p]
        for p in range(1, len(at_least))
        if at_least[p - 1] - at_least[p] > 0
    }
    logger.info("kernel census n=%d d=%d: ranks %s", n, d, ranks)
    return KernelCensus(
        n=n, d=d, dimension=dimension, blocks=blocks,
        algebraic=algebraic, geometric=geometric, rank_profile=ranks,
    )
