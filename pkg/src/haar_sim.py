"""Monte Carlo state-vector oracle for random staircase and brick-wall circuits."""

import logging
from typing import Iterator, Optional, Sequence, Union

import numpy as np
from joblib import Parallel, delayed
from scipy.linalg import qr

from .config import SimulationConfig
from .core import contiguous_mask, gate_pairs
from .exceptions import CapacityError, InvalidDimensionError
from .models.circuit import (
    Bipartition,
    CircuitConfig,
    GatePolicy,
    StateVector,
    TwoQuditGate,
)
from .models.purity import PuritySeries

logger = logging.getLogger(__name__)


def gate_stream(seed: int, realization: int, step: int = 0, slot: int = 0) -> np.random.Generator:
    """Independent generator for one gate slot, keyed by (seed, realization, step, slot)."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(realization, step, slot))
    )


def sample_haar_unitary(dim: int, rng: np.random.Generator) -> TwoQuditGate:
    """Draw a Haar-random dim x dim unitary (Ginibre matrix + QR with phase fix).

    Args:
        dim: Matrix size d^2 (at least 4)
        rng: Random generator to draw from

    Returns:
        TwoQuditGate without a target pair
    """
    if dim < 4:
        raise InvalidDimensionError(f"two-qudit gates need dim >= 4, got {dim}")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    # Column j of q picks up the phase of r_jj
    return TwoQuditGate(matrix=q * phases[np.newaxis, :])


def _apply(amplitudes: np.ndarray, matrix: np.ndarray, j: int, d: int, n: int) -> np.ndarray:
    view = amplitudes.reshape(d ** (j - 1), d * d, d ** (n - j - 1))
    return np.einsum("ab,xbz->xaz", matrix, view).reshape(-1)


def apply_two_site_gate(state: StateVector, gate: TwoQuditGate, j: int) -> StateVector:
    """Apply a gate to sites (j, j+1)."""
    if not 1 <= j <= state.n - 1:
        raise InvalidDimensionError(f"gate position {j} outside 1..{state.n - 1}")
    if gate.dim != state.d ** 2:
        raise InvalidDimensionError(f"gate of size {gate.dim} does not act on d={state.d} pairs")
    return StateVector(
        d=state.d,
        n=state.n,
        amplitudes=_apply(state.amplitudes, gate.matrix, j, state.d, state.n),
    )


def check_capacity(d: int, n: int, settings: Optional[SimulationConfig] = None) -> int:
    """Raise CapacityError if d^n amplitudes exceed the configured limit."""
    settings = settings or SimulationConfig()
    amplitudes = d ** n
    if amplitudes > settings.max_amplitudes:
        raise CapacityError(
            f"state vector of {d}^{n} = {amplitudes} amplitudes exceeds the limit of "
            f"{settings.max_amplitudes}",
            limit=settings.max_amplitudes,
            requested=amplitudes,
        )
    return amplitudes


def run_circuit(
    config: CircuitConfig,
    realization: int = 0,
    initial: Optional[StateVector] = None,
    settings: Optional[SimulationConfig] = None,
) -> Iterator[StateVector]:
    """Yield the state at t = 0..t_max for one circuit realization.

    The realization index selects the random substream; gate draws are keyed by
    (seed, realization, step, slot), so the trajectory does not depend on which
    worker runs it.
    """
    check_capacity(config.d, config.n, settings)
    state = initial or StateVector.product_zero(config.d, config.n)
    if (state.d, state.n) != (config.d, config.n):
        raise InvalidDimensionError("initial state does not match the circuit configuration")

    pairs = gate_pairs(config.protocol, config.n)
    dim = config.d ** 2
    repeated = None
    if config.gate_policy == GatePolicy.SINGLE:
        repeated = sample_haar_unitary(dim, gate_stream(config.seed, realization)).matrix

    amplitudes = state.amplitudes
    yield state
    for step in range(1, config.t_max + 1):
        for slot, (j, _) in enumerate(pairs):
            if repeated is not None:
                matrix = repeated
            else:
                matrix = sample_haar_unitary(dim, gate_stream(config.seed, realization, step, slot)).matrix
            amplitudes = _apply(amplitudes, matrix, j, config.d, config.n)
        yield StateVector(d=config.d, n=config.n, amplitudes=amplitudes)


def purity_of_state(state: StateVector, bipartition: Bipartition) -> float:
    """Tr(rho_A^2) from the Gram matrix on the smaller side of the cut."""
    if bipartition.n != state.n:
        raise InvalidDimensionError(f"bipartition for n={bipartition.n} applied to n={state.n}")
    d, n = state.d, state.n
    sites_a = [j - 1 for j in bipartition.sites]
    sites_b = [j for j in range(n) if j not in sites_a]
    w = len(sites_a)
    if w in (0, n):
        return float(np.vdot(state.amplitudes, state.amplitudes).real ** 2)

    tensor = state.amplitudes.reshape((d,) * n).transpose(sites_a + sites_b)
    psi = tensor.reshape(d ** w, d ** (n - w))
    gram = psi @ psi.conj().T if w <= n - w else psi.conj().T @ psi
    return float(np.sum(np.abs(gram) ** 2))


def _realization_purities(
    config: CircuitConfig,
    bipartitions: Sequence[Bipartition],
    realization: int,
    settings: SimulationConfig,
) -> np.ndarray:
    out = np.empty((config.t_max + 1, len(bipartitions)))
    for t, state in enumerate(run_circuit(config, realization, settings=settings)):
        out[t] = [purity_of_state(state, b) for b in bipartitions]
    return out


def mc_purity_series(
    config: CircuitConfig,
    cuts: Sequence[Union[int, Bipartition]],
    realizations: int,
    settings: Optional[SimulationConfig] = None,
) -> PuritySeries:
    """Mean purity and standard error over independent circuit realizations.

    Args:
        config: Circuit configuration (seed fixes every realization)
        cuts: Contiguous cuts k, or explicit bipartitions
        realizations: Number of independent trajectories R >= 1
        settings: Capacity limits and joblib worker count

    Returns:
        PuritySeries over t = 0..t_max
    """
    if realizations < 1:
        raise InvalidDimensionError(f"need at least one realization, got {realizations}")
    settings = settings or SimulationConfig()
    check_capacity(config.d, config.n, settings)

    bipartitions = [c if isinstance(c, Bipartition) else contiguous_mask(config.n, c) for c in cuts]
    logger.debug(
        "Monte Carlo: d=%d n=%d t_max=%d R=%d cuts=%s",
        config.d, config.n, config.t_max, realizations, [b.mask for b in bipartitions],
    )

    samples = Parallel(n_jobs=settings.n_jobs)(
        delayed(_realization_purities)(config, bipartitions, r, settings)
        for r in range(realizations)
    )
    stacked = np.stack(samples)
    mean = stacked.mean(axis=0)
    if realizations > 1:
        stderr = stacked.std(axis=0, ddof=1) / np.sqrt(realizations)
    else:
        stderr = np.zeros_like(mean)

    return PuritySeries(
        d=config.d,
        n=config.n,
        masks=[b.mask for b in bipartitions],
        times=list(range(config.t_max + 1)),
        realizations=realizations,
        mean=mean,
        stderr=stderr,
    )
