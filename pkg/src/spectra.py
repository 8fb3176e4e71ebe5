"""Symbol analysis, pseudospectra and relaxation rates of the staircase Toeplitz operator."""

import logging
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from scipy.spatial.distance import directed_hausdorff

from . import exact_linalg
from .config import SimulationConfig, SpectraConfig
from .core import alpha, check_dimension
from .exceptions import (
    CapacityError,
    InvalidDimensionError,
    SymbolDomainError,
    UnsupportedSizeError,
    VerificationError,
)
from .models.circuit import NumericMode
from .models.spectral import MembershipVerdict, PseudospectrumCloud, RateSeries, SymbolCurve
from .toeplitz import closed_eigenvectors, lambda2, toeplitz_matrix

logger = logging.getLogger(__name__)


def lambda_phantom(d: int) -> Fraction:
    """Phantom decay rate alpha/(1-alpha) = d/(d(d-1)+1), the sup-norm of the symbol."""
    a = alpha(d)
    rate = a / (1 - a)
    if rate != Fraction(d, d * (d - 1) + 1):
        raise VerificationError(f"phantom rate identity failed for d = {d}")
    return rate


def rate_ratio(n: int, d: int) -> float:
    """lambda_ph / lambda_2(n): gap between the early and the late relaxation rate."""
    return float(lambda_phantom(d)) / lambda2(n, d)


# -- symbol -----------------------------------------------------------------

def symbol_eval(z: complex, d: int) -> complex:
    """a(z) = alpha/z + alpha^2/(1 - alpha z)."""
    a = float(alpha(d))
    z = complex(z)
    if z == 0 or 1 - a * z == 0:
        raise SymbolDomainError(f"a(z) has a pole at z = {z}")
    return a / z + a * a / (1 - a * z)


def _symbol_values(theta: np.ndarray, d: int) -> np.ndarray:
    a = float(alpha(d))
    z = np.exp(1j * theta)
    return a / z + a * a / (1 - a * z)


def symbol_curve(d: int, grid: Optional[int] = None) -> SymbolCurve:
    """a(e^{i theta}) on grid+1 uniform points, theta = 0 and 2 pi both included."""
    check_dimension(d)
    grid = grid or SpectraConfig().symbol_grid
    if grid < 3:
        raise InvalidDimensionError(f"symbol grid needs at least 3 intervals, got {grid}")
    theta = np.linspace(0.0, 2 * np.pi, grid + 1)
    return SymbolCurve(d=d, grid=grid, theta=theta, values=_symbol_values(theta, d))


def symbol_sup_norm(curve: SymbolCurve) -> tuple[float, float]:
    """(max |a| over the grid, theta of the maximum)."""
    moduli = np.abs(curve.values)
    index = int(np.argmax(moduli))
    return float(moduli[index]), float(curve.theta[index])


def symbol_coefficients(curve: SymbolCurve, k_min: int = -3, k_max: int = 8) -> dict[int, complex]:
    """Fourier coefficients a_k of the sampled curve, a(e^{i theta}) = sum_k a_k e^{i k theta}."""
    samples = curve.values[:-1]
    spectrum = np.fft.fft(samples) / len(samples)
    return {k: complex(spectrum[k % len(samples)]) for k in range(k_min, k_max + 1)}


def brickwall_symbol(theta, d: int):
    """alpha^2 (2 + 2 cos theta); real and within [0, 4 alpha^2] on the unit circle."""
    a2 = float(alpha(d)) ** 2
    return a2 * (2 + 2 * np.cos(theta))


def winding_number(z0: complex, d: int, grid: int, refinements: int = 6) -> Optional[int]:
    """Winding of a(e^{i theta}) - z0 around 0; None when still under-resolved after refinement."""
    for _ in range(refinements + 1):
        theta = np.linspace(0.0, 2 * np.pi, grid + 1)
        shifted = _symbol_values(theta, d) - z0
        steps = np.angle(shifted[1:] / shifted[:-1])
        if np.max(np.abs(steps)) < np.pi / 2:
            return int(round(np.sum(steps) / (2 * np.pi)))
        grid *= 2
    return None


def _roots_inside(z0: complex, d: int, tolerance: float) -> Optional[int]:
    """Roots of alpha w z^2 - w z + alpha = 0 (i.e. a(z) = w) strictly inside |z| < 1."""
    a = float(alpha(d))
    w = complex(z0)
    if w == 0:
        return 0
    roots = np.roots([a * w, -w, a])
    if np.any(np.abs(np.abs(roots) - 1) <= tolerance):
        return None
    return int(np.sum(np.abs(roots) < 1))


def symbol_region_membership(
    z0: complex,
    d: int,
    grid: Optional[int] = None,
    config: Optional[SpectraConfig] = None,
) -> MembershipVerdict:
    """Whether z0 lies in the spectrum of the infinite Toeplitz operator.

    Two independent tests must agree: the winding number of the boundary curve
    around z0 (nonzero means inside) and the count of solutions of a(z) = z0 in
    the unit disk (a(z) - z0 has one pole there, so none means inside). Points
    within the tolerance of the curve, or where the tests disagree, are reported
    as boundary.
    """
    config = config or SpectraConfig()
    grid = grid or config.symbol_grid
    z0 = complex(z0)

    curve = symbol_curve(d, grid)
    if np.min(np.abs(curve.values - z0)) <= config.boundary_tolerance:
        return MembershipVerdict.BOUNDARY

    winding = winding_number(z0, d, grid, config.winding_refinements)
    inside_roots = _roots_inside(z0, d, config.boundary_tolerance)
    if winding is None or inside_roots is None:
        return MembershipVerdict.BOUNDARY

    by_winding = winding != 0
    by_roots = inside_roots == 0
    if by_winding != by_roots:
        logger.warning("membership tests disagree at z0=%s (winding=%d, roots inside=%d)", z0, winding, inside_roots)
        return MembershipVerdict.BOUNDARY
    return MembershipVerdict.INSIDE if by_winding else MembershipVerdict.OUTSIDE


# -- finite matrices ---------------------------------------------------------

def exact_spectrum(n: int, d: int, settings: Optional[SimulationConfig] = None) -> np.ndarray:
    """Nonzero eigenvalues of T from its exact characteristic polynomial.

    The factor x^(n/2-1) is divided out exactly before the remaining polynomial's
    companion matrix is handed to the dense eigen-routine, so the defective zero
    eigenvalue cannot pollute the rest. Sorted by decreasing real part.
    """
    settings = settings or SimulationConfig()
    check_dimension(d)
    if n < 4 or n % 2:
        raise UnsupportedSizeError(f"exact spectrum requires even n >= 4, got n = {n}")
    if n > settings.max_chain_sites:
        raise CapacityError(
            f"exact spectrum supports n <= {settings.max_chain_sites}, got n = {n}",
            limit=settings.max_chain_sites,
            requested=n,
        )
    poly = exact_linalg.charpoly(toeplitz_matrix(n, d, NumericMode.RATIONAL))
    zeros = 0
    while poly[zeros] == 0:
        zeros += 1
    deflated = [float(c) for c in reversed(poly[zeros:])]
    roots = np.roots(deflated)
    return roots[np.argsort(-roots.real)]


class PseudospectrumSampler:
    """Eigenvalue clouds of T + eps*E for i.i.d. standard normal E."""

    def __init__(
        self,
        simulation_config: Optional[SimulationConfig] = None,
        spectra_config: Optional[SpectraConfig] = None,
    ):
        """Initialize the sampler.

        Args:
            simulation_config: Size limit and joblib worker count
            spectra_config: Default perturbation strength
        """
        self.simulation = simulation_config or SimulationConfig()
        self.spectra = spectra_config or SpectraConfig()

    def sample(
        self,
        n: int,
        d: int,
        epsilon: Optional[float] = None,
        trials: int = 1,
        seed: int = 0,
    ) -> PseudospectrumCloud:
        """Collect eigenvalues of T + eps*E over independent trials.

        The perturbation of trial i is drawn from the substream (seed, i), so a
        given trial sees the same E for every eps and every worker count.
        """
        check_dimension(d)
        epsilon = self.spectra.epsilon if epsilon is None else epsilon
        if epsilon <= 0:
            raise InvalidDimensionError(f"perturbation strength must be positive, got {epsilon}")
        if trials < 1:
            raise InvalidDimensionError(f"need at least one trial, got {trials}")
        if n > self.simulation.max_pseudospectrum_size:
            raise CapacityError(
                f"pseudospectrum sampling supports n <= {self.simulation.max_pseudospectrum_size}, got n = {n}",
                limit=self.simulation.max_pseudospectrum_size,
                requested=n,
            )
        matrix = toeplitz_matrix(n, d)

        outcomes = Parallel(n_jobs=self.simulation.n_jobs)(
            delayed(_perturbed_eigenvalues)(matrix, epsilon, seed, trial) for trial in range(trials)
        )

        kept, eigenvalues, norms, failed = [], [], [], {}
        for trial, (values, norm, error) in enumerate(outcomes):
            if error is not None:
                logger.warning("pseudospectrum trial %d (n=%d, eps=%g) failed: %s", trial, n, epsilon, error)
                failed[trial] = error
                continue
            kept.append(trial)
            eigenvalues.append(values)
            norms.append(norm)

        return PseudospectrumCloud(
            n=n, d=d, epsilon=epsilon, seed=seed,
            trials=kept, eigenvalues=eigenvalues,
            perturbation_norms=norms, failed_trials=failed,
        )


def _perturbed_eigenvalues(matrix: np.ndarray, epsilon: float, seed: int, trial: int):
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))
    perturbation = rng.standard_normal(matrix.shape)
    try:
        values = np.linalg.eigvals(matrix + epsilon * perturbation)
    except np.linalg.LinAlgError as exc:
        return None, None, str(exc)
    return values, float(epsilon * np.linalg.norm(perturbation, 2)), None


def pseudospectrum_sample(
    n: int,
    d: int,
    epsilon: float,
    trials: int = 1,
    seed: int = 0,
    settings: Optional[SimulationConfig] = None,
) -> PseudospectrumCloud:
    """Module-level shortcut for PseudospectrumSampler.sample."""
    return PseudospectrumSampler(settings).sample(n, d, epsilon, trials, seed)


def _as_points(values) -> np.ndarray:
    values = np.asarray(values, dtype=complex).ravel()
    return np.column_stack([values.real, values.imag])


def hausdorff_distance(cloud, boundary) -> float:
    """Symmetric Hausdorff distance between two sets of complex points."""
    u, v = _as_points(cloud), _as_points(boundary)
    if len(u) == 0 or len(v) == 0:
        raise InvalidDimensionError("Hausdorff distance needs two non-empty point sets")
    return max(directed_hausdorff(u, v)[0], directed_hausdorff(v, u)[0])


def skin_angle(n: int, d: int, j: int = 2) -> float:
    """Angle between the normalized right eigenvectors R_1 and R_j."""
    first, _ = closed_eigenvectors(n, d, 1)
    other, _ = closed_eigenvectors(n, d, j)
    u = first / np.linalg.norm(first)
    v = other / np.linalg.norm(other)
    if u @ v < 0:
        v = -v
    # Chord form keeps precision at the tiny angles of large n
    return float(2 * np.arcsin(min(1.0, np.linalg.norm(u - v) / 2)))


def overlap_ratio(n: int, d: int, j: int = 1) -> float:
    """<L_j|R_j> / (|L_j| |R_j|); exponentially small in n."""
    right, left = closed_eigenvectors(n, d, j)
    return float(left @ right / (np.linalg.norm(left) * np.linalg.norm(right)))


# -- rates ------------------------------------------------------------------

def effective_rate(
    series: Sequence[float],
    i_inf: Optional[float] = None,
    subtract: bool = False,
    floor: Optional[float] = None,
    settings: Optional[SimulationConfig] = None,
) -> RateSeries:
    """Successive-ratio decay rate (I(t+1) - c)/(I(t) - c) reported at t + 1/2.

    Args:
        series: I(t) for t = 0, 1, ...
        i_inf: Steady-state value
        subtract: Use c = i_inf instead of c = 0
        floor: Smallest accepted |denominator|; the series is truncated there
        settings: Supplies numeric_floor when floor is not given

    Returns:
        RateSeries at half-integer times
    """
    values = np.asarray(series, dtype=float)
    if values.size < 2:
        raise InvalidDimensionError("effective rate needs at least two samples")
    if subtract and i_inf is None:
        raise InvalidDimensionError("subtracting the steady state needs i_inf")
    if floor is None:
        floor = (settings or SimulationConfig()).numeric_floor

    shifted = values - (float(i_inf) if subtract else 0.0)
    small = np.nonzero(np.abs(shifted[:-1]) <= floor)[0]
    usable = int(small[0]) if small.size else shifted.size - 1
    rates = shifted[1:usable + 1] / shifted[:usable]
    return RateSeries(
        subtracted=subtract,
        times=np.arange(usable) + 0.5,
        rates=rates,
    )


def transition_time(rates: RateSeries, lambda_ph: float, lambda_2: float) -> Optional[float]:
    """First downward crossing of (lambda_ph + lambda_2)/2 after a plateau above it.

    Returns None when the series never sits at or above the threshold (no phantom
    stage) or never drops below it.
    """
    threshold = (float(lambda_ph) + float(lambda_2)) / 2
    values = rates.rates
    if values.size == 0 or values[0] < threshold:
        return None
    for i in range(1, values.size):
        if values[i] < threshold:
            t0, t1 = rates.times[i - 1], rates.times[i]
            r0, r1 = values[i - 1], values[i]
            return float(t0 + (r0 - threshold) / (r0 - r1) * (t1 - t0))
    return None
