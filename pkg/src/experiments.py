"""Experiment registry, dry-run validation and execution."""

import logging
import math
from typing import Any, Callable, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field
from scipy.spatial.distance import directed_hausdorff

from . import __version__
from .config import AppConfig
from .core import alpha, lubkin_purity, rational_string
from .exceptions import CapacityError, InvalidDimensionError, UnsupportedSizeError
from .haar_sim import mc_purity_series
from .markov import contiguous_series, iterate_full
from .models.circuit import NumericMode, Protocol
from .models.experiment import (
    ExperimentId,
    ExperimentResult,
    ExperimentSpec,
    ValidationReport,
    VerdictLevel,
)
from .spectra import (
    PseudospectrumSampler,
    effective_rate,
    hausdorff_distance,
    lambda_phantom,
    rate_ratio,
    skin_angle,
    overlap_ratio,
    symbol_coefficients,
    symbol_curve,
    symbol_sup_norm,
    transition_time,
)
from .toeplitz import (
    closed_eigenvectors,
    closed_spectrum,
    deviation_series,
    lambda2,
    lambda2_tdl,
    propagate_reduced,
    reduced_cuts,
    spectral_series,
)

logger = logging.getLogger(__name__)

# Sweeps at or below this size use the full 2^n propagation (any contiguous cut)
FULL_SWEEP_SITES = 12
# Experiments whose tables involve the closed spectrum of T
CLOSED_SPECTRUM = {
    ExperimentId.FIG3,
    ExperimentId.FIG4A,
    ExperimentId.LAMBDA_EFF,
    ExperimentId.JORDAN_WINDOW,
}
# Experiments that ignore the protocol and study the staircase T
STAIRCASE_ONLY = CLOSED_SPECTRUM - {ExperimentId.LAMBDA_EFF} | {ExperimentId.FIG4B, ExperimentId.FIG4C}


class ExperimentInfo(BaseModel):
    """Registry entry: what an experiment emits and which list defaults it uses."""
    experiment: ExperimentId
    description: str
    tables: dict[str, list[str]] = Field(default_factory=dict, description="table -> columns")
    defaults: dict[str, Any] = Field(default_factory=dict)


REGISTRY: dict[ExperimentId, ExperimentInfo] = {
    info.experiment: info
    for info in [
        ExperimentInfo(
            experiment=ExperimentId.FIG1,
            description="Half-cut purity decay: single Monte Carlo realization, exact average, phantom and lambda_2 asymptotes",
            tables={"purity": ["t", "I_mc_single", "I_mc_stderr", "I_exact", "phantom", "lambda2_asymptote"]},
            defaults={"cuts": "n/2"},
        ),
        ExperimentInfo(
            experiment=ExperimentId.FIG3,
            description="Closed-form right/left eigenvectors of T and the skin-effect angle between R_1 and R_2",
            tables={
                "eigenvectors": ["n", "j", "k", "lambda", "R", "L"],
                "angles": ["n", "angle", "overlap_ratio"],
            },
            defaults={"sizes": [40, 80, 160, 320, 640]},
        ),
        ExperimentInfo(
            experiment=ExperimentId.FIG4A,
            description="Symbol boundary a(e^{i theta}), its Fourier coefficients and the finite-n spectra",
            tables={
                "symbol": ["theta", "a_re", "a_im"],
                "coefficients": ["k", "a_re", "a_im", "expected"],
                "spectrum": ["n", "j", "lambda"],
            },
            defaults={"sizes": [20, 100, 500]},
        ),
        ExperimentInfo(
            experiment=ExperimentId.FIG4B,
            description="Pseudospectrum clouds of T + eps*E for growing n at fixed eps",
            tables={
                "cloud": ["n", "epsilon", "trial", "lambda_re", "lambda_im"],
                "symbol": ["theta", "a_re", "a_im"],
                "summary": ["n", "hausdorff", "max_modulus", "failed_trials"],
            },
            defaults={"sizes": [20, 100, 500], "epsilon": [1e-15]},
        ),
        ExperimentInfo(
            experiment=ExperimentId.FIG4C,
            description="Pseudospectrum clouds at fixed n for decreasing eps",
            tables={
                "cloud": ["n", "epsilon", "trial", "lambda_re", "lambda_im"],
                "finite_spectrum": ["j", "lambda"],
                "summary": ["epsilon", "distance", "max_imag"],
            },
            defaults={"epsilon": [1e-8, 1e-11, 1e-14]},
        ),
        ExperimentInfo(
            experiment=ExperimentId.LAMBDA_EFF,
            description="Effective decay rate of the half-cut deviation and the phantom-to-lambda_2 transition time",
            tables={
                "rates": ["n", "t", "lambda_eff"],
                "transition": ["n", "t_star", "lambda_ph", "lambda2", "rate_ratio"],
            },
            defaults={"sizes": [20, 40, 80]},
        ),
        ExperimentInfo(
            experiment=ExperimentId.PURITY_D234,
            description="Half-cut deviation I(t) - I(inf) for d = 2, 3, 4 against phantom and lambda_2 decay",
            tables={"purity": ["d", "t", "deviation", "phantom", "lambda2_power"]},
        ),
        ExperimentInfo(
            experiment=ExperimentId.JORDAN_WINDOW,
            description="Exact purity against the spectral sum with and without the Jordan kernel",
            tables={"purity": [
                "t", "I_exact", "I_spectral_full", "I_spectral_only",
                "I_quarter_exact", "I_quarter_spectral_only", "kernel_matters",
            ]},
        ),
        ExperimentInfo(
            experiment=ExperimentId.SWEEP,
            description="Exact purity per (t, cut), optionally with Monte Carlo mean and standard error",
            tables={"purity": ["t", "k", "purity", "purity_exact", "mc_mean", "mc_stderr"]},
        ),
    ]
}


def list_experiments() -> list[ExperimentInfo]:
    """Every registered experiment, in declaration order."""
    return list(REGISTRY.values())


def _closed_form_cut(n: int, protocol: Protocol) -> int:
    """Half cut, rounded down to an even cut for brick-wall."""
    k = n // 2
    if Protocol(protocol) == Protocol.BRICKWALL and k % 2:
        k -= 1
    return k


def _runtime_class(work: float) -> str:
    if work < 1e6:
        return "instant"
    if work < 1e9:
        return "seconds"
    if work < 1e11:
        return "minutes"
    return "hours"


class ExperimentRunner:
    """Validates and runs experiment specs against the configured capacities."""

    def __init__(self, config: Optional[AppConfig] = None):
        """Initialize the runner.

        Args:
            config: Application configuration
        """
        self.config = config or AppConfig()
        self.simulation = self.config.simulation
        self._handlers: dict[ExperimentId, Callable[[ExperimentSpec, ExperimentResult], None]] = {
            ExperimentId.FIG1: self._run_fig1,
            ExperimentId.FIG3: self._run_fig3,
            ExperimentId.FIG4A: self._run_fig4a,
            ExperimentId.FIG4B: self._run_fig4b,
            ExperimentId.FIG4C: self._run_fig4c,
            ExperimentId.LAMBDA_EFF: self._run_lambda_eff,
            ExperimentId.PURITY_D234: self._run_purity_d234,
            ExperimentId.JORDAN_WINDOW: self._run_jordan_window,
            ExperimentId.SWEEP: self._run_sweep,
        }

    # -- validation ----------------------------------------------------------

    def validate(self, spec: ExperimentSpec) -> ValidationReport:
        """Dry-run capacity and consistency checks; nothing is computed.

        Args:
            spec: Experiment request

        Returns:
            ValidationReport with one verdict per finding
        """
        report = ValidationReport(experiment=spec.experiment)
        experiment = spec.experiment
        n, d = spec.n, spec.d
        work = 0.0

        if experiment in (ExperimentId.FIG1, ExperimentId.SWEEP) and spec.realizations > 0:
            amplitudes = d ** n
            if amplitudes > self.simulation.max_amplitudes:
                report.add(
                    VerdictLevel.REFUSAL,
                    f"Monte Carlo needs {d}^{n} = {amplitudes:.3e} amplitudes, above the limit of "
                    f"{self.simulation.max_amplitudes}",
                )
            else:
                report.memory_bytes += 3 * 16 * amplitudes
                work += float(amplitudes) * max(spec.t_max, 1) * (n - 1) * d ** 2 * spec.realizations

        if experiment in CLOSED_SPECTRUM and n % 2:
            report.add(VerdictLevel.UNSUPPORTED, f"the closed spectrum of T is only available for even n, got n = {n}")
        if experiment in (ExperimentId.FIG3, ExperimentId.FIG4A, ExperimentId.LAMBDA_EFF):
            sizes = spec.sizes or REGISTRY[experiment].defaults["sizes"]
            odd = [m for m in sizes if m % 2]
            if odd:
                report.add(VerdictLevel.UNSUPPORTED, f"the closed spectrum needs even n, got sizes {odd}")
            # The angle between R_1 and R_2 needs at least two nonzero eigenvalues
            small = [m for m in sizes if m < (6 if experiment == ExperimentId.FIG3 else 4)]
            if small:
                report.add(VerdictLevel.REFUSAL, f"sizes {small} are too small for {experiment.value}")
        if spec.protocol == Protocol.BRICKWALL and n % 2 and experiment != ExperimentId.SWEEP:
            report.add(VerdictLevel.UNSUPPORTED, f"the brick-wall reduction needs even n, got n = {n}")
        if spec.protocol == Protocol.BRICKWALL and experiment in STAIRCASE_ONLY:
            report.add(VerdictLevel.WARNING, f"{experiment.value} always analyses the staircase matrix T")

        if experiment == ExperimentId.JORDAN_WINDOW and n > self.simulation.max_chain_sites:
            report.add(
                VerdictLevel.REFUSAL,
                f"exact Jordan chains support n <= {self.simulation.max_chain_sites}, got n = {n}",
            )

        if experiment in (ExperimentId.FIG4B, ExperimentId.FIG4C):
            sizes = [n] if experiment == ExperimentId.FIG4C else (spec.sizes or REGISTRY[experiment].defaults["sizes"])
            too_large = [m for m in sizes if m > self.simulation.max_pseudospectrum_size]
            if too_large:
                report.add(
                    VerdictLevel.REFUSAL,
                    f"pseudospectrum sampling supports n <= {self.simulation.max_pseudospectrum_size}, got {too_large}",
                )
            largest = max(sizes)
            report.memory_bytes = max(report.memory_bytes, 3 * 8 * largest ** 2)
            epsilons = spec.epsilon or REGISTRY[experiment].defaults["epsilon"]
            work += sum(10.0 * m ** 3 for m in sizes) * spec.trials * len(epsilons)
            if any(e <= 0 for e in epsilons):
                report.add(VerdictLevel.REFUSAL, "perturbation strengths must be positive")

        if experiment == ExperimentId.SWEEP:
            self._validate_sweep(spec, report)
        elif experiment in (ExperimentId.FIG1,) and n >= 4:
            cuts = reduced_cuts(n, spec.protocol)
            k = spec.cuts[0] if spec.cuts else _closed_form_cut(n, spec.protocol)
            if k not in cuts:
                report.add(VerdictLevel.REFUSAL, f"cut {k} is not carried by the {spec.protocol.value} reduction")
        if n < 4 and experiment != ExperimentId.SWEEP:
            report.add(VerdictLevel.REFUSAL, f"the reduced description needs n >= 4, got n = {n}")

        if experiment == ExperimentId.JORDAN_WINDOW:
            work += float(n) ** 4
        elif experiment != ExperimentId.SWEEP:
            work += float(max(spec.sizes or [n])) ** 2 * max(spec.t_max, 1)

        report.runtime_class = _runtime_class(work)
        if not report.verdicts:
            report.add(VerdictLevel.OK, f"{experiment.value} is runnable ({report.runtime_class})")
        return report

    def _validate_sweep(self, spec: ExperimentSpec, report: ValidationReport):
        n = spec.n
        if n <= FULL_SWEEP_SITES:
            report.memory_bytes = max(report.memory_bytes, 2 * 8 * (1 << n))
            valid = range(1, n)
        else:
            if n % 2 and spec.protocol == Protocol.BRICKWALL:
                report.add(VerdictLevel.UNSUPPORTED, f"the brick-wall reduction needs even n, got n = {n}")
                return
            valid = reduced_cuts(n, spec.protocol)
            if spec.mode == NumericMode.RATIONAL and n > 200:
                report.add(VerdictLevel.WARNING, "exact rationals at this size grow large; expect a slow run")
        bad = [k for k in spec.cuts if k not in valid]
        if bad:
            report.add(VerdictLevel.REFUSAL, f"cuts {bad} are not available for n = {n}")

    # -- execution -----------------------------------------------------------

    def run(self, spec: ExperimentSpec) -> ExperimentResult:
        """Validate, then compute every table of the experiment in memory.

        Args:
            spec: Experiment request

        Returns:
            ExperimentResult ready to be saved
        """
        report = self.validate(spec)
        for verdict in report.verdicts:
            if verdict.level == VerdictLevel.REFUSAL:
                raise CapacityError(verdict.message)
            if verdict.level == VerdictLevel.UNSUPPORTED:
                raise UnsupportedSizeError(verdict.message)

        result = ExperimentResult(
            experiment=spec.experiment,
            metadata={
                "experiment": spec.experiment.value,
                "d": spec.d,
                "n": spec.n,
                "seed": spec.seed,
                "protocol": spec.protocol.value,
                "version": __version__,
                "spec_hash": spec.spec_hash,
                "spec": spec.canonical_json(),
            },
        )
        logger.info("running %s (hash %s)", spec.experiment.value, spec.spec_hash)
        self._handlers[spec.experiment](spec, result)
        return result

    def _run_fig1(self, spec: ExperimentSpec, result: ExperimentResult):
        n, d, t_max = spec.n, spec.d, spec.t_max
        k = spec.cuts[0] if spec.cuts else _closed_form_cut(n, spec.protocol)
        times = np.arange(t_max + 1)

        exact = np.array([s[k] for s in propagate_reduced(n, d, t_max, protocol=spec.protocol)])
        rate = float(lambda_phantom(d))
        phantom = rate ** times

        asymptote = np.full(t_max + 1, np.nan)
        if n % 2 == 0 and spec.protocol == Protocol.STAIRCASE:
            deviation = deviation_series(n, d, k, t_max, spec.protocol)
            steady = float(lubkin_purity(d, n, k))
            asymptote = steady + deviation[-1] * lambda2(n, d) ** (times - t_max)
            result.metadata["lambda2"] = lambda2(n, d)
        else:
            result.notes.append("no closed lambda_2 for this size or protocol, asymptote column left empty")

        mc_mean = np.full(t_max + 1, np.nan)
        mc_err = np.full(t_max + 1, np.nan)
        if spec.realizations > 0:
            series = mc_purity_series(spec.circuit(), [k], spec.realizations, self.simulation)
            mc_mean, mc_err = series.mean[:, 0], series.stderr[:, 0]
        else:
            result.notes.append("realizations = 0: Monte Carlo column skipped")

        result.metadata.update({"cut": k, "lambda_ph": rational_string(lambda_phantom(d))})
        result.tables["purity"] = pd.DataFrame({
            "t": times,
            "I_mc_single": mc_mean,
            "I_mc_stderr": mc_err,
            "I_exact": exact,
            "phantom": phantom,
            "lambda2_asymptote": asymptote,
        })

    def _run_fig3(self, spec: ExperimentSpec, result: ExperimentResult):
        n, d = spec.n, spec.d
        rows = []
        data = closed_spectrum(n, d)
        for j in range(1, min(3, n // 2 - 1) + 1):
            right, left = closed_eigenvectors(n, d, j)
            right = right / np.linalg.norm(right)
            left = left / np.linalg.norm(left)
            for k in range(n - 2):
                rows.append({
                    "n": n, "j": j, "k": k + 1,
                    "lambda": float(data.eigenvalues[j - 1]),
                    "R": float(right[k]), "L": float(left[k]),
                })
        result.tables["eigenvectors"] = pd.DataFrame(rows)

        sizes = spec.sizes or REGISTRY[ExperimentId.FIG3].defaults["sizes"]
        angles = pd.DataFrame({
            "n": sizes,
            "angle": [skin_angle(m, d, 2) for m in sizes],
            "overlap_ratio": [overlap_ratio(m, d, 1) for m in sizes],
        })
        result.tables["angles"] = angles
        if len(sizes) >= 2:
            slope = np.polyfit(np.log(angles["n"]), np.log(angles["angle"]), 1)[0]
            result.metadata["angle_slope"] = float(slope)

    def _run_fig4a(self, spec: ExperimentSpec, result: ExperimentResult):
        d = spec.d
        curve = symbol_curve(d, self.config.spectra.symbol_grid)
        result.tables["symbol"] = curve.to_frame()

        a = float(alpha(d))
        coefficients = symbol_coefficients(curve)
        result.tables["coefficients"] = pd.DataFrame({
            "k": list(coefficients),
            "a_re": [c.real for c in coefficients.values()],
            "a_im": [c.imag for c in coefficients.values()],
            "expected": [a if k == -1 else (a ** (k + 2) if k >= 0 else 0.0) for k in coefficients],
        })

        rows = []
        for m in spec.sizes or REGISTRY[ExperimentId.FIG4A].defaults["sizes"]:
            data = closed_spectrum(m, d)
            rows.extend({"n": m, "j": j + 1, "lambda": float(v)} for j, v in enumerate(data.eigenvalues))
        result.tables["spectrum"] = pd.DataFrame(rows)

        sup, theta = symbol_sup_norm(curve)
        result.metadata.update({
            "sup_norm": sup,
            "sup_theta": theta,
            "lambda_ph": rational_string(lambda_phantom(d)),
            "lambda2_tdl": rational_string(lambda2_tdl(d)),
        })

    def _sampler(self) -> PseudospectrumSampler:
        return PseudospectrumSampler(self.simulation, self.config.spectra)

    def _run_fig4b(self, spec: ExperimentSpec, result: ExperimentResult):
        d = spec.d
        epsilon = (spec.epsilon or [self.config.spectra.epsilon])[0]
        curve = symbol_curve(d, self.config.spectra.symbol_grid)
        sampler = self._sampler()

        frames, summary = [], []
        for m in spec.sizes or REGISTRY[ExperimentId.FIG4B].defaults["sizes"]:
            cloud = sampler.sample(m, d, epsilon, spec.trials, spec.seed)
            frames.append(cloud.to_frame())
            points = cloud.points
            summary.append({
                "n": m,
                "hausdorff": hausdorff_distance(points, curve.values) if points.size else math.nan,
                "max_modulus": float(np.max(np.abs(points))) if points.size else math.nan,
                "failed_trials": len(cloud.failed_trials),
            })
        result.tables["cloud"] = pd.concat(frames, ignore_index=True)
        result.tables["symbol"] = curve.to_frame()
        result.tables["summary"] = pd.DataFrame(summary)
        result.metadata["epsilon"] = epsilon

    def _run_fig4c(self, spec: ExperimentSpec, result: ExperimentResult):
        n, d = spec.n, spec.d
        epsilons = spec.epsilon or REGISTRY[ExperimentId.FIG4C].defaults["epsilon"]
        finite = closed_spectrum(n, d).eigenvalues
        targets = np.concatenate([finite, [0.0]]).astype(complex)
        target_points = np.column_stack([targets.real, targets.imag])
        sampler = self._sampler()

        frames, summary = [], []
        for epsilon in epsilons:
            cloud = sampler.sample(n, d, epsilon, spec.trials, spec.seed)
            frames.append(cloud.to_frame())
            points = cloud.points
            distance = math.nan
            if points.size:
                distance = directed_hausdorff(np.column_stack([points.real, points.imag]), target_points)[0]
            summary.append({
                "epsilon": epsilon,
                "distance": float(distance),
                "max_imag": float(np.max(np.abs(points.imag))) if points.size else math.nan,
            })
        result.tables["cloud"] = pd.concat(frames, ignore_index=True)
        result.tables["finite_spectrum"] = pd.DataFrame({"j": np.arange(1, finite.size + 1), "lambda": finite})
        result.tables["summary"] = pd.DataFrame(summary)

    def _run_lambda_eff(self, spec: ExperimentSpec, result: ExperimentResult):
        d = spec.d
        rate = float(lambda_phantom(d))
        frames, transitions = [], []
        for m in spec.sizes or REGISTRY[ExperimentId.LAMBDA_EFF].defaults["sizes"]:
            k = _closed_form_cut(m, spec.protocol)
            # Long enough for both stages to show
            horizon = max(spec.t_max, 6 * m)
            deviation = deviation_series(m, d, k, horizon, spec.protocol)
            rates = effective_rate(deviation, settings=self.simulation)
            rates = rates.model_copy(update={"n": m, "d": d, "cut": k, "subtracted": True})
            frame = rates.to_frame()
            frame.insert(0, "n", m)
            frames.append(frame)

            t_star = transition_time(rates, rate, lambda2(m, d))
            transitions.append({
                "n": m,
                "t_star": math.nan if t_star is None else t_star,
                "lambda_ph": rate,
                "lambda2": lambda2(m, d),
                "rate_ratio": rate_ratio(m, d),
            })
        result.tables["rates"] = pd.concat(frames, ignore_index=True)
        result.tables["transition"] = pd.DataFrame(transitions)

    def _run_purity_d234(self, spec: ExperimentSpec, result: ExperimentResult):
        n, t_max = spec.n, spec.t_max
        k = _closed_form_cut(n, spec.protocol)
        times = np.arange(t_max + 1)
        frames = []
        for d in (2, 3, 4):
            slow = lambda2(n, d) if n % 2 == 0 else float(lambda2_tdl(d))
            frames.append(pd.DataFrame({
                "d": d,
                "t": times,
                "deviation": deviation_series(n, d, k, t_max, spec.protocol),
                "phantom": float(lambda_phantom(d)) ** times,
                "lambda2_power": slow ** times,
            }))
        result.tables["purity"] = pd.concat(frames, ignore_index=True)
        result.metadata["cut"] = k

    def _run_jordan_window(self, spec: ExperimentSpec, result: ExperimentResult):
        n, d, t_max = spec.n, spec.d, spec.t_max
        half, quarter = n // 2, max(2, n // 4)
        exact = propagate_reduced(n, d, t_max)
        data = closed_spectrum(n, d, with_chains=True, settings=self.simulation)
        full = spectral_series(n, d, t_max, include_kernel=True, data=data)
        only = spectral_series(n, d, t_max, include_kernel=False, data=data)

        frame = pd.DataFrame({
            "t": np.arange(t_max + 1),
            "I_exact": [s[half] for s in exact],
            "I_spectral_full": [s[half] for s in full],
            "I_spectral_only": [s[half] for s in only],
            "I_quarter_exact": [s[quarter] for s in exact],
            "I_quarter_spectral_only": [s[quarter] for s in only],
        })
        frame["kernel_matters"] = (
            (frame["I_exact"] - frame["I_spectral_only"]).abs().gt(1e-10)
            | (frame["I_quarter_exact"] - frame["I_quarter_spectral_only"]).abs().gt(1e-10)
        )
        result.tables["purity"] = frame
        result.metadata.update({"cut": half, "quarter_cut": quarter, "kernel_length": n // 2 - 1})

    def _run_sweep(self, spec: ExperimentSpec, result: ExperimentResult):
        n, d, t_max = spec.n, spec.d, spec.t_max
        exact_mode = spec.mode == NumericMode.RATIONAL

        if n <= FULL_SWEEP_SITES:
            cuts = spec.cuts or list(range(1, n))
            vectors = iterate_full(spec.circuit(), mode=spec.mode, settings=self.simulation)
            snapshots = contiguous_series(vectors, cuts, spec.protocol)
            result.metadata["engine"] = "full"
        else:
            cuts = spec.cuts or list(reduced_cuts(n, spec.protocol))
            snapshots = propagate_reduced(n, d, t_max, spec.mode, spec.protocol)
            result.metadata["engine"] = "reduced"

        mc = None
        if spec.realizations > 0:
            mc = mc_purity_series(spec.circuit(), cuts, spec.realizations, self.simulation)

        rows = []
        for snapshot in snapshots:
            for c, k in enumerate(cuts):
                value = snapshot[k]
                row = {"t": snapshot.t, "k": k, "purity": float(value)}
                if exact_mode:
                    row["purity_exact"] = rational_string(value)
                if mc is not None:
                    row["mc_mean"] = float(mc.mean[snapshot.t, c])
                    row["mc_stderr"] = float(mc.stderr[snapshot.t, c])
                rows.append(row)
        result.tables["purity"] = pd.DataFrame(rows)


def validate(spec: ExperimentSpec, config: Optional[AppConfig] = None) -> ValidationReport:
    """Dry-run check of a spec."""
    return ExperimentRunner(config).validate(spec)


def run_experiment(spec: ExperimentSpec, config: Optional[AppConfig] = None) -> ExperimentResult:
    """Compute every table of an experiment; nothing is written here."""
    if spec.experiment not in REGISTRY:
        raise InvalidDimensionError(f"unknown experiment {spec.experiment}")
    return ExperimentRunner(config).run(spec)
