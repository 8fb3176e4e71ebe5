"""Unit tests for symbol analysis, pseudospectra and relaxation rates."""

from fractions import Fraction

import numpy as np
import pytest

from src.config import SimulationConfig, SpectraConfig
from src.exceptions import CapacityError, InvalidDimensionError, SymbolDomainError, UnsupportedSizeError
from src.models.spectral import MembershipVerdict, RateSeries
from src.spectra import (
    PseudospectrumSampler,
    brickwall_symbol,
    effective_rate,
    exact_spectrum,
    hausdorff_distance,
    lambda_phantom,
    overlap_ratio,
    pseudospectrum_sample,
    rate_ratio,
    skin_angle,
    symbol_coefficients,
    symbol_curve,
    symbol_eval,
    symbol_region_membership,
    symbol_sup_norm,
    transition_time,
    winding_number,
)
from src.toeplitz import closed_spectrum, deviation_series, lambda2


class TestPhantomRate:
    """Tests for the phantom decay rate."""

    @pytest.mark.parametrize("d,expected", [(2, Fraction(2, 3)), (3, Fraction(3, 7)), (4, Fraction(4, 13))])
    def test_values(self, d, expected):
        assert lambda_phantom(d) == expected

    def test_above_lambda2(self):
        for d in (2, 3, 4):
            assert rate_ratio(20, d) > 1


class TestSymbol:
    """Tests for the Toeplitz symbol."""

    def test_point_values(self):
        assert symbol_eval(1, 2) == pytest.approx(2 / 3)
        assert symbol_eval(-1, 2) == pytest.approx(-2 / 7)
        assert symbol_eval(1j, 2) == pytest.approx(0.137931 - 0.344828j, abs=1e-6)

    def test_pole(self):
        with pytest.raises(SymbolDomainError):
            symbol_eval(0, 2)

    def test_curve_is_closed(self):
        curve = symbol_curve(3, 512)
        assert curve.values[0] == pytest.approx(curve.values[-1])
        assert curve.theta.size == 513

    def test_sup_norm_is_phantom_rate(self):
        sup, theta = symbol_sup_norm(symbol_curve(3, 4096))
        assert sup == pytest.approx(3 / 7, abs=1e-12)
        assert theta == pytest.approx(0.0)

    def test_fourier_coefficients(self):
        a = 0.4
        coefficients = symbol_coefficients(symbol_curve(2, 1024))
        assert coefficients[-1] == pytest.approx(a, abs=1e-12)
        assert coefficients[-2] == pytest.approx(0, abs=1e-12)
        for k in range(0, 6):
            assert coefficients[k] == pytest.approx(a ** (k + 2), abs=1e-12)

    def test_grid_too_small(self):
        with pytest.raises(InvalidDimensionError):
            symbol_curve(2, 2)

    def test_brickwall_symbol_is_real(self):
        theta = np.linspace(0, 2 * np.pi, 101)
        values = brickwall_symbol(theta, 2)
        assert np.all(values >= 0)
        assert values.max() == pytest.approx(4 * 0.16)


class TestMembership:
    """Tests for the symbol-region membership test."""

    def test_inside(self):
        assert symbol_region_membership(0.2, 3) == MembershipVerdict.INSIDE

    def test_outside(self):
        for d in (2, 3, 5):
            assert symbol_region_membership(10, d) == MembershipVerdict.OUTSIDE

    def test_on_boundary(self):
        assert symbol_region_membership(3 / 7, 3) == MembershipVerdict.BOUNDARY

    def test_finite_spectrum_lies_inside(self):
        for value in closed_spectrum(20, 3).eigenvalues:
            assert symbol_region_membership(value, 3, config=SpectraConfig(symbol_grid=2048)) == MembershipVerdict.INSIDE

    def test_winding_number(self):
        assert winding_number(0.2, 3, 1024) != 0
        assert winding_number(10, 3, 1024) == 0


class TestFiniteSpectrum:
    """Tests for the exact nonzero spectrum."""

    def test_matches_closed_form(self):
        values = exact_spectrum(12, 3)
        assert np.allclose(values.real, closed_spectrum(12, 3).eigenvalues, atol=1e-10)
        assert np.allclose(values.imag, 0, atol=1e-12)

    def test_odd_n(self):
        with pytest.raises(UnsupportedSizeError):
            exact_spectrum(9, 3)


class TestPseudospectrum:
    """Tests for eigenvalue clouds of perturbed T."""

    def test_reproducible(self):
        a = pseudospectrum_sample(20, 3, 1e-10, trials=2, seed=5)
        b = pseudospectrum_sample(20, 3, 1e-10, trials=2, seed=5)
        assert np.array_equal(a.points, b.points)
        assert a.trials == [0, 1]

    def test_conjugate_pairs(self):
        cloud = pseudospectrum_sample(30, 3, 1e-12, seed=1)
        values = cloud.points
        complex_values = values[np.abs(values.imag) > 1e-12]
        for z in complex_values:
            assert np.min(np.abs(values - np.conj(z))) < 1e-8

    def test_tiny_perturbation_recovers_finite_spectrum(self):
        cloud = pseudospectrum_sample(20, 3, 1e-40, seed=0)
        leading = np.sort(cloud.points.real)[::-1][:5]
        assert np.allclose(leading, closed_spectrum(20, 3).eigenvalues[:5], atol=1e-6)

    @pytest.mark.slow
    def test_large_n_traces_symbol(self):
        cloud = pseudospectrum_sample(500, 3, 1e-15, seed=0)
        modulus = np.max(np.abs(cloud.points))
        assert lambda2(500, 3) < modulus < 1.05 * 3 / 7

    def test_frame_columns(self):
        cloud = pseudospectrum_sample(10, 2, 1e-8, trials=3, seed=2)
        frame = cloud.to_frame()
        assert list(frame.columns) == ["n", "epsilon", "trial", "lambda_re", "lambda_im"]
        assert len(frame) == 3 * 8

    def test_rejects_bad_epsilon(self):
        with pytest.raises(InvalidDimensionError):
            PseudospectrumSampler().sample(10, 2, epsilon=0.0)

    def test_capacity(self):
        sampler = PseudospectrumSampler(SimulationConfig(max_pseudospectrum_size=50))
        with pytest.raises(CapacityError):
            sampler.sample(60, 2, 1e-10)


class TestGeometry:
    """Tests for distances and eigenvector angles."""

    def test_hausdorff(self):
        assert hausdorff_distance([0, 1], [0, 1j]) == pytest.approx(1.0)
        assert hausdorff_distance([0, 2], [0]) == pytest.approx(2.0)
        assert hausdorff_distance([0.5], [0.5]) == 0

    def test_hausdorff_needs_points(self):
        with pytest.raises(InvalidDimensionError):
            hausdorff_distance([], [1])

    def test_skin_angle_shrinks(self):
        angles = [skin_angle(n, 3) for n in (40, 80, 160)]
        assert angles[0] > angles[1] > angles[2] > 0

    def test_skin_angle_falls_like_inverse_square(self):
        sizes = np.array([40, 80, 160, 320, 640])
        angles = [skin_angle(int(n), 3) for n in sizes]
        slope = np.polyfit(np.log(sizes), np.log(angles), 1)[0]
        assert slope == pytest.approx(-2, abs=0.3)

    def test_overlap_ratio_exponentially_small(self):
        assert overlap_ratio(40, 3) < 1e-3
        assert overlap_ratio(80, 3) < overlap_ratio(40, 3) ** 1.5


class TestEffectiveRate:
    """Tests for the successive-ratio decay rate."""

    def test_geometric_series(self):
        rates = effective_rate(0.5 ** np.arange(20))
        assert np.allclose(rates.rates, 0.5)
        assert rates.times[0] == 0.5

    def test_subtracted(self):
        series = 0.3 + 0.2 * 0.6 ** np.arange(10)
        rates = effective_rate(series, i_inf=0.3, subtract=True)
        assert np.allclose(rates.rates, 0.6)
        assert rates.subtracted

    def test_truncates_at_floor(self):
        series = np.array([1.0, 1e-3, 0.0, 0.0])
        rates = effective_rate(series, floor=1e-300)
        assert rates.rates.size == 2

    def test_floor_from_settings(self):
        series = 0.5 ** np.arange(10)
        rates = effective_rate(series, settings=SimulationConfig(numeric_floor=0.0625))
        assert rates.rates.size == 4
        assert effective_rate(series, floor=0.0625, settings=SimulationConfig()).rates.size == 4

    def test_subtract_needs_steady_state(self):
        with pytest.raises(InvalidDimensionError):
            effective_rate([1.0, 0.5], subtract=True)

    def test_staircase_starts_at_phantom_rate(self):
        rates = effective_rate(deviation_series(20, 3, 10, 200))
        assert rates.rates[3] == pytest.approx(3 / 7, rel=0.02)
        assert rates.rates[-1] == pytest.approx(lambda2(20, 3), rel=1e-3)


class TestTransitionTime:
    """Tests for the phantom-to-lambda_2 transition."""

    def test_synthetic_jump(self):
        lam_ph, lam_2 = 3 / 7, 0.35
        values = [lam_ph ** t for t in range(8)]
        for _ in range(10):
            values.append(values[-1] * lam_2)
        rates = effective_rate(values)
        assert transition_time(rates, lam_ph, lam_2) == pytest.approx(7.0)

    def test_no_plateau(self):
        rates = RateSeries(times=np.arange(5) + 0.5, rates=np.full(5, 0.2))
        assert transition_time(rates, 0.6, 0.4) is None

    def test_never_crosses(self):
        rates = RateSeries(times=np.arange(5) + 0.5, rates=np.full(5, 0.6))
        assert transition_time(rates, 0.6, 0.4) is None

    def test_brickwall_has_no_transition(self):
        n, d = 100, 2
        rates = effective_rate(deviation_series(n, d, 50, 60, "brickwall"))
        assert transition_time(rates, float(lambda_phantom(d)), lambda2(n, d)) is None

    def test_grows_linearly_with_n(self):
        d = 3
        sizes = np.array([20, 40, 80])
        times = []
        for n in (20, 40, 80):
            rates = effective_rate(deviation_series(n, d, n // 2, 6 * n))
            times.append(transition_time(rates, float(lambda_phantom(d)), lambda2(n, d)))
        times = np.array(times)
        assert np.all(times > 0)

        # t* is affine in n with a negative offset, so t*(2n)/t*(n) overshoots 2
        # at small n; doubling n must still double the increment of t*.
        steps = np.diff(times)
        assert steps[1] / steps[0] == pytest.approx(2, rel=0.2)

        slope, offset = np.polyfit(sizes, times, 1)
        local_slopes = steps / np.diff(sizes)
        assert np.allclose(local_slopes, slope, rtol=0.2)
        assert offset < 0
