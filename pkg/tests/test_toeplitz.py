"""Unit tests for the reduced Toeplitz description."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.core import alpha, lubkin_purity
from src.exceptions import InvalidDimensionError, UnsupportedSizeError
from src.models.circuit import NumericMode, Protocol
from src.toeplitz import (
    affine_matrix,
    brickwall_matrix,
    characteristic_check,
    chebyshev_u,
    closed_eigenvectors,
    closed_form_small_t,
    closed_spectrum,
    deviation_series,
    in_boundary_free_window,
    jordan_chains,
    kernel_rank_profile,
    lambda2,
    lambda2_tdl,
    ones_reduced,
    phantom_polynomial_degree,
    propagate_reduced,
    recursion_step,
    reduced_cuts,
    similarity_normalize,
    spectral_propagate,
    spectral_series,
    steady_reduced,
    toeplitz_matrix,
)

F = Fraction


class TestMatrices:
    """Tests for the staircase and brick-wall matrices."""

    def test_toeplitz_entries(self):
        t = toeplitz_matrix(6, 2, NumericMode.RATIONAL)
        a = F(2, 5)
        assert t[0] == [a ** 2, a, 0, 0]
        assert t[3] == [a ** 5, a ** 4, a ** 3, a ** 2]

    def test_float_matches_rational(self):
        exact = toeplitz_matrix(9, 3, NumericMode.RATIONAL)
        assert np.allclose(toeplitz_matrix(9, 3), [[float(x) for x in row] for row in exact], atol=1e-16)

    def test_needs_interior_cuts(self):
        with pytest.raises(InvalidDimensionError):
            toeplitz_matrix(3, 2)

    def test_affine_matrix_fixes_steady_state(self):
        n, d = 8, 3
        a = affine_matrix(n, d, NumericMode.RATIONAL)
        steady = [F(1)] + steady_reduced(n, d) + [F(1)]
        image = [sum((x * y for x, y in zip(row, steady)), F(0)) for row in a]
        assert image == steady

    def test_brickwall_tridiagonal(self):
        b = brickwall_matrix(8, 2, NumericMode.RATIONAL)
        a2 = F(4, 25)
        assert b == [[2 * a2, a2, 0], [a2, 2 * a2, a2], [0, a2, 2 * a2]]

    def test_brickwall_needs_even_n(self):
        with pytest.raises(UnsupportedSizeError):
            brickwall_matrix(7, 2)

    @pytest.mark.parametrize("n,d,entry", [(6, 2, F(4, 25)), (8, 3, F(9, 100))])
    def test_similarity_normalized_entries(self, n, d, entry):
        normalized = similarity_normalize(n, d)
        assert len(normalized) == n - 2
        for i, row in enumerate(normalized):
            for j, x in enumerate(row):
                assert x == (entry if i >= j - 1 else 0)

    @pytest.mark.parametrize("n", [4, 6, 10, 14])
    def test_rank_is_n_minus_3(self, n):
        ranks = kernel_rank_profile(n, 2)
        assert ranks[1] == n - 3
        assert ranks[n // 2 - 1] == ranks[n // 2] == n // 2 - 1


class TestRecursion:
    """Tests for one reduced step."""

    def test_first_step_d2(self):
        step = recursion_step(ones_reduced(4, 2, NumericMode.RATIONAL))
        assert step[2] == F(18, 25)
        assert step.t == 1

    def test_first_step_d3(self):
        step = recursion_step(ones_reduced(6, 3))
        assert step[2] == pytest.approx(0.48)

    def test_two_steps_half_cut(self):
        series = propagate_reduced(8, 2, 2, NumericMode.RATIONAL)
        assert float(series[2][4]) == pytest.approx(0.464128, abs=1e-12)

    def test_float_matches_rational(self):
        exact = propagate_reduced(12, 3, 6, NumericMode.RATIONAL)
        approx = propagate_reduced(12, 3, 6)
        for e, a in zip(exact, approx):
            assert np.allclose(a.as_array(), e.as_array(), rtol=1e-13)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidDimensionError):
            recursion_step(ones_reduced(6, 2), d=3)

    def test_converges_to_steady_state(self):
        final = propagate_reduced(8, 3, 400)[-1]
        assert np.allclose(final.as_array(), [float(x) for x in steady_reduced(8, 3)], atol=1e-14)

    def test_brickwall_cuts(self):
        assert reduced_cuts(10, Protocol.BRICKWALL) == (2, 4, 6, 8)
        series = propagate_reduced(10, 2, 1, protocol=Protocol.BRICKWALL)
        assert series[1][4] == pytest.approx(4 * 0.16)

    def test_negative_time(self):
        with pytest.raises(InvalidDimensionError):
            propagate_reduced(6, 2, -1)

    @pytest.mark.slow
    def test_phantom_decay_at_large_n(self):
        n = 2000
        series = propagate_reduced(n, 3, 8)
        for t, snapshot in enumerate(series):
            assert snapshot[n // 2] / (3 / 7) ** t == pytest.approx(1.0, abs=1e-9)

    def test_deviation_series_decays_like_lambda2(self):
        n, d = 12, 2
        deviation = deviation_series(n, d, n // 2, 300)
        assert deviation[0] == pytest.approx(1 - float(lubkin_purity(d, n, n // 2)))
        assert deviation[300] / deviation[299] == pytest.approx(lambda2(n, d), rel=1e-8)

    def test_brickwall_rate_has_no_phantom_stage(self):
        n, d = 100, 2
        deviation = deviation_series(n, d, n // 2, 6, Protocol.BRICKWALL)
        assert deviation[6] / deviation[5] == pytest.approx(lambda2(n, d), rel=0.05)

    def test_deviation_needs_carried_cut(self):
        with pytest.raises(InvalidDimensionError):
            deviation_series(10, 2, 3, 5, Protocol.BRICKWALL)


class TestClosedForms:
    """Tests for the small-time closed forms."""

    @pytest.mark.parametrize("d", [2, 3, 4])
    @pytest.mark.parametrize("t", [1, 2, 3])
    def test_match_recursion_in_window(self, d, t):
        for n in range(max(2 * t, 4), 14):
            final = propagate_reduced(n, d, t, NumericMode.RATIONAL)[-1]
            for k in range(2, n):
                if in_boundary_free_window(k, n, t):
                    assert closed_form_small_t(k, n, d, t) == final[k]

    def test_spot_values(self):
        assert closed_form_small_t(2, 4, 2, 1) == F(18, 25)
        assert float(closed_form_small_t(4, 8, 2, 2)) == pytest.approx(0.464128, abs=1e-12)
        assert closed_form_small_t(4, 8, 2, 1) == F(2, 3) + F(1, 3) * F(2, 5) ** 4

    def test_first_cut(self):
        assert closed_form_small_t(1, 6, 2, 1) == 2 * alpha(2)

    @pytest.mark.parametrize("t", [0, 4])
    def test_time_out_of_range(self, t):
        with pytest.raises(InvalidDimensionError):
            closed_form_small_t(2, 10, 2, t)

    def test_system_too_small(self):
        with pytest.raises(InvalidDimensionError):
            closed_form_small_t(2, 5, 2, 3)

    @pytest.mark.parametrize("t", [1, 2, 3, 4])
    def test_phantom_polynomial_degree(self, t):
        assert phantom_polynomial_degree(24, 3, t) == t - 1

    @given(
        st.integers(min_value=2, max_value=5),
        st.integers(min_value=4, max_value=18),
        st.integers(min_value=0, max_value=10),
    )
    @hypothesis_settings(max_examples=30, deadline=None)
    def test_purities_between_steady_state_and_one(self, d, n, t):
        final = propagate_reduced(n, d, t, NumericMode.RATIONAL)[-1]
        for value, steady in zip(final.values, steady_reduced(n, d)):
            assert steady <= value <= 1

    @given(
        st.integers(min_value=2, max_value=5),
        st.integers(min_value=2, max_value=9),
        st.sampled_from(list(Protocol)),
    )
    @hypothesis_settings(max_examples=30, deadline=None)
    def test_approach_to_steady_state_is_monotone(self, d, half, protocol):
        n = 2 * half
        series = propagate_reduced(n, d, 12, NumericMode.RATIONAL, protocol)
        for before, after in zip(series, series[1:]):
            assert all(b >= a for b, a in zip(before.values, after.values))


class TestSpectrum:
    """Tests for the closed-form spectrum of T."""

    def test_six_sites(self):
        data = closed_spectrum(6, 2)
        assert np.allclose(data.eigenvalues, [0.48, 0.16])
        assert data.zero_algebraic == 2
        assert np.sum(data.eigenvalues) == pytest.approx(0.64)

    def test_eigenvalues_match_dense_solver(self):
        data = closed_spectrum(12, 3)
        dense = np.sort(np.linalg.eigvals(toeplitz_matrix(12, 3)).real)[::-1]
        assert np.allclose(dense[: data.eigenvalues.size], data.eigenvalues, atol=1e-6)

    def test_odd_n_unsupported(self):
        with pytest.raises(UnsupportedSizeError):
            closed_spectrum(7, 2)

    @pytest.mark.parametrize("d,expected", [(2, F(16, 25)), (3, F(9, 25)), (4, F(64, 289))])
    def test_lambda2_limit(self, d, expected):
        assert lambda2_tdl(d) == expected

    def test_lambda2_finite(self):
        assert lambda2(20, 3) == pytest.approx(0.351190, abs=1e-6)

    def test_right_eigenvector(self):
        right, left = closed_eigenvectors(6, 2, 1)
        assert np.allclose(right, [2.5, 2.0, 1.2, 0.48])
        assert np.allclose(toeplitz_matrix(6, 2) @ right, 0.48 * right)

    @pytest.mark.parametrize("n,d,j", [(8, 2, 2), (12, 3, 1), (16, 4, 5)])
    def test_left_is_reflected_right(self, n, d, j):
        right, left = closed_eigenvectors(n, d, j)
        scale = left[0] / right[-1]
        assert np.allclose(left, scale * right[::-1])
        assert np.allclose(left @ toeplitz_matrix(n, d), closed_spectrum(n, d).eigenvalues[j - 1] * left)

    def test_localized_at_boundary(self):
        right, _ = closed_eigenvectors(60, 3, 1)
        ratio = 2 * 0.3 * np.cos(np.pi / 60)
        assert np.allclose(right[20:31] / right[19:30], ratio, rtol=0.2)

    def test_index_out_of_range(self):
        with pytest.raises(InvalidDimensionError):
            closed_eigenvectors(8, 2, 4)

    def test_chebyshev(self):
        assert chebyshev_u(0) == [1]
        assert chebyshev_u(3) == [0, -4, 0, 8]


class TestJordanChains:
    """Tests for the exact kernel chains."""

    @pytest.mark.parametrize("n,d", [(6, 2), (10, 3)])
    def test_chain_relations(self, n, d):
        right, left = jordan_chains(n, d)
        t = toeplitz_matrix(n, d, NumericMode.RATIONAL)
        apply = lambda v: [sum((x * y for x, y in zip(row, v)), F(0)) for row in t]
        assert len(right) == n // 2 - 1
        assert not any(apply(right[0]))
        for k in range(1, len(right)):
            assert apply(right[k]) == list(right[k - 1])
        for b, l in enumerate(left):
            for c, r in enumerate(right):
                assert sum((x * y for x, y in zip(l, r)), F(0)) == (1 if b == c else 0)


class TestSpectralPropagation:
    """Tests for purities assembled from the spectral decomposition."""

    def test_with_kernel_matches_iteration(self):
        n, d = 16, 4
        exact = propagate_reduced(n, d, 10)
        spectral = spectral_series(n, d, 10)
        for e, s in zip(exact[1:], spectral[1:]):
            assert np.allclose(s.as_array(), e.as_array(), atol=1e-10)

    def test_without_kernel_half_cut(self):
        n, d = 20, 3
        exact = propagate_reduced(n, d, 12)
        only = spectral_series(n, d, 12, include_kernel=False)
        for t in range(n // 4, 13):
            assert only[t][n // 2] == pytest.approx(exact[t][n // 2], abs=1e-10)
        assert abs(only[1][n // 2] - exact[1][n // 2]) > 1e-10

    def test_without_kernel_first_cut(self):
        n, d = 12, 2
        exact = propagate_reduced(n, d, 8)
        only = spectral_series(n, d, 8, include_kernel=False)
        assert only[n // 2 - 1][2] == pytest.approx(exact[n // 2 - 1][2], abs=1e-10)
        assert abs(only[n // 2 - 2][2] - exact[n // 2 - 2][2]) > 1e-10

    def test_jordan_window_at_d4(self):
        n, d = 16, 4
        exact = propagate_reduced(n, d, n)
        only = spectral_series(n, d, n, include_kernel=False)
        early = max(
            abs(only[t][k] - exact[t][k]) / exact[t][k]
            for t in range(1, n // 4)
            for k in reduced_cuts(n)
        )
        assert early > 0.01
        for t in range(n // 2 - 1, n + 1):
            assert np.allclose(only[t].as_array(), exact[t].as_array(), atol=1e-10)

    def test_single_time(self):
        value = spectral_propagate(10, 3, 4)
        assert value[5] == pytest.approx(propagate_reduced(10, 3, 4)[-1][5], abs=1e-10)


class TestCharacteristicPolynomial:
    """Tests for the exact characteristic-polynomial check."""

    @pytest.mark.parametrize("n,d", [(4, 2), (6, 2), (10, 3), (14, 4)])
    def test_passes(self, n, d):
        report = characteristic_check(n, d)
        assert report.passed
        assert report.zero_multiplicity == n // 2 - 1

    def test_determinant_at_root(self):
        report = characteristic_check(6, 2)
        assert max(report.determinants) < 1e-14
