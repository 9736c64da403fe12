"""Tests for Wilson's spectral factorization."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import outer_factor
import processing.fejer as fejer
from processing.errors import (
    DomainError, NegativeInstance, NoConvergence, RootExclusionError, SingularMatrix,
)
from processing.fejer import (
    FejerInstance, autocorrelation_residual, build_jacobian, check_nonnegative, convolve_gamma,
    solve_linear, wilson_factorize, winding_number,
)


class TestBuildingBlocks:
    """Autocorrelation, Jacobian and linear solve."""

    def test_convolve_gamma(self):
        assert_allclose(convolve_gamma([1.0, 0.5]), [1.25, 0.5])
        assert_allclose(convolve_gamma([1.0, 2.0, 3.0]), [14.0, 8.0, 3.0])

    def test_jacobian_is_derivative(self):
        gamma = np.array([1.0, 0.3, -0.2, 0.1])
        step = 1e-7
        numeric = np.column_stack([
            (convolve_gamma(gamma + step * e) - convolve_gamma(gamma - step * e)) / (2 * step)
            for e in np.eye(gamma.size)
        ])
        assert_allclose(build_jacobian(gamma), numeric, atol=1e-7)

    def test_solve_linear(self):
        A = np.array([[0.0, 2.0], [1.0, 1.0]])
        assert_allclose(solve_linear(A, [2.0, 3.0]), [2.0, 1.0])

    def test_singular_matrix(self):
        with pytest.raises(SingularMatrix, match="pivot"):
            solve_linear(np.zeros((2, 2)), [1.0, 1.0])

    def test_winding_number(self):
        assert winding_number([1.0, 0.5]) == 0
        assert winding_number([0.5, 1.0]) == 1

    def test_autocorrelation_residual(self):
        assert_allclose(autocorrelation_residual([1.0, 2.0, 3.0], [14.0, 8.0, 3.0]), 0.0, atol=0)
        assert_allclose(autocorrelation_residual([1.0, 0.5], [1.0, 0.5]), [0.25, 0.0])

    @pytest.mark.skipif(np.finfo(np.longdouble).eps >= np.finfo(float).eps,
                        reason="long double is binary64 on this platform")
    def test_residual_resolves_below_double_rounding(self):
        # 1 + 2^-60 rounds to 1 in binary64
        gamma = np.array([1.0, 2.0 ** -30])
        assert autocorrelation_residual(gamma, [1.0, 0.0])[0] == 2.0 ** -60


class TestNonnegativity:
    """Witness check before iterating."""

    def test_negative_instance(self):
        with pytest.raises(NegativeInstance):
            check_nonnegative(FejerInstance([1.0, 1.0]))

    def test_nonpositive_constant(self):
        with pytest.raises(NegativeInstance, match="F_0"):
            check_nonnegative(FejerInstance([0.0, 0.0]))

    def test_positive_instance_unchanged(self):
        instance = FejerInstance([1.25, 0.5])
        assert check_nonnegative(instance) is instance


class TestWilsonFactorize:
    """Recovery of known outer factors."""

    def test_linear_factor(self):
        factor, report = wilson_factorize(FejerInstance([1.25, 0.5]))
        assert_allclose(factor.gamma, [1.0, 0.5], atol=1e-13)
        assert report.converged
        assert report.iterations >= 1

    def test_constant_instance(self):
        factor, report = wilson_factorize(FejerInstance([4.0]))
        assert_allclose(factor.gamma, [2.0])
        assert report.converged

    def test_recovers_random_factors(self, rng):
        for degree in (2, 4, 7, 12):
            expected = outer_factor(degree, rng)
            factor, report = wilson_factorize(FejerInstance(convolve_gamma(expected)))
            scale = np.max(np.abs(expected))
            assert np.max(np.abs(factor.gamma - expected)) <= 1e-10 * scale
            assert report.iterations <= 60
            assert winding_number(factor.gamma) == 0

    def test_scale_covariance(self, rng):
        expected = outer_factor(9, rng)
        F = convolve_gamma(expected)
        base, _ = wilson_factorize(FejerInstance(F))
        scaled, _ = wilson_factorize(FejerInstance(9.0 * F))
        assert_allclose(scaled.gamma, 3.0 * base.gamma, rtol=1e-10, atol=1e-12)

    def test_quadratic_convergence(self, rng):
        expected = outer_factor(10, rng)
        F = convolve_gamma(expected)
        _, report = wilson_factorize(FejerInstance(F))
        floor = 1e-12 * np.max(np.abs(F))
        history = report.residual_history
        for r, r_next in zip(history, history[1:]):
            if r < 1e-4:
                assert r_next <= 10 * r * r + floor

    def test_iteration_limit(self, rng):
        expected = outer_factor(8, rng, low=1.05, high=1.2)
        with pytest.raises(NoConvergence) as info:
            wilson_factorize(FejerInstance(convolve_gamma(expected)), max_iter=1)
        assert info.value.report.iterations == 1
        assert not info.value.report.converged
        assert info.value.factor is not None

    def test_returns_best_iterate(self, rng):
        expected = outer_factor(16, rng, low=1.2, high=2.0)
        F = convolve_gamma(expected)
        factor, report = wilson_factorize(FejerInstance(F))
        assert report.residual_linf == min(report.residual_history)
        residual = np.max(np.abs(autocorrelation_residual(factor.gamma, F)))
        assert residual == report.residual_linf

    def test_iterate_with_inner_root_rejected(self, monkeypatch):
        monkeypatch.setattr(fejer, 'newton_step', lambda gamma, F: np.array([0.5, 1.0]))
        with pytest.raises(RootExclusionError, match="step 1"):
            wilson_factorize(FejerInstance([1.25, 0.5]))

    def test_rejects_nonpositive_tolerance(self):
        with pytest.raises(DomainError, match="eps_fejer"):
            wilson_factorize(FejerInstance([1.25, 0.5]), eps_fejer=0.0)


@pytest.mark.slow
class TestWilsonOracleSuite:
    """One hundred random factors of degree 4 to 64."""

    def test_suite(self, rng):
        for i in range(100):
            degree = int(rng.integers(4, 65))
            expected = outer_factor(degree, rng, low=1.1, high=3.0)
            expected /= np.linalg.norm(expected)
            factor, report = wilson_factorize(FejerInstance(convolve_gamma(expected)))
            assert np.max(np.abs(factor.gamma - expected)) <= 1e-10, i
            assert report.iterations <= 60, i
            assert winding_number(factor.gamma) == 0, i
