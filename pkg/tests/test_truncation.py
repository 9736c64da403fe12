"""Tests for the degree formulas."""

import math

import pytest

from processing.errors import DomainError
from targets.truncation import (
    MAX_GAP, SIGN_EPS_LIMIT, inverse_parameters, n_erf, n_exp, require_eps, require_positive,
    sign_parameters,
    threshold_degree, truncation_hs,
)


class TestTruncationHs:
    """Jacobi-Anger truncation order."""

    def test_second_branch(self):
        assert truncation_hs(10, 1e-14) == 73

    def test_first_branch(self):
        # ceil(100 e + ln(1e14)) = ceil(304.064)
        assert truncation_hs(100, 1e-14) == 305

    def test_nondecreasing_within_branches(self):
        small = [truncation_hs(tau, 1e-14) for tau in (0.5, 1.0, 2.0, 5.0, 10.0)]
        large = [truncation_hs(tau, 1e-14) for tau in (12.0, 20.0, 50.0, 100.0)]
        assert small == sorted(small)
        assert large == sorted(large)

    @pytest.mark.parametrize("tau,eps", [(0.0, 1e-3), (-1.0, 1e-3), (1.0, 0.0), (1.0, 1.0)])
    def test_domain(self, tau, eps):
        with pytest.raises(DomainError):
            truncation_hs(tau, eps)


class TestErfDegrees:
    """n_exp, n_erf and the sign parameters."""

    def test_n_exp_formula(self):
        beta, eps = 2.0, 1e-6
        inner = math.ceil(max(beta * math.e ** 2, math.log(2.0 / eps)))
        assert n_exp(beta, eps) == math.ceil(math.sqrt(2.0 * math.log(4.0 / eps) * inner))

    def test_n_erf_is_odd(self):
        for k in (0.5, 2.0, 10.0):
            assert n_erf(k, 1e-8) % 2 == 1

    def test_n_erf_grows_with_steepness(self):
        assert n_erf(10.0, 1e-8) > n_erf(2.0, 1e-8)

    def test_sign_parameters(self):
        k, n = sign_parameters(0.1, 1e-3)
        assert k == pytest.approx(math.sqrt(2.0) / 0.1 * math.sqrt(math.log(8.0 / (math.pi * 1e-6))))
        assert n % 2 == 1

    def test_sign_eps_limit(self):
        with pytest.raises(DomainError):
            sign_parameters(0.1, SIGN_EPS_LIMIT)


class TestOtherDegrees:
    """Threshold and inverse parameters."""

    def test_threshold_degree(self):
        # ceil(ln(200) / (sqrt(2) * 0.1)) = ceil(37.46)
        assert threshold_degree(0.1, 1e-2) == 38

    @pytest.mark.parametrize("delta", [0.0, 0.3, 1.0])
    def test_threshold_delta_domain(self, delta):
        with pytest.raises(DomainError, match="delta"):
            threshold_degree(delta, 1e-2)

    def test_threshold_widest_gap(self):
        assert threshold_degree(MAX_GAP, 1e-2) == math.ceil(math.log(200.0) * math.sqrt(6.0))

    def test_inverse_parameters(self):
        assert inverse_parameters(2.0, 0.5) == (6, 5)

    def test_inverse_depth_spot_value(self):
        # ceil(100 ln(1000)) = ceil(690.78)
        assert inverse_parameters(10.0, 1e-2)[0] == 691

    def test_inverse_needs_kappa_above_one(self):
        with pytest.raises(DomainError, match="kappa"):
            inverse_parameters(1.0, 0.1)


class TestValidators:
    """Shared parameter checks."""

    def test_builders_share_validators(self):
        from targets.base_builder import BaseTargetBuilder
        assert BaseTargetBuilder.require_eps is require_eps
        assert BaseTargetBuilder.require_positive is require_positive

    @pytest.mark.parametrize("eps", [0.0, 1.0, -1e-3, float('nan')])
    def test_require_eps(self, eps):
        with pytest.raises(DomainError, match="eps"):
            require_eps(eps)

    @pytest.mark.parametrize("value", [0.0, -2.0, math.inf])
    def test_require_positive(self, value):
        with pytest.raises(DomainError, match="tau"):
            require_positive('tau', value)
