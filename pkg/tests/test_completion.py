"""Tests for the completion step."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from processing.completion import (
    complete, complementary_pair, deficiency_polynomial, handle_zero_component, unitarity_residual,
)
from processing.errors import DomainError, NotCompletable
from processing.laurent import LaurentPolynomial, classify, from_chebyshev
from targets import TargetMeta, TargetPair, build_random, build_rect


class TestDeficiency:
    """1 - A^2 - B^2 as a Fejer instance."""

    def test_constant(self):
        instance = deficiency_polynomial(LaurentPolynomial.constant(0.6), LaurentPolynomial.zero())
        assert_allclose(instance.F, [0.64])

    def test_cosine(self):
        # 1 - (cos/2)^2 = 7/8 - cos(2 theta)/8
        A = from_chebyshev(kind1=[0.0, 0.5])
        instance = deficiency_polynomial(A, LaurentPolynomial.zero())
        assert_allclose(instance.F, [0.875, 0.0, -0.0625], atol=1e-16)

    def test_not_completable(self):
        with pytest.raises(NotCompletable):
            deficiency_polynomial(LaurentPolynomial.constant(1.1), LaurentPolynomial.zero())


class TestComplementaryPair:
    """(C, D) from the outer factor."""

    def test_symmetry_classes(self):
        C, D = complementary_pair([0.9, 0.2, -0.1, 0.05, 0.01], 2)
        assert C.degree == D.degree == 2
        assert classify(C, 1e-15).is_real_on_circle and classify(C, 1e-15).is_reciprocal
        assert classify(D, 1e-15).is_real_on_circle and classify(D, 1e-15).is_anti_reciprocal


class TestComplete:
    """End-to-end completion."""

    def test_random_target(self, random_target):
        q = complete(random_target)
        assert q.degree == random_target.degree
        assert q.C.degree == q.D.degree == random_target.degree
        assert q.report.unitarity_residual <= 1e-12
        assert q.report.eps_coeff <= 1e-12
        assert q.report.wilson.converged
        assert q.report.elapsed_seconds >= 0.0

    def test_unitary_target_is_degenerate(self, identity_target):
        q = complete(identity_target)
        assert q.report.degenerate
        assert q.report.wilson is None
        assert q.C.is_zero() and q.D.is_zero()
        assert q.report.unitarity_residual == 0.0

    def test_half_cosine(self):
        pair = TargetPair(A=from_chebyshev(kind1=[0.0, 0.5]), B=LaurentPolynomial.zero(),
                          meta=TargetMeta(family='test'))
        q = complete(pair)
        assert unitarity_residual(q.A, q.B, q.C, q.D) <= 1e-13


class TestHandleZeroComponent:
    """Filling an identically zero component."""

    def test_pads_b_for_real_a(self):
        pair = build_rect(0.3, 0.5, 1e-1)
        padded = handle_zero_component(pair)
        assert padded.meta.padded_component == 'B'
        assert padded.meta.pad_magnitude == pytest.approx(1e-13)
        assert not padded.B.is_zero()
        assert padded.B.degree < pair.degree
        assert classify(padded.B, 1e-15).is_anti_reciprocal
        assert padded.A == pair.A

    def test_pads_a_for_real_b(self):
        B = from_chebyshev(kind1=[0.0, 0.2, 0.0, 0.1])
        pair = TargetPair(A=LaurentPolynomial.zero(), B=B, meta=TargetMeta(family='test'))
        padded = handle_zero_component(pair, eps=1e-12)
        assert padded.meta.padded_component == 'A'
        assert padded.meta.pad_magnitude == pytest.approx(1e-12)
        assert classify(padded.A, 1e-15).is_reciprocal
        assert padded.A.degree < 3

    @pytest.mark.parametrize("slot, chebyshev", [
        ('A', [0.0, 0.3, 0.0, 0.2]),
        ('A', [0.1, 0.0, 0.3, 0.0, 0.2]),
        ('B', [0.0, 0.3, 0.0, 0.2]),
        ('B', [0.1, 0.0, 0.3, 0.0, 0.2]),
    ])
    def test_filler_degree_is_one_less(self, slot, chebyshev):
        present = from_chebyshev(kind1=chebyshev)
        zero = LaurentPolynomial.zero()
        A, B = (present, zero) if slot == 'A' else (zero, present)
        padded = handle_zero_component(TargetPair(A=A, B=B, meta=TargetMeta(family='test')))
        filler = padded.B if slot == 'A' else padded.A
        assert filler.degree == len(chebyshev) - 2

    def test_requires_exactly_one_zero(self, random_target):
        with pytest.raises(DomainError, match="exactly one"):
            handle_zero_component(random_target)

    def test_padded_target_completes(self):
        q = complete(handle_zero_component(build_rect(0.3, 0.5, 1e-1)))
        assert q.report.unitarity_residual <= 1e-12
        assert np.all(np.isfinite(q.C.coeffs))


@pytest.mark.slow
class TestCompletionSuite:
    """Fifty random degree-100 targets."""

    def test_identity_holds(self):
        for seed in range(50):
            q = complete(build_random(100, seed))
            assert unitarity_residual(q.A, q.B, q.C, q.D) <= 1e-11, seed
