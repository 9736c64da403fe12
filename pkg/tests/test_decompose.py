"""Tests for matrix assembly and projector peeling."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from processing.completion import CompletedQuadruple, CompletionReport, complete
from processing.decompose import (
    IDENTITY, MatrixCoefficientList, Projector, QspSequence, assemble_matrix_poly, decompose,
    export_gates, extract_projector, nearest_unitary, peel,
)
from processing.errors import DomainError, LeadTooSmall, NotUnitary
from processing.laurent import LaurentPolynomial, theta_grid
from processing.verify import reconstruct


def quadruple(A, B=None, C=None, D=None):
    zero = LaurentPolynomial.zero()
    report = CompletionReport(wilson=None, unitarity_residual=0.0, eps_coeff=0.0, elapsed_seconds=0.0)
    return CompletedQuadruple(A=A, B=B or zero, C=C or zero, D=D or zero, report=report)


class TestProjector:
    """Rank-one projectors and their factors."""

    def test_normalizes(self):
        p = Projector(np.array([3.0, 4.0]))
        assert_allclose(np.linalg.norm(p.v), 1.0)
        assert_allclose(p.matrix @ p.matrix, p.matrix, atol=1e-15)

    def test_rejects_zero_vector(self):
        with pytest.raises(DomainError, match="nonzero"):
            Projector(np.zeros(2))

    def test_factor_is_unitary(self):
        p = Projector(np.array([1.0, 1j]))
        E = p.factor(theta_grid(8))
        gram = E @ np.conj(np.swapaxes(E, 1, 2))
        assert_allclose(gram, np.broadcast_to(IDENTITY, gram.shape), atol=1e-14)


class TestExtractProjector:
    """Projectors from the end coefficients of a block."""

    def test_rank_one(self):
        u = np.array([0.6, 0.8j])
        v = np.array([1.0, 1.0 - 1j]) / np.sqrt(3.0)
        p = extract_projector(np.outer(u, np.conj(v)))
        assert_allclose(p.matrix, np.outer(v, np.conj(v)), atol=1e-14)

    def test_scale_invariant(self):
        C = np.outer([1.0, 2.0], [0.5, -1j])
        assert_allclose(extract_projector(C).v, extract_projector(-3j * C).v, atol=1e-14)

    def test_zero_lead(self):
        with pytest.raises(LeadTooSmall):
            extract_projector(np.zeros((2, 2)))

    def test_trailing_coefficient_fixes_direction(self):
        v = np.array([1.0, 1j]) / np.sqrt(2.0)
        orthogonal = np.array([1.0, -1j]) / np.sqrt(2.0)
        trail = np.outer([0.3, 0.4], np.conj(orthogonal))
        p = extract_projector(np.zeros((2, 2)), C_trail=trail)
        assert_allclose(p.matrix, np.outer(v, np.conj(v)), atol=1e-14)

    def test_both_ends_agree(self):
        v = np.array([0.6, 0.8j])
        orthogonal = np.array([0.8, -0.6j])
        lead = 1e-20 * np.outer([1.0, 2.0], np.conj(v))
        trail = np.outer([2.0, -1.0], np.conj(orthogonal))
        p = extract_projector(lead, C_trail=trail)
        assert_allclose(p.matrix, np.outer(v, np.conj(v)), atol=1e-14)

    def test_both_ends_below_threshold(self):
        with pytest.raises(LeadTooSmall, match="end coefficient"):
            extract_projector(1e-20 * IDENTITY, 1e-16, C_trail=1e-18 * IDENTITY)


class TestAssembly:
    """Matrix coefficient lists from quadruples."""

    def test_identity(self):
        F = assemble_matrix_poly(quadruple(LaurentPolynomial.constant(1.0)))
        assert F.half_degree == 0
        assert_allclose(F.coeffs[0], IDENTITY)

    def test_not_unitary(self):
        with pytest.raises(NotUnitary):
            assemble_matrix_poly(quadruple(LaurentPolynomial.constant(0.5)))

    def test_unknown_basis(self):
        with pytest.raises(DomainError, match="basis"):
            assemble_matrix_poly(quadruple(LaurentPolynomial.constant(1.0)), basis='minus')

    def test_shape_check(self):
        with pytest.raises(DomainError, match="coefficient matrices"):
            MatrixCoefficientList(half_degree=2, coeffs=np.zeros((2, 2, 2)))

    def test_random_quadruple_is_unitary(self, random_target):
        F = assemble_matrix_poly(complete(random_target))
        assert F.half_degree == 2 * random_target.degree
        assert F.eps_coeff <= 1e-10


class TestDecompose:
    """Peeling to a projector sequence."""

    def test_peel_lowers_degree(self, random_target):
        F = assemble_matrix_poly(complete(random_target))
        p = extract_projector(F.coeffs[0])
        G = peel(F, p)
        assert G.half_degree == F.half_degree - 1
        assert G.truncation_error <= 1e-10

    def test_peel_constant_rejected(self):
        F = MatrixCoefficientList(half_degree=0, coeffs=IDENTITY[None].copy())
        with pytest.raises(DomainError, match="constant"):
            peel(F, Projector(np.array([1.0, 0.0])))

    def test_identity_has_no_projectors(self):
        seq = decompose(assemble_matrix_poly(quadruple(LaurentPolynomial.constant(1.0))))
        assert len(seq) == 0
        assert_allclose(seq.E0, IDENTITY)

    @pytest.mark.parametrize("basis", ['plus', 'zero'])
    def test_reconstructs_matrix_polynomial(self, random_target, basis):
        F = assemble_matrix_poly(complete(random_target), basis=basis)
        seq = decompose(F, basis=basis)
        assert len(seq) == 2 * random_target.degree
        assert seq.source_degree == random_target.degree
        assert seq.basis == basis
        theta = theta_grid(8 * (len(seq) + 1))
        assert np.max(np.abs(reconstruct(seq, theta) - F.evaluate(theta))) <= 1e-10
        assert seq.truncation_error <= 1e-10

    def test_nearest_unitary(self):
        U, distance = nearest_unitary(2.0 * IDENTITY)
        assert_allclose(U, IDENTITY, atol=1e-15)
        assert distance == pytest.approx(1.0)


def random_unitary(rng):
    q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def forward_product(E0, projectors):
    """Coefficients of E0 E_{p_1}(w) ... E_{p_L}(w), multiplied left to right."""
    coeffs = np.asarray(E0, dtype=np.complex128)[None]
    for p in projectors:
        grown = np.zeros((coeffs.shape[0] + 1, 2, 2), dtype=np.complex128)
        grown[:-1] += coeffs @ p.matrix
        grown[1:] += coeffs @ p.complement
        coeffs = grown
    return MatrixCoefficientList(half_degree=len(projectors), coeffs=coeffs)


class TestForwardRoundTrip:
    """Decomposing products built from known random projectors."""

    def check(self, length, rng):
        projectors = [Projector(rng.normal(size=2) + 1j * rng.normal(size=2)) for _ in range(length)]
        F = forward_product(random_unitary(rng), projectors)
        seq = decompose(F)
        assert len(seq) == length
        theta = theta_grid(8 * (length + 1))
        assert np.max(np.abs(reconstruct(seq, theta) - F.evaluate(theta))) <= 1e-9
        assert seq.truncation_error <= 1e-10

    def test_two_factors(self, rng):
        p1 = Projector(rng.normal(size=2) + 1j * rng.normal(size=2))
        p2 = Projector(rng.normal(size=2) + 1j * rng.normal(size=2))
        G = peel(peel(forward_product(IDENTITY, [p1, p2]), p2), p1)
        assert G.half_degree == 0
        assert_allclose(G.coeffs[0], IDENTITY, atol=1e-13)

    @pytest.mark.parametrize("length", [20, 40, 100])
    def test_round_trip(self, length, rng):
        self.check(length, rng)

    def test_vanishing_end_coefficients(self, rng):
        # E_{e1} E_{e2} is the identity, so this product is E0 padded with zero blocks
        e1, e2 = Projector(np.array([1.0, 0.0])), Projector(np.array([0.0, 1.0]))
        E0 = random_unitary(rng)
        F = forward_product(E0, [e1, e2, e1, e2])
        assert not np.any(F.coeffs[0]) and not np.any(F.coeffs[-1])
        seq = decompose(F)
        assert len(seq) == 4
        theta = theta_grid(40)
        assert np.max(np.abs(reconstruct(seq, theta) - F.evaluate(theta))) <= 1e-14
        assert seq.truncation_error <= 1e-14

    @pytest.mark.slow
    def test_round_trip_long(self, rng):
        self.check(400, rng)


class TestExportGates:
    """Gate train for circuit construction."""

    def test_gate_count_and_unitarity(self, random_target):
        seq = decompose(assemble_matrix_poly(complete(random_target)))
        gates = export_gates(seq)
        assert len(gates) == len(seq) + 2
        for G in gates:
            assert_allclose(G @ np.conj(G.T), IDENTITY, atol=1e-12)

    def test_rotation_maps_zero_to_projector_vector(self, random_target):
        seq = decompose(assemble_matrix_poly(complete(random_target)))
        gates = export_gates(seq)
        assert_allclose(gates[1] @ np.array([1.0, 0.0]), seq.projectors[0].v, atol=1e-14)

    def test_empty_sequence(self):
        seq = QspSequence(E0=IDENTITY.copy())
        gates = export_gates(seq)
        assert len(gates) == 1
