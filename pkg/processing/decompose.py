"""
decompose.py
------------
Turn a completed quadruple into a QSP sequence.

The quadruple defines the 2x2 matrix Laurent polynomial in w = e^{i theta/2}

    F(w) = A I + i B X + i C Y + i D Z     (basis 'plus')
    F(w) = A I + i D X + i C Y + i B Z     (basis 'zero')

with A, B, C, D evaluated at z = w^2. F is peeled one projector at a time,
each fitted to its lowest and highest coefficients, until a constant
unitary E0 remains, giving

    F(w) = E0 E_{p_1}(w) ... E_{p_L}(w),   E_p(w) = w^{-1} p + w (I - p).
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .errors import DomainError, LeadTooSmall, NotUnitary
from .laurent import theta_grid


logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

BASES = ('plus', 'zero')
UNITARITY_LIMIT = 1e-6
LEAD_RELATIVE = 1e-16
SAMPLES_PER_HALF_DEGREE = 4
EVAL_CHUNK = 512
NORM_SLACK = 4 * np.finfo(float).eps


@dataclass(frozen=True)
class MatrixCoefficientList:
    """
    Coefficients C_0..C_m of F(w) = sum_j C_j w^{-m + 2j}.

    coeffs has shape (m + 1, 2, 2).
    """
    half_degree: int
    coeffs: np.ndarray
    eps_coeff: float = 0.0
    truncation_error: float = 0.0

    def __post_init__(self):
        if self.coeffs.shape != (self.half_degree + 1, 2, 2):
            raise DomainError(
                f"expected {self.half_degree + 1} coefficient matrices, got shape {self.coeffs.shape}")

    @property
    def powers(self) -> np.ndarray:
        return np.arange(-self.half_degree, self.half_degree + 1, 2)

    def evaluate(self, theta) -> np.ndarray:
        """F(e^{i theta/2}) for an array of angles; shape (len(theta), 2, 2)."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        out = np.empty((theta.size, 2, 2), dtype=np.complex128)
        for start in range(0, theta.size, EVAL_CHUNK):
            chunk = theta[start:start + EVAL_CHUNK]
            phases = np.exp(0.5j * np.outer(chunk, self.powers))
            out[start:start + EVAL_CHUNK] = np.einsum('gj,jab->gab', phases, self.coeffs)
        return out

    def unitarity_deviation(self, grid_points=None) -> float:
        """max over the grid of the spectral norm of F F^dagger - I."""
        points = grid_points or SAMPLES_PER_HALF_DEGREE * max(self.half_degree, 1)
        values = self.evaluate(theta_grid(points))
        gram = values @ np.conj(np.swapaxes(values, 1, 2)) - IDENTITY
        return float(np.max(np.linalg.norm(gram, ord=2, axis=(1, 2))))


@dataclass(frozen=True)
class Projector:
    """Rank-one projector p = v v^dagger for a unit vector v."""
    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=np.complex128).ravel()
        norm = np.linalg.norm(v)
        if v.size != 2 or norm == 0:
            raise DomainError("projector needs a nonzero 2-vector")
        object.__setattr__(self, 'v', v if abs(norm - 1.0) <= NORM_SLACK else v / norm)

    @property
    def matrix(self) -> np.ndarray:
        return np.outer(self.v, np.conj(self.v))

    @property
    def complement(self) -> np.ndarray:
        return IDENTITY - self.matrix

    def factor(self, theta) -> np.ndarray:
        """E_p(e^{i theta/2}) = e^{-i theta/2} p + e^{i theta/2} (I - p)."""
        theta = np.asarray(theta, dtype=float)
        half = np.exp(0.5j * theta)[..., None, None]
        return self.matrix / half + self.complement * half


@dataclass(frozen=True)
class QspSequence:
    """
    E0 and projectors p_1..p_L with F(w) = E0 E_{p_1}(w) ... E_{p_L}(w).

    source_degree is n for a degree-n quadruple (L = 2n); basis records
    which measurement the sequence was assembled for.
    """
    E0: np.ndarray
    projectors: Tuple[Projector, ...] = field(default_factory=tuple)
    truncation_error: float = 0.0
    source_degree: int = 0
    basis: str = 'plus'

    def __len__(self):
        return len(self.projectors)


# =============================================================================
# Assembly
# =============================================================================

def assemble_matrix_poly(q, basis: str = 'plus') -> MatrixCoefficientList:
    """
    Matrix coefficient list of F(w) for a completed quadruple.

    The coefficient at w^{2l} is a_l I + i b_l X + i c_l Y + i d_l Z
    (B and D swapped for basis 'zero'); half_degree is 2n.

    Raises:
        DomainError: unknown basis
        NotUnitary: sampled deviation from unitarity exceeds 1e-6
    """
    if basis not in BASES:
        raise DomainError(f"basis must be one of {BASES}, got {basis!r}")
    n = max(p.degree for p in (q.A, q.B, q.C, q.D))
    a, b, c, d = (p.pad(n).coeffs for p in (q.A, q.B, q.C, q.D))
    on_x, on_z = (b, d) if basis == 'plus' else (d, b)

    coeffs = (a[:, None, None] * IDENTITY
              + 1j * on_x[:, None, None] * PAULI_X
              + 1j * c[:, None, None] * PAULI_Y
              + 1j * on_z[:, None, None] * PAULI_Z)
    # z^l = w^{2l}, so the w-support -2n, -2n+2, ..., 2n lists z-powers -n..n in order
    full = MatrixCoefficientList(half_degree=2 * n, coeffs=coeffs)

    deviation = full.unitarity_deviation()
    if deviation > UNITARITY_LIMIT:
        raise NotUnitary(f"matrix polynomial deviates from unitary by {deviation:.3e}")
    return MatrixCoefficientList(half_degree=2 * n, coeffs=coeffs, eps_coeff=deviation)


# =============================================================================
# Peeling
# =============================================================================

def extract_projector(C_lead, lead_threshold: float = 0.0, C_trail=None) -> Projector:
    """
    Projector onto the dominant right singular direction of C_lead.

    For a rank-one C_lead this is (C^dagger C) / Tr(C^dagger C). The vector
    is phase-normalised (first nonzero entry real positive), which makes the
    result invariant under C_lead -> s C_lead.

    With C_trail (the highest coefficient) the projector is the top
    eigenvector of C_lead^dagger C_lead - C_trail^dagger C_trail, which
    minimises the norm a peel discards at both ends. The kernel of C_trail
    then pins p down when the lowest coefficient has decayed to rounding
    level.

    Raises:
        LeadTooSmall: spectral norms of C_lead (and C_trail) at or below lead_threshold
    """
    C_lead = np.asarray(C_lead, dtype=np.complex128)
    if C_trail is None:
        _, s, vh = np.linalg.svd(C_lead)
        if not s[0] > lead_threshold:
            raise LeadTooSmall(f"leading coefficient norm {s[0]:.3e} at or below {lead_threshold:.3e}")
        v = np.conj(vh[0])
    else:
        C_trail = np.asarray(C_trail, dtype=np.complex128)
        lead = max(np.linalg.norm(C_lead, 2), np.linalg.norm(C_trail, 2))
        if not lead > lead_threshold:
            raise LeadTooSmall(f"end coefficient norms {lead:.3e} at or below {lead_threshold:.3e}")
        low, high = C_lead / lead, C_trail / lead
        gram = np.conj(low.T) @ low - np.conj(high.T) @ high
        _, vecs = np.linalg.eigh(gram)
        v = vecs[:, -1]
    pivot = v[0] if abs(v[0]) > abs(v[1]) * 1e-15 else v[1]
    return Projector(v * (abs(pivot) / pivot))


def peel(F: MatrixCoefficientList, p: Projector) -> MatrixCoefficientList:
    """
    Right-multiply by E_p(w)^dagger = w p + w^{-1} (I - p), lowering m by one.

    The products falling at w^{-(m+1)} and w^{m+1} are dropped and their
    spectral norms added to truncation_error.
    """
    m = F.half_degree
    if m < 1:
        raise DomainError("cannot peel a constant matrix polynomial")
    upper = F.coeffs @ p.matrix
    lower = F.coeffs @ p.complement
    dropped = np.linalg.norm(lower[0], 2) + np.linalg.norm(upper[m], 2)
    return MatrixCoefficientList(
        half_degree=m - 1,
        coeffs=lower[1:] + upper[:-1],
        eps_coeff=F.eps_coeff,
        truncation_error=F.truncation_error + float(dropped),
    )


def nearest_unitary(M):
    """Polar factor U of M and the spectral distance ||M - U||."""
    u, s, vh = np.linalg.svd(np.asarray(M, dtype=np.complex128))
    return u @ vh, float(np.max(np.abs(s - 1.0)))


def decompose(F: MatrixCoefficientList, basis: str = 'plus') -> QspSequence:
    """
    Peel F down to a constant and snap that constant to the nearest unitary.

    Each projector is fitted to both end coefficients of the current block.
    A step whose end coefficients sit below the lead threshold is logged as
    unresolved; it discards at most those norms whatever projector is used.
    """
    scale = float(np.max(np.linalg.norm(F.coeffs, ord=2, axis=(1, 2))))
    threshold = LEAD_RELATIVE * scale
    extracted: List[Projector] = []
    unresolved = 0
    current = F
    p = Projector(np.array([1.0, 0.0]))
    for step in range(F.half_degree):
        lead, trail = current.coeffs[0], current.coeffs[-1]
        try:
            p = extract_projector(lead, 0.0, trail)
        except LeadTooSmall:
            # both ends exactly zero: any projector peels exactly, keep the last one
            pass
        if max(np.linalg.norm(lead, 2), np.linalg.norm(trail, 2)) <= threshold:
            unresolved += 1
            logger.debug("step %d: end coefficients below %.3e", step, threshold)
        current = peel(current, p)
        extracted.append(p)

    E0, deviation = nearest_unitary(current.coeffs[0])
    truncation = current.truncation_error + deviation
    logger.info("decomposed half-degree %d: %d projectors (%d unresolved), truncation error %.3e",
                F.half_degree, len(extracted), unresolved, truncation)
    return QspSequence(
        E0=E0,
        projectors=tuple(reversed(extracted)),
        truncation_error=truncation,
        source_degree=F.half_degree // 2,
        basis=basis,
    )


def export_gates(seq: QspSequence) -> List[np.ndarray]:
    """
    Gate train E0, V_1, V_1^dagger V_2, ..., V_{L-1}^dagger V_L, V_L^dagger
    with V_k = [[a, -conj(b)], [b, conj(a)]] for v_k = (a, b), so V_k |0> = v_k.
    """
    rotations = []
    for p in seq.projectors:
        a, b = p.v
        rotations.append(np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=np.complex128))
    if not rotations:
        return [seq.E0.copy()]

    gates = [seq.E0.copy(), rotations[0]]
    for prev, nxt in zip(rotations, rotations[1:]):
        gates.append(np.conj(prev.T) @ nxt)
    gates.append(np.conj(rotations[-1].T))
    return gates
