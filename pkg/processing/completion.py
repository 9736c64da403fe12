"""
completion.py
-------------
Complete a target pair (A, B) to a quadruple (A, B, C, D) of real-on-circle
Laurent polynomials with A^2 + B^2 + C^2 + D^2 = 1 on the unit circle.

The deficiency 1 - A^2 - B^2 (degree 2n) is factored as gamma(z) gamma(1/z).
With Q(z) = z^{-n} gamma(z), Q(z) conj(Q(z)) = |gamma|^2 on the circle, and
C = (Q + Q*)/2, D = (Q - Q*)/(2i) are real on the circle with C + iD = Q.
Both have degree n:

    c_k = (gamma_{n+k} + gamma_{n-k}) / 2
    d_k = (gamma_{n+k} - gamma_{n-k}) / (2i),   k = -n..n
"""

import logging
import time
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from targets.base_builder import TargetPair, sup_norm_squared

from .errors import DomainError, NotCompletable
from .fejer import DEFAULT_EPS_FEJER, DEFAULT_MAX_ITER, FejerInstance, WilsonReport, wilson_factorize
from .laurent import LaurentPolynomial, from_chebyshev, product, sample_on_circle


logger = logging.getLogger(__name__)

BOUND_TOL = 1e-12
DEGENERATE_TOL = 16 * np.finfo(float).eps
PAD_FLOOR = 1e-13
RESIDUAL_FACTOR = 8


@dataclass
class CompletionReport:
    wilson: Optional[WilsonReport]
    unitarity_residual: float
    eps_coeff: float
    elapsed_seconds: float
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            'wilson': self.wilson.to_dict() if self.wilson else None,
            'unitarity_residual': self.unitarity_residual,
            'eps_coeff': self.eps_coeff,
            'elapsed_seconds': self.elapsed_seconds,
            'degenerate': self.degenerate,
        }


@dataclass(frozen=True)
class CompletedQuadruple:
    """A, B, C, D stored at a common degree n, plus the completion report."""
    A: LaurentPolynomial
    B: LaurentPolynomial
    C: LaurentPolynomial
    D: LaurentPolynomial
    report: CompletionReport

    @property
    def degree(self) -> int:
        return self.A.degree


def deficiency_polynomial(A: LaurentPolynomial, B: LaurentPolynomial) -> FejerInstance:
    """
    Real symmetric coefficients F_0..F_2n of 1 - A^2 - B^2.

    Raises:
        NotCompletable: sampled A^2 + B^2 exceeds 1 + 1e-12
    """
    n = max(A.degree, B.degree)
    peak = sup_norm_squared(A, B)
    if peak > 1.0 + BOUND_TOL:
        raise NotCompletable(f"sampled max of A^2 + B^2 is {peak:.6g} > 1")
    A, B = A.pad(n), B.pad(n)
    deficiency = (1.0 - (product(A, A) + product(B, B))).pad(2 * n)
    c = deficiency.coeffs
    # symmetrise; A^2 and B^2 are real-on-circle so the imaginary parts are rounding
    F = 0.5 * (c[2 * n:] + c[2 * n::-1]).real
    return FejerInstance(F)


def is_degenerate(instance: FejerInstance) -> bool:
    """True when the deficiency vanishes to rounding (A^2 + B^2 = 1)."""
    return float(np.max(np.abs(instance.F))) <= DEGENERATE_TOL


def handle_zero_component(pair: TargetPair, eps: float = DEFAULT_EPS_FEJER) -> TargetPair:
    """
    Replace an identically zero A or B by a small degree-(n-1) filler.

    The filler uses k = n-1, n-3, ..., sin-type terms (k >= 1) when B = 0
    and cos-type terms when A = 0, so its degree is n-1. Every term has
    magnitude max(1e-13, eps), shrunk if needed to keep A^2 + B^2 <= 1.

    Raises:
        DomainError: not exactly one of A, B is zero
    """
    a_zero, b_zero = pair.A.is_zero(), pair.B.is_zero()
    if a_zero == b_zero:
        raise DomainError("exactly one of A, B must be identically zero")
    n = pair.degree
    slots = np.arange((n - 1) % 2, n, 2)
    if b_zero:
        slots = slots[slots >= 1]
    if slots.size == 0:
        return pair

    present = pair.A if b_zero else pair.B
    headroom = 1.0 - sup_norm_squared(present, LaurentPolynomial.zero())
    pad = max(PAD_FLOOR, eps)
    if (pad * slots.size) ** 2 > headroom:
        pad = 0.5 * np.sqrt(max(headroom, 0.0)) / slots.size
    if pad == 0.0:
        logger.warning("no headroom to pad the zero component; leaving it at zero")
        return pair

    weights = np.zeros(n)
    weights[slots] = pad
    if b_zero:
        filler = from_chebyshev(kind2sin=weights)
        A, B, component = pair.A, filler, 'B'
    else:
        filler = from_chebyshev(kind1=weights)
        A, B, component = filler, pair.B, 'A'
    logger.debug("padded %s with %d terms of magnitude %.3e", component, slots.size, pad)
    meta = replace(pair.meta, padded_component=component, pad_magnitude=float(pad))
    return TargetPair(A=A, B=B, meta=meta)


def complementary_pair(gamma, n: int):
    """(C, D) from the length-(2n+1) outer factor gamma."""
    g = np.asarray(gamma, dtype=float)
    rev = g[::-1]
    C = LaurentPolynomial((g + rev) / 2.0)
    D = LaurentPolynomial((g - rev) / 2j)
    return C, D


def unitarity_residual(A, B, C, D) -> float:
    """max |A^2 + B^2 + C^2 + D^2 - 1| on an 8n-point grid."""
    n = max(A.degree, B.degree, C.degree, D.degree)
    points = RESIDUAL_FACTOR * max(n, 1)
    total = sum(sample_on_circle(p, points) ** 2 for p in (A, B, C, D))
    return float(np.max(np.abs(total - 1.0)))


def coefficient_residual(A, B, C, D) -> float:
    """Largest coefficient of A^2 + B^2 + C^2 + D^2 - 1."""
    total = product(A, A) + product(B, B) + product(C, C) + product(D, D) - 1.0
    return float(np.max(np.abs(total.coeffs)))


def complete(pair: TargetPair, eps_fejer=DEFAULT_EPS_FEJER, max_iter=DEFAULT_MAX_ITER) -> CompletedQuadruple:
    """
    Solve the Fejer problem for 1 - A^2 - B^2 and build (C, D) from its factor.

    Only the Wilson call is timed. An already unitary pair (zero
    deficiency) short-circuits to C = D = 0.

    Raises:
        NotCompletable, NegativeInstance, NoConvergence, SingularMatrix
    """
    n = pair.degree
    A, B = pair.A.pad(n), pair.B.pad(n)
    instance = deficiency_polynomial(A, B)

    if is_degenerate(instance):
        logger.info("deficiency vanishes; completing with C = D = 0")
        C = D = LaurentPolynomial.zero().pad(n)
        wilson, elapsed, degenerate = None, 0.0, True
    else:
        start = time.perf_counter()
        factor, wilson = wilson_factorize(instance, eps_fejer=eps_fejer, max_iter=max_iter)
        elapsed = time.perf_counter() - start
        C, D = complementary_pair(factor.gamma, n)
        degenerate = False

    report = CompletionReport(
        wilson=wilson,
        unitarity_residual=unitarity_residual(A, B, C, D),
        eps_coeff=coefficient_residual(A, B, C, D),
        elapsed_seconds=elapsed,
        degenerate=degenerate,
    )
    logger.info("completion: degree %d, unitarity residual %.3e, %.3fs",
                n, report.unitarity_residual, elapsed)
    return CompletedQuadruple(A=A, B=B, C=C, D=D, report=report)
