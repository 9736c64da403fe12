"""
fejer.py
--------
Spectral factorization of a nonnegative real symmetric Laurent polynomial

    F(z) = sum_{k=-n}^{n} F_|k| z^k = gamma(z) gamma(1/z),
    gamma(z) = sum_{j=0}^{n} gamma_j z^j with every root outside |z| = 1,

by Wilson's Newton iteration. Each step solves (T1 + T2) delta = F - c where
c is the autocorrelation of the current gamma, T1 the Hankel and T2 the
upper-triangular Toeplitz part of its Jacobian, and moves gamma by delta.
Since (T1 + T2) gamma = 2c this is the classical update gamma <- (T1 + T2)^{-1}(c + F).
"""

import logging
import warnings
from dataclasses import asdict, dataclass, field
from typing import List

import numpy as np
from scipy import linalg

from .errors import DomainError, NegativeInstance, NoConvergence, RootExclusionError, SingularMatrix
from .laurent import LaurentPolynomial, sample_on_circle


logger = logging.getLogger(__name__)

MACHINE_EPS = np.finfo(float).eps
PIVOT_FLOOR = 1e-300
NEGATIVITY_TOL = 1e-12
WITNESS_FACTOR = 8
WINDING_FACTOR = 16
DIVERGENCE_PATIENCE = 5
POLISH_STEPS = 3

DEFAULT_EPS_FEJER = 1e-14
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True)
class FejerInstance:
    """Distinct coefficients F_0..F_n of a real symmetric Laurent polynomial."""
    F: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'F', np.asarray(self.F, dtype=float).ravel())

    @property
    def degree(self) -> int:
        return self.F.size - 1

    def as_laurent(self) -> LaurentPolynomial:
        return LaurentPolynomial(np.concatenate((self.F[:0:-1], self.F)))

    def grid_minimum(self, grid_points=None) -> float:
        points = grid_points or WITNESS_FACTOR * (self.degree + 1)
        return float(np.min(sample_on_circle(self.as_laurent(), points).real))


@dataclass(frozen=True)
class FejerFactor:
    """Coefficients gamma_0..gamma_n of the outer factor."""
    gamma: np.ndarray

    @property
    def degree(self) -> int:
        return self.gamma.size - 1

    def as_laurent(self) -> LaurentPolynomial:
        return LaurentPolynomial(np.concatenate((np.zeros(self.degree), self.gamma)))


@dataclass
class WilsonReport:
    iterations: int = 0
    residual_linf: float = float('inf')
    converged: bool = False
    residual_history: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


# =============================================================================
# Building blocks
# =============================================================================

def convolve_gamma(gamma) -> np.ndarray:
    """c_i = sum_{j=0}^{n-i} gamma_j gamma_{j+i}, i = 0..n."""
    g = np.asarray(gamma, dtype=float)
    n = g.size - 1
    return np.correlate(g, g, mode='full')[n:]


def build_jacobian(gamma) -> np.ndarray:
    """
    T1 + T2 with T1[i, j] = gamma_{i+j} (zero past n) and
    T2[i, j] = gamma_{j-i} (zero below the diagonal).
    """
    g = np.asarray(gamma, dtype=float)
    zeros = np.zeros_like(g)
    t1 = linalg.hankel(g, zeros)
    t2 = linalg.toeplitz(np.concatenate(([g[0]], zeros[1:])), g)
    return t1 + t2


def solve_linear(A, b) -> np.ndarray:
    """
    Dense LU solve with partial pivoting.

    Raises:
        SingularMatrix: a pivot has magnitude below 1e-300 or the
            system has non-finite entries
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', linalg.LinAlgWarning)
            lu, piv = linalg.lu_factor(A)
    except ValueError as exc:
        raise SingularMatrix(f"linear system not solvable: {exc}") from exc
    smallest = float(np.min(np.abs(np.diag(lu)))) if lu.size else 1.0
    if not smallest >= PIVOT_FLOOR:
        raise SingularMatrix(f"pivot magnitude {smallest:.3e} below {PIVOT_FLOOR:g}")
    return linalg.lu_solve((lu, piv), b)


def winding_number(gamma, grid_points=None) -> int:
    """
    Winding number of gamma(e^{i theta}) around the origin.

    Zero means no root inside the closed unit disc.

    Raises:
        RootExclusionError: gamma vanishes on a grid point
    """
    factor = FejerFactor(np.asarray(gamma, dtype=float))
    points = grid_points or WINDING_FACTOR * (factor.degree + 1)
    values = sample_on_circle(factor.as_laurent(), points)
    if np.min(np.abs(values)) == 0.0:
        raise RootExclusionError("factor vanishes on the unit circle")
    steps = np.angle(np.roll(values, -1) / values)
    return int(round(float(np.sum(steps)) / (2.0 * np.pi)))


def check_nonnegative(instance: FejerInstance) -> FejerInstance:
    """
    Nonnegativity witness on an 8(n+1)-point grid.

    Grid minima in (-tol_neg, 0) with tol_neg = 1e-12 F_0 are rounding
    noise; F_0 is lifted by tol_neg and the lifted instance returned.

    Raises:
        NegativeInstance: F_0 <= 0 or grid minimum below -tol_neg
    """
    F = instance.F
    if not F[0] > 0:
        raise NegativeInstance(f"F_0 = {F[0]:.6g} must be positive")
    tol_neg = NEGATIVITY_TOL * F[0]
    low = instance.grid_minimum()
    if low < -tol_neg:
        raise NegativeInstance(f"instance reaches {low:.3e} on the circle (tolerance {tol_neg:.3e})")
    if low < 0:
        lifted = F.copy()
        lifted[0] += tol_neg
        logger.debug("lifted F_0 by %.3e (grid minimum %.3e)", tol_neg, low)
        return FejerInstance(lifted)
    return instance



# =============================================================================
# Wilson iteration
# =============================================================================

def autocorrelation_residual(gamma, F) -> np.ndarray:
    """c(gamma) - F, accumulated in extended precision."""
    g = np.asarray(gamma, dtype=np.longdouble)
    n = g.size - 1
    c = np.correlate(g, g, mode='full')[n:]
    return np.asarray(c - np.asarray(F, dtype=np.longdouble), dtype=float)


def newton_step(gamma, F) -> np.ndarray:
    """One Wilson step in correction form: gamma + delta with (T1 + T2) delta = F - c(gamma)."""
    delta = solve_linear(build_jacobian(gamma), -autocorrelation_residual(gamma, F))
    return gamma + delta


def wilson_factorize(instance: FejerInstance, eps_fejer=DEFAULT_EPS_FEJER, max_iter=DEFAULT_MAX_ITER):
    """
    Factor F = gamma(z) gamma(1/z) with gamma_0 > 0 and roots outside the circle.

    Converges when the coefficient residual is at most
    eps_fejer + (n+1) * machine_eps * max|F|, the level below which the
    autocorrelation cannot be resolved in binary64. After that up to
    POLISH_STEPS further steps are taken while the residual keeps halving,
    and the best iterate is returned.

    Returns:
        (FejerFactor, WilsonReport)

    Raises:
        NegativeInstance: nonnegativity witness failed
        SingularMatrix: Newton system singular (roots on the circle)
        NoConvergence: max_iter reached or residual diverged; carries the
            best iterate
        RootExclusionError: an iterate acquired a root inside the disc
    """
    if not eps_fejer > 0:
        raise DomainError(f"eps_fejer must be positive, got {eps_fejer}")
    F = check_nonnegative(instance).F
    n = F.size - 1
    tol = eps_fejer + (n + 1) * MACHINE_EPS * float(np.max(np.abs(F)))

    gamma = np.zeros(n + 1)
    gamma[0] = np.sqrt(F[0])
    report = WilsonReport()
    best_gamma, best_residual = gamma, float('inf')
    previous = float('inf')
    rises = 0
    converged_at = None

    def fail(message):
        report.residual_linf = best_residual
        return NoConvergence(message, factor=FejerFactor(best_gamma), report=report)

    for iteration in range(1, max_iter + 1):
        gamma = newton_step(gamma, F)
        residual = float(np.max(np.abs(autocorrelation_residual(gamma, F))))
        report.iterations = iteration
        report.residual_history.append(residual)
        logger.debug("wilson step %d: residual %.3e", iteration, residual)

        if not np.isfinite(residual):
            raise fail(f"residual became non-finite at step {iteration}")
        if winding_number(gamma) != 0:
            raise RootExclusionError(f"wilson step {iteration} produced a factor with roots inside the unit circle")
        if residual < best_residual:
            best_gamma, best_residual = gamma, residual

        if converged_at is not None:
            if residual > 0.5 * previous or iteration - converged_at >= POLISH_STEPS:
                break
        elif residual <= tol:
            converged_at = iteration
        else:
            rises = rises + 1 if residual > previous else 0
            if rises >= DIVERGENCE_PATIENCE:
                raise fail(f"residual increased {DIVERGENCE_PATIENCE} steps in a row (best {best_residual:.3e})")
        previous = residual

    if converged_at is None:
        raise fail(f"no convergence after {max_iter} steps (best residual {best_residual:.3e})")

    gamma = best_gamma if best_gamma[0] > 0 else -best_gamma
    report.residual_linf = best_residual
    report.converged = True
    logger.info("wilson converged: degree %d, %d steps, residual %.3e", n, report.iterations, best_residual)
    return FejerFactor(gamma), report
