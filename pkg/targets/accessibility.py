"""
accessibility.py
----------------
Log-space magnitude analysis of target coefficients.

For each family the largest and smallest nonzero coefficient magnitudes
are computed as log10 values without ever forming the coefficients, so the
analysis is total: instances far beyond binary64 still produce a cell with
overflow=True.

Metrics per family:
    erf/sign/rect/matrix_inversion: raw Chebyshev coefficients
        (I_j(K) + I_{j+1}(K)) / (2j + 1) before the e^{-K} factor.
    threshold: monomial coefficients in y = x^2 of
        T_k(w - beta*y) / T_k(w).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
import pandas as pd
from numpy.polynomial import Polynomial
from numpy.polynomial import chebyshev as C
from scipy.special import gammaln, iv, logsumexp

from processing.errors import DomainError

from .special import log_bessel_i
from .truncation import inverse_parameters, sign_parameters, threshold_degree


logger = logging.getLogger(__name__)

BINARY64_MAX_LOG10 = math.log10(np.finfo(float).max)   # 308.2547155599167
LN10 = math.log(10.0)

DEFAULT_THRESHOLD_GAPS = (0.1, 0.05, 0.01, 0.005, 0.001)
DEFAULT_THRESHOLD_LOG10_INV_EPS = tuple(range(1, 15))
DEFAULT_RECT_WIDTHS = (0.3, 0.4, 0.5)
DEFAULT_RECT_LOG10_INV_EPS = (1, 2, 3)

FAMILIES = ('rect', 'threshold', 'sign', 'matrix_inversion')

CSV_COLUMNS = ['family', 'param', 'log10_inv_eps', 'max_log10_coeff',
               'min_log10_nonzero', 'overflow', 'dynamic_range_digits']


@dataclass(frozen=True)
class AccessibilityCell:
    family: str
    param: float
    log10_inv_eps: int
    max_log10_coeff: float
    min_log10_nonzero_coeff: float
    overflow: bool
    dynamic_range_digits: float

    def to_row(self) -> dict:
        row = asdict(self)
        row['min_log10_nonzero'] = row.pop('min_log10_nonzero_coeff')
        return row


# =============================================================================
# Per-family log-space ranges
# =============================================================================

def erf_log10_range(k: float, n: int):
    """
    (max, min) log10 of the unscaled erf(kx) Chebyshev coefficients.

    The common prefactor 2k e^{-k^2/2}/sqrt(pi) is not included; these are
    the magnitudes a direct evaluation of I_j(k^2/2) would have to hold.
    """
    K = k * k / 2.0
    half = (n - 1) // 2
    log_i = log_bessel_i(np.arange(half + 1), K)
    j = np.arange(half)
    logs = np.append(np.logaddexp(log_i[:-1], log_i[1:]) - np.log(2 * j + 1),
                     log_i[half] - math.log(n))
    return float(np.max(logs) / LN10), float(np.min(logs) / LN10)


def sign_log10_range(kappa: float, eps: float):
    k, n = sign_parameters(kappa, eps)
    return erf_log10_range(2.0 * k, n)


def rect_log10_range(delta: float, eps: float):
    """Rectangle coefficients share the sign magnitudes at width delta/2."""
    return sign_log10_range(delta / 2.0, eps)


def _log_chebyshev_t(k, u):
    """log T_k(u) for u >= 1, stable for large k."""
    s = math.acosh(u)
    return k * s + math.log1p(math.exp(-2.0 * k * s)) - math.log(2.0)


def threshold_shape(delta: float):
    """(alpha, beta, w) with T_k(-1 + 2(x^2 - delta^2)/(1 - delta^2)) = (+-) T_k(w - beta x^2)."""
    alpha = 2.0 * delta * delta / (1.0 - delta * delta)
    beta = 2.0 / (1.0 - delta * delta)
    return alpha, beta, 1.0 + alpha


def threshold_log10_range(delta: float, eps: float):
    """
    (max, min) log10 of the monomial coefficients of the threshold polynomial.

    With T_k(1 + v) = sum_j g_j v^j, g_j = (k/(k+j)) C(k+j, 2j) 2^j > 0, the
    coefficient of y^m is beta^m sum_{j>=m} g_j C(j, m) alpha^{j-m} / T_k(w);
    every term is positive so logsumexp is exact. The sequence is log-concave,
    so its peak is found by bisection.
    """
    k = threshold_degree(delta, eps)
    alpha, beta, w = threshold_shape(delta)
    jj = np.arange(k + 1)
    log_fact = gammaln(np.arange(k + 1) + 1.0)
    log_g = (math.log(k) - np.log(k + jj) + gammaln(k + jj + 1.0)
             - gammaln(2.0 * jj + 1.0) - gammaln(k - jj + 1.0) + jj * math.log(2.0))
    log_tk = _log_chebyshev_t(k, w)
    log_alpha = math.log(alpha)
    log_beta = math.log(beta)

    def log_coeff(m):
        j = jj[m:]
        terms = log_g[m:] + log_fact[j] - log_fact[m] - log_fact[j - m] + (j - m) * log_alpha
        return m * log_beta + logsumexp(terms) - log_tk

    lo, hi = 0, k
    while lo < hi:
        mid = (lo + hi) // 2
        if log_coeff(mid + 1) > log_coeff(mid):
            lo = mid + 1
        else:
            hi = mid
    peak = log_coeff(lo)

    log_lead = (k - 1) * math.log(2.0) + k * log_beta - log_tk
    low = min(0.0, log_lead)
    return float(peak / LN10), float(low / LN10)


def _log10_inverse_coeffs(kappa, eps):
    """(max, min) log10 of 4 * binomial tail sums; all entries are at most 4."""
    b, j0 = inverse_parameters(kappa, eps)
    i = np.arange(1, b + 1)
    log_w = gammaln(2.0 * b + 1) - gammaln(b + i + 1.0) - gammaln(b - i + 1.0) - 2.0 * b * math.log(2.0)
    tails = np.logaddexp.accumulate(log_w[::-1])[::-1]
    logs = math.log(4.0) + tails[:j0 + 1]
    return float(np.max(logs) / LN10), float(np.min(logs) / LN10)


def matrix_inversion_log10_range(kappa: float, eps: float):
    """
    (max, min) over both factors of the matrix-inversion composition.

    The rectangle factor dominates; its width is 1/kappa and its precision
    min(eps, kappa / (2 j0)).
    """
    _, j0 = inverse_parameters(kappa, eps)
    eps_rect = min(eps, kappa / (2.0 * j0))
    rect_hi, rect_lo = rect_log10_range(1.0 / kappa, eps_rect)
    inv_hi, inv_lo = _log10_inverse_coeffs(kappa, eps)
    return max(rect_hi, inv_hi), min(rect_lo, inv_lo)


_RANGES = {
    'rect': rect_log10_range,
    'threshold': threshold_log10_range,
    'sign': sign_log10_range,
    'matrix_inversion': matrix_inversion_log10_range,
}


# =============================================================================
# Cells and maps
# =============================================================================

def accessibility_cell(family: str, param: float, log10_inv_eps: int) -> AccessibilityCell:
    """
    One cell: param is delta (rect), the gap (threshold) or kappa
    (sign, matrix_inversion); eps = 10^-log10_inv_eps.
    """
    if family not in _RANGES:
        raise DomainError(f"Unknown accessibility family: {family}. Supported: {list(_RANGES)}")
    eps = 10.0 ** (-log10_inv_eps)
    top, low = _RANGES[family](param, eps)
    return AccessibilityCell(
        family=family,
        param=float(param),
        log10_inv_eps=int(log10_inv_eps),
        max_log10_coeff=top,
        min_log10_nonzero_coeff=low,
        overflow=bool(top > BINARY64_MAX_LOG10),
        dynamic_range_digits=top - low,
    )


def accessibility_map(family, params, log10_inv_eps, threads=1):
    """
    Cells for the full params x log10_inv_eps grid, params outermost.

    Cells are independent; with threads > 1 they are computed concurrently
    and returned in grid order.
    """
    params = list(params)
    levels = list(log10_inv_eps)
    if not params or not levels:
        raise DomainError("accessibility grids must be nonempty")
    grid = [(p, L) for p in params for L in levels]
    logger.info("accessibility map: %s, %d cells", family, len(grid))

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda cell: accessibility_cell(family, *cell), grid))
    return [accessibility_cell(family, p, L) for p, L in grid]


def cells_to_frame(cells) -> pd.DataFrame:
    return pd.DataFrame([cell.to_row() for cell in cells], columns=CSV_COLUMNS)


# =============================================================================
# Direct binary64 computation (small instances only)
# =============================================================================

def _finite_log10_range(values):
    values = np.abs(np.asarray(values, dtype=float))
    if not np.all(np.isfinite(values)):
        return math.inf, math.nan
    nonzero = values[values > 0]
    return float(np.log10(nonzero.max())), float(np.log10(nonzero.min()))


def direct_log10_range(family: str, param: float, eps: float):
    """
    (max, min) log10 coefficient magnitudes computed naively in binary64.

    Returns (inf, nan) when any coefficient overflows. Used to cross-check
    the log-space formulas on small instances.
    """
    if family == 'threshold':
        k = threshold_degree(param, eps)
        _, beta, w = threshold_shape(param)
        basis = np.zeros(k + 1)
        basis[k] = 1.0
        with np.errstate(over='ignore', invalid='ignore'):
            poly = C.chebval(Polynomial([w, -beta]), basis)
            values = poly.coef / C.chebval(w, basis)
        return _finite_log10_range(values)

    if family in ('rect', 'sign'):
        kappa = param / 2.0 if family == 'rect' else param
        k, n = sign_parameters(kappa, eps)
        K = 2.0 * k * k
        half = (n - 1) // 2
        with np.errstate(over='ignore', invalid='ignore'):
            bessel = iv(np.arange(half + 1), K)
            j = np.arange(half)
            values = np.append((bessel[:-1] + bessel[1:]) / (2 * j + 1), bessel[half] / n)
        return _finite_log10_range(values)

    raise DomainError(f"direct computation not available for {family}")
