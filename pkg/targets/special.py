"""
special.py
----------
Bessel functions needed by the target builders.

J_k(x) and e^{-x} I_k(x) are produced for all orders 0..max_order at once by
Miller's downward recurrence, normalised with the generating-function sums

    J_0(x) + 2 sum_{k>=1} J_{2k}(x) = 1
    I_0(x) + 2 sum_{k>=1} I_k(x)    = e^{x}

The builders always need the whole sequence, so a single downward sweep is
cheaper than per-order evaluation.
"""

import math

import numpy as np
from scipy.special import ive

from processing.errors import RangeUnsupported


MAX_ORDER = 100_000
MAX_ARGUMENT = 1.0e4

_RESCALE_AT = 1.0e250
_RESCALE_BY = 1.0e-250

# below this the leading series term (x/2)^k / k! is exact to rounding
SMALL_ARGUMENT = 1.0e-8


def _check_range(max_order, x):
    if not np.isfinite(x) or x < 0 or x > MAX_ARGUMENT:
        raise RangeUnsupported(f"Bessel argument {x} outside [0, {MAX_ARGUMENT:g}]")
    if max_order < 0 or max_order > MAX_ORDER:
        raise RangeUnsupported(f"Bessel order {max_order} outside [0, {MAX_ORDER}]")


def _miller_start(max_order, x):
    """Even starting order far enough above both max_order and x."""
    base = max(int(max_order), int(np.ceil(x)))
    start = base + int(np.ceil(np.sqrt(120.0 * max(base, 1)))) + 64
    return start + (start % 2)


def _downward(start, x, sign):
    """
    Run v_{k-1} = (2k/x) v_k + sign * v_{k+1} from v_{start+1} = 0, v_start = 1.

    sign = -1 gives the J recurrence, sign = +1 the I recurrence. The sweep
    runs in extended precision and rescales before a step could overflow;
    only ratios matter.
    """
    vals = np.zeros(start + 2, dtype=np.longdouble)
    vals[start] = 1.0
    x = np.longdouble(x)
    for k in range(start, 0, -1):
        factor = 2 * k / x
        if abs(vals[k]) * factor > _RESCALE_AT:
            vals[k:] *= _RESCALE_BY
        vals[k - 1] = factor * vals[k] + sign * vals[k + 1]
    return vals


def _leading_terms(max_order, x, sign):
    """(x/2)^k / k! * (1 + sign (x/2)^2 / (k+1)), the series for x below SMALL_ARGUMENT."""
    half = x / 2.0
    k = np.arange(1, max_order + 1, dtype=float)
    powers = np.cumprod(np.concatenate(([1.0], half / k)))
    return powers * (1.0 + sign * half * half / np.arange(1, max_order + 2))


def bessel_j_sequence(max_order: int, x: float) -> np.ndarray:
    """
    J_0(x), ..., J_max_order(x).

    Raises:
        RangeUnsupported: order > 1e5 or x outside [0, 1e4]
    """
    _check_range(max_order, x)
    out = np.zeros(max_order + 1)
    if x == 0:
        out[0] = 1.0
        return out
    if x < SMALL_ARGUMENT:
        return _leading_terms(max_order, x, sign=-1.0)
    start = _miller_start(max_order, x)
    vals = _downward(start, x, sign=-1.0)
    norm = vals[0] + 2 * np.sum(vals[2:start + 1:2])
    out[:] = vals[:max_order + 1] / norm
    return out


def bessel_j(order: int, x: float) -> float:
    """Bessel function of the first kind J_order(x)."""
    return float(bessel_j_sequence(order, x)[order])


def bessel_i_scaled_sequence(max_order: int, x: float) -> np.ndarray:
    """
    e^{-x} I_0(x), ..., e^{-x} I_max_order(x).

    Raises:
        RangeUnsupported: order > 1e5 or x outside [0, 1e4]
    """
    _check_range(max_order, x)
    out = np.zeros(max_order + 1)
    if x == 0:
        out[0] = 1.0
        return out
    if x < SMALL_ARGUMENT:
        return math.exp(-x) * _leading_terms(max_order, x, sign=1.0)
    start = _miller_start(max_order, x)
    vals = _downward(start, x, sign=1.0)
    norm = vals[0] + 2 * np.sum(vals[1:start + 1])
    out[:] = vals[:max_order + 1] / norm
    return out


def bessel_i_scaled(order: int, x: float) -> float:
    """Exponentially scaled modified Bessel function e^{-x} I_order(x)."""
    return float(bessel_i_scaled_sequence(order, x)[order])


def log_bessel_i(orders, x: float) -> np.ndarray:
    """
    Natural log of I_j(x) for an array of orders, valid far beyond overflow.

    Uses log(ive) + x while the scaled value is representable and the
    leading uniform (Debye) asymptotic expansion once it underflows.
    """
    orders = np.atleast_1d(np.asarray(orders, dtype=float))
    out = np.empty_like(orders)
    scaled = ive(orders, x)
    ok = scaled > 1e-280
    out[ok] = np.log(scaled[ok]) + x

    nu = orders[~ok]
    if nu.size:
        z = x / nu
        root = np.sqrt(1.0 + z * z)
        eta = root + np.log(z / (1.0 + root))
        out[~ok] = -0.5 * np.log(2.0 * np.pi * nu) - 0.25 * np.log1p(z * z) + nu * eta
    return out
