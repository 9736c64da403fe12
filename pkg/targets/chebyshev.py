"""
chebyshev.py
------------
Chebyshev-basis helpers shared by the real-variable target builders.
"""

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.fft import dct


def nodes(count: int) -> np.ndarray:
    """First-kind Chebyshev nodes cos(pi*(i + 1/2)/count), i = 0..count-1."""
    return np.cos(np.pi * (np.arange(count) + 0.5) / count)


def interpolate(func, degree: int, parity=None) -> np.ndarray:
    """
    Chebyshev coefficients of the degree-`degree` interpolant of func.

    Uses a type-II cosine transform of samples at degree+1 first-kind
    nodes; O(n log n) time and O(n) memory.

    Args:
        func: vectorised callable on [-1, 1]
        degree: interpolant degree
        parity: 'even' or 'odd' zeroes the opposite-parity coefficients

    Returns:
        c_0, ..., c_degree
    """
    count = degree + 1
    values = np.asarray(func(nodes(count)), dtype=float)
    coeffs = dct(values, type=2) / count
    coeffs[0] /= 2.0
    if parity == 'even':
        coeffs[1::2] = 0.0
    elif parity == 'odd':
        coeffs[0::2] = 0.0
    return coeffs


def evaluate(coeffs, x):
    """sum_k c_k T_k(x) by Clenshaw recurrence."""
    return C.chebval(x, coeffs)


def multiply(c1, c2) -> np.ndarray:
    """Product of two Chebyshev series, kept in the Chebyshev basis."""
    return C.chebmul(c1, c2)
