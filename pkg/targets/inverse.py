"""
inverse.py
----------
1/x approximation on |x| >= 1/kappa and the matrix-inversion target built
from it by suppressing the region around the origin with a rectangle.
"""

import math

import numpy as np
from scipy.special import gammaln

from processing.errors import CoefficientOverflow, RangeUnsupported

from . import chebyshev
from .accessibility import BINARY64_MAX_LOG10, matrix_inversion_log10_range
from .base_builder import BaseTargetBuilder, TargetMeta, TargetPair
from .erf_sign import rect_chebyshev
from .truncation import inverse_parameters, sign_parameters


def binomial_tail_sums(b: int, count: int) -> np.ndarray:
    """
    S_j = sum_{i=j+1}^{b} C(2b, b+i) / 2^{2b} for j = 0..count-1.

    Terms are formed in log space; each tail is an exactly rounded fsum of
    the first terms and the shared remainder beyond them.
    """
    i = np.arange(1, b + 1)
    log_w = gammaln(2.0 * b + 1) - gammaln(b + i + 1.0) - gammaln(b - i + 1.0) - 2.0 * b * math.log(2.0)
    weights = np.exp(log_w)

    tails = np.zeros(count)
    head = min(count, b)
    remainder = math.fsum(weights[head:])
    for j in range(head):
        tails[j] = math.fsum([*weights[j:head], remainder])
    return tails


def inverse_chebyshev(kappa: float, eps: float) -> np.ndarray:
    """
    Chebyshev coefficients of the odd degree-(2 j0 + 1) approximation to 1/x.

    2 eps-close to 1/x on [-1, -1/kappa] and [1/kappa, 1].
    """
    b, j0 = inverse_parameters(kappa, eps)
    tails = binomial_tail_sums(b, j0 + 1)
    j = np.arange(j0 + 1)
    coeffs = np.zeros(2 * j0 + 2)
    coeffs[2 * j + 1] = 4.0 * (-1.0) ** j * tails
    return coeffs


def matrix_inversion_parameters(kappa: float, eps: float):
    """
    Component parameters of the matrix-inversion composition.

    Returns:
        dict with b, j0, eps_rect, t, delta, n_inv, n_rect and degree
    """
    b, j0 = inverse_parameters(kappa, eps)
    eps_rect = min(eps, kappa / (2.0 * j0))
    delta = 1.0 / kappa
    _, n_rect = sign_parameters(delta / 2.0, eps_rect)
    n_inv = 2 * j0 + 1
    return {
        'b': b, 'j0': j0, 'eps_rect': eps_rect,
        't': 1.0 / (2.0 * kappa), 'delta': delta,
        'n_inv': n_inv, 'n_rect': n_rect, 'degree': n_inv + n_rect,
    }


def matrix_inversion_chebyshev(kappa: float, eps: float) -> np.ndarray:
    """
    Chebyshev coefficients of (1/(2 kappa)) P_inv (1 - P_rect), degree n_inv + n_rect.

    Raises:
        CoefficientOverflow: unscaled rectangle coefficients exceed binary64
    """
    params = matrix_inversion_parameters(kappa, eps)
    top, _ = matrix_inversion_log10_range(kappa, eps)
    if top > BINARY64_MAX_LOG10:
        raise CoefficientOverflow(
            f"matrix inversion coefficients reach 10^{top:.1f}, beyond binary64", max_log10_coeff=top)
    try:
        rect = rect_chebyshev(params['t'], params['delta'], params['eps_rect'])
    except RangeUnsupported as exc:
        raise CoefficientOverflow(str(exc), max_log10_coeff=top) from exc

    complement = -rect
    complement[0] += 1.0
    coeffs = chebyshev.multiply(inverse_chebyshev(kappa, eps), complement) / (2.0 * kappa)
    coeffs[0::2] = 0.0
    return coeffs


class InverseBuilder(BaseTargetBuilder):
    """1/x approximation, carried in B and scaled to sup 1/2."""

    @property
    def family(self) -> str:
        return 'inverse'

    @property
    def display_name(self) -> str:
        return 'Inverse function'

    @property
    def parameters(self) -> tuple:
        return ('kappa', 'eps')

    def compute(self, kappa, eps) -> TargetPair:
        coeffs = inverse_chebyshev(kappa, eps)
        scale = 0.5 / self.chebyshev_sup(coeffs)
        meta = TargetMeta(family=self.family, subnormalization=scale, eps_approx=eps, kappa=kappa)
        return self.real_target(coeffs, 'B', scale, meta)


class MatrixInversionBuilder(BaseTargetBuilder):
    """Matrix-inversion composition, carried in B and scaled to sup 1/2."""

    @property
    def family(self) -> str:
        return 'matrix_inversion'

    @property
    def display_name(self) -> str:
        return 'Matrix inversion'

    @property
    def parameters(self) -> tuple:
        return ('kappa', 'eps')

    def compute(self, kappa, eps) -> TargetPair:
        coeffs = matrix_inversion_chebyshev(kappa, eps)
        top, _ = matrix_inversion_log10_range(kappa, eps)
        scale = min(0.5 / self.chebyshev_sup(coeffs), 1.0)
        meta = TargetMeta(family=self.family, subnormalization=scale, eps_approx=eps,
                          kappa=kappa, max_log10_coeff=top)
        return self.real_target(coeffs, 'B', scale, meta)


def build_inverse(kappa: float, eps: float) -> TargetPair:
    return InverseBuilder().build(kappa=kappa, eps=eps)


def build_matrix_inversion(kappa: float, eps: float) -> TargetPair:
    """
    Matrix-inversion target, or CoefficientOverflow with the log10 magnitude
    when the composition is not representable in binary64.
    """
    return MatrixInversionBuilder().build(kappa=kappa, eps=eps)
