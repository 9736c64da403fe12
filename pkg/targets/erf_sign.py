"""
erf_sign.py
-----------
The erf-based family: erf(kx), a shifted sign function and the rectangle
function built from two sign shifts.

The erf expansion has coefficients proportional to e^{-k^2/2} I_j(k^2/2).
They are computed from exponentially scaled Bessel values so the huge
I_j and tiny e^{-k^2/2} never meet in floating point. Whether the unscaled
coefficients would be representable is checked first in log space; if not
the builders raise CoefficientOverflow carrying the log10 magnitude.
"""

import math

import numpy as np

from processing.errors import CoefficientOverflow, DomainError

from . import chebyshev
from .accessibility import BINARY64_MAX_LOG10, erf_log10_range
from .base_builder import BaseTargetBuilder, TargetMeta, TargetPair
from .special import bessel_i_scaled_sequence
from .truncation import SIGN_EPS_LIMIT, n_erf, sign_parameters


def erf_chebyshev(k: float, n: int) -> np.ndarray:
    """
    Chebyshev coefficients c_0..c_n of the odd degree-n erf(kx) approximation.

    Args:
        k: steepness
        n: odd degree
    """
    if n < 1 or n % 2 == 0:
        raise DomainError(f"erf degree must be odd and positive, got {n}")
    half = (n - 1) // 2
    scaled = bessel_i_scaled_sequence(half, k * k / 2.0)
    prefactor = 2.0 * k / math.sqrt(math.pi)

    coeffs = np.zeros(n + 1)
    j = np.arange(half)
    coeffs[2 * j + 1] = prefactor * (-1.0) ** j * (scaled[j] + scaled[j + 1]) / (2 * j + 1)
    coeffs[n] = prefactor * (-1.0) ** half * scaled[half] / n
    return coeffs


def _check_representable(k, n, family):
    top, _ = erf_log10_range(k, n)
    if top > BINARY64_MAX_LOG10:
        raise CoefficientOverflow(
            f"{family} coefficients reach 10^{top:.1f}, beyond binary64", max_log10_coeff=top)
    return top


def sign_chebyshev(a: float, kappa: float, eps: float) -> np.ndarray:
    """
    Chebyshev coefficients (in x) of the approximation to sign(x - a).

    eps-close outside [a - kappa/2, a + kappa/2]; built as p_erf((x - a)/2)
    with doubled steepness and re-expanded in x by node interpolation.
    """
    if not (-1.0 <= a <= 1.0):
        raise DomainError(f"sign shift a must lie in [-1, 1], got {a}")
    k, n = sign_parameters(kappa, eps)
    _check_representable(2.0 * k, n, 'sign')
    inner = erf_chebyshev(2.0 * k, n)
    return chebyshev.interpolate(lambda x: chebyshev.evaluate(inner, (x - a) / 2.0), n)


def rect_chebyshev(t: float, delta: float, eps: float) -> np.ndarray:
    """
    Even Chebyshev coefficients of the approximation to rect(x / 2t).

    Half the difference of two sign approximations centred at -(t + delta/4)
    and t + delta/4, each with transition width delta/2.
    """
    if not (t > 0 and delta > 0 and t + delta / 2.0 < 1.0):
        raise DomainError(f"rect needs t, delta > 0 and t + delta/2 < 1, got t={t}, delta={delta}")
    shift = t + delta / 4.0
    k, n = sign_parameters(delta / 2.0, eps)
    _check_representable(2.0 * k, n, 'rect')
    inner = erf_chebyshev(2.0 * k, n)

    def rect(x):
        return 0.5 * (chebyshev.evaluate(inner, (x + shift) / 2.0)
                      - chebyshev.evaluate(inner, (x - shift) / 2.0))

    return chebyshev.interpolate(rect, n, parity='even')


class ErfBuilder(BaseTargetBuilder):
    """erf(kx) approximation, carried in B."""

    @property
    def family(self) -> str:
        return 'erf'

    @property
    def display_name(self) -> str:
        return 'Error function'

    @property
    def parameters(self) -> tuple:
        return ('k', 'eps')

    def compute(self, k, eps) -> TargetPair:
        self.require_positive('k', k)
        self.require_eps(eps)
        n = n_erf(k, eps)
        top = _check_representable(k, n, 'erf')
        meta = TargetMeta(family=self.family, subnormalization=0.5 / (1.0 + eps),
                          eps_approx=eps, k=k, max_log10_coeff=top)
        return self.real_target(erf_chebyshev(k, n), 'B', meta.subnormalization, meta)


class SignBuilder(BaseTargetBuilder):
    """sign(x - a) approximation, carried in B."""

    @property
    def family(self) -> str:
        return 'sign'

    @property
    def display_name(self) -> str:
        return 'Sign function'

    @property
    def parameters(self) -> tuple:
        return ('a', 'kappa', 'eps')

    def compute(self, a, kappa, eps) -> TargetPair:
        self.require_positive('kappa', kappa)
        self.require_eps(eps, upper=SIGN_EPS_LIMIT)
        coeffs = sign_chebyshev(a, kappa, eps)
        k, n = sign_parameters(kappa, eps)
        top, _ = erf_log10_range(2.0 * k, n)
        meta = TargetMeta(family=self.family, subnormalization=0.5 / (1.0 + eps),
                          eps_approx=eps, kappa=kappa, a=a, k=k, max_log10_coeff=top)
        return self.real_target(coeffs, 'B', meta.subnormalization, meta)


class RectBuilder(BaseTargetBuilder):
    """rect(x / 2t) approximation, carried in A."""

    @property
    def family(self) -> str:
        return 'rect'

    @property
    def display_name(self) -> str:
        return 'Rectangle function'

    @property
    def parameters(self) -> tuple:
        return ('t', 'delta', 'eps')

    def compute(self, t, delta, eps) -> TargetPair:
        self.require_eps(eps, upper=SIGN_EPS_LIMIT)
        coeffs = rect_chebyshev(t, delta, eps)
        k, n = sign_parameters(delta / 2.0, eps)
        top, _ = erf_log10_range(2.0 * k, n)
        meta = TargetMeta(family=self.family, subnormalization=0.5 / (1.0 + eps),
                          eps_approx=eps, t=t, delta=delta, k=k, max_log10_coeff=top)
        return self.real_target(coeffs, 'A', meta.subnormalization, meta)


def build_erf(k: float, eps: float) -> TargetPair:
    return ErfBuilder().build(k=k, eps=eps)


def build_sign(a: float, kappa_width: float, eps: float) -> TargetPair:
    """Subnormalised sign(x - a) approximation with B carrying the odd part."""
    return SignBuilder().build(a=a, kappa=kappa_width, eps=eps)


def build_rect(t: float, delta: float, eps: float) -> TargetPair:
    """Subnormalised rect(x / 2t) approximation with A carrying it."""
    return RectBuilder().build(t=t, delta=delta, eps=eps)
