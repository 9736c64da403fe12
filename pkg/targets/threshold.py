"""
threshold.py
------------
Eigenvalue-threshold target

    P(x) = T_k(-1 + 2(x^2 - delta^2)/(1 - delta^2)) / T_k(-1 - 2 delta^2/(1 - delta^2))

which is 1 at x = 0 and at most eps/2 in magnitude for |x| >= delta.
"""

import math
from typing import Callable, NamedTuple

import numpy as np

from processing.errors import CoefficientOverflow

from . import chebyshev
from .accessibility import threshold_log10_range
from .base_builder import BaseTargetBuilder, TargetMeta, TargetPair
from .truncation import threshold_degree


class ThresholdExpansion(NamedTuple):
    evaluator: Callable
    chebyshev: np.ndarray
    k: int

    @property
    def overflow(self) -> bool:
        """True when interpolation produced a non-finite coefficient."""
        return not bool(np.all(np.isfinite(self.chebyshev)))


def _inner_argument(x, delta):
    return -1.0 + 2.0 * (x * x - delta * delta) / (1.0 - delta * delta)


def threshold_evaluator(delta: float, k: int) -> Callable:
    """
    Vectorised pointwise evaluator of the threshold ratio.

    Both T_k values grow like cosh(k s); the ratio is formed from
    exp(k(s - s0)) and 1/cosh(k s0) so neither factor overflows.
    """
    u0 = _inner_argument(0.0, delta)
    s0 = float(np.arccosh(-u0))
    sign0 = -1.0 if k % 2 else 1.0
    inv_den = 2.0 * math.exp(-k * s0) / (1.0 + math.exp(-2.0 * k * s0))

    def evaluate(x):
        u = _inner_argument(np.asarray(x, dtype=float), delta)
        out = np.empty_like(u)
        inside = np.abs(u) <= 1.0
        out[inside] = np.cos(k * np.arccos(u[inside])) * inv_den * sign0

        outside = ~inside
        s = np.arccosh(np.abs(u[outside]))
        sign = np.where(u[outside] < 0, sign0, 1.0)
        ratio = np.exp(k * (s - s0)) * (1.0 + np.exp(-2.0 * k * s)) / (1.0 + np.exp(-2.0 * k * s0))
        out[outside] = sign * sign0 * ratio
        out[u == u0] = 1.0
        if np.ndim(x) == 0:
            return float(out)
        return out

    return evaluate


def build_threshold(delta: float, eps: float) -> ThresholdExpansion:
    """
    Evaluator, degree-2k Chebyshev coefficients and k of the threshold target.

    Coefficients come from node interpolation at 2k+1 Chebyshev points with
    the odd entries set to zero.

    Raises:
        DomainError: delta outside (0, 1/sqrt(12)] or eps outside (0, 1)
    """
    k = threshold_degree(delta, eps)
    evaluator = threshold_evaluator(delta, k)
    with np.errstate(over='ignore', invalid='ignore'):
        coeffs = chebyshev.interpolate(evaluator, 2 * k, parity='even')
    return ThresholdExpansion(evaluator=evaluator, chebyshev=coeffs, k=k)


class ThresholdBuilder(BaseTargetBuilder):
    """Threshold target carried in A with subnormalization 1/2."""

    @property
    def family(self) -> str:
        return 'threshold'

    @property
    def display_name(self) -> str:
        return 'Eigenvalue threshold'

    @property
    def parameters(self) -> tuple:
        return ('delta', 'eps')

    def compute(self, delta, eps) -> TargetPair:
        expansion = build_threshold(delta, eps)
        top, _ = threshold_log10_range(delta, eps)
        if expansion.overflow:
            raise CoefficientOverflow(
                f"threshold interpolation overflowed for delta={delta}, eps={eps}", max_log10_coeff=top)
        meta = TargetMeta(family=self.family, subnormalization=0.5, eps_approx=eps,
                          delta=delta, k=expansion.k, max_log10_coeff=top)
        return self.real_target(expansion.chebyshev, 'A', 0.5, meta)
