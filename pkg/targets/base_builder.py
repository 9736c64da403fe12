"""
base_builder.py
---------------
Abstract base class for all target builders.
Defines the TargetPair / TargetMeta records, the common build() flow and
shared utility methods.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, fields
from typing import Optional

import numpy as np

from processing.errors import DomainError, NotCompletable
from processing.laurent import LaurentPolynomial, classify, from_chebyshev, sample_on_circle

from .truncation import require_eps, require_positive


logger = logging.getLogger(__name__)

CLASS_TOL = 1e-12
BOUND_TOL = 1e-12
SAMPLES_PER_DEGREE = 8


@dataclass(frozen=True)
class TargetMeta:
    """
    Builder parameters carried alongside a target.

    Only the fields relevant to the family are set; the rest stay None.
    eps_approx is None for the random family, which is exact by construction.
    """
    family: str
    subnormalization: float = 0.5
    eps_approx: Optional[float] = None
    tau: Optional[float] = None
    kappa: Optional[float] = None
    delta: Optional[float] = None
    t: Optional[float] = None
    a: Optional[float] = None
    k: Optional[float] = None
    seed: Optional[int] = None
    nonzeros: Optional[int] = None
    convention: Optional[str] = None
    max_log10_coeff: Optional[float] = None
    padded_component: Optional[str] = None
    pad_magnitude: Optional[float] = None

    def __post_init__(self):
        if self.eps_approx is not None and not self.eps_approx > 0:
            raise DomainError(f"eps_approx must be positive, got {self.eps_approx}")
        if not (0 < self.subnormalization <= 1):
            raise DomainError(f"subnormalization must lie in (0, 1], got {self.subnormalization}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'TargetMeta':
        known = {f.name for f in fields(cls)}
        return cls(**{key: value for key, value in data.items() if key in known})


def _real_symmetric(p: LaurentPolynomial, name: str):
    report = classify(p, CLASS_TOL)
    if not report.is_real_on_circle:
        raise DomainError(f"{name} is not real on the unit circle (deviation {report.max_deviation:.3e})")
    if not (report.is_reciprocal or report.is_anti_reciprocal):
        raise DomainError(f"{name} is neither reciprocal nor anti-reciprocal")


def sup_norm_squared(A: LaurentPolynomial, B: LaurentPolynomial, grid_points=None) -> float:
    """Sampled max of A^2 + B^2 on the circle."""
    n = max(A.degree, B.degree)
    points = grid_points or SAMPLES_PER_DEGREE * (n + 1)
    a = sample_on_circle(A, points).real
    b = sample_on_circle(B, points).real
    return float(np.max(a * a + b * b))


@dataclass(frozen=True)
class TargetPair:
    """
    Validated pair (A, B) with P = A + iB.

    A and B are each real on the circle and either reciprocal or
    anti-reciprocal, and A^2 + B^2 <= 1 on a sampled grid.

    Raises:
        DomainError: symmetry class violated
        NotCompletable: sampled A^2 + B^2 exceeds one
    """
    A: LaurentPolynomial
    B: LaurentPolynomial
    meta: TargetMeta

    def __post_init__(self):
        _real_symmetric(self.A, 'A')
        _real_symmetric(self.B, 'B')
        peak = sup_norm_squared(self.A, self.B)
        if peak > 1.0 + BOUND_TOL:
            raise NotCompletable(f"sampled max of A^2 + B^2 is {peak:.6g} > 1")

    @property
    def degree(self) -> int:
        return max(self.A.degree, self.B.degree)

    @property
    def P(self) -> LaurentPolynomial:
        return self.A + 1j * self.B


class BaseTargetBuilder(ABC):
    """Abstract base class for target polynomial builders."""

    @property
    @abstractmethod
    def family(self) -> str:
        """Return family identifier (e.g., 'hs', 'random')."""
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        """Return human-readable family name for display."""
        pass

    @property
    @abstractmethod
    def parameters(self) -> tuple:
        """Names of the keyword parameters build() requires."""
        pass

    @property
    def optional_parameters(self) -> dict:
        """Optional keyword parameters and their defaults."""
        return {}

    @abstractmethod
    def compute(self, **params) -> TargetPair:
        """Construct the target from validated parameters."""
        pass

    def build(self, **params) -> TargetPair:
        """
        Validate parameters, construct the target and log a summary.

        Raises:
            DomainError: missing, unknown or out-of-range parameters
        """
        missing = [name for name in self.parameters if params.get(name) is None]
        if missing:
            raise DomainError(f"{self.family} target needs parameter(s): {', '.join(missing)}")
        allowed = set(self.parameters) | set(self.optional_parameters)
        unknown = sorted(set(k for k, v in params.items() if v is not None) - allowed)
        if unknown:
            raise DomainError(f"{self.family} target does not take: {', '.join(unknown)}")

        resolved = dict(self.optional_parameters)
        resolved.update({k: v for k, v in params.items() if v is not None})
        pair = self.compute(**resolved)
        logger.info("built %s target: degree %d, subnormalization %.6g",
                    self.family, pair.degree, pair.meta.subnormalization)
        return pair

    # =========================================================================
    # Common utility methods (shared across all builders)
    # =========================================================================

    require_positive = staticmethod(require_positive)
    require_eps = staticmethod(require_eps)

    @staticmethod
    def real_target(coeffs, slot: str, scale: float, meta: TargetMeta) -> TargetPair:
        """
        Place a real Chebyshev series in A (slot 'A') or B (slot 'B').

        The other component is the zero polynomial.
        """
        poly = from_chebyshev(kind1=np.asarray(coeffs) * scale)
        zero = LaurentPolynomial.zero()
        if slot == 'A':
            return TargetPair(A=poly, B=zero, meta=meta)
        return TargetPair(A=zero, B=poly, meta=meta)

    @staticmethod
    def chebyshev_sup(coeffs) -> float:
        """Sampled sup of |sum c_k T_k| over [-1, 1]."""
        poly = from_chebyshev(kind1=coeffs)
        return float(np.max(np.abs(sample_on_circle(poly, SAMPLES_PER_DEGREE * (poly.degree + 1)))))
