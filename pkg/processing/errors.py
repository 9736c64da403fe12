"""
errors.py
---------
Exception hierarchy shared by the processing and targets packages.

Every failure the toolchain can report on purpose derives from
QspProcessingError, so callers can separate expected numerical failures
from programming errors.
"""


class QspProcessingError(Exception):
    """Base class for all expected processing failures."""
    stage = 'processing'


class DomainError(QspProcessingError, ValueError):
    """A parameter lies outside the domain an operation accepts."""
    stage = 'validation'


class RangeUnsupported(QspProcessingError, ValueError):
    """Special-function arguments outside the supported range."""
    stage = 'special-functions'


class GridTooCoarse(QspProcessingError, ValueError):
    """Sampling grid too small for the polynomial degree."""
    stage = 'sampling'


class SingularMatrix(QspProcessingError, ArithmeticError):
    """A pivot of the Newton system underflowed."""
    stage = 'fejer'


class NegativeInstance(QspProcessingError):
    """The Fejer instance is negative somewhere on the circle."""
    stage = 'fejer'


class RootExclusionError(QspProcessingError):
    """The factor has a root inside or on the unit circle."""
    stage = 'fejer'


class NoConvergence(QspProcessingError):
    """
    Wilson iteration stopped without reaching the tolerance.

    Attributes:
        factor: best FejerFactor seen (smallest residual)
        report: WilsonReport with converged=False
    """
    stage = 'fejer'

    def __init__(self, message, factor=None, report=None):
        super().__init__(message)
        self.factor = factor
        self.report = report


class NotCompletable(QspProcessingError):
    """A^2 + B^2 exceeds one somewhere on the circle."""
    stage = 'completion'


class NotUnitary(QspProcessingError):
    """Matrix polynomial is too far from unitary to decompose."""
    stage = 'decompose'


class LeadTooSmall(QspProcessingError):
    """Lowest matrix coefficient vanished during peeling."""
    stage = 'decompose'

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class CoefficientOverflow(QspProcessingError, OverflowError):
    """A coefficient is not representable in binary64."""
    stage = 'targets'

    def __init__(self, message, max_log10_coeff=None):
        super().__init__(message)
        self.max_log10_coeff = max_log10_coeff


class StageFailure(QspProcessingError):
    """
    A pipeline stage failed; wraps the underlying QspProcessingError.

    Attributes:
        stage: name of the failing stage
        cause: the original exception
    """

    def __init__(self, stage, cause):
        super().__init__(f"{stage} failed: {cause}")
        self.stage = stage
        self.cause = cause
