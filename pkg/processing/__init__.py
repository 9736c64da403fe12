"""
processing package
------------------
The QSP processing stages: Laurent polynomial arithmetic, Fejer
factorization, completion, decomposition and verification.
"""

from .errors import QspProcessingError
from .laurent import LaurentPolynomial

__all__ = [
    'QspProcessingError',
    'LaurentPolynomial',
]
