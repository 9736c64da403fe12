"""
hamiltonian_sim.py
------------------
Hamiltonian-simulation target: the Jacobi-Anger expansion of
(1/2) e^{i tau cos theta}, truncated at degree truncation_hs(tau, eps).
"""

import numpy as np

from processing.errors import DomainError
from processing.laurent import from_chebyshev

from .base_builder import BaseTargetBuilder, TargetMeta, TargetPair
from .special import bessel_j_sequence
from .truncation import truncation_hs


CONVENTIONS = ('cos', 'sin')


class HamiltonianSimBuilder(BaseTargetBuilder):
    """
    Builder for the hs family.

    convention 'cos' targets (1/2) e^{i tau cos theta}; A and B are then
    both reciprocal. convention 'sin' targets (1/2) e^{i tau sin theta},
    for which B is anti-reciprocal.
    """

    @property
    def family(self) -> str:
        return 'hs'

    @property
    def display_name(self) -> str:
        return 'Hamiltonian simulation'

    @property
    def parameters(self) -> tuple:
        return ('tau', 'eps')

    @property
    def optional_parameters(self) -> dict:
        return {'convention': 'cos'}

    def compute(self, tau, eps, convention='cos') -> TargetPair:
        self.require_positive('tau', tau)
        self.require_eps(eps)
        if convention not in CONVENTIONS:
            raise DomainError(f"convention must be one of {CONVENTIONS}, got {convention!r}")

        r = truncation_hs(tau, eps)
        J = bessel_j_sequence(r, tau)

        even = np.arange(0, r + 1, 2)
        odd = np.arange(1, r + 1, 2)
        # Chebyshev weights are twice the Laurent coefficients, so the
        # overall 1/2 turns J_0 into J_0/2 and J_j into J_j.
        cos_part = np.zeros(r + 1)
        sin_part = np.zeros(r + 1)
        if convention == 'cos':
            cos_part[even] = (-1.0) ** (even // 2) * J[even]
            sin_part[odd] = (-1.0) ** (odd // 2) * J[odd]
        else:
            cos_part[even] = J[even]
            sin_part[odd] = J[odd]
        cos_part[0] = J[0] / 2.0

        A = from_chebyshev(kind1=cos_part)
        if convention == 'cos':
            B = from_chebyshev(kind1=sin_part)
        else:
            B = from_chebyshev(kind2sin=sin_part)

        meta = TargetMeta(family=self.family, subnormalization=0.5, eps_approx=eps,
                          tau=tau, convention=convention)
        return TargetPair(A=A, B=B, meta=meta)


def build_hamiltonian_sim(tau: float, eps: float, convention: str = 'cos') -> TargetPair:
    """Half-scaled truncated e^{i tau cos theta} (or sin theta) as a TargetPair."""
    return HamiltonianSimBuilder().build(tau=tau, eps=eps, convention=convention)
