"""
random_poly.py
--------------
Sparse random target of fixed degree, reproducible from an integer seed.
"""

import numpy as np

from processing.errors import DomainError
from processing.laurent import from_chebyshev, sample_on_circle

from .base_builder import SAMPLES_PER_DEGREE, BaseTargetBuilder, TargetMeta, TargetPair


MIN_DEGREE = 20
MAX_NONZEROS = 40
NORM_SAFETY = 1e-3


def nonzero_count(n: int) -> int:
    """Total number of nonzero Chebyshev inputs: min(n/10, 40)."""
    return min(n // 10, MAX_NONZEROS)


class RandomBuilder(BaseTargetBuilder):
    """
    Builder for the random family.

    Cos-type weights T_k (k even) go to A, sin-type weights sin U_{k-1}
    (k odd) go to B. The T_n slot is always drawn so the degree is exactly n.
    Draws come from a Philox counter-based generator keyed only by seed.
    """

    @property
    def family(self) -> str:
        return 'random'

    @property
    def display_name(self) -> str:
        return 'Random sparse polynomial'

    @property
    def parameters(self) -> tuple:
        return ('n', 'seed')

    def compute(self, n, seed) -> TargetPair:
        if int(n) != n or n < MIN_DEGREE or n % 2:
            raise DomainError(f"random target needs an even degree >= {MIN_DEGREE}, got {n}")
        n = int(n)
        rng = np.random.Generator(np.random.Philox(int(seed)))

        nz = nonzero_count(n)
        count_a = nz - nz // 2
        count_b = nz // 2

        even_slots = np.arange(0, n, 2)
        odd_slots = np.arange(1, n, 2)
        idx_a = np.concatenate(([n], rng.choice(even_slots, size=count_a - 1, replace=False)))
        idx_b = rng.choice(odd_slots, size=count_b, replace=False)
        vals_a = rng.random(count_a)
        vals_b = rng.random(count_b)

        cos_part = np.zeros(n + 1)
        sin_part = np.zeros(n + 1)
        cos_part[idx_a] = vals_a
        sin_part[idx_b] = vals_b

        A = from_chebyshev(kind1=cos_part)
        B = from_chebyshev(kind2sin=sin_part)
        sup = float(np.max(np.abs(sample_on_circle(A + 1j * B, SAMPLES_PER_DEGREE * (n + 1)))))
        scale = 1.0 / (sup * 2.0 * (1.0 + NORM_SAFETY))

        meta = TargetMeta(family=self.family, subnormalization=0.5, seed=int(seed), nonzeros=nz)
        return TargetPair(A=A * scale, B=B * scale, meta=meta)


def build_random(n: int, seed: int) -> TargetPair:
    """Sparse random degree-n target with sampled sup norm below 1/2."""
    return RandomBuilder().build(n=n, seed=seed)
