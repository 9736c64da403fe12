"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from config import THREADS_ENV, RunConfig
from processing.laurent import LaurentPolynomial
from targets import TargetMeta, TargetPair, build_random


@pytest.fixture(autouse=True)
def _clear_threads_env(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)


@pytest.fixture
def config():
    return RunConfig(threads=1)


@pytest.fixture
def identity_target():
    """A = 1, B = 0: already unitary, degree zero."""
    return TargetPair(A=LaurentPolynomial.constant(1.0), B=LaurentPolynomial.zero(),
                      meta=TargetMeta(family='identity', subnormalization=1.0))


@pytest.fixture
def random_target():
    return build_random(20, 1)


def outer_factor(degree, rng, low=1.5, high=3.0):
    """gamma with gamma_0 = 1 and conjugate-closed roots of modulus in [low, high]."""
    roots = []
    for _ in range(degree // 2):
        r = rng.uniform(low, high) * np.exp(1j * rng.uniform(0.0, np.pi))
        roots.extend([r, np.conj(r)])
    if degree % 2:
        roots.append(rng.choice([-1.0, 1.0]) * rng.uniform(low, high))
    gamma = np.real(np.poly(roots))[::-1]
    return gamma / gamma[0]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
