import numpy as np
import pytest


def random_mixed_state(rng, dim):
    """Wishart-style random density matrix A A^dag / Tr."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_pure_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
