import math

import numpy as np
import pytest

from coherence_bench.exceptions import InvalidStateError, NotHermitianError
from coherence_bench.linalg import (
    eig_hermitian,
    kron,
    validate_density_matrix,
    vn_entropy,
)
from coherence_bench.states import SIGMA_X, qubit_family

from conftest import random_mixed_state


def test_kron_identity():
    assert np.allclose(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_basis_projectors():
    a = np.diag([1.0, 0.0])
    b = np.diag([0.0, 1.0])
    assert np.allclose(kron(a, b), np.diag([0.0, 1.0, 0.0, 0.0]))


def test_kron_two_copies_unit_trace():
    rho = qubit_family(math.pi / 4)
    assert abs(np.trace(kron(rho, rho)).real - 1.0) < 1e-12


def test_kron_trace_multiplicative_random(rng):
    for _ in range(50):
        da, db = rng.integers(2, 4, size=2)
        a = random_mixed_state(rng, da) * rng.uniform(0.5, 2.0)
        b = random_mixed_state(rng, db) * rng.uniform(0.5, 2.0)
        lhs = np.trace(kron(a, b))
        rhs = np.trace(a) * np.trace(b)
        assert abs(lhs - rhs) < 1e-12


def test_eig_diagonal():
    values, _ = eig_hermitian(np.diag([0.7, 0.3]))
    assert np.allclose(values, [0.3, 0.7])


def test_eig_pauli_x():
    values, _ = eig_hermitian(SIGMA_X)
    assert np.allclose(values, [-1.0, 1.0])


def test_eig_pure_family_state_rank_one():
    values, _ = eig_hermitian(qubit_family(math.pi / 6))
    assert np.allclose(values, [0.0, 1.0], atol=1e-12)


def test_eig_reconstruction_and_orthonormality(rng):
    for _ in range(25):
        dim = int(rng.integers(2, 6))
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        a = a + a.conj().T
        values, vectors = eig_hermitian(a)
        rebuilt = vectors @ np.diag(values) @ vectors.conj().T
        assert np.max(np.abs(rebuilt - a)) <= 1e-10
        assert np.max(np.abs(vectors.conj().T @ vectors - np.eye(dim))) <= 1e-10
        assert abs(values.sum() - np.trace(a).real) <= 1e-10
        assert np.all(np.diff(values) >= -1e-12)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_vn_entropy_maximally_mixed():
    assert vn_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)


def test_vn_entropy_pure_state():
    assert vn_entropy(qubit_family(0.3)) == pytest.approx(0.0, abs=1e-9)


def test_vn_entropy_binary():
    # independent oracle: explicit binary entropy formula
    expected = -(0.25 * math.log2(0.25) + 0.75 * math.log2(0.75))
    assert vn_entropy(np.diag([0.25, 0.75])) == pytest.approx(expected, abs=1e-12)


def test_vn_entropy_unitary_invariance(rng):
    for _ in range(30):
        dim = int(rng.integers(2, 4))
        rho = random_mixed_state(rng, dim)
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        _, u = np.linalg.eigh(h + h.conj().T)
        rotated = u @ rho @ u.conj().T
        assert vn_entropy(rotated) == pytest.approx(vn_entropy(rho), abs=1e-9)


def test_validate_density_matrix_rejects_bad_trace():
    with pytest.raises(InvalidStateError):
        validate_density_matrix(np.diag([0.7, 0.7]))


def test_validate_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(InvalidStateError):
        validate_density_matrix(np.diag([1.5, -0.5]))


def test_vn_entropy_rejects_invalid():
    with pytest.raises(InvalidStateError):
        vn_entropy(np.array([[0.5, 0.5], [0.4, 0.5]]))
