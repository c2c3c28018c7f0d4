import math

import numpy as np
import pytest

from coherence_bench.exceptions import DimensionMismatchError, InvalidStateError
from coherence_bench.linalg import kron
from coherence_bench.measurements import (
    bell_basis,
    equatorial_basis,
    outcome_probs,
    pauli_basis,
    qutrit_mub_bases,
    two_qutrit_cms_basis,
)
from coherence_bench.states import bloch_of, qubit_family, qutrit_family

from conftest import random_mixed_state, random_pure_state


ALL_BASES = (
    [bell_basis(), two_qutrit_cms_basis()]
    + [pauli_basis(a) for a in "xyz"]
    + [equatorial_basis(phi) for phi in (0.0, 0.4, 2.2)]
    + qutrit_mub_bases()
)


@pytest.mark.parametrize("basis", ALL_BASES, ids=lambda b: ",".join(b.labels))
def test_basis_invariants(basis):
    basis.validate(tol=1e-10)


def bell_probs_closed_form(rho):
    """Independent oracle: collective outcome probabilities from the Bloch
    components of the measured single-qubit state."""
    b = bloch_of(rho)
    rx2, ry2, rz2 = b.r_x**2, b.r_y**2, b.r_z**2
    return np.array(
        [
            (1 + rx2 + ry2 - rz2) / 4,
            (1 - rx2 - ry2 - rz2) / 4,
            (1 + rx2 - ry2 + rz2) / 4,
            (1 - rx2 + ry2 + rz2) / 4,
        ]
    )


class TestBellBasis:
    def test_outcome_order_labels(self):
        assert bell_basis().labels == ("psi+", "psi-", "phi+", "phi-")

    def test_probs_on_maximally_coherent_pair(self):
        rho = qubit_family(math.pi / 4)
        dist = outcome_probs(kron(rho, rho), bell_basis())
        assert np.allclose(dist.probabilities, (0.5, 0.0, 0.5, 0.0), atol=1e-12)

    def test_probs_on_family_pi_over_six(self):
        rho = qubit_family(math.pi / 6)
        dist = outcome_probs(kron(rho, rho), bell_basis())
        assert np.allclose(dist.probabilities, (0.375, 0.0, 0.5, 0.125), atol=1e-12)

    def test_probs_on_maximally_mixed_pair(self):
        rho = np.eye(2) / 2
        dist = outcome_probs(kron(rho, rho), bell_basis())
        assert np.allclose(dist.probabilities, (0.25, 0.25, 0.25, 0.25), atol=1e-12)

    def test_closed_form_on_random_mixed_states(self, rng):
        basis = bell_basis()
        for _ in range(300):
            rho = random_mixed_state(rng, 2)
            dist = outcome_probs(kron(rho, rho), basis)
            assert np.max(np.abs(np.array(dist.probabilities) - bell_probs_closed_form(rho))) <= 1e-10

    def test_antisymmetric_outcome_vanishes_on_pure_pairs(self, rng):
        basis = bell_basis()
        for _ in range(100):
            rho = random_pure_state(rng, 2)
            dist = outcome_probs(kron(rho, rho), basis)
            assert dist.probabilities[1] <= 1e-10


class TestPauliAndEquatorial:
    def test_z_projectors(self):
        basis = pauli_basis("z")
        assert np.allclose(basis.projectors[0], np.diag([1.0, 0.0]))
        assert np.allclose(basis.projectors[1], np.diag([0.0, 1.0]))

    def test_x_on_plus_state(self):
        dist = outcome_probs(qubit_family(math.pi / 4), pauli_basis("x"))
        assert np.allclose(dist.probabilities, (1.0, 0.0), atol=1e-12)

    def test_x_on_family_pi_over_six(self):
        dist = outcome_probs(qubit_family(math.pi / 6), pauli_basis("x"))
        expected = ((1 + math.sqrt(3) / 2) / 2, (1 - math.sqrt(3) / 2) / 2)
        assert np.allclose(dist.probabilities, expected, atol=1e-12)

    def test_equatorial_limits_match_pauli(self):
        for phi, axis in ((0.0, "x"), (math.pi / 2, "y")):
            eq = equatorial_basis(phi)
            pauli = pauli_basis(axis)
            for p, q in zip(eq.projectors, pauli.projectors):
                assert np.allclose(p, q, atol=1e-12)

    def test_equatorial_expectation_on_family(self):
        for theta in (0.2, 0.7, 1.1):
            for phi in (0.0, 0.5, 1.3):
                rho = qubit_family(theta)
                dist = outcome_probs(rho, equatorial_basis(phi))
                expectation = dist.probabilities[0] - dist.probabilities[1]
                assert expectation == pytest.approx(
                    math.cos(phi) * math.sin(2 * theta), abs=1e-12
                )


class TestQutritMubs:
    def test_cross_basis_overlap_magnitude(self):
        bases = qutrit_mub_bases()
        kets = []
        for basis in bases:
            kets.append([np.linalg.eigh(p)[1][:, -1] for p in basis.projectors])
        for i in range(4):
            for k in range(i + 1, 4):
                for v in kets[i]:
                    for w in kets[k]:
                        assert abs(np.vdot(v, w)) == pytest.approx(
                            1 / math.sqrt(3), abs=1e-10
                        )

    def test_second_basis_vector_components(self):
        # |xi11> = (1, e^{2i pi/3}, e^{-2i pi/3}) / sqrt(3)
        basis = qutrit_mub_bases()[1]
        proj = basis.projectors[1]
        expected_ket = np.array(
            [1.0, np.exp(2j * np.pi / 3), np.exp(-2j * np.pi / 3)]
        ) / math.sqrt(3)
        assert np.allclose(proj, np.outer(expected_ket, expected_ket.conj()), atol=1e-12)


class TestTwoQutritBasis:
    def test_labels_and_order(self):
        basis = two_qutrit_cms_basis()
        assert basis.labels == (
            "00", "11", "22",
            "psi01+", "psi01-", "psi02+", "psi02-", "psi12+", "psi12-",
        )

    def test_antisymmetric_vanishes_on_pure_product(self, rng):
        basis = two_qutrit_cms_basis()
        states = [qutrit_family(a) for a in (0.0, math.pi / 4, 1.0)]
        states += [random_pure_state(rng, 3) for _ in range(50)]
        for rho in states:
            dist = outcome_probs(kron(rho, rho), basis)
            for label, p in zip(dist.labels, dist.probabilities):
                if label.endswith("-"):
                    assert p <= 1e-10

    def test_maximally_mixed_pair_probability(self):
        # brute-force trace oracle: each rank-1 projector picks up 1/9
        basis = two_qutrit_cms_basis()
        rho_pair = kron(np.eye(3) / 3, np.eye(3) / 3)
        dist = outcome_probs(rho_pair, basis)
        for p, proj in zip(dist.probabilities, basis.projectors):
            assert p == pytest.approx(np.trace(proj @ rho_pair).real, abs=1e-14)
            assert p == pytest.approx(1.0 / 9.0, abs=1e-12)


class TestOutcomeProbs:
    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            outcome_probs(np.eye(2) / 2, bell_basis())

    def test_invalid_state(self):
        with pytest.raises(InvalidStateError):
            outcome_probs(np.eye(4), bell_basis())

    def test_probabilities_normalised(self, rng):
        basis = two_qutrit_cms_basis()
        for _ in range(50):
            rho = random_mixed_state(rng, 3)
            dist = outcome_probs(kron(rho, rho), basis)
            assert sum(dist.probabilities) == pytest.approx(1.0, abs=1e-12)
            assert min(dist.probabilities) >= 0.0
