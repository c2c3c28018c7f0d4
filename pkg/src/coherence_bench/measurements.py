"""Projective measurements: bases, exact outcome probabilities.

All measurement models used by the estimation schemes are built here as
ordered lists of rank-1 projectors with stable outcome labels, so that
count vectors, CSV columns and estimator indexing all agree.

Fixed outcome orders:

* Bell basis (two qubits): ``psi+, psi-, phi+, phi-``.
* Pauli eigenbases: ``+1`` outcome first.
* Qutrit MUBs: four bases, vectors ordered ``(i=0..3, j=0..2)``.
* Two-qutrit symmetric/antisymmetric basis: ``00, 11, 22`` then
  ``psi_ij+ / psi_ij-`` for the pairs ``(0,1), (0,2), (1,2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatchError, InvalidStateError, OutOfRangeError
from .linalg import HERMITICITY_TOL, dagger, max_abs, validate_density_matrix

#: probabilities smaller than this are treated as exact zeros before sampling
PROBABILITY_DUST_TOL = 1e-12


@dataclass(frozen=True)
class ProjectiveBasis:
    """An ordered, complete set of orthogonal projectors with labels."""

    dim: int
    projectors: tuple
    labels: tuple

    def __len__(self) -> int:
        return len(self.projectors)

    def validate(self, tol: float = HERMITICITY_TOL) -> "ProjectiveBasis":
        """Check Hermiticity, idempotence, pairwise orthogonality, completeness."""
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for p in self.projectors:
            if p.shape != (self.dim, self.dim):
                raise DimensionMismatchError("projector shape does not match basis dim")
            if max_abs(p - dagger(p)) > tol:
                raise InvalidStateError("projector not Hermitian")
            if max_abs(p @ p - p) > tol:
                raise InvalidStateError("projector not idempotent")
            total += p
        if max_abs(total - np.eye(self.dim)) > tol:
            raise InvalidStateError("projectors do not sum to identity")
        for i, p in enumerate(self.projectors):
            for q in self.projectors[i + 1:]:
                if max_abs(p @ q) > tol:
                    raise InvalidStateError("projectors not pairwise orthogonal")
        return self


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact outcome probabilities, aligned with a basis' label order."""

    probabilities: tuple
    labels: tuple

    def __len__(self) -> int:
        return len(self.probabilities)


def _basis_from_kets(kets, labels) -> ProjectiveBasis:
    kets = [np.asarray(k, dtype=complex).reshape(-1) for k in kets]
    dim = kets[0].size
    projectors = tuple(np.outer(k, k.conj()) for k in kets)
    return ProjectiveBasis(dim=dim, projectors=projectors, labels=tuple(labels))


def bell_basis() -> ProjectiveBasis:
    """Maximally entangled two-qubit basis, order psi+, psi-, phi+, phi-."""
    s = 1.0 / math.sqrt(2.0)
    e = np.eye(4)
    kets = [
        s * (e[1] + e[2]),  # (|01> + |10>)/sqrt2
        s * (e[1] - e[2]),  # (|01> - |10>)/sqrt2
        s * (e[0] + e[3]),  # (|00> + |11>)/sqrt2
        s * (e[0] - e[3]),  # (|00> - |11>)/sqrt2
    ]
    return _basis_from_kets(kets, ("psi+", "psi-", "phi+", "phi-"))


def pauli_basis(axis: str) -> ProjectiveBasis:
    """Eigenbasis of a Pauli operator; the +1 eigenvector comes first."""
    s = 1.0 / math.sqrt(2.0)
    if axis == "x":
        kets = [np.array([s, s]), np.array([s, -s])]
    elif axis == "y":
        kets = [np.array([s, 1j * s]), np.array([s, -1j * s])]
    elif axis == "z":
        kets = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    else:
        raise OutOfRangeError(f"unknown Pauli axis {axis!r}")
    return _basis_from_kets(kets, (f"{axis}+", f"{axis}-"))


def equatorial_basis(phi: float) -> ProjectiveBasis:
    """Eigenbasis of cos(phi) sigma_x + sin(phi) sigma_y, +1 outcome first."""
    s = 1.0 / math.sqrt(2.0)
    phase = complex(math.cos(phi), math.sin(phi))
    kets = [np.array([s, s * phase]), np.array([s, -s * phase])]
    return _basis_from_kets(kets, ("eq+", "eq-"))


def qutrit_mub_bases() -> list:
    """The four mutually unbiased qutrit bases, vectors ordered (i, j)."""
    w = np.exp(2j * np.pi / 3)
    wc = np.conj(w)
    s = 1.0 / math.sqrt(3.0)
    groups = [
        [np.array([1, 0, 0]), np.array([0, 1, 0]), np.array([0, 0, 1])],
        [s * np.array([1, 1, 1]), s * np.array([1, w, wc]), s * np.array([1, wc, w])],
        [s * np.array([w, 1, 1]), s * np.array([1, w, 1]), s * np.array([1, 1, w])],
        [s * np.array([wc, 1, 1]), s * np.array([1, wc, 1]), s * np.array([1, 1, wc])],
    ]
    return [
        _basis_from_kets(kets, tuple(f"xi{i}{j}" for j in range(3)))
        for i, kets in enumerate(groups)
    ]


TWO_QUTRIT_PAIRS = ((0, 1), (0, 2), (1, 2))


def two_qutrit_cms_basis() -> ProjectiveBasis:
    """Two-qutrit basis of |ii> states plus symmetric/antisymmetric pairs."""
    e = np.eye(3)
    s = 1.0 / math.sqrt(2.0)
    kets = [np.kron(e[i], e[i]) for i in range(3)]
    labels = ["00", "11", "22"]
    for i, j in TWO_QUTRIT_PAIRS:
        kets.append(s * (np.kron(e[i], e[j]) + np.kron(e[j], e[i])))
        kets.append(s * (np.kron(e[i], e[j]) - np.kron(e[j], e[i])))
        labels += [f"psi{i}{j}+", f"psi{i}{j}-"]
    return _basis_from_kets(kets, tuple(labels))


def outcome_probs(rho_total, basis: ProjectiveBasis) -> OutcomeDistribution:
    """Exact outcome probabilities p_i = Tr[P_i rho] for a measured state.

    Small negative rounding dust (>= -1e-12) is clipped to zero and the
    vector is renormalised provided its sum is within 1e-9 of one.

    Raises:
        DimensionMismatchError: state and basis dimensions differ.
        InvalidStateError: state invalid, or probabilities do not sum to 1.
    """
    rho_total = np.asarray(rho_total, dtype=complex)
    if rho_total.shape != (basis.dim, basis.dim):
        raise DimensionMismatchError(
            f"state shape {rho_total.shape} does not match basis dim {basis.dim}"
        )
    validate_density_matrix(rho_total)
    probs = np.array(
        [float(np.trace(p @ rho_total).real) for p in basis.projectors]
    )
    if np.min(probs) < -1e-12 or np.max(probs) > 1.0 + 1e-12:
        raise InvalidStateError("outcome probability outside [-1e-12, 1+1e-12]")
    probs = np.clip(probs, 0.0, 1.0)
    total = float(np.sum(probs))
    if abs(total - 1.0) > 1e-9:
        raise InvalidStateError(f"outcome probabilities sum to {total!r}")
    probs /= total
    return OutcomeDistribution(tuple(float(p) for p in probs), basis.labels)
