"""Qubit and qutrit test-state families and Bloch-vector conversions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidStateError, OutOfRangeError, WrongDimensionError
from .linalg import TRACE_TOL, validate_density_matrix

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

QUBIT_FAMILY = "qubit"
QUTRIT_FAMILY = "qutrit"


@dataclass(frozen=True)
class BlochVector:
    """Real Pauli expectations (r_x, r_y, r_z) of a qubit state."""

    r_x: float
    r_y: float
    r_z: float

    @property
    def r(self) -> float:
        return math.sqrt(self.r_x**2 + self.r_y**2 + self.r_z**2)

    def validate(self) -> "BlochVector":
        if self.r > 1.0 + 1e-9:
            raise InvalidStateError(f"Bloch vector length {self.r!r} exceeds 1")
        return self


def _check_range(value: float, name: str) -> float:
    value = float(value)
    if not (0.0 <= value <= math.pi / 2):
        raise OutOfRangeError(f"{name}={value!r} outside [0, pi/2]")
    return value


def qubit_family(theta: float) -> np.ndarray:
    """Pure qubit state sin(theta)|0> + cos(theta)|1> as a density matrix."""
    theta = _check_range(theta, "theta")
    psi = np.array([math.sin(theta), math.cos(theta)], dtype=complex)
    return np.outer(psi, psi.conj())


def qutrit_family(alpha: float) -> np.ndarray:
    """Pure qutrit state (sin(alpha)|0> + cos(alpha)|1> + |2>)/sqrt(2)."""
    alpha = _check_range(alpha, "alpha")
    phi = np.array([math.sin(alpha), math.cos(alpha), 1.0], dtype=complex) / math.sqrt(2)
    return np.outer(phi, phi.conj())


def family_state(family: str, parameter: float) -> np.ndarray:
    if family == QUBIT_FAMILY:
        return qubit_family(parameter)
    if family == QUTRIT_FAMILY:
        return qutrit_family(parameter)
    raise OutOfRangeError(f"unknown state family {family!r}")


def bloch_of(rho) -> BlochVector:
    """Bloch vector of a single-qubit density matrix, r_i = Tr[rho sigma_i]."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise WrongDimensionError(f"Bloch vector requires a 2x2 state, got {rho.shape}")
    validate_density_matrix(rho)
    return BlochVector(
        float(np.trace(rho @ SIGMA_X).real),
        float(np.trace(rho @ SIGMA_Y).real),
        float(np.trace(rho @ SIGMA_Z).real),
    )


def rho_from_bloch(b: BlochVector) -> np.ndarray:
    """Qubit density matrix (I + r . sigma)/2 for a Bloch vector with r <= 1."""
    b.validate()
    rho = 0.5 * (np.eye(2, dtype=complex) + b.r_x * SIGMA_X + b.r_y * SIGMA_Y + b.r_z * SIGMA_Z)
    # renormalise away rounding if the caller passed r == 1 + O(eps)
    rho /= np.trace(rho).real
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL:
        raise InvalidStateError("Bloch vector does not define a unit-trace state")
    return rho
