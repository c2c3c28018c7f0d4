"""Exact coherence quantifiers in the computational basis.

Three measures are implemented: the l1-norm of coherence, the relative
entropy of coherence and (for qubits) the coherence of formation.  These
provide the ground-truth values that the Monte Carlo harness compares
finite-shot estimates against.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import OutOfRangeError, WrongDimensionError
from .linalg import shannon_entropy, validate_density_matrix, vn_entropy
from .states import BlochVector

MEASURE_L1 = "L1"
MEASURE_REL_ENT = "RelEnt"
MEASURE_FORMATION = "Formation"
ALL_MEASURES = (MEASURE_L1, MEASURE_REL_ENT, MEASURE_FORMATION)


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0."""
    if not (-1e-12 <= x <= 1.0 + 1e-12):
        raise OutOfRangeError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def c_l1(rho) -> float:
    """Sum of absolute values of all off-diagonal entries."""
    rho = validate_density_matrix(rho)
    return float(np.sum(np.abs(rho)) - np.sum(np.abs(np.diag(rho))))


def c_rel_ent(rho) -> float:
    """Entropy of the dephased state minus entropy of the state, in bits."""
    rho = validate_density_matrix(rho)
    diag = np.clip(np.diag(rho).real, 0.0, 1.0)
    return max(0.0, shannon_entropy(diag) - vn_entropy(rho))


def c_l1_qubit_bloch(b: BlochVector) -> float:
    """Qubit closed form: sqrt(r_x^2 + r_y^2)."""
    return math.hypot(b.r_x, b.r_y)


def c_rel_ent_qubit_bloch(b: BlochVector) -> float:
    """Qubit closed form h((1+|r_z|)/2) - h((1+r)/2), in bits."""
    b.validate()
    r = min(b.r, 1.0)
    return binary_entropy((1.0 + abs(b.r_z)) / 2.0) - binary_entropy((1.0 + r) / 2.0)


def c_formation_qubit(rho) -> float:
    """Qubit coherence of formation h((1 + sqrt(1 - 4|rho01|^2))/2), in bits."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise WrongDimensionError("coherence of formation implemented for qubits only")
    validate_density_matrix(rho)
    return formation_from_offdiag(abs(rho[0, 1]))


def formation_from_offdiag(t: float) -> float:
    """Coherence of formation as a function of |rho01|, clamped to [0, 1/2]."""
    t = min(max(float(t), 0.0), 0.5)
    return binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - 4.0 * t * t))) / 2.0)


def coherence_value(measure: str, rho) -> float:
    """Exact value of the named measure for a state."""
    if measure == MEASURE_L1:
        return c_l1(rho)
    if measure == MEASURE_REL_ENT:
        return c_rel_ent(rho)
    if measure == MEASURE_FORMATION:
        return c_formation_qubit(rho)
    raise OutOfRangeError(f"unknown measure {measure!r}")
