"""Dense complex linear algebra for small Hilbert spaces (dimensions 2..9).

Everything here operates on plain ``numpy`` arrays of ``complex128``.  The
three tolerance constants are the single tuning point for every validity
check in the package.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exceptions import InvalidStateError, NotHermitianError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-9
PSD_TOL = 1e-10


class EigenSystem(NamedTuple):
    """Hermitian eigendecomposition, eigenvalues ascending, columns orthonormal."""

    values: np.ndarray
    vectors: np.ndarray


def kron(a, b):
    """Tensor (Kronecker) product of two matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a):
    return np.conj(np.asarray(a)).T


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_hermitian(a, tol: float = HERMITICITY_TOL) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and max_abs(a - dagger(a)) <= tol


def eig_hermitian(a) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Raises:
        NotHermitianError: if ``a`` is not square and Hermitian within
            ``HERMITICITY_TOL``.
    """
    a = np.asarray(a, dtype=complex)
    if not is_hermitian(a):
        raise NotHermitianError(
            f"matrix deviates from Hermiticity by more than {HERMITICITY_TOL:g}"
        )
    values, vectors = np.linalg.eigh(a)
    return EigenSystem(values, vectors)


def validate_density_matrix(rho, dim: int | None = None) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return as complex array.

    Raises:
        InvalidStateError: on any violated invariant.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise InvalidStateError(f"expected dimension {dim}, got {rho.shape[0]}")
    if not np.all(np.isfinite(rho.view(float))):
        raise InvalidStateError("density matrix contains non-finite entries")
    if not is_hermitian(rho):
        raise InvalidStateError("density matrix is not Hermitian")
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace {trace!r} deviates from 1 beyond {TRACE_TOL:g}")
    if float(np.linalg.eigvalsh(rho)[0]) < -PSD_TOL:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def vn_entropy(rho) -> float:
    """Von Neumann entropy in bits.

    Eigenvalues are validated against ``-PSD_TOL`` and then clipped into
    ``[0, 1]`` so that finite-precision dust cannot produce NaNs; the
    ``0 * log 0 = 0`` convention applies.
    """
    rho = validate_density_matrix(rho)
    lam = np.clip(np.linalg.eigvalsh(rho), 0.0, 1.0)
    return shannon_entropy(lam)


def shannon_entropy(probabilities) -> float:
    """Base-2 entropy of a probability vector, with 0*log0 = 0."""
    p = np.asarray(probabilities, dtype=float)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))
