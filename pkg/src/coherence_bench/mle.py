"""Iterative maximum-likelihood state reconstruction (R rho R algorithm).

The update is the plain fixed-point iteration

    R(rho) = sum_k (f_k / p_k(rho)) P_k,      p_k(rho) = Tr[P_k rho]
    rho <- R rho R / Tr[R rho R]

starting from the maximally mixed state, where ``f_k`` is the observed
frequency of outcome ``k`` weighted by the per-basis shot share (i.e.
``count_k / total_shots`` over all bases pooled).  Outcomes with zero
observed frequency contribute nothing to ``R``, including when their
predicted probability underflows.

The inner loop is JIT-compiled with numba when available; a vectorised
numpy implementation of the same update is the fallback.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatchError, NoDataError

try:  # pragma: no cover - exercised implicitly by every MLE call
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

DEFAULT_MAX_ITERS = 10_000
DEFAULT_TOL = 1e-10

_P_FLOOR = 1e-300


@dataclass(frozen=True)
class MleResult:
    """Reconstructed state plus convergence metadata."""

    rho: np.ndarray
    converged: bool
    iterations: int
    log_likelihood: float


def predicted_probs(rho, projectors) -> np.ndarray:
    """p_k = Tr[P_k rho] for a stacked (K, d, d) projector array."""
    return np.einsum("kab,ba->k", projectors, rho).real


def log_likelihood(rho, projectors, freqs) -> float:
    """Weighted log-likelihood sum_k f_k ln p_k(rho) (natural log)."""
    p = predicted_probs(rho, projectors)
    mask = np.asarray(freqs) > 0.0
    return float(np.sum(freqs[mask] * np.log(np.maximum(p[mask], _P_FLOOR))))


def rhor_step(rho, projectors, freqs) -> np.ndarray:
    """One R rho R update; pure function used directly by property tests."""
    p = predicted_probs(rho, projectors)
    ratio = np.where(freqs > 0.0, freqs / np.maximum(p, _P_FLOOR), 0.0)
    r_op = np.einsum("k,kab->ab", ratio, projectors)
    new = r_op @ rho @ r_op
    return new / np.trace(new).real


def _iterate_numpy(projectors, freqs, rho, max_iters, tol):
    for iteration in range(1, max_iters + 1):
        new = rhor_step(rho, projectors, freqs)
        delta = float(np.max(np.abs(new - rho)))
        rho = new
        if delta <= tol:
            return rho, iteration, True
    return rho, max_iters, False


if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _iterate_jit(projectors, freqs, rho, max_iters, tol):  # pragma: no cover
        d = rho.shape[0]
        k_outcomes = projectors.shape[0]
        r_op = np.empty((d, d), np.complex128)
        tmp = np.empty((d, d), np.complex128)
        new = np.empty((d, d), np.complex128)
        for iteration in range(1, max_iters + 1):
            for a in range(d):
                for b in range(d):
                    r_op[a, b] = 0.0
            for k in range(k_outcomes):
                if freqs[k] > 0.0:
                    p = 0.0
                    for a in range(d):
                        for b in range(d):
                            p += (projectors[k, a, b] * rho[b, a]).real
                    if p < _P_FLOOR:
                        p = _P_FLOOR
                    w = freqs[k] / p
                    for a in range(d):
                        for b in range(d):
                            r_op[a, b] += w * projectors[k, a, b]
            for a in range(d):
                for b in range(d):
                    acc = 0.0 + 0.0j
                    for c in range(d):
                        acc += r_op[a, c] * rho[c, b]
                    tmp[a, b] = acc
            trace = 0.0
            for a in range(d):
                for b in range(d):
                    acc = 0.0 + 0.0j
                    for c in range(d):
                        acc += tmp[a, c] * r_op[c, b]
                    new[a, b] = acc
                trace += new[a, a].real
            delta = 0.0
            for a in range(d):
                for b in range(d):
                    new[a, b] /= trace
                    diff = abs(new[a, b] - rho[a, b])
                    if diff > delta:
                        delta = diff
                    rho[a, b] = new[a, b]
            if delta <= tol:
                return rho, iteration, True
        return rho, max_iters, False


def mle_from_frequencies(
    projectors,
    freqs,
    dim: int,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
) -> MleResult:
    """Run the iteration on pooled outcome frequencies.

    ``freqs`` may be non-integer (exact expected frequencies are allowed);
    it must sum to 1 over all outcomes of all bases.
    """
    projectors = np.ascontiguousarray(projectors, dtype=np.complex128)
    freqs = np.ascontiguousarray(freqs, dtype=np.float64)
    if projectors.shape[0] != freqs.shape[0]:
        raise DimensionMismatchError("frequency vector does not match projector count")
    if projectors.shape[1:] != (dim, dim):
        raise DimensionMismatchError("projector shape does not match dimension")
    rho0 = np.eye(dim, dtype=np.complex128) / dim
    if _HAVE_NUMBA:
        rho, iterations, converged = _iterate_jit(
            projectors, freqs, rho0, int(max_iters), float(tol)
        )
        converged = bool(converged)
    else:
        rho, iterations, converged = _iterate_numpy(
            projectors, freqs, rho0, int(max_iters), float(tol)
        )
    return MleResult(
        rho=np.asarray(rho),
        converged=converged,
        iterations=int(iterations),
        log_likelihood=log_likelihood(rho, projectors, freqs),
    )


def stack_projectors(bases) -> np.ndarray:
    """Concatenate the projectors of several bases into one (K, d, d) array."""
    mats = [p for basis in bases for p in basis.projectors]
    return np.ascontiguousarray(np.stack(mats), dtype=np.complex128)


def pooled_frequencies(bases, records) -> np.ndarray:
    """Per-outcome weights count_k / total_shots across all bases."""
    total = sum(rec.shots for rec in records)
    if total <= 0:
        raise NoDataError("maximum-likelihood reconstruction needs at least one shot")
    freqs = []
    for basis, rec in zip(bases, records):
        if len(rec.counts) != len(basis):
            raise DimensionMismatchError("count record does not align with its basis")
        freqs.extend(c / total for c in rec.counts)
    return np.asarray(freqs, dtype=np.float64)


def mle_rhor(
    bases,
    records,
    dim: int | None = None,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
) -> MleResult:
    """Maximum-likelihood reconstruction from per-basis count records.

    Stops when the max-norm change of the iterate drops to ``tol`` or
    after ``max_iters`` updates; in the latter case the last iterate is
    returned with ``converged=False``.

    Raises:
        NoDataError: all records have zero shots.
        DimensionMismatchError: records/bases/dimension misaligned.
    """
    if len(bases) != len(records):
        raise DimensionMismatchError("need exactly one count record per basis")
    if dim is None:
        dim = bases[0].dim
    if any(b.dim != dim for b in bases):
        raise DimensionMismatchError("all bases must share one dimension")
    projectors = stack_projectors(bases)
    freqs = pooled_frequencies(bases, records)
    return mle_from_frequencies(projectors, freqs, dim, max_iters=max_iters, tol=tol)
