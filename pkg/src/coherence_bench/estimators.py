"""Finite-shot coherence estimation schemes.

Six schemes are implemented, each mapping a true state, a total copy
budget ``N`` and a random stream to an estimated coherence value:

* ``CmsQubit`` - collective measurement of N/2 two-copy pairs in the
  maximally entangled basis; coherence recovered from the closed-form
  relations between outcome probabilities and the squared Bloch
  components.
* ``DirectPauli`` - N/2 shots on each of the sigma_x / sigma_y
  eigenbases.
* ``Adaptive2Step`` - a sigma_x / sigma_y pilot stage fixes the
  equatorial direction, then the remaining shots measure along it.
* ``TomoQubit`` - three-Pauli tomography with maximum-likelihood
  reconstruction, measure evaluated exactly on the reconstructed state.
* ``CmsQutrit`` - collective two-copy measurement in the two-qutrit
  symmetric/antisymmetric basis; off-diagonal magnitudes from the
  difference of the paired outcome probabilities.
* ``TomoQutrit`` - four-MUB tomography with maximum-likelihood
  reconstruction.

Negative radicands produced by shot noise clamp to zero, and every
returned value is clamped into the measure's physical range (the
maximum-likelihood-consistent projection of the raw inversion).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import BadBudgetError, OutOfRangeError, WrongDimensionError
from .linalg import kron
from .measures import (
    MEASURE_FORMATION,
    MEASURE_L1,
    MEASURE_REL_ENT,
    ALL_MEASURES,
    binary_entropy,
    c_l1,
    c_rel_ent,
    c_formation_qubit,
    formation_from_offdiag,
)
from .measurements import (
    TWO_QUTRIT_PAIRS,
    bell_basis,
    equatorial_basis,
    outcome_probs,
    pauli_basis,
    qutrit_mub_bases,
    two_qutrit_cms_basis,
)
from . import mle
from .sampling import sample_counts

SCHEME_CMS_QUBIT = "CmsQubit"
SCHEME_DIRECT_PAULI = "DirectPauli"
SCHEME_ADAPTIVE = "Adaptive2Step"
SCHEME_TOMO_QUBIT = "TomoQubit"
SCHEME_CMS_QUTRIT = "CmsQutrit"
SCHEME_TOMO_QUTRIT = "TomoQutrit"

#: fixed per-kind indices used for seed derivation; independent of the
#: order schemes appear in a sweep configuration
SCHEME_SEED_INDEX = {
    SCHEME_CMS_QUBIT: 0,
    SCHEME_DIRECT_PAULI: 1,
    SCHEME_ADAPTIVE: 2,
    SCHEME_TOMO_QUBIT: 3,
    SCHEME_CMS_QUTRIT: 4,
    SCHEME_TOMO_QUTRIT: 5,
}

QUBIT_SCHEMES = (
    SCHEME_CMS_QUBIT,
    SCHEME_DIRECT_PAULI,
    SCHEME_ADAPTIVE,
    SCHEME_TOMO_QUBIT,
)
QUTRIT_SCHEMES = (SCHEME_CMS_QUTRIT, SCHEME_TOMO_QUTRIT)

PILOT_CHARGED = "charged"
PILOT_UNCHARGED = "uncharged"

#: iteration budgets for reconstruction from exact (infinite-sample)
#: frequencies; boundary-rank targets converge like a/iterations, so the
#: finite-shot defaults are far too small to reach 1e-6 there.  The
#: entropy-based measure amplifies the residual small eigenvalue by a
#: log factor and needs an even deeper run.
ORACLE_MLE_MAX_ITERS = 20_000_000
ORACLE_MLE_TOL = 1e-13
ORACLE_MLE_MAX_ITERS_ENTROPY = 40_000_000
ORACLE_MLE_TOL_ENTROPY = 1e-15

_BELL = bell_basis()
_PAULI = {axis: pauli_basis(axis) for axis in ("x", "y", "z")}
_CMS9 = two_qutrit_cms_basis()
_MUBS = qutrit_mub_bases()


@dataclass(frozen=True)
class SchemeSpec:
    """A scheme kind, target measure and copy budget, validated together."""

    kind: str
    measure: str
    budget_n: int
    adaptive_pilot: str = PILOT_CHARGED
    step1_fraction: float = 0.5

    def __post_init__(self):
        if self.kind not in SCHEME_SEED_INDEX:
            raise OutOfRangeError(f"unknown scheme kind {self.kind!r}")
        if self.measure not in ALL_MEASURES:
            raise OutOfRangeError(f"unknown measure {self.measure!r}")
        if self.kind in QUTRIT_SCHEMES and self.measure != MEASURE_L1:
            raise OutOfRangeError(f"{self.kind} supports only the {MEASURE_L1} measure")
        if self.kind in (SCHEME_DIRECT_PAULI, SCHEME_ADAPTIVE) and self.measure == MEASURE_REL_ENT:
            raise OutOfRangeError(f"{self.kind} cannot target {MEASURE_REL_ENT}")
        if self.adaptive_pilot not in (PILOT_CHARGED, PILOT_UNCHARGED):
            raise OutOfRangeError(f"unknown pilot mode {self.adaptive_pilot!r}")
        if not (0.0 < self.step1_fraction < 1.0):
            raise OutOfRangeError("step1_fraction must lie in (0, 1)")
        _check_budget(self.kind, self.budget_n)


def _check_budget(kind: str, n: int) -> None:
    if n <= 0:
        raise BadBudgetError("copy budget must be positive")
    if kind in (SCHEME_CMS_QUBIT, SCHEME_CMS_QUTRIT) and n % 2:
        raise BadBudgetError("collective schemes consume two copies per event; budget must be even")
    minimum = {
        SCHEME_DIRECT_PAULI: 2,
        SCHEME_ADAPTIVE: 4,
        SCHEME_TOMO_QUBIT: 3,
        SCHEME_TOMO_QUTRIT: 4,
    }.get(kind, 2)
    if n < minimum:
        raise BadBudgetError(f"{kind} needs at least {minimum} copies, got {n}")


@dataclass(frozen=True)
class Estimate:
    """An estimated coherence value with labelled intermediate quantities."""

    value: float
    intermediate: dict = field(default_factory=dict)
    copies_used: int = 0


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(float(x), lo), hi)


def _expect_dim(rho, dim: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise WrongDimensionError(f"expected a {dim}-dimensional state, got shape {rho.shape}")
    return rho


# ---------------------------------------------------------------------------
# collective scheme, qubit


def _cms_qubit_value(p_hat, measure: str):
    """Invert estimated collective-outcome probabilities into a measure value."""
    p1, p2, p3, p4 = (float(p) for p in p_hat)
    l1_hat = _clamp(math.sqrt(max(0.0, 2.0 * (p1 - p2))), 0.0, 1.0)
    inter = {"P1": p1, "P2": p2, "P3": p3, "P4": p4}
    if measure == MEASURE_L1:
        return l1_hat, inter
    if measure == MEASURE_FORMATION:
        inter["offdiag"] = min(l1_hat / 2.0, 0.5)
        return formation_from_offdiag(l1_hat / 2.0), inter
    r_hat = math.sqrt(max(0.0, 1.0 - 4.0 * p2))
    rz_hat = min(math.sqrt(max(0.0, 2.0 * (p3 + p4) - 1.0)), r_hat)
    value = binary_entropy((1.0 + rz_hat) / 2.0) - binary_entropy((1.0 + r_hat) / 2.0)
    inter.update({"r": r_hat, "rz": rz_hat})
    return _clamp(value, 0.0, 1.0), inter


def estimate_cms_qubit(rho, budget_n: int, measure: str, rng) -> Estimate:
    """Collective Bell-basis estimate from ``budget_n / 2`` two-copy events."""
    rho = _expect_dim(rho, 2)
    _check_budget(SCHEME_CMS_QUBIT, budget_n)
    pairs = budget_n // 2
    dist = outcome_probs(kron(rho, rho), _BELL)
    record = sample_counts(dist, pairs, rng)
    value, inter = _cms_qubit_value(record.frequencies(), measure)
    return Estimate(value, inter, copies_used=2 * pairs)


# ---------------------------------------------------------------------------
# direct sigma_x / sigma_y scheme


def _direct_value(rx_hat: float, ry_hat: float, measure: str):
    l1_hat = _clamp(math.hypot(rx_hat, ry_hat), 0.0, 1.0)
    inter = {"rx": rx_hat, "ry": ry_hat}
    if measure == MEASURE_L1:
        return l1_hat, inter
    if measure == MEASURE_FORMATION:
        inter["offdiag"] = min(l1_hat / 2.0, 0.5)
        return formation_from_offdiag(l1_hat / 2.0), inter
    raise OutOfRangeError(f"direct scheme cannot target {measure}")


def estimate_direct_pauli(rho, budget_n: int, measure: str, rng) -> Estimate:
    """Split the budget over sigma_x and sigma_y (remainder to sigma_x)."""
    rho = _expect_dim(rho, 2)
    _check_budget(SCHEME_DIRECT_PAULI, budget_n)
    if measure not in (MEASURE_L1, MEASURE_FORMATION):
        raise OutOfRangeError(f"direct scheme cannot target {measure}")
    n_y = budget_n // 2
    n_x = budget_n - n_y
    rec_x = sample_counts(outcome_probs(rho, _PAULI["x"]), n_x, rng)
    rec_y = sample_counts(outcome_probs(rho, _PAULI["y"]), n_y, rng)
    rx_hat = 2.0 * rec_x.frequencies()[0] - 1.0
    ry_hat = 2.0 * rec_y.frequencies()[0] - 1.0
    value, inter = _direct_value(rx_hat, ry_hat, measure)
    return Estimate(value, inter, copies_used=n_x + n_y)


# ---------------------------------------------------------------------------
# two-step adaptive scheme


def _adaptive_value(e2_hat: float, phi_hat: float, measure: str):
    l1_hat = _clamp(abs(e2_hat), 0.0, 1.0)
    inter = {"phi": phi_hat, "e2": e2_hat}
    if measure == MEASURE_L1:
        return l1_hat, inter
    if measure == MEASURE_FORMATION:
        inter["offdiag"] = min(l1_hat / 2.0, 0.5)
        return formation_from_offdiag(l1_hat / 2.0), inter
    raise OutOfRangeError(f"adaptive scheme cannot target {measure}")


def estimate_adaptive(
    rho,
    budget_n: int,
    measure: str,
    rng,
    step1_fraction: float = 0.5,
    pilot_charged: bool = True,
) -> Estimate:
    """Pilot sigma_x / sigma_y stage, then all remaining shots along the
    estimated equatorial direction.

    With ``pilot_charged=True`` (default) the pilot consumes part of the
    budget: ``floor(N * f / 2)`` shots per pilot axis, the rest in stage
    two.  With ``pilot_charged=False`` the pilot is booked as calibration
    overhead and the full budget is measured in stage two; the overhead is
    reported under ``intermediate['pilot_copies']``.

    Ties in the pilot (both estimated components zero) fix the direction
    at ``phi = 0``.
    """
    rho = _expect_dim(rho, 2)
    _check_budget(SCHEME_ADAPTIVE, budget_n)
    if measure not in (MEASURE_L1, MEASURE_FORMATION):
        raise OutOfRangeError(f"adaptive scheme cannot target {measure}")
    if not (0.0 < step1_fraction < 1.0):
        raise OutOfRangeError("step1_fraction must lie in (0, 1)")
    pilot_each = int(budget_n * step1_fraction) // 2
    if pilot_each < 1:
        raise BadBudgetError("pilot stage received zero shots")
    step2 = budget_n if not pilot_charged else budget_n - 2 * pilot_each
    if step2 < 1:
        raise BadBudgetError("estimation stage received zero shots")

    rec_x = sample_counts(outcome_probs(rho, _PAULI["x"]), pilot_each, rng)
    rec_y = sample_counts(outcome_probs(rho, _PAULI["y"]), pilot_each, rng)
    rx1 = 2.0 * rec_x.frequencies()[0] - 1.0
    ry1 = 2.0 * rec_y.frequencies()[0] - 1.0
    phi_hat = math.atan2(ry1, rx1)  # atan2(0, 0) == 0 handles the degenerate tie

    rec_2 = sample_counts(outcome_probs(rho, equatorial_basis(phi_hat)), step2, rng)
    e2_hat = 2.0 * rec_2.frequencies()[0] - 1.0
    value, inter = _adaptive_value(e2_hat, phi_hat, measure)
    if not pilot_charged:
        inter["pilot_copies"] = float(2 * pilot_each)
    return Estimate(value, inter, copies_used=budget_n)


# ---------------------------------------------------------------------------
# qubit tomography


def _tomo_qubit_splits(budget_n: int):
    per = budget_n // 3
    return per, per, budget_n - 2 * per  # remainder goes to sigma_z


def _measure_on_state(rho_hat, measure: str) -> float:
    if measure == MEASURE_L1:
        return c_l1(rho_hat)
    if measure == MEASURE_REL_ENT:
        return c_rel_ent(rho_hat)
    return c_formation_qubit(rho_hat)


def estimate_tomo_qubit(
    rho,
    budget_n: int,
    measure: str,
    rng,
    mle_max_iters: int = mle.DEFAULT_MAX_ITERS,
    mle_tol: float = mle.DEFAULT_TOL,
) -> Estimate:
    """Three-Pauli tomography: maximum-likelihood fit, then the exact measure."""
    rho = _expect_dim(rho, 2)
    _check_budget(SCHEME_TOMO_QUBIT, budget_n)
    n_x, n_y, n_z = _tomo_qubit_splits(budget_n)
    bases = [_PAULI["x"], _PAULI["y"], _PAULI["z"]]
    records = [
        sample_counts(outcome_probs(rho, basis), shots, rng)
        for basis, shots in zip(bases, (n_x, n_y, n_z))
    ]
    result = mle.mle_rhor(bases, records, dim=2, max_iters=mle_max_iters, tol=mle_tol)
    value = _measure_on_state(result.rho, measure)
    inter = {
        "iterations": float(result.iterations),
        "converged": float(result.converged),
        "offdiag": float(abs(result.rho[0, 1])),
    }
    return Estimate(value, inter, copies_used=n_x + n_y + n_z)


# ---------------------------------------------------------------------------
# collective scheme, qutrit


def _cms_qutrit_value(p_hat):
    total = 0.0
    inter = {}
    for m, (i, j) in enumerate(TWO_QUTRIT_PAIRS):
        p_plus = float(p_hat[3 + 2 * m])
        p_minus = float(p_hat[4 + 2 * m])
        t_ij = math.sqrt(max(0.0, (p_plus - p_minus) / 2.0))
        inter[f"offdiag{i}{j}"] = t_ij
        total += t_ij
    return _clamp(2.0 * total, 0.0, 2.0), inter


def estimate_cms_qutrit(rho, budget_n: int, rng) -> Estimate:
    """Two-copy symmetric/antisymmetric measurement, l1 coherence only."""
    rho = _expect_dim(rho, 3)
    _check_budget(SCHEME_CMS_QUTRIT, budget_n)
    pairs = budget_n // 2
    dist = outcome_probs(kron(rho, rho), _CMS9)
    record = sample_counts(dist, pairs, rng)
    value, inter = _cms_qutrit_value(record.frequencies())
    return Estimate(value, inter, copies_used=2 * pairs)


# ---------------------------------------------------------------------------
# qutrit tomography


def _tomo_qutrit_splits(budget_n: int):
    per = budget_n // 4
    return (budget_n - 3 * per, per, per, per)  # remainder goes to the first basis


def estimate_tomo_qutrit(
    rho,
    budget_n: int,
    rng,
    mle_max_iters: int = mle.DEFAULT_MAX_ITERS,
    mle_tol: float = mle.DEFAULT_TOL,
) -> Estimate:
    """Four-MUB tomography with maximum-likelihood reconstruction."""
    rho = _expect_dim(rho, 3)
    _check_budget(SCHEME_TOMO_QUTRIT, budget_n)
    splits = _tomo_qutrit_splits(budget_n)
    records = [
        sample_counts(outcome_probs(rho, basis), shots, rng)
        for basis, shots in zip(_MUBS, splits)
    ]
    result = mle.mle_rhor(_MUBS, records, dim=3, max_iters=mle_max_iters, tol=mle_tol)
    value = _clamp(c_l1(result.rho), 0.0, 2.0)
    inter = {
        "iterations": float(result.iterations),
        "converged": float(result.converged),
    }
    return Estimate(value, inter, copies_used=sum(splits))


# ---------------------------------------------------------------------------
# dispatch and infinite-sample oracle


def run_scheme(spec: SchemeSpec, rho, rng) -> Estimate:
    """Sample one finite-shot estimate according to a scheme specification."""
    if spec.kind == SCHEME_CMS_QUBIT:
        return estimate_cms_qubit(rho, spec.budget_n, spec.measure, rng)
    if spec.kind == SCHEME_DIRECT_PAULI:
        return estimate_direct_pauli(rho, spec.budget_n, spec.measure, rng)
    if spec.kind == SCHEME_ADAPTIVE:
        return estimate_adaptive(
            rho,
            spec.budget_n,
            spec.measure,
            rng,
            step1_fraction=spec.step1_fraction,
            pilot_charged=spec.adaptive_pilot == PILOT_CHARGED,
        )
    if spec.kind == SCHEME_TOMO_QUBIT:
        return estimate_tomo_qubit(rho, spec.budget_n, spec.measure, rng)
    if spec.kind == SCHEME_CMS_QUTRIT:
        return estimate_cms_qutrit(rho, spec.budget_n, rng)
    return estimate_tomo_qutrit(rho, spec.budget_n, rng)


def _oracle_mle(bases, splits, rho, dim, entropy_sensitive=False) -> mle.MleResult:
    total = sum(splits)
    freqs = []
    for basis, shots in zip(bases, splits):
        dist = outcome_probs(rho, basis)
        freqs.extend((shots / total) * p for p in dist.probabilities)
    if entropy_sensitive:
        max_iters, tol = ORACLE_MLE_MAX_ITERS_ENTROPY, ORACLE_MLE_TOL_ENTROPY
    else:
        max_iters, tol = ORACLE_MLE_MAX_ITERS, ORACLE_MLE_TOL
    return mle.mle_from_frequencies(
        mle.stack_projectors(bases),
        np.asarray(freqs),
        dim,
        max_iters=max_iters,
        tol=tol,
    )


def oracle_estimate(spec: SchemeSpec, rho) -> Estimate:
    """Run a scheme on exact expected counts instead of sampled ones.

    Non-integer frequencies are used directly; the result is
    deterministic and, for the closed-form schemes, exact up to rounding.
    """
    n = spec.budget_n
    if spec.kind == SCHEME_CMS_QUBIT:
        rho = _expect_dim(rho, 2)
        p_hat = outcome_probs(kron(rho, rho), _BELL).probabilities
        value, inter = _cms_qubit_value(p_hat, spec.measure)
        return Estimate(value, inter, copies_used=2 * (n // 2))
    if spec.kind == SCHEME_DIRECT_PAULI:
        rho = _expect_dim(rho, 2)
        rx = 2.0 * outcome_probs(rho, _PAULI["x"]).probabilities[0] - 1.0
        ry = 2.0 * outcome_probs(rho, _PAULI["y"]).probabilities[0] - 1.0
        value, inter = _direct_value(rx, ry, spec.measure)
        return Estimate(value, inter, copies_used=n)
    if spec.kind == SCHEME_ADAPTIVE:
        rho = _expect_dim(rho, 2)
        rx = 2.0 * outcome_probs(rho, _PAULI["x"]).probabilities[0] - 1.0
        ry = 2.0 * outcome_probs(rho, _PAULI["y"]).probabilities[0] - 1.0
        phi_hat = math.atan2(ry, rx)
        e2 = 2.0 * outcome_probs(rho, equatorial_basis(phi_hat)).probabilities[0] - 1.0
        value, inter = _adaptive_value(e2, phi_hat, spec.measure)
        return Estimate(value, inter, copies_used=n)
    if spec.kind == SCHEME_TOMO_QUBIT:
        rho = _expect_dim(rho, 2)
        bases = [_PAULI["x"], _PAULI["y"], _PAULI["z"]]
        result = _oracle_mle(
            bases,
            _tomo_qubit_splits(n),
            rho,
            2,
            entropy_sensitive=spec.measure == MEASURE_REL_ENT,
        )
        value = _measure_on_state(result.rho, spec.measure)
        inter = {"iterations": float(result.iterations), "converged": float(result.converged)}
        return Estimate(value, inter, copies_used=n)
    if spec.kind == SCHEME_CMS_QUTRIT:
        rho = _expect_dim(rho, 3)
        p_hat = outcome_probs(kron(rho, rho), _CMS9).probabilities
        value, inter = _cms_qutrit_value(p_hat)
        return Estimate(value, inter, copies_used=2 * (n // 2))
    rho = _expect_dim(rho, 3)
    result = _oracle_mle(_MUBS, _tomo_qutrit_splits(n), rho, 3)
    value = _clamp(c_l1(result.rho), 0.0, 2.0)
    inter = {"iterations": float(result.iterations), "converged": float(result.converged)}
    return Estimate(value, inter, copies_used=n)
