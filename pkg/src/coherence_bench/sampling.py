"""Seeded finite-shot sampling and deterministic seed derivation.

Reproducibility contract
------------------------

* Random streams are ``numpy`` PCG64 generators.
* Per-task seeds are derived from a 64-bit master seed with a SplitMix64
  chain: ``seed = mix(... mix(mix(master) ^ i0) ^ i1 ...)`` where the
  ``i_k`` are canonical task indices.  The scheme is order-free in the
  sense that a task's seed depends only on its indices, never on
  execution order.
* Multinomial sampling draws ``shots`` independent uniforms and inverts
  the cumulative distribution, so identical seeds give identical counts.

The algorithm identifier recorded in result metadata is
:data:`RNG_ALGORITHM`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measurements import PROBABILITY_DUST_TOL, OutcomeDistribution

RNG_ALGORITHM = "pcg64-splitmix64-v1"

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """One SplitMix64 output step for a 64-bit state."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def task_seed(master_seed: int, *indices: int) -> int:
    """Derive a task seed from the master seed and canonical task indices."""
    seed = splitmix64(master_seed & _MASK64)
    for index in indices:
        seed = splitmix64(seed ^ (int(index) & _MASK64))
    return seed


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class CountRecord:
    """Integer outcome counts from a finite-shot run; counts sum to shots."""

    counts: tuple
    shots: int
    seed_tag: int = 0

    def __post_init__(self):
        if self.shots < 0:
            raise ValueError("shots must be non-negative")
        if sum(self.counts) != self.shots:
            raise ValueError("counts do not sum to shots")

    def frequencies(self) -> np.ndarray:
        if self.shots == 0:
            return np.zeros(len(self.counts))
        return np.asarray(self.counts, dtype=float) / self.shots


def sample_counts(
    dist: OutcomeDistribution,
    shots: int,
    rng: np.random.Generator,
    seed_tag: int = 0,
) -> CountRecord:
    """Multinomial counts via per-shot inverse-CDF draws.

    Probabilities below :data:`PROBABILITY_DUST_TOL` are clipped to exact
    zero first; a zero-probability outcome is never drawn.  A uniform
    ``u`` selects the outcome ``i`` whose cumulative interval
    ``[cum_{i-1}, cum_i)`` contains ``u``, which resolves boundary ties to
    the lowest-index outcome with positive mass.
    """
    if shots < 0:
        raise ValueError("shots must be non-negative")
    p = np.asarray(dist.probabilities, dtype=float).copy()
    p[p < PROBABILITY_DUST_TOL] = 0.0
    cum = np.cumsum(p)
    if shots == 0:
        return CountRecord(tuple(0 for _ in p), 0, seed_tag)
    u = rng.random(shots) * cum[-1]
    idx = np.searchsorted(cum, u, side="right")
    idx = np.minimum(idx, len(p) - 1)
    counts = np.bincount(idx, minlength=len(p))
    return CountRecord(tuple(int(c) for c in counts), shots, seed_tag)
