"""Finite-shot benchmarks of quantum-coherence estimation strategies.

The package compares a two-copy collective measurement against direct
Pauli sampling, a two-step adaptive scheme and full state tomography for
estimating coherence of qubit and qutrit states, including exact
measures, measurement models, seeded Monte Carlo sweeps and a CLI.
"""

from .exceptions import (
    BadBudgetError,
    CoherenceBenchError,
    ConfigError,
    DimensionMismatchError,
    InvalidStateError,
    NoDataError,
    NotHermitianError,
    OutOfRangeError,
    UnknownSchemeError,
    WrongDimensionError,
)
from .linalg import eig_hermitian, kron, validate_density_matrix, vn_entropy
from .states import (
    BlochVector,
    bloch_of,
    qubit_family,
    qutrit_family,
    rho_from_bloch,
)
from .measures import (
    MEASURE_FORMATION,
    MEASURE_L1,
    MEASURE_REL_ENT,
    binary_entropy,
    c_formation_qubit,
    c_l1,
    c_l1_qubit_bloch,
    c_rel_ent,
    c_rel_ent_qubit_bloch,
    coherence_value,
)
from .measurements import (
    OutcomeDistribution,
    ProjectiveBasis,
    bell_basis,
    equatorial_basis,
    outcome_probs,
    pauli_basis,
    qutrit_mub_bases,
    two_qutrit_cms_basis,
)
from .sampling import CountRecord, RNG_ALGORITHM, make_rng, sample_counts, task_seed
from .mle import MleResult, log_likelihood, mle_rhor, rhor_step
from .estimators import (
    Estimate,
    SchemeSpec,
    estimate_adaptive,
    estimate_cms_qubit,
    estimate_cms_qutrit,
    estimate_direct_pauli,
    estimate_tomo_qubit,
    estimate_tomo_qutrit,
    oracle_estimate,
    run_scheme,
)
from .harness import (
    SweepCell,
    SweepConfig,
    SweepResult,
    average_over_grid,
    default_grid,
    oracle_mode,
    run_sweep,
    sweep_result_to_csv,
    write_csv,
)
from .figures import figure_config, run_figure

__version__ = "0.1.0"
