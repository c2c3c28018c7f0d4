"""Exception types shared across the package."""


class CoherenceBenchError(Exception):
    """Base class for all errors raised by coherence_bench."""


class NotHermitianError(CoherenceBenchError):
    """Input matrix is not Hermitian within tolerance."""


class InvalidStateError(CoherenceBenchError):
    """Matrix is not a valid density matrix (Hermiticity, trace or positivity)."""


class WrongDimensionError(CoherenceBenchError):
    """Operation requires a state of a different Hilbert-space dimension."""


class OutOfRangeError(CoherenceBenchError):
    """A real parameter lies outside its admissible interval."""


class DimensionMismatchError(CoherenceBenchError):
    """Operator and state dimensions are incompatible."""


class BadBudgetError(CoherenceBenchError):
    """Copy budget violates a scheme's divisibility or minimum-size rule."""


class NoDataError(CoherenceBenchError):
    """Estimation was attempted with zero recorded shots."""


class UnknownSchemeError(CoherenceBenchError):
    """Requested scheme is not present in the result being queried."""


class ConfigError(CoherenceBenchError):
    """Configuration file is malformed, incomplete or contains unknown keys."""
