"""Exception hierarchy for the simulator.

Every error is a ``ValueError`` so callers that only care about "bad input" can catch
one type; the CLI maps any of them raised while building a configuration to exit 2.
"""


class RioError(ValueError):
    """Base class for simulator errors."""


class SpaceTooLargeError(RioError):
    """A tensor product would exceed the configured Hilbert-space maximum."""

    def __init__(self, dim: int, maximum: int):
        super().__init__(f"space too large: dimension {dim} exceeds configured maximum {maximum}")
        self.dim = dim
        self.maximum = maximum


class DimensionMismatchError(RioError):
    """Operands live on incompatible spaces."""


class NotUnitaryError(RioError):
    """A matrix declared unitary fails U^dagger U = I."""


class NotHermitianError(RioError):
    """A matrix declared Hermitian fails H = H^dagger."""


class NotNormalizedError(RioError):
    """A state vector is not of unit norm (or has non-finite amplitudes)."""


class NumericalBreakdownError(RioError):
    """The eigendecomposition of a Hermitian matrix failed."""

    def __init__(self, message: str, condition_number: float):
        super().__init__(f"numerical breakdown: {message} (condition number {condition_number:.3e})")
        self.condition_number = condition_number


class NoAlignmentError(RioError):
    """Two states are orthogonal, so no global phase aligns them."""


class ImpossibleBranchError(RioError):
    """A forced measurement outcome has (numerically) zero probability."""


class ArityError(RioError):
    """Gate applied to the wrong number of targets."""


class DuplicateTargetError(RioError):
    """The same qubit appears twice in a target list."""


class InvalidIndexError(RioError):
    """An index (operator label x, atom, qubit, level) is out of range."""


class NonUnimodularPhasesError(RioError):
    """Diagonal phases t_m do not all have modulus one."""


class NotAPermutationError(RioError):
    """A matrix expected to permute basis states does not."""


class LeakageError(RioError):
    """Amplitude found on the auxiliary level where only g/e is allowed."""


class TruncationOverflowError(RioError):
    """Cavity dynamics would need photon numbers beyond the Fock cap."""


class InvalidParameterError(RioError):
    """A physical or numerical parameter is outside its allowed range."""
