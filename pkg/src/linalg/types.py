"""Immutable dense state vectors and matrices over composite Hilbert spaces.

Basis ordering is big-endian over subsystems: the left-most subsystem is the most
significant index. Within an atom, level 0 is |g> (logical 0), level 1 is |e>
(logical 1) and level 2, when present, is the auxiliary |i>.
"""

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.core.errors import DimensionMismatchError, NotHermitianError, NotNormalizedError, NotUnitaryError

# Tolerances
NORM_ATOL = 1e-12
HERMITIAN_ATOL = 1e-12
UNITARY_ATOL = 1e-10


def _frozen(array: Any) -> np.ndarray:
    data = np.array(array, dtype=np.complex128, copy=True)
    data.flags.writeable = False
    return data


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitude vector; ``dims`` lists the subsystem dimensions."""

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        amps = _frozen(self.amps).reshape(-1)
        if not dims or any(d < 1 for d in dims):
            raise DimensionMismatchError(f"invalid subsystem dimensions {dims}")
        if amps.size != math.prod(dims):
            raise DimensionMismatchError(f"{amps.size} amplitudes do not fit dimensions {dims}")
        if not np.all(np.isfinite(amps)):
            raise NotNormalizedError("state has non-finite amplitudes")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_ATOL:
            raise NotNormalizedError(f"state norm {norm!r} differs from 1 by more than {NORM_ATOL}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps: Any, dims: tuple[int, ...] | None = None, normalize: bool = False) -> "StateVector":
        """Build a state, optionally rescaling the amplitudes to unit norm."""
        data = np.asarray(amps, dtype=np.complex128).reshape(-1)
        if normalize:
            norm = np.linalg.norm(data)
            if norm == 0 or not np.isfinite(norm):
                raise NotNormalizedError("cannot normalize a zero or non-finite vector")
            data = data / norm
        if dims is None:
            dims = qubit_dims(data.size)
        return cls(tuple(dims), data)

    @classmethod
    def basis(cls, dims: tuple[int, ...], levels: tuple[int, ...]) -> "StateVector":
        """Product basis state, e.g. ``basis((2, 2), (1, 0))`` is |10>."""
        if len(levels) != len(dims):
            raise DimensionMismatchError(f"{len(levels)} levels given for {len(dims)} subsystems")
        data = np.zeros(math.prod(dims), dtype=np.complex128)
        data[np.ravel_multi_index(levels, dims)] = 1.0
        return cls(tuple(dims), data)

    @property
    def dim(self) -> int:
        return self.amps.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amps.reshape(self.dims)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        if self.dims != other.dims:
            raise DimensionMismatchError(f"dimensions {self.dims} and {other.dims} differ")
        return complex(np.vdot(self.amps, other.amps))


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """Dense square complex matrix used as a gate, pulse or evolution operator.

    The plain constructor only checks shape and finiteness; ``checked`` also enforces
    U^dagger U = I, which gate constants use at definition time.
    """

    data: np.ndarray

    def __post_init__(self):
        data = _frozen(self.data)
        if data.ndim != 2 or data.shape[0] != data.shape[1] or data.shape[0] == 0:
            raise DimensionMismatchError(f"operator must be a non-empty square matrix, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise NotUnitaryError("operator has non-finite entries")
        object.__setattr__(self, "data", data)

    @classmethod
    def checked(cls, data: Any, atol: float = UNITARY_ATOL) -> "UnitaryMatrix":
        op = cls(data)
        deviation = op.unitarity_deviation()
        if deviation > atol:
            raise NotUnitaryError(f"max |U^dagger U - I| = {deviation:.3e} exceeds {atol}")
        return op

    @classmethod
    def identity(cls, dim: int) -> "UnitaryMatrix":
        return cls(np.eye(dim, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def dagger(self) -> "UnitaryMatrix":
        return UnitaryMatrix(self.data.conj().T)

    def unitarity_deviation(self) -> float:
        product = self.data.conj().T @ self.data
        return float(np.max(np.abs(product - np.eye(self.dim))))

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"cannot multiply {self.dim}x{self.dim} by {other.dim}x{other.dim}")
        return UnitaryMatrix(self.data @ other.data)

    def apply(self, state: StateVector) -> StateVector:
        """Act on the whole state vector."""
        if state.dim != self.dim:
            raise DimensionMismatchError(f"{self.dim}x{self.dim} operator cannot act on dimension {state.dim}")
        return StateVector(state.dims, self.data @ state.amps)


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense Hermitian matrix (a Hamiltonian in angular-frequency units)."""

    data: np.ndarray

    def __post_init__(self):
        data = _frozen(self.data)
        if data.ndim != 2 or data.shape[0] != data.shape[1] or data.shape[0] == 0:
            raise DimensionMismatchError(f"Hamiltonian must be a non-empty square matrix, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise NotHermitianError("Hamiltonian has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(data))))
        deviation = float(np.max(np.abs(data - data.conj().T)))
        if deviation > HERMITIAN_ATOL * scale:
            raise NotHermitianError(f"max |H - H^dagger| = {deviation:.3e}")
        object.__setattr__(self, "data", data)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def scaled(self, factor: float) -> "HermitianMatrix":
        return HermitianMatrix(self.data * factor)


def qubit_dims(size: int) -> tuple[int, ...]:
    """Dimensions of an n-qubit register holding ``size`` amplitudes."""
    n = size.bit_length() - 1
    if size < 2 or 1 << n != size:
        return (size,)
    return (2,) * n
