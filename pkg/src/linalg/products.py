"""Tensor products, subsystem embedding and state sampling."""

import itertools
import math
from collections.abc import Mapping, Sequence
from typing import overload

import numpy as np

from src.core.config import get_settings
from src.core.errors import DimensionMismatchError, InvalidIndexError, SpaceTooLargeError
from src.linalg.types import StateVector, UnitaryMatrix


def _check_dimension(dim: int) -> None:
    maximum = get_settings().max_hilbert_dimension
    if dim > maximum:
        raise SpaceTooLargeError(dim, maximum)


@overload
def kron(a: UnitaryMatrix, b: UnitaryMatrix) -> UnitaryMatrix: ...
@overload
def kron(a: StateVector, b: StateVector) -> StateVector: ...
def kron(a, b):
    """Tensor product, left factor most significant.

    Entries are formed as ``a_ij * b_kl`` by ``numpy.kron``, so (A(x)B)(x)C and
    A(x)(B(x)C) agree bit for bit whenever those pairwise products are exact
    (Pauli, CNOT and permutation matrices).
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        _check_dimension(a.dim * b.dim)
        return StateVector(a.dims + b.dims, np.kron(a.amps, b.amps))
    if isinstance(a, UnitaryMatrix) and isinstance(b, UnitaryMatrix):
        _check_dimension(a.dim * b.dim)
        return UnitaryMatrix(np.kron(a.data, b.data))
    raise DimensionMismatchError(f"cannot take the tensor product of {type(a).__name__} and {type(b).__name__}")


def kron_all(factors: Sequence[UnitaryMatrix]) -> UnitaryMatrix:
    """Left-to-right tensor product of several operators."""
    result = factors[0]
    for factor in factors[1:]:
        result = kron(result, factor)
    return result


def _check_subsystems(dims: tuple[int, ...], subsystems: Sequence[int]) -> None:
    if len(set(subsystems)) != len(subsystems):
        raise DimensionMismatchError(f"repeated subsystem in {tuple(subsystems)}")
    for s in subsystems:
        if not 0 <= s < len(dims):
            raise InvalidIndexError(f"subsystem {s} not in a {len(dims)}-subsystem space")


def apply_operator(state: StateVector, op: UnitaryMatrix, subsystems: Sequence[int]) -> StateVector:
    """Apply ``op`` to the listed subsystems (in that order), identity elsewhere."""
    subsystems = list(subsystems)
    _check_subsystems(state.dims, subsystems)
    sub_dims = [state.dims[s] for s in subsystems]
    if op.dim != math.prod(sub_dims):
        raise DimensionMismatchError(f"{op.dim}x{op.dim} operator does not match subsystem dimensions {sub_dims}")

    k = len(subsystems)
    matrix = op.data.reshape(sub_dims + sub_dims)
    out = np.tensordot(matrix, state.tensor(), axes=(list(range(k, 2 * k)), subsystems))
    out = np.moveaxis(out, list(range(k)), subsystems)
    return StateVector(state.dims, out.reshape(-1))


def embed_qubit_operator(matrix: np.ndarray, dims: Sequence[int]) -> UnitaryMatrix:
    """Extend a 2^k x 2^k qubit operator to subsystems of the given dimensions.

    The operator acts on the {0, 1} levels of every subsystem and as the identity on any
    basis state that touches a higher level.
    """
    dims = tuple(dims)
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (2 ** len(dims), 2 ** len(dims)):
        raise DimensionMismatchError(f"operator of shape {matrix.shape} is not a {len(dims)}-qubit operator")
    if any(d < 2 for d in dims):
        raise DimensionMismatchError(f"cannot embed a qubit operator into dimensions {dims}")
    if all(d == 2 for d in dims):
        return UnitaryMatrix(matrix)

    computational = [int(np.ravel_multi_index(levels, dims)) for levels in itertools.product((0, 1), repeat=len(dims))]
    full = np.eye(math.prod(dims), dtype=np.complex128)
    full[np.ix_(computational, computational)] = matrix
    return UnitaryMatrix(full)


def lift_subsystem(state: StateVector, subsystem: int, levels: int = 3) -> StateVector:
    """Give ``subsystem`` extra (empty) levels; a no-op when it already has enough."""
    _check_subsystems(state.dims, [subsystem])
    current = state.dims[subsystem]
    if current >= levels:
        return state
    dims = state.dims[:subsystem] + (levels,) + state.dims[subsystem + 1 :]
    _check_dimension(math.prod(dims))
    padding = [(0, 0)] * len(state.dims)
    padding[subsystem] = (0, levels - current)
    return StateVector(dims, np.pad(state.tensor(), padding).reshape(-1))


def embed_state(state: StateVector, dims: Sequence[int]) -> StateVector:
    """Place a state into a space whose subsystems have at least as many levels."""
    dims = tuple(dims)
    if len(dims) != len(state.dims) or any(d < s for d, s in zip(dims, state.dims, strict=True)):
        raise DimensionMismatchError(f"cannot embed dimensions {state.dims} into {dims}")
    for index, levels in enumerate(dims):
        state = lift_subsystem(state, index, levels)
    return state


def auxiliary_population(state: StateVector, subsystems: Sequence[int] | None = None) -> float:
    """Total probability of finding any listed subsystem above level 1."""
    if subsystems is None:
        subsystems = range(len(state.dims))
    probs = np.abs(state.tensor()) ** 2
    mask = np.zeros(state.dims, dtype=bool)
    for s in subsystems:
        if state.dims[s] > 2:
            index = [slice(None)] * len(state.dims)
            index[s] = slice(2, None)
            mask[tuple(index)] = True
    return float(np.sum(probs[mask]))


def extract_subsystems(state: StateVector, fixed: Mapping[int, int]) -> StateVector:
    """Conditional state of the remaining subsystems once ``fixed`` ({subsystem: level}) holds."""
    _check_subsystems(state.dims, list(fixed))
    index: list[int | slice] = [slice(None)] * len(state.dims)
    for subsystem, level in fixed.items():
        if not 0 <= level < state.dims[subsystem]:
            raise InvalidIndexError(f"level {level} not available on subsystem {subsystem}")
        index[subsystem] = level
    remaining = tuple(d for i, d in enumerate(state.dims) if i not in fixed)
    return StateVector.from_amplitudes(state.tensor()[tuple(index)], remaining, normalize=True)


def random_state(rng: np.random.Generator, dims: Sequence[int]) -> StateVector:
    """Haar-random pure state from normalized complex Gaussian amplitudes."""
    size = math.prod(dims)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return StateVector.from_amplitudes(amps, tuple(dims), normalize=True)
