"""Gate application, projective measurement and branch enumeration."""

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.circuit.gates import GateConst, QubitId
from src.core.errors import ArityError, DuplicateTargetError, ImpossibleBranchError, InvalidIndexError
from src.core.logging import get_logger
from src.linalg.products import apply_operator, embed_qubit_operator
from src.linalg.types import StateVector

logger = get_logger(__name__)

# Branches below this probability cannot be selected
IMPOSSIBLE_BRANCH = 1e-14


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of measuring one qubit and the pre-projection probability of that outcome."""

    qubit: QubitId
    outcome: int
    probability: float


@dataclass(frozen=True)
class Branch:
    """One joint outcome of an enumeration; ``state`` is None for zero-probability branches."""

    outcomes: tuple[int, ...]
    probability: float
    state: StateVector | None

    @property
    def possible(self) -> bool:
        return self.state is not None


def _check_targets(state: StateVector, targets: Sequence[QubitId]) -> list[int]:
    indices = [q.index for q in targets]
    if len(set(indices)) != len(indices):
        raise DuplicateTargetError(f"duplicate targets {[q.label for q in targets]}")
    for q in targets:
        if q.index >= len(state.dims):
            raise InvalidIndexError(f"qubit {q.label} (index {q.index}) outside a {len(state.dims)}-subsystem state")
    return indices


def apply_gate(state: StateVector, gate: GateConst, targets: Sequence[QubitId]) -> StateVector:
    """Apply ``gate`` on ``targets`` (control first for CNOT), identity elsewhere."""
    if len(targets) != gate.arity:
        raise ArityError(f"{gate.name} acts on {gate.arity} qubit(s), got {len(targets)} target(s)")
    indices = _check_targets(state, targets)
    sub_dims = [state.dims[i] for i in indices]
    op = embed_qubit_operator(gate.matrix.data, sub_dims)
    return apply_operator(state, op, indices)


def _level_probabilities(state: StateVector, index: int) -> np.ndarray:
    psi = np.moveaxis(state.tensor(), index, 0).reshape(state.dims[index], -1)
    return np.sum(np.abs(psi) ** 2, axis=1)


def _project(state: StateVector, index: int, outcome: int, probability: float) -> StateVector:
    psi = state.tensor().copy()
    selector = [slice(None)] * len(state.dims)
    for level in range(state.dims[index]):
        if level != outcome:
            selector[index] = level
            psi[tuple(selector)] = 0.0
    return StateVector(state.dims, psi.reshape(-1) / np.sqrt(probability))


def measure(
    state: StateVector,
    qubit: QubitId,
    forced_outcome: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[MeasurementRecord, StateVector]:
    """Measure ``qubit`` in the computational basis.

    A forced outcome projects onto that branch; otherwise the outcome is drawn with
    ``rng``, which is then mandatory. Three-level atoms report level 2 for |i>.
    """
    (index,) = _check_targets(state, [qubit])
    probs = _level_probabilities(state, index)

    if forced_outcome is None:
        if rng is None:
            raise ValueError("a seeded generator is required when no outcome is forced")
        outcome = int(rng.choice(len(probs), p=probs / probs.sum()))
    else:
        outcome = int(forced_outcome)
        if not 0 <= outcome < len(probs):
            raise InvalidIndexError(f"outcome {outcome} not available on {qubit.label}")

    probability = float(probs[outcome])
    if probability < IMPOSSIBLE_BRANCH:
        raise ImpossibleBranchError(f"outcome {outcome} on {qubit.label} has probability {probability:.3e}")

    logger.debug(f"Measured {qubit.label} -> {outcome} (p={probability:.6f})")
    return MeasurementRecord(qubit, outcome, probability), _project(state, index, outcome, probability)


def enumerate_branches(state: StateVector, qubits: Sequence[QubitId]) -> list[Branch]:
    """Every joint outcome of measuring ``qubits``, in lexicographic outcome order."""
    indices = _check_targets(state, qubits)
    psi = np.moveaxis(state.tensor(), indices, list(range(len(indices))))
    sub_dims = tuple(state.dims[i] for i in indices)

    branches: list[Branch] = []
    for outcomes in itertools.product(*(range(d) for d in sub_dims)):
        block = psi[outcomes]
        probability = float(np.sum(np.abs(block) ** 2))
        if probability < IMPOSSIBLE_BRANCH:
            branches.append(Branch(outcomes, probability, None))
            continue
        projected = np.zeros_like(psi)
        projected[outcomes] = block / np.sqrt(probability)
        restored = np.moveaxis(projected, list(range(len(indices))), indices)
        branches.append(Branch(outcomes, probability, StateVector(state.dims, restored.reshape(-1))))
    return branches
