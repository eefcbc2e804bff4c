"""The remote-implementation protocol executed with cavity-QED gates.

Every CNOT (Bob's two entangling gates and each CNOT of the recovery) runs as a
physical CNOT, Alice's Hadamards run through the resonant cavity and the Ramsey zone,
Pauli gates are classical-field rotations, and T2 stays Alice's black box.
"""

from dataclasses import dataclass

import numpy as np

from src.cavity.gates import physical_cnot, physical_hadamard
from src.cavity.params import IDEAL_SCHEDULE, PhysicalParams, StaggeredSchedule
from src.circuit.engine import apply_gate, measure
from src.circuit.gates import PAULI, X, QubitId
from src.core.config import get_settings
from src.core.errors import InvalidParameterError, LeakageError
from src.core.logging import get_logger
from src.linalg.metrics import fidelity
from src.linalg.products import apply_operator, auxiliary_population, embed_state, extract_subsystems, kron
from src.linalg.types import StateVector
from src.protocol.decompositions import Generator, decomposition_table
from src.protocol.permutations import DiagonalPhases, build_T2, check_index
from src.protocol.remote import A1, A2, B1, B2, Y1, Y2, Bits, bell_channel

logger = get_logger(__name__)

# Branch and inputs of the worked example used for the timing-error study
CANONICAL_X = 10
CANONICAL_BITS: Bits = (0, 0, 1, 1)
MAX_OFFSET_FRACTION = 0.5


@dataclass(frozen=True, eq=False)
class PhysicalTranscript:
    """Outcome of one physical run; ``final_state`` is on (Y1, Y2), possibly three-level."""

    x: int
    bits: Bits
    b_probability: float
    a_probability: float
    final_state: StateVector
    expected_state: StateVector

    @property
    def fidelity(self) -> float:
        return fidelity(embed_state(self.expected_state, self.final_state.dims), self.final_state)

    @property
    def leakage(self) -> float:
        """Population left on |i> in the output qubits."""
        return auxiliary_population(self.final_state)


def _cnot(state, params, control: QubitId, target: QubitId, schedule: StaggeredSchedule) -> StateVector:
    return physical_cnot(state, params, control.index, target.index, schedule, allow_leakage=not schedule.is_ideal)


def _checked_outcome(record) -> int:
    if record.outcome > 1:
        raise LeakageError(f"{record.qubit.label} detected in |i>")
    return record.outcome


def run_physical_protocol(
    x: int,
    t: DiagonalPhases,
    xi: StateVector,
    forced_bits: Bits | None = None,
    schedule: StaggeredSchedule | None = None,
    params: PhysicalParams | None = None,
    seed: int | None = None,
    fock_cap: int | None = None,
) -> PhysicalTranscript:
    """Run the three protocol steps with physical gates and return the output on (Y1, Y2)."""
    check_index(x)
    schedule = schedule or IDEAL_SCHEDULE
    params = params or PhysicalParams.from_khz()
    rng = None
    if forced_bits is None:
        rng = np.random.default_rng(get_settings().seed if seed is None else seed)
        forced = (None, None, None, None)
    else:
        forced = tuple(forced_bits)

    # Step 1: Bob
    state = kron(bell_channel(), xi)
    state = _cnot(state, params, Y1, B1, schedule)
    state = _cnot(state, params, Y2, B2, schedule)
    rec_b1, state = measure(state, B1, forced[0], rng)
    rec_b2, state = measure(state, B2, forced[1], rng)
    b1, b2 = _checked_outcome(rec_b1), _checked_outcome(rec_b2)

    # Step 2: Alice
    state = apply_gate(state, PAULI[b1], [A1])
    state = apply_gate(state, PAULI[b2], [A2])
    state = apply_operator(state, build_T2(x, t), [A1.index, A2.index])
    state = physical_hadamard(state, params, A1.index, fock_cap)
    state = physical_hadamard(state, params, A2.index, fock_cap)
    rec_a1, state = measure(state, A1, forced[2], rng)
    rec_a2, state = measure(state, A2, forced[3], rng)
    a1, a2 = rec_a1.outcome, rec_a2.outcome

    # Step 3: Bob's recovery
    for generator in decomposition_table(x).application_order():
        match generator:
            case Generator.CNOT_12:
                state = _cnot(state, params, Y1, Y2, schedule)
            case Generator.CNOT_21:
                state = _cnot(state, params, Y2, Y1, schedule)
            case Generator.X_I:
                state = apply_gate(state, X, [Y1])
            case Generator.I_X:
                state = apply_gate(state, X, [Y2])
    state = apply_gate(state, PAULI[3 * a1], [Y1])
    state = apply_gate(state, PAULI[3 * a2], [Y2])

    bits = (b1, b2, a1, a2)
    final = extract_subsystems(state, {A1.index: a1, A2.index: a2, B1.index: b1, B2.index: b2})
    logger.debug(f"Physical run x={x} branch={bits} peak dimension {state.dim}")
    return PhysicalTranscript(
        x=x,
        bits=bits,
        b_probability=rec_b1.probability * rec_b2.probability,
        a_probability=rec_a1.probability * rec_a2.probability,
        final_state=final,
        expected_state=build_T2(x, t).apply(xi),
    )


def timing_error_fidelity(
    offset_fraction: float,
    xi: StateVector,
    t: DiagonalPhases,
    params: PhysicalParams | None = None,
    early_atom: int = 1,
    fock_cap: int | None = None,
) -> float:
    """Fidelity of the x=10, (b1, b2, a1, a2) = (0, 0, 1, 1) branch when every CNOT
    cavity stage is staggered by ``offset_fraction`` of the interaction time."""
    if not 0.0 <= offset_fraction <= MAX_OFFSET_FRACTION:
        raise InvalidParameterError(f"offset fraction {offset_fraction} outside [0, {MAX_OFFSET_FRACTION}]")
    schedule = StaggeredSchedule(offset_fraction=offset_fraction, early_atom=early_atom)
    transcript = run_physical_protocol(CANONICAL_X, t, xi, CANONICAL_BITS, schedule, params, fock_cap=fock_cap)
    return transcript.fidelity
