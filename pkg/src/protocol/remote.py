"""The three-party remote implementation of T2(x, t).

Alice holds the black box T2(x, t) and qubits A1, A2; Bob holds B1, B2 and the data
qubits Y1, Y2 in state xi. Each (Ak, Bk) pair starts as a Bell pair.

1. Bob applies CNOT(Y1 -> B1) and CNOT(Y2 -> B2), measures B1, B2 and sends b1 b2.
2. Alice applies sigma_x^{b1} on A1 and sigma_x^{b2} on A2, then T2(x, t) on A1 A2,
   then H on each, measures a1 a2 and sends them with the 5-bit encoding of x.
3. Bob applies R2(x) and then sigma_z^{a1} on Y1 and sigma_z^{a2} on Y2.

Every branch leaves Y1 Y2 in exactly T2(x, t)|xi>.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.circuit.engine import MeasurementRecord, apply_gate, enumerate_branches, measure
from src.circuit.gates import CNOT, H, PAULI, PROTOCOL_REGISTER, X, QubitId, Register
from src.core.config import get_settings
from src.core.errors import DimensionMismatchError, ImpossibleBranchError, InvalidIndexError
from src.core.logging import get_logger
from src.linalg.metrics import global_phase_align
from src.linalg.products import apply_operator, extract_subsystems, kron
from src.linalg.types import StateVector
from src.protocol.decompositions import Generator, decomposition_table
from src.protocol.permutations import DiagonalPhases, build_T2, check_index, encode_x

logger = get_logger(__name__)

A1, A2, B1, B2, Y1, Y2 = (PROTOCOL_REGISTER[label] for label in PROTOCOL_REGISTER.labels)
DATA_REGISTER = Register(("Y1", "Y2"))

Bits = tuple[int, int, int, int]


def bell_channel() -> StateVector:
    """(|00> + |11>)/sqrt(2) on (A1, B1) and on (A2, B2), stored in order A1, A2, B1, B2."""
    pair = StateVector.from_amplitudes(np.array([1, 0, 0, 1]) / np.sqrt(2))
    two_pairs = kron(pair, pair).tensor()  # A1, B1, A2, B2
    return StateVector((2, 2, 2, 2), np.transpose(two_pairs, (0, 2, 1, 3)).reshape(-1))


@dataclass(frozen=True, eq=False)
class ProtocolTranscript:
    """Record of one protocol run; states are on (Y1, Y2)."""

    x: int
    t: DiagonalPhases
    xi: StateVector
    bits: Bits
    b_probability: float
    a_probability: float
    pre_recovery_state: StateVector
    final_state: StateVector
    records: tuple[MeasurementRecord, ...] = ()

    @property
    def x_bits(self) -> str:
        return encode_x(self.x)

    @property
    def expected_state(self) -> StateVector:
        return build_T2(self.x, self.t).apply(self.xi)

    @property
    def residual(self) -> float:
        """Distance of the output from T2(x, t)|xi> after global-phase alignment."""
        _, residual = global_phase_align(self.expected_state, self.final_state)
        return residual


def _check_inputs(x: int, xi: StateVector) -> None:
    check_index(x)
    if xi.dims != (2, 2):
        raise DimensionMismatchError(f"xi must be a two-qubit state on (Y1, Y2), got dimensions {xi.dims}")


def _bob_entangles(xi: StateVector) -> StateVector:
    state = kron(bell_channel(), xi)
    state = apply_gate(state, CNOT, [Y1, B1])
    return apply_gate(state, CNOT, [Y2, B2])


def _alice_acts(state: StateVector, b1: int, b2: int, x: int, t: DiagonalPhases) -> StateVector:
    # sigma_b: I for bit 0, sigma_1 for bit 1
    state = apply_gate(state, PAULI[b1], [A1])
    state = apply_gate(state, PAULI[b2], [A2])
    state = apply_operator(state, build_T2(x, t), [A1.index, A2.index])
    state = apply_gate(state, H, [A1])
    return apply_gate(state, H, [A2])


def _generator_step(state: StateVector, generator: Generator, y1: QubitId, y2: QubitId) -> StateVector:
    match generator:
        case Generator.CNOT_12:
            return apply_gate(state, CNOT, [y1, y2])
        case Generator.CNOT_21:
            return apply_gate(state, CNOT, [y2, y1])
        case Generator.X_I:
            return apply_gate(state, X, [y1])
        case Generator.I_X:
            return apply_gate(state, X, [y2])


def _data_qubits(state: StateVector, targets: Sequence[QubitId] | None) -> tuple[QubitId, QubitId]:
    if targets is not None:
        y1, y2 = targets
        return y1, y2
    if len(state.dims) == len(DATA_REGISTER):
        return DATA_REGISTER["Y1"], DATA_REGISTER["Y2"]
    if len(state.dims) == len(PROTOCOL_REGISTER):
        return Y1, Y2
    raise DimensionMismatchError(f"cannot locate Y1, Y2 in a {len(state.dims)}-subsystem state")


def apply_recovery(
    state: StateVector, a1: int, a2: int, x: int, targets: Sequence[QubitId] | None = None
) -> StateVector:
    """Bob's recovery: R2(x) gate by gate, then sigma_z^{a1} on Y1 and sigma_z^{a2} on Y2."""
    if a1 not in (0, 1) or a2 not in (0, 1):
        raise InvalidIndexError(f"measurement bits must be 0 or 1, got ({a1}, {a2})")
    y1, y2 = _data_qubits(state, targets)
    for generator in decomposition_table(x).application_order():
        state = _generator_step(state, generator, y1, y2)
    state = apply_gate(state, PAULI[3 * a1], [y1])
    return apply_gate(state, PAULI[3 * a2], [y2])


def _data_state(state: StateVector, bits: Bits) -> StateVector:
    b1, b2, a1, a2 = bits
    return extract_subsystems(state, {A1.index: a1, A2.index: a2, B1.index: b1, B2.index: b2})


def run_protocol(
    x: int,
    t: DiagonalPhases,
    xi: StateVector,
    forced_bits: Bits | None = None,
    seed: int | None = None,
) -> ProtocolTranscript:
    """Run the protocol once, either along ``forced_bits`` = (b1, b2, a1, a2) or sampling
    outcomes from a generator seeded with ``seed`` (the configured seed when omitted)."""
    _check_inputs(x, xi)
    rng = None
    if forced_bits is None:
        rng = np.random.default_rng(get_settings().seed if seed is None else seed)
        forced = (None, None, None, None)
    else:
        forced = tuple(forced_bits)

    state = _bob_entangles(xi)
    rec_b1, state = measure(state, B1, forced[0], rng)
    rec_b2, state = measure(state, B2, forced[1], rng)

    state = _alice_acts(state, rec_b1.outcome, rec_b2.outcome, x, t)
    rec_a1, state = measure(state, A1, forced[2], rng)
    rec_a2, state = measure(state, A2, forced[3], rng)

    bits = (rec_b1.outcome, rec_b2.outcome, rec_a1.outcome, rec_a2.outcome)
    pre_recovery = _data_state(state, bits)
    final = _data_state(apply_recovery(state, rec_a1.outcome, rec_a2.outcome, x), bits)
    logger.debug(f"x={encode_x(x)} branch b1b2a1a2={''.join(map(str, bits))}")

    return ProtocolTranscript(
        x=x,
        t=t,
        xi=xi,
        bits=bits,
        b_probability=rec_b1.probability * rec_b2.probability,
        a_probability=rec_a1.probability * rec_a2.probability,
        pre_recovery_state=pre_recovery,
        final_state=final,
        records=(rec_b1, rec_b2, rec_a1, rec_a2),
    )


def enumerate_protocol_branches(x: int, t: DiagonalPhases, xi: StateVector) -> list[ProtocolTranscript]:
    """All 16 branches in (b1, b2, a1, a2) order, sharing the common prefix of each."""
    _check_inputs(x, xi)
    transcripts: list[ProtocolTranscript] = []
    for bob in enumerate_branches(_bob_entangles(xi), [B1, B2]):
        if bob.state is None:
            raise ImpossibleBranchError(f"Bob outcome {bob.outcomes} has probability {bob.probability:.3e}")
        b1, b2 = bob.outcomes
        for alice in enumerate_branches(_alice_acts(bob.state, b1, b2, x, t), [A1, A2]):
            if alice.state is None:
                raise ImpossibleBranchError(f"Alice outcome {alice.outcomes} has probability {alice.probability:.3e}")
            a1, a2 = alice.outcomes
            bits = (b1, b2, a1, a2)
            transcripts.append(
                ProtocolTranscript(
                    x=x,
                    t=t,
                    xi=xi,
                    bits=bits,
                    b_probability=bob.probability,
                    a_probability=alice.probability,
                    pre_recovery_state=_data_state(alice.state, bits),
                    final_state=_data_state(apply_recovery(alice.state, a1, a2, x), bits),
                )
            )
    return transcripts
