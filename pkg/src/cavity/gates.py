"""Physical CNOT and Hadamard gates composed from pulses and cavity stages."""

import math
from dataclasses import dataclass

import numpy as np

from src.cavity.dynamics import dispersive_evolve, jc_evolve, solo_dispersive_evolve
from src.cavity.params import IDEAL_SCHEDULE, PhysicalParams, StaggeredSchedule
from src.cavity.pulses import ATOM_LEVELS, AtomLevel, pulse_post, pulse_pre
from src.core.config import get_settings
from src.core.errors import DimensionMismatchError, InvalidIndexError, LeakageError
from src.linalg.products import apply_operator, auxiliary_population, embed_qubit_operator, lift_subsystem
from src.linalg.types import StateVector, UnitaryMatrix

# Amplitude on |i> tolerated when a CNOT stage starts
ENTRY_LEAK_ATOL = 1e-12
# Largest cavity amplitude the resonant stage may leave behind
VACUUM_LEAK_ATOL = 1e-10

_S = 1 / np.sqrt(2)
# R+ = (I + i sigma_y)/sqrt(2) in the (g, e) basis
RAMSEY_PLUS = UnitaryMatrix.checked([[_S, -_S], [_S, _S]])


def physical_cnot(
    state: StateVector,
    params: PhysicalParams,
    control: int = 0,
    target: int = 1,
    schedule: StaggeredSchedule | None = None,
    allow_leakage: bool = False,
) -> StateVector:
    """Entry pulse on the target, cavity stage, exit pulse on the target.

    Both atoms are lifted to three levels. With the ideal schedule the stage lasts
    lambda t = pi and the result is an exact CNOT on the computational subspace.
    A staggered schedule lets the early atom in ``offset_fraction * t`` before the other,
    and the late atom stays the same amount after. Entry amplitude on |i> is rejected
    unless ``allow_leakage`` is set.
    """
    if control == target:
        raise InvalidIndexError("control and target must be different atoms")
    schedule = schedule or IDEAL_SCHEDULE
    state = lift_subsystem(lift_subsystem(state, control, ATOM_LEVELS), target, ATOM_LEVELS)

    leaked = math.sqrt(auxiliary_population(state, [control, target]))
    if leaked > ENTRY_LEAK_ATOL and not allow_leakage:
        raise LeakageError(f"|i> amplitude {leaked:.3e} at CNOT entry; pulses assume computational input")

    pair = (control, target)
    t = params.cnot_time
    state = pulse_pre(state, target)
    if schedule.is_ideal:
        state = dispersive_evolve(state, params, t, pair)
    else:
        tau = schedule.offset_fraction * t
        late = 3 - schedule.early_atom
        state = solo_dispersive_evolve(state, params, tau, schedule.early_atom, pair)
        state = dispersive_evolve(state, params, t - tau, pair)
        state = solo_dispersive_evolve(state, params, tau, late, pair)
    return pulse_post(state, target)


@dataclass(frozen=True, eq=False)
class GateRestriction:
    """A physical gate restricted to computational inputs and outputs."""

    matrix: np.ndarray
    leakage: float


def physical_cnot_matrix(params: PhysicalParams, schedule: StaggeredSchedule | None = None) -> GateRestriction:
    """4x4 computational block of the physical CNOT (atom 1 controls) and its worst |i> population."""
    columns, leakage = [], 0.0
    for c in (0, 1):
        for t in (0, 1):
            out = physical_cnot(StateVector.basis((ATOM_LEVELS, ATOM_LEVELS), (c, t)), params, 0, 1, schedule)
            columns.append(out.tensor()[:2, :2].reshape(-1))
            leakage = max(leakage, auxiliary_population(out))
    return GateRestriction(np.column_stack(columns), leakage)


def ramsey_plus(state: StateVector, atom: int = 0) -> StateVector:
    """|g> -> (|g> + |e>)/sqrt(2), |e> -> (|e> - |g>)/sqrt(2); |i> untouched."""
    op = embed_qubit_operator(RAMSEY_PLUS.data, [state.dims[atom]])
    return apply_operator(state, op, [atom])


def _vacuum_block(params: PhysicalParams, fock_cap: int | None = None) -> tuple[UnitaryMatrix, float]:
    """Atom-only action of the g t = pi resonant stage on an empty cavity, with the
    largest amplitude it leaves in the cavity."""
    fock_cap = fock_cap or get_settings().fock_cap
    columns, leak = [], 0.0
    for level in (AtomLevel.g, AtomLevel.e):
        out = jc_evolve(StateVector.basis((2, fock_cap + 1), (level, 0)), params, params.hadamard_time).tensor()
        leak = max(leak, float(np.max(np.abs(out[:, 1:]))))
        columns.append(out[:, 0])
    if leak > VACUUM_LEAK_ATOL:
        raise LeakageError(f"resonant stage leaves {leak:.3e} amplitude in the cavity")
    return UnitaryMatrix(np.column_stack(columns)), leak


def physical_hadamard(
    state: StateVector, params: PhysicalParams, atom: int = 0, fock_cap: int | None = None
) -> StateVector:
    """Resonant stage with g t = pi through the empty cavity, then the Ramsey zone R+."""
    if not 0 <= atom < len(state.dims):
        raise InvalidIndexError(f"atom {atom} not in a {len(state.dims)}-subsystem state")
    if state.dims[atom] < 2:
        raise DimensionMismatchError(f"subsystem {atom} is not an atom")
    block, _ = _vacuum_block(params, fock_cap)
    state = apply_operator(state, embed_qubit_operator(block.data, [state.dims[atom]]), [atom])
    return ramsey_plus(state, atom)


def physical_hadamard_matrix(params: PhysicalParams, fock_cap: int | None = None) -> GateRestriction:
    """2x2 restriction of the physical Hadamard; ``leakage`` is the worst cavity population."""
    _, leak = _vacuum_block(params, fock_cap)
    columns = [physical_hadamard(StateVector.basis((2,), (level,)), params, 0, fock_cap).amps for level in (0, 1)]
    return GateRestriction(np.column_stack(columns), leak * leak)
