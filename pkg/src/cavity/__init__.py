"""Cavity-QED realization: three-level atoms, pulses, cavity stages and physical gates."""

from .dynamics import (
    dispersive_evolve,
    dispersive_hamiltonian,
    dispersive_propagator,
    jc_evolve,
    jc_hamiltonian,
    jc_propagator,
    solo_dispersive_evolve,
    solo_propagator,
)
from .gates import (
    RAMSEY_PLUS,
    GateRestriction,
    physical_cnot,
    physical_cnot_matrix,
    physical_hadamard,
    physical_hadamard_matrix,
    ramsey_plus,
)
from .params import IDEAL_SCHEDULE, PhysicalParams, StaggeredSchedule
from .protocol import PhysicalTranscript, run_physical_protocol, timing_error_fidelity
from .pulses import AtomLevel, PulseSpec, PulseStage, post_pulse_matrix, pre_pulse_matrix, pulse_post, pulse_pre
from .timing import max_recovery_cnots, timing_report

__all__ = [
    "IDEAL_SCHEDULE",
    "RAMSEY_PLUS",
    "AtomLevel",
    "GateRestriction",
    "PhysicalParams",
    "PhysicalTranscript",
    "PulseSpec",
    "PulseStage",
    "StaggeredSchedule",
    "dispersive_evolve",
    "dispersive_hamiltonian",
    "dispersive_propagator",
    "jc_evolve",
    "jc_hamiltonian",
    "jc_propagator",
    "max_recovery_cnots",
    "physical_cnot",
    "physical_cnot_matrix",
    "physical_hadamard",
    "physical_hadamard_matrix",
    "post_pulse_matrix",
    "pre_pulse_matrix",
    "pulse_post",
    "pulse_pre",
    "ramsey_plus",
    "run_physical_protocol",
    "solo_dispersive_evolve",
    "solo_propagator",
    "timing_error_fidelity",
    "timing_report",
]
