"""Interaction times, cavity lifetimes and the feasibility inequalities."""

import math

from src.cavity.params import PhysicalParams
from src.protocol.decompositions import Generator, decomposition_table
from src.protocol.permutations import OPERATOR_COUNT
from src.schemas.reports import FeasibilityCheck, TimingReport

# Hadamard stages: Alice sends both atoms through the resonant cavity side by side
JC_STAGES = 1
# Classical-pulse passes outside the CNOTs: Ramsey zone, Alice's and Bob's Pauli corrections
EXTRA_PULSE_PASSES = 3


def max_recovery_cnots() -> int:
    """Largest CNOT count among the recovery decompositions."""
    cnots = {Generator.CNOT_12, Generator.CNOT_21}
    return max(
        sum(1 for g in decomposition_table(x) if g in cnots) for x in range(1, OPERATOR_COUNT + 1)
    )


def _check(name: str, shorter: float, longer: float, feasibility_ratio: float) -> FeasibilityCheck:
    ratio = shorter / longer
    return FeasibilityCheck(name=name, shorter_s=shorter, longer_s=longer, ratio=ratio, passed=ratio <= feasibility_ratio)


def timing_report(params: PhysicalParams, feasibility_ratio: float = 0.1) -> TimingReport:
    """Stage times of the cavity protocol and the 'much shorter than' checks.

    Bob's two entangling CNOTs run in parallel cavities, so the longest path holds one
    entangling stage plus the longest recovery.
    """
    cnot_time = math.pi * params.delta / params.g**2
    jc_time = math.pi / params.g
    photon_lifetime = params.q_factor / (2 * math.pi * params.cavity_frequency)
    effective_decay = photon_lifetime / params.excitation_probability

    cnot_stages = 1 + max_recovery_cnots()
    pulse_passes = 2 * cnot_stages + EXTRA_PULSE_PASSES
    total = cnot_stages * cnot_time + JC_STAGES * jc_time + pulse_passes * params.pulse_time

    checks = [
        _check("protocol_vs_radiative_time", total, params.radiative_time, feasibility_ratio),
        _check("protocol_vs_effective_decay_time", total, effective_decay, feasibility_ratio),
        _check("pulse_vs_cavity_stage", params.pulse_time, cnot_time, feasibility_ratio),
        _check("jc_stage_vs_radiative_time", jc_time, params.radiative_time, feasibility_ratio),
    ]
    return TimingReport(
        g_rad_s=params.g,
        delta_rad_s=params.delta,
        lambda_rad_s=params.lam,
        cnot_stage_time_s=cnot_time,
        jc_stage_time_s=jc_time,
        pulse_time_s=params.pulse_time,
        photon_lifetime_s=photon_lifetime,
        effective_decay_time_s=effective_decay,
        radiative_time_s=params.radiative_time,
        cnot_stages=cnot_stages,
        total_protocol_time_s=total,
        feasibility_ratio=feasibility_ratio,
        checks=checks,
        passed=all(c.passed for c in checks),
    )
