"""Pydantic models for the machine-readable reports emitted by the CLI.

Reports carry no timestamps so that identical invocations produce identical bytes.
Complex matrices are serialized as nested ``[re, im]`` pairs.
"""

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

ComplexPair = tuple[float, float]
ComplexMatrix = list[list[ComplexPair]]


def matrix_to_pairs(matrix: np.ndarray) -> ComplexMatrix:
    """Serialize a complex matrix as rows of ``(re, im)`` pairs."""
    return [[(float(v.real), float(v.imag)) for v in row] for row in np.asarray(matrix, dtype=np.complex128)]


def permutation_to_rows(matrix: np.ndarray) -> list[list[int]]:
    """Serialize a 0/1 permutation matrix as integer rows."""
    return [[round(abs(v)) for v in row] for row in np.asarray(matrix)]


# Protocol verification


class ProtocolCaseResult(BaseModel):
    """Residual of one (x, sample, branch) case against T2(x, t)|xi>."""

    x: int = Field(description="Operator index 1..24")
    x_bits: str = Field(description="x as the 5-bit string sent to Bob")
    sample: int = Field(description="Index of the random (xi, t) sample")
    b1: int
    b2: int
    a1: int
    a2: int
    residual: float = Field(description="Phase-aligned distance to the expected output")


class ProtocolVerificationReport(BaseModel):
    """Outcome of the operators x branches x samples campaign."""

    command: Literal["verify-protocol"] = "verify-protocol"
    seed: int
    samples: int
    tolerance: float
    cases: int = Field(description="Number of cases run (24 * 16 * samples)")
    max_residual: float
    max_branch_probability_error: float = Field(description="Largest |p - 1/4| over every b and a outcome pair")
    passed: bool
    first_failure: ProtocolCaseResult | None = None
    results: list[ProtocolCaseResult] = Field(default_factory=list)


# Decomposition audit


class DecompositionAuditRow(BaseModel):
    """Published decomposition of R2(x) checked against the lexicographic permutation."""

    x: int
    x_bits: str
    p: list[str] = Field(description="(p_00, p_01, p_10, p_11) under lexicographic ranking")
    published: list[str] = Field(description="Generators in written order (rightmost acts first)")
    published_length: int
    product: list[list[int]] = Field(description="Matrix product of the published sequence")
    expected: list[list[int]] = Field(description="R2(x)")
    match: bool
    max_deviation: float
    synthesized: list[str] = Field(default_factory=list, description="Shortest generator sequence found by search")
    synthesized_length: int = 0


class DecompositionAuditReport(BaseModel):
    command: Literal["verify-decompositions"] = "verify-decompositions"
    rows: list[DecompositionAuditRow]
    all_match: bool
    mismatches: list[int] = Field(default_factory=list, description="x values whose sequence differs from R2(x)")
    synthesized_never_longer: bool


# Physical gates


class GateCheck(BaseModel):
    """A composed physical gate compared with its ideal counterpart."""

    gate: str
    residual: float = Field(description="Frobenius distance after global-phase alignment")
    phase: ComplexPair = Field(description="Aligning global phase")
    leakage: float = Field(description="Worst auxiliary-level population over computational inputs")
    passed: bool
    matrix: ComplexMatrix | None = Field(None, description="Computational-subspace restriction (verbose only)")
    ideal: ComplexMatrix | None = Field(None, description="Ideal gate (verbose only)")


class PhysicalGatesReport(BaseModel):
    command: Literal["physical-gates"] = "physical-gates"
    g_rad_s: float
    delta_over_g: float
    lambda_rad_s: float
    tolerance: float
    leakage_tolerance: float
    cnot: GateCheck
    hadamard: GateCheck
    passed: bool


# Fidelity sweep


class SweepRow(BaseModel):
    y_gg: float
    y_ge: float
    y_eg: float
    y_ee: float
    offset_fraction: float
    fidelity: float = Field(ge=0.0, le=1.0)


class OffsetPoint(BaseModel):
    offset_fraction: float
    fidelity: float = Field(ge=0.0, le=1.0)


class SweepResult(BaseModel):
    """Timing-offset fidelity over the positive-real (y_gg, y_ge, y_eg) grid."""

    command: Literal["fidelity-sweep"] = "fidelity-sweep"
    offset_fraction: float
    early_atom: int
    grid_step: float
    sweep_phase: float
    rows: list[SweepRow]
    min_fidelity: float
    max_fidelity: float
    mean_fidelity: float
    reference_fidelity: float = Field(description="Reference fidelity at a 1% entry offset")
    reference_tolerance: float
    within_reference: bool | None = Field(
        None, description="max_fidelity within reference_tolerance of reference_fidelity (1% offset only)"
    )
    offset_ladder: list[OffsetPoint] = Field(default_factory=list, description="Fidelity of the uniform state")


# Timing


class FeasibilityCheck(BaseModel):
    """One 'much shorter than' inequality."""

    name: str
    shorter_s: float
    longer_s: float
    ratio: float
    passed: bool


class TimingReport(BaseModel):
    command: Literal["timing-report"] = "timing-report"
    g_rad_s: float
    delta_rad_s: float
    lambda_rad_s: float
    cnot_stage_time_s: float = Field(description="pi * delta / g^2")
    jc_stage_time_s: float = Field(description="pi / g")
    pulse_time_s: float
    photon_lifetime_s: float = Field(description="Q / (2 pi nu)")
    effective_decay_time_s: float = Field(description="Photon lifetime over the cavity excitation probability")
    radiative_time_s: float
    cnot_stages: int = Field(description="Cavity CNOT stages on the longest path")
    total_protocol_time_s: float
    feasibility_ratio: float
    checks: list[FeasibilityCheck]
    passed: bool


REPORT_MODELS: dict[str, type[BaseModel]] = {
    "protocol_verification": ProtocolVerificationReport,
    "decomposition_audit": DecompositionAuditReport,
    "physical_gates": PhysicalGatesReport,
    "fidelity_sweep": SweepResult,
    "timing_report": TimingReport,
}
