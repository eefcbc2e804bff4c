"""Verification campaigns behind the CLI commands."""

import itertools
import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel

from src.cavity.gates import physical_cnot_matrix, physical_hadamard_matrix
from src.cavity.params import PhysicalParams
from src.cavity.protocol import timing_error_fidelity
from src.cavity.timing import timing_report
from src.circuit.gates import CNOT, H
from src.core.errors import InvalidParameterError
from src.core.logging import get_logger
from src.linalg.metrics import operator_residual
from src.linalg.products import random_state
from src.linalg.types import StateVector, UnitaryMatrix
from src.protocol.decompositions import verify_decompositions
from src.protocol.permutations import OPERATOR_COUNT, DiagonalPhases, encode_x
from src.protocol.remote import enumerate_protocol_branches
from src.schemas.config import RunConfig
from src.schemas.reports import (
    GateCheck,
    OffsetPoint,
    PhysicalGatesReport,
    ProtocolCaseResult,
    ProtocolVerificationReport,
    SweepResult,
    SweepRow,
    matrix_to_pairs,
)

logger = get_logger(__name__)

EXIT_SUCCESS = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_CONFIG_ERROR = 2

BRANCH_PROBABILITY_ATOL = 1e-12
REFERENCE_FIDELITY = 0.998
REFERENCE_TOLERANCE = 0.005
REFERENCE_OFFSET = 0.01
OFFSET_LADDER = (1e-4, 1e-3, 1e-2)
# Squared-norm remainder below which a grid point counts as y_ee = 0
GRID_ATOL = 1e-12


@dataclass(frozen=True)
class CampaignOutcome:
    report: BaseModel
    exit_code: int


def sweep_grid(grid_step: float) -> list[tuple[float, float, float, float]]:
    """Positive (y_gg, y_ge, y_eg) on multiples of ``grid_step``, with y_ee > 0 fixed by
    normalization."""
    count = math.floor(1 / grid_step + GRID_ATOL)
    values = [round(k * grid_step, 12) for k in range(1, count + 1) if k * grid_step < 1 - GRID_ATOL]
    points = []
    for y in itertools.product(values, repeat=3):
        remainder = 1 - sum(v * v for v in y)
        if remainder > GRID_ATOL:
            points.append((y[0], y[1], y[2], math.sqrt(remainder)))
    return points


def _gate_check(name: str, matrix: np.ndarray, ideal: UnitaryMatrix, leakage: float, config: RunConfig) -> GateCheck:
    phase, residual = operator_residual(UnitaryMatrix(matrix), ideal)
    passed = residual < config.gate_tolerance and leakage < config.leakage_tolerance
    return GateCheck(
        gate=name,
        residual=residual,
        phase=(phase.real, phase.imag),
        leakage=leakage,
        passed=passed,
        matrix=matrix_to_pairs(matrix) if config.verbose else None,
        ideal=matrix_to_pairs(ideal.data) if config.verbose else None,
    )


class CampaignService:
    """Runs one command's campaign for a validated RunConfig."""

    def __init__(self, config: RunConfig):
        self.config = config

    def verify_protocol(self) -> CampaignOutcome:
        """Every operator x every branch x ``samples`` random (xi, t)."""
        config = self.config
        rng = np.random.default_rng(config.seed)
        results: list[ProtocolCaseResult] = []
        first_failure: ProtocolCaseResult | None = None
        max_probability_error = 0.0

        for x in range(1, OPERATOR_COUNT + 1):
            for sample in range(config.samples):
                xi = random_state(rng, (2, 2))
                t = DiagonalPhases.random(rng)
                for transcript in enumerate_protocol_branches(x, t, xi):
                    b1, b2, a1, a2 = transcript.bits
                    case = ProtocolCaseResult(
                        x=x, x_bits=encode_x(x), sample=sample, b1=b1, b2=b2, a1=a1, a2=a2, residual=transcript.residual
                    )
                    results.append(case)
                    max_probability_error = max(
                        max_probability_error,
                        abs(transcript.b_probability - 0.25),
                        abs(transcript.a_probability - 0.25),
                    )
                    if first_failure is None and not case.residual < config.tolerance:
                        first_failure = case
                        logger.error(
                            f"Protocol check failed: x={x} branch={transcript.bits} residual={case.residual:.3e}"
                        )

        passed = first_failure is None and max_probability_error <= BRANCH_PROBABILITY_ATOL
        report = ProtocolVerificationReport(
            seed=config.seed,
            samples=config.samples,
            tolerance=config.tolerance,
            cases=len(results),
            max_residual=max(r.residual for r in results),
            max_branch_probability_error=max_probability_error,
            passed=passed,
            first_failure=first_failure,
            results=results,
        )
        logger.info(f"Protocol campaign: {report.cases} cases, max residual {report.max_residual:.3e}")
        return CampaignOutcome(report, EXIT_SUCCESS if passed else EXIT_VERIFICATION_FAILURE)

    def verify_decompositions(self) -> CampaignOutcome:
        report = verify_decompositions()
        if report.mismatches:
            logger.error(f"Decompositions differing from R2(x): {report.mismatches}")
        ok = report.all_match and report.synthesized_never_longer
        return CampaignOutcome(report, EXIT_SUCCESS if ok else EXIT_VERIFICATION_FAILURE)

    def physical_gates(self) -> CampaignOutcome:
        config = self.config
        params = PhysicalParams.from_config(config)
        cnot = physical_cnot_matrix(params)
        hadamard = physical_hadamard_matrix(params, config.fock_cap)
        cnot_check = _gate_check("CNOT", cnot.matrix, CNOT.matrix, cnot.leakage, config)
        hadamard_check = _gate_check("H", hadamard.matrix, H.matrix, hadamard.leakage, config)
        report = PhysicalGatesReport(
            g_rad_s=params.g,
            delta_over_g=config.delta_over_g,
            lambda_rad_s=params.lam,
            tolerance=config.gate_tolerance,
            leakage_tolerance=config.leakage_tolerance,
            cnot=cnot_check,
            hadamard=hadamard_check,
            passed=cnot_check.passed and hadamard_check.passed,
        )
        if not report.passed:
            logger.error(f"Physical gate check failed: CNOT {report.cnot.residual:.3e}, H {report.hadamard.residual:.3e}")
        return CampaignOutcome(report, EXIT_SUCCESS if report.passed else EXIT_VERIFICATION_FAILURE)

    def fidelity_sweep(self) -> CampaignOutcome:
        """Timing-offset fidelity over the positive-real state family with equal t_m."""
        config = self.config
        params = PhysicalParams.from_config(config)
        t = DiagonalPhases.uniform(config.sweep_phase)
        grid = sweep_grid(config.grid_step)
        if not grid:
            raise InvalidParameterError(f"grid step {config.grid_step} leaves no admissible (y_gg, y_ge, y_eg)")

        rows = []
        for y in grid:
            xi = StateVector.from_amplitudes(y, (2, 2), normalize=True)
            value = timing_error_fidelity(config.offset, xi, t, params, config.early_atom, config.fock_cap)
            rows.append(
                SweepRow(y_gg=y[0], y_ge=y[1], y_eg=y[2], y_ee=y[3], offset_fraction=config.offset, fidelity=value)
            )

        uniform = StateVector.from_amplitudes(np.full(4, 0.5), (2, 2))
        ladder = [
            OffsetPoint(
                offset_fraction=f,
                fidelity=timing_error_fidelity(f, uniform, t, params, config.early_atom, config.fock_cap),
            )
            for f in OFFSET_LADDER
        ]

        fidelities = [row.fidelity for row in rows]
        max_fidelity = max(fidelities)
        within = None
        if math.isclose(config.offset, REFERENCE_OFFSET):
            within = abs(max_fidelity - REFERENCE_FIDELITY) <= REFERENCE_TOLERANCE
        report = SweepResult(
            offset_fraction=config.offset,
            early_atom=config.early_atom,
            grid_step=config.grid_step,
            sweep_phase=config.sweep_phase,
            rows=rows,
            min_fidelity=min(fidelities),
            max_fidelity=max_fidelity,
            mean_fidelity=float(np.mean(fidelities)),
            reference_fidelity=REFERENCE_FIDELITY,
            reference_tolerance=REFERENCE_TOLERANCE,
            within_reference=within,
            offset_ladder=ladder,
        )
        logger.info(
            f"Fidelity sweep over {len(rows)} states: min {report.min_fidelity:.6f}, "
            f"max {report.max_fidelity:.6f}, mean {report.mean_fidelity:.6f}"
        )
        return CampaignOutcome(report, EXIT_SUCCESS)

    def timing_report(self) -> CampaignOutcome:
        params = PhysicalParams.from_config(self.config)
        report = timing_report(params, self.config.feasibility_ratio)
        for check in report.checks:
            if not check.passed:
                logger.error(f"Feasibility check {check.name} failed: ratio {check.ratio:.3e}")
        return CampaignOutcome(report, EXIT_SUCCESS if report.passed else EXIT_VERIFICATION_FAILURE)
