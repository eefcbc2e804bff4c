"""Overlaps, fidelities and phase-aligned residuals."""

import numpy as np

from src.core.errors import DimensionMismatchError, NoAlignmentError
from src.linalg.types import StateVector, UnitaryMatrix

# Below this overlap two states are treated as orthogonal
ALIGNMENT_FLOOR = 1e-14


def fidelity(a: StateVector, b: StateVector) -> float:
    """Pure-state fidelity |<a|b>|^2, clipped to [0, 1]."""
    overlap = a.inner(b)
    return float(min(1.0, max(0.0, abs(overlap) ** 2)))


def global_phase_align(a: StateVector, b: StateVector) -> tuple[complex, float]:
    """Return (phase, residual) with <a|phase*b> real-positive and residual = ||a - phase*b||."""
    overlap = b.inner(a)
    magnitude = abs(overlap)
    if magnitude < ALIGNMENT_FLOOR:
        raise NoAlignmentError(f"no alignment: states are orthogonal (|<a|b>| = {magnitude:.3e})")
    phase = overlap / magnitude
    residual = float(np.linalg.norm(a.amps - phase * b.amps))
    return complex(phase), residual


def operator_residual(a: UnitaryMatrix, b: UnitaryMatrix) -> tuple[complex, float]:
    """Frobenius distance min over phi of ||a - e^{i phi} b||, with the minimizing phase."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"cannot compare {a.dim}x{a.dim} with {b.dim}x{b.dim}")
    overlap = complex(np.vdot(b.data, a.data))
    magnitude = abs(overlap)
    if magnitude < ALIGNMENT_FLOOR:
        raise NoAlignmentError("no alignment: operators are trace-orthogonal")
    phase = overlap / magnitude
    residual = float(np.linalg.norm(a.data - phase * b.data))
    return phase, residual
