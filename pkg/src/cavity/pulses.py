"""Three-level atoms and the classical-field pulses around a cavity CNOT stage.

Each pulse is two elementary rotations, one on the g-e transition and one on e-i:

    pre:  |g> -> (|g> - |i>)/sqrt(2),  |e> -> (|g> + |i>)/sqrt(2),  |i> -> |e>
    post: |g> -> (|g> + |e>)/sqrt(2),  |i> -> (|e> - |g>)/sqrt(2),  |e> -> |i>
"""

from dataclasses import dataclass
from enum import IntEnum, StrEnum
from functools import cache

import numpy as np

from src.linalg.products import apply_operator
from src.linalg.types import StateVector, UnitaryMatrix

ATOM_LEVELS = 3
_S = 1 / np.sqrt(2)


class AtomLevel(IntEnum):
    g = 0
    e = 1
    i = 2


class PulseStage(StrEnum):
    PRE = "pre"
    POST = "post"


@dataclass(frozen=True, eq=False)
class PulseSpec:
    """An elementary rotation: a 2x2 block on ``transition``, identity on the third level."""

    stage: PulseStage
    transition: tuple[AtomLevel, AtomLevel]
    matrix: UnitaryMatrix

    @classmethod
    def rotation(cls, stage: PulseStage, transition: tuple[AtomLevel, AtomLevel], block) -> "PulseSpec":
        full = np.eye(ATOM_LEVELS, dtype=np.complex128)
        full[np.ix_(transition, transition)] = block
        return cls(stage, transition, UnitaryMatrix.checked(full))


_GE = (AtomLevel.g, AtomLevel.e)
_EI = (AtomLevel.e, AtomLevel.i)
_SWAP = [[0, 1], [1, 0]]


@cache
def pre_rotations() -> tuple[PulseSpec, PulseSpec]:
    """Rotations of the entry pulse in the order they act."""
    return (
        PulseSpec.rotation(PulseStage.PRE, _GE, [[_S, _S], [-_S, _S]]),
        PulseSpec.rotation(PulseStage.PRE, _EI, _SWAP),
    )


@cache
def post_rotations() -> tuple[PulseSpec, PulseSpec]:
    """Rotations of the exit pulse in the order they act."""
    return (
        PulseSpec.rotation(PulseStage.POST, _EI, _SWAP),
        PulseSpec.rotation(PulseStage.POST, _GE, [[_S, -_S], [_S, _S]]),
    )


def _compose(rotations: tuple[PulseSpec, ...]) -> UnitaryMatrix:
    result = UnitaryMatrix.identity(ATOM_LEVELS)
    for rotation in rotations:
        result = rotation.matrix @ result
    return result


@cache
def pre_pulse_matrix() -> UnitaryMatrix:
    return _compose(pre_rotations())


@cache
def post_pulse_matrix() -> UnitaryMatrix:
    return _compose(post_rotations())


def pulse_pre(state: StateVector, atom: int) -> StateVector:
    """Entry pulse on the three-level subsystem ``atom``."""
    return apply_operator(state, pre_pulse_matrix(), [atom])


def pulse_post(state: StateVector, atom: int) -> StateVector:
    """Exit pulse on the three-level subsystem ``atom``."""
    return apply_operator(state, post_pulse_matrix(), [atom])
