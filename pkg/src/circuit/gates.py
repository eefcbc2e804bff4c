"""Named gate constants and the qubit register of the protocol."""

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from src.core.errors import InvalidIndexError
from src.linalg.types import UnitaryMatrix

_SQRT2_INV = 1 / np.sqrt(2)


class GateName(StrEnum):
    """Gate names; X, Y, Z are the Pauli matrices sigma_1, sigma_2, sigma_3."""

    I = "I"  # noqa: E741
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    CNOT = "CNOT"


@dataclass(frozen=True, eq=False)
class GateConst:
    """A named gate and its matrix; ``arity`` is the number of qubits it acts on."""

    name: GateName
    matrix: UnitaryMatrix

    @property
    def arity(self) -> int:
        return self.matrix.dim.bit_length() - 1


I = GateConst(GateName.I, UnitaryMatrix.checked(np.eye(2)))  # noqa: E741
X = GateConst(GateName.X, UnitaryMatrix.checked([[0, 1], [1, 0]]))
Y = GateConst(GateName.Y, UnitaryMatrix.checked([[0, -1j], [1j, 0]]))
Z = GateConst(GateName.Z, UnitaryMatrix.checked([[1, 0], [0, -1]]))
H = GateConst(GateName.H, UnitaryMatrix.checked(np.array([[1, 1], [1, -1]]) * _SQRT2_INV))
# control is the first target, target the second
CNOT = GateConst(
    GateName.CNOT,
    UnitaryMatrix.checked([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
)

PAULI = {0: I, 1: X, 2: Y, 3: Z}

QUBIT_LABELS = ("A1", "A2", "B1", "B2", "Y1", "Y2")


@dataclass(frozen=True)
class QubitId:
    """A labelled position in a register."""

    label: str
    index: int

    def __post_init__(self):
        if self.label not in QUBIT_LABELS:
            raise InvalidIndexError(f"unknown qubit label {self.label!r}; expected one of {QUBIT_LABELS}")
        if self.index < 0:
            raise InvalidIndexError(f"qubit index {self.index} is negative")


class Register:
    """Ordered, uniquely labelled qubits; positions are subsystem indices of a state."""

    def __init__(self, labels: tuple[str, ...]):
        if len(set(labels)) != len(labels):
            raise InvalidIndexError(f"register labels must be unique, got {labels}")
        self.qubits = tuple(QubitId(label, index) for index, label in enumerate(labels))
        self._by_label = {q.label: q for q in self.qubits}

    def __len__(self) -> int:
        return len(self.qubits)

    def __getitem__(self, label: str) -> QubitId:
        try:
            return self._by_label[label]
        except KeyError:
            raise InvalidIndexError(f"qubit {label!r} is not in register {self.labels}") from None

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(q.label for q in self.qubits)


# Storage order of the protocol state
PROTOCOL_REGISTER = Register(QUBIT_LABELS)
