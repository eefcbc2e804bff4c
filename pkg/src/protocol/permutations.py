"""The T2(x, t) operator family and its permutation part R2(x).

Two-qubit operators with exactly one non-zero entry per row and column are
diag(t_00, t_01, t_10, t_11) times a permutation matrix. The 24 permutations are
indexed by x = 1..24 in lexicographic order of p(x) = (p_00, p_01, p_10, p_11), and

    T2(x, t) = sum_m t_m |m><p_m(x)|,    R2(x) = T2(x, all ones).
"""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.errors import InvalidIndexError, NonUnimodularPhasesError
from src.linalg.types import UnitaryMatrix

BASIS_LABELS = ("00", "01", "10", "11")
OPERATOR_COUNT = 24
X_BITS = 5
PHASE_ATOL = 1e-12

_PERMUTATIONS = tuple(itertools.permutations(BASIS_LABELS))


class PermutationSpec(BaseModel):
    """An ordering p(x) of (00, 01, 10, 11) together with its rank x."""

    model_config = ConfigDict(frozen=True)

    x: int = Field(..., description="Operator index, 1..24")
    p: tuple[str, str, str, str] = Field(..., description="(p_00, p_01, p_10, p_11)")

    @field_validator("x")
    @classmethod
    def validate_x(cls, v: int) -> int:
        """Validate operator index range."""
        check_index(v)
        return v

    @model_validator(mode="after")
    def validate_rank(self) -> "PermutationSpec":
        """p must be the x-th lexicographic permutation of the basis labels."""
        if sorted(self.p) != list(BASIS_LABELS):
            raise ValueError(f"{self.p} is not a permutation of {BASIS_LABELS}")
        if _PERMUTATIONS[self.x - 1] != self.p:
            raise ValueError(f"{self.p} is not permutation number {self.x}")
        return self

    @property
    def indices(self) -> tuple[int, ...]:
        """p as basis indices, e.g. (01, 10, 11, 00) -> (1, 2, 3, 0)."""
        return tuple(int(label, 2) for label in self.p)

    @property
    def bits(self) -> str:
        return encode_x(self.x)


def check_index(x: int) -> None:
    if not 1 <= x <= OPERATOR_COUNT:
        raise InvalidIndexError(f"operator index x={x} outside 1..{OPERATOR_COUNT}")


def encode_x(x: int) -> str:
    """The 5-bit string Alice sends for x, e.g. 10 -> '01010'."""
    check_index(x)
    return format(x, f"0{X_BITS}b")


def decode_x(bits: str) -> int:
    if len(bits) != X_BITS or set(bits) - {"0", "1"}:
        raise InvalidIndexError(f"{bits!r} is not a {X_BITS}-bit string")
    x = int(bits, 2)
    check_index(x)
    return x


def permutation_of_index(x: int) -> PermutationSpec:
    """Lexicographic rank-x permutation of (00, 01, 10, 11)."""
    check_index(x)
    return PermutationSpec(x=x, p=_PERMUTATIONS[x - 1])


@dataclass(frozen=True)
class DiagonalPhases:
    """The unit-modulus diagonal (t_00, t_01, t_10, t_11) of T2."""

    t00: complex
    t01: complex
    t10: complex
    t11: complex

    def __post_init__(self):
        for name in ("t00", "t01", "t10", "t11"):
            value = complex(getattr(self, name))
            if not math.isfinite(abs(value)) or abs(abs(value) - 1.0) > PHASE_ATOL:
                raise NonUnimodularPhasesError(f"{name} = {value} does not have modulus 1 (T2 would not be unitary)")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, values) -> "DiagonalPhases":
        t00, t01, t10, t11 = (complex(v) for v in values)
        return cls(t00, t01, t10, t11)

    @classmethod
    def ones(cls) -> "DiagonalPhases":
        return cls(1, 1, 1, 1)

    @classmethod
    def uniform(cls, phase: float) -> "DiagonalPhases":
        """All four t_m equal to e^{i phase}."""
        value = complex(np.exp(1j * phase))
        return cls(value, value, value, value)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "DiagonalPhases":
        """Independent phases uniform on the circle."""
        return cls.from_array(np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=4)))

    def as_array(self) -> np.ndarray:
        return np.array([self.t00, self.t01, self.t10, self.t11], dtype=np.complex128)


@lru_cache(maxsize=OPERATOR_COUNT)
def build_R2(x: int) -> UnitaryMatrix:
    """R2(x) = sum_m |m><p_m(x)|."""
    spec = permutation_of_index(x)
    matrix = np.zeros((4, 4), dtype=np.complex128)
    for m, p_m in enumerate(spec.indices):
        matrix[m, p_m] = 1.0
    return UnitaryMatrix.checked(matrix)


def build_T2(x: int, t: DiagonalPhases) -> UnitaryMatrix:
    """T2(x, t) = diag(t) R2(x)."""
    return UnitaryMatrix(np.diag(t.as_array()) @ build_R2(x).data)


def is_monomial(matrix: np.ndarray, atol: float = 0.0) -> bool:
    """Exactly one non-zero entry in every row and every column."""
    nonzero = np.abs(matrix) > atol
    return bool(np.all(nonzero.sum(axis=0) == 1) and np.all(nonzero.sum(axis=1) == 1))
