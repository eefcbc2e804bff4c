"""Decompositions of R2(x) into CNOTs and NOT gates, their audit and a shortest-word search.

Sequences are stored in the written order of an operator product, so the right-most
generator acts first on a state.
"""

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum
from functools import cache

import numpy as np

from src.circuit.gates import CNOT, I, X
from src.core.errors import NotAPermutationError
from src.core.logging import get_logger
from src.linalg.products import kron
from src.linalg.types import UnitaryMatrix
from src.protocol.permutations import OPERATOR_COUNT, build_R2, check_index, encode_x, is_monomial, permutation_of_index
from src.schemas.reports import DecompositionAuditReport, DecompositionAuditRow, permutation_to_rows

logger = get_logger(__name__)


class Generator(StrEnum):
    """Gates the decompositions are written in, listed in tie-break order."""

    CNOT_12 = "CNOT(Y1,Y2)"
    CNOT_21 = "CNOT(Y2,Y1)"
    X_I = "XI"
    I_X = "IX"


GENERATOR_ORDER = (Generator.CNOT_12, Generator.CNOT_21, Generator.X_I, Generator.I_X)


@cache
def generator_matrix(generator: Generator) -> UnitaryMatrix:
    """4x4 matrix on (Y1, Y2)."""
    match generator:
        case Generator.CNOT_12:
            return CNOT.matrix
        case Generator.CNOT_21:
            return UnitaryMatrix.checked([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
        case Generator.X_I:
            return kron(X.matrix, I.matrix)
        case Generator.I_X:
            return kron(I.matrix, X.matrix)


@dataclass(frozen=True)
class GateSequence:
    """An operator product over the generators, in written order."""

    generators: tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(Generator(g) for g in self.generators))
        if not is_monomial(self.matrix().data) or not np.all(np.isin(self.matrix().data, (0, 1))):
            raise NotAPermutationError(f"product of {self.labels} is not a permutation matrix")

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    @property
    def labels(self) -> list[str]:
        return [g.value for g in self.generators]

    def application_order(self) -> tuple[Generator, ...]:
        """Generators in the order they act on a state."""
        return tuple(reversed(self.generators))

    def matrix(self) -> UnitaryMatrix:
        return sequence_matrix(self)


def sequence_matrix(sequence: "GateSequence | tuple[Generator, ...]") -> UnitaryMatrix:
    """Product G_1 G_2 ... G_n of a written sequence; the empty product is I4."""
    generators = sequence.generators if isinstance(sequence, GateSequence) else sequence
    result = UnitaryMatrix.identity(4)
    for generator in generators:
        result = result @ generator_matrix(generator)
    return result


_C12, _C21, _XI, _IX = GENERATOR_ORDER

# Published decompositions of R2(1) .. R2(24), written order
PUBLISHED_DECOMPOSITIONS: dict[int, tuple[Generator, ...]] = {
    1: (),
    2: (_C12,),
    3: (_C21, _C12, _C21),
    4: (_C21, _C12),
    5: (_C12, _C21),
    6: (_C21,),
    7: (_C12, _IX),
    8: (_IX,),
    9: (_XI, _C12, _C21),
    10: (_C21, _IX),
    11: (_C21, _XI, _C12, _C21),
    12: (_C21, _C12, _IX),
    13: (_C21, _C12, _XI),
    14: (_C21, _C12, _XI, _C21),
    15: (_C21, _XI),
    16: (_C12, _XI, _C21),
    17: (_XI,),
    18: (_C12, _XI),
    19: (_IX, _C21),
    20: (_C12, _IX, _C21),
    21: (_C21, _XI, _C12),
    22: (_C21, _C12, _IX, _C21),
    23: (_XI, _C12),
    24: (_XI, _IX),
}


def decomposition_table(x: int) -> GateSequence:
    """The published sequence for R2(x), verbatim."""
    check_index(x)
    return GateSequence(PUBLISHED_DECOMPOSITIONS[x])


def _permutation_key(matrix: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.argmax(np.abs(matrix), axis=0))


@cache
def _shortest_words() -> dict[tuple[int, ...], tuple[Generator, ...]]:
    """Breadth-first search over the group generated by the four gates.

    Words are extended on the right in generator order, so the first word reaching a
    permutation is the shortest one and, among those, the lexicographically smallest.
    """
    identity = np.eye(4, dtype=np.complex128)
    words: dict[tuple[int, ...], tuple[Generator, ...]] = {_permutation_key(identity): ()}
    queue: deque[tuple[tuple[Generator, ...], np.ndarray]] = deque([((), identity)])
    while queue:
        word, product = queue.popleft()
        for generator in GENERATOR_ORDER:
            extended = product @ generator_matrix(generator).data
            key = _permutation_key(extended)
            if key not in words:
                words[key] = (*word, generator)
                queue.append((words[key], extended))
    logger.debug(f"Generated group has order {len(words)}")
    return words


def synthesize_permutation(target: UnitaryMatrix) -> GateSequence:
    """Shortest generator sequence whose product equals the 4x4 permutation ``target``."""
    data = target.data
    if data.shape != (4, 4) or not is_monomial(data) or not np.all(np.isin(data, (0, 1))):
        raise NotAPermutationError("target is not a 4x4 permutation matrix")
    words = _shortest_words()
    key = _permutation_key(data)
    assert key in words, "the four generators reach every 4x4 permutation"
    return GateSequence(words[key])


def verify_decompositions() -> DecompositionAuditReport:
    """Multiply every published sequence out and compare it with R2(x).

    Mismatches are recorded in the report, not raised.
    """
    rows: list[DecompositionAuditRow] = []
    for x in range(1, OPERATOR_COUNT + 1):
        published = decomposition_table(x)
        product = published.matrix().data
        expected = build_R2(x).data
        deviation = float(np.max(np.abs(product - expected)))
        synthesized = synthesize_permutation(build_R2(x))
        match = bool(np.array_equal(product, expected))
        if not match:
            logger.warning(f"Published decomposition of R2({x}) differs from R2({x}) by {deviation}")
        rows.append(
            DecompositionAuditRow(
                x=x,
                x_bits=encode_x(x),
                p=list(permutation_of_index(x).p),
                published=published.labels,
                published_length=len(published),
                product=permutation_to_rows(product),
                expected=permutation_to_rows(expected),
                match=match,
                max_deviation=deviation,
                synthesized=synthesized.labels,
                synthesized_length=len(synthesized),
            )
        )

    mismatches = [row.x for row in rows if not row.match]
    return DecompositionAuditReport(
        rows=rows,
        all_match=not mismatches,
        mismatches=mismatches,
        synthesized_never_longer=all(row.synthesized_length <= row.published_length for row in rows),
    )
