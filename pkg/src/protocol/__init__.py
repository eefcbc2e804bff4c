"""Remote implementation of the T2(x, t) operator family."""

from .decompositions import (
    GENERATOR_ORDER,
    PUBLISHED_DECOMPOSITIONS,
    GateSequence,
    Generator,
    decomposition_table,
    generator_matrix,
    sequence_matrix,
    synthesize_permutation,
    verify_decompositions,
)
from .permutations import (
    OPERATOR_COUNT,
    DiagonalPhases,
    PermutationSpec,
    build_R2,
    build_T2,
    decode_x,
    encode_x,
    is_monomial,
    permutation_of_index,
)
from .remote import ProtocolTranscript, apply_recovery, bell_channel, enumerate_protocol_branches, run_protocol

__all__ = [
    "GENERATOR_ORDER",
    "OPERATOR_COUNT",
    "PUBLISHED_DECOMPOSITIONS",
    "DiagonalPhases",
    "GateSequence",
    "Generator",
    "PermutationSpec",
    "ProtocolTranscript",
    "apply_recovery",
    "bell_channel",
    "build_R2",
    "build_T2",
    "decode_x",
    "decomposition_table",
    "encode_x",
    "enumerate_protocol_branches",
    "generator_matrix",
    "is_monomial",
    "permutation_of_index",
    "run_protocol",
    "sequence_matrix",
    "synthesize_permutation",
    "verify_decompositions",
]
