"""Dense complex linear algebra over small composite Hilbert spaces."""

from .expm import expm_hermitian
from .metrics import fidelity, global_phase_align, operator_residual
from .products import (
    apply_operator,
    auxiliary_population,
    embed_qubit_operator,
    embed_state,
    extract_subsystems,
    kron,
    kron_all,
    lift_subsystem,
    random_state,
)
from .types import HermitianMatrix, StateVector, UnitaryMatrix

__all__ = [
    "HermitianMatrix",
    "StateVector",
    "UnitaryMatrix",
    "apply_operator",
    "auxiliary_population",
    "embed_qubit_operator",
    "embed_state",
    "expm_hermitian",
    "extract_subsystems",
    "fidelity",
    "global_phase_align",
    "kron",
    "kron_all",
    "lift_subsystem",
    "operator_residual",
    "random_state",
]
