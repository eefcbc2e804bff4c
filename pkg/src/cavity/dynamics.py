"""Dispersive two-atom, single-atom and resonant Jaynes-Cummings evolution.

The dispersive stage lives on the cavity-eliminated space of two three-level atoms,

    H = lambda [ |e1><e1| + |e2><e2| + |e1 g2><g1 e2| + |g1 e2><e1 g2| ],

so |i> never couples. The resonant stage keeps the cavity mode explicitly, truncated
at n = N photons:

    H_I = g [ a^dagger S^- + a S^+ ].
"""

from collections.abc import Sequence
from functools import lru_cache

import numpy as np

from src.cavity.params import PhysicalParams
from src.cavity.pulses import ATOM_LEVELS, AtomLevel
from src.core.errors import DimensionMismatchError, InvalidIndexError, InvalidParameterError, TruncationOverflowError
from src.core.logging import get_logger
from src.linalg.expm import expm_hermitian
from src.linalg.products import apply_operator
from src.linalg.types import HermitianMatrix, StateVector, UnitaryMatrix

logger = get_logger(__name__)

# Input amplitude on |e, N> above this would need photon number N + 1
TRUNCATION_ATOL = 1e-10


def _check_duration(duration: float) -> None:
    if duration < 0:
        raise InvalidParameterError(f"duration must be non-negative, got {duration}")


def _projector(level: AtomLevel) -> np.ndarray:
    p = np.zeros((ATOM_LEVELS, ATOM_LEVELS), dtype=np.complex128)
    p[level, level] = 1.0
    return p


@lru_cache(maxsize=1)
def dispersive_hamiltonian() -> HermitianMatrix:
    """The two-atom dispersive Hamiltonian in units of lambda (9x9)."""
    identity = np.eye(ATOM_LEVELS)
    excited = _projector(AtomLevel.e)
    h = np.kron(excited, identity) + np.kron(identity, excited)

    eg = np.ravel_multi_index((AtomLevel.e, AtomLevel.g), (ATOM_LEVELS, ATOM_LEVELS))
    ge = np.ravel_multi_index((AtomLevel.g, AtomLevel.e), (ATOM_LEVELS, ATOM_LEVELS))
    h[eg, ge] += 1.0
    h[ge, eg] += 1.0
    return HermitianMatrix(h)


@lru_cache(maxsize=64)
def dispersive_propagator(lam: float, duration: float) -> UnitaryMatrix:
    """exp(-i H t) for both atoms in the cavity."""
    _check_duration(duration)
    return expm_hermitian(dispersive_hamiltonian().scaled(lam), duration)


@lru_cache(maxsize=64)
def solo_propagator(lam: float, duration: float) -> UnitaryMatrix:
    """exp(-i lambda t |e><e|) for a single atom alone in the cavity."""
    _check_duration(duration)
    return expm_hermitian(HermitianMatrix(_projector(AtomLevel.e) * lam), duration)


def _check_atoms(state: StateVector, atoms: Sequence[int]) -> None:
    for atom in atoms:
        if not 0 <= atom < len(state.dims):
            raise InvalidIndexError(f"atom subsystem {atom} not in a {len(state.dims)}-subsystem state")
        if state.dims[atom] != ATOM_LEVELS:
            raise DimensionMismatchError(f"subsystem {atom} has {state.dims[atom]} levels, expected {ATOM_LEVELS}")


def dispersive_evolve(
    state: StateVector, params: PhysicalParams, duration: float, atoms: tuple[int, int] = (0, 1)
) -> StateVector:
    """Evolve the two three-level atoms ``atoms`` (atom 1, atom 2) inside the cavity."""
    _check_duration(duration)
    _check_atoms(state, atoms)
    return apply_operator(state, dispersive_propagator(params.lam, duration), list(atoms))


def solo_dispersive_evolve(
    state: StateVector, params: PhysicalParams, duration: float, atom: int, atoms: tuple[int, int] = (0, 1)
) -> StateVector:
    """Evolve atom 1 or atom 2 of the pair ``atoms`` while it is alone in the cavity."""
    _check_duration(duration)
    if atom not in (1, 2):
        raise InvalidIndexError(f"atom must be 1 or 2, got {atom}")
    subsystem = atoms[atom - 1]
    _check_atoms(state, [subsystem])
    return apply_operator(state, solo_propagator(params.lam, duration), [subsystem])


def _lowering(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=np.float64)), k=1).astype(np.complex128)


@lru_cache(maxsize=16)
def jc_hamiltonian(g: float, fock_cap: int) -> HermitianMatrix:
    """Atom (g, e) times Fock(0..fock_cap), atom most significant."""
    if fock_cap < 1:
        raise InvalidParameterError(f"Fock truncation must be at least 1, got {fock_cap}")
    a = _lowering(fock_cap + 1)
    s_minus = np.array([[0, 1], [0, 0]], dtype=np.complex128)  # |g><e|
    h = np.kron(s_minus, a.conj().T) + np.kron(s_minus.conj().T, a)
    return HermitianMatrix(g * h)


@lru_cache(maxsize=64)
def jc_propagator(g: float, duration: float, fock_cap: int = 1) -> UnitaryMatrix:
    _check_duration(duration)
    return expm_hermitian(jc_hamiltonian(g, fock_cap), duration)


def jc_evolve(state: StateVector, params: PhysicalParams, duration: float) -> StateVector:
    """Resonant evolution of a two-level atom and the cavity mode; ``state.dims`` = (2, N + 1)."""
    _check_duration(duration)
    if len(state.dims) != 2 or state.dims[0] != 2 or state.dims[1] < 2:
        raise DimensionMismatchError(f"expected (atom 2, Fock N+1 >= 2) dimensions, got {state.dims}")
    fock_cap = state.dims[1] - 1
    edge = abs(state.tensor()[AtomLevel.e, fock_cap])
    if edge > TRUNCATION_ATOL:
        raise TruncationOverflowError(
            f"amplitude {edge:.3e} on |e, {fock_cap}> would populate n = {fock_cap + 1} beyond the Fock cap"
        )
    logger.debug(f"JC evolution for g t = {params.g * duration:.4f} with Fock cap {fock_cap}")
    return jc_propagator(params.g, duration, fock_cap).apply(state)
