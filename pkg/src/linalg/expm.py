"""Unitary evolution operators from Hermitian generators."""

import numpy as np
import scipy.linalg as la

from src.core.errors import NumericalBreakdownError
from src.core.logging import get_logger
from src.linalg.types import HermitianMatrix, UnitaryMatrix

logger = get_logger(__name__)


def expm_hermitian(h: HermitianMatrix, t: float) -> UnitaryMatrix:
    """Return exp(-i h t) through the spectral decomposition h = V diag(w) V^dagger.

    ``h`` is an angular frequency (rad/s) and ``t`` a time (s), or both dimensionless.
    The result is unitary up to the orthonormality of the eigenvectors.
    """
    if t == 0:
        return UnitaryMatrix.identity(h.dim)
    try:
        eigenvalues, eigenvectors = la.eigh(h.data)
    except (la.LinAlgError, ValueError) as exc:
        condition = float(np.linalg.cond(h.data))
        logger.error(f"Eigendecomposition of a {h.dim}x{h.dim} Hamiltonian failed: {exc}")
        raise NumericalBreakdownError(str(exc), condition) from exc

    phases = np.exp(-1j * eigenvalues * t)
    return UnitaryMatrix((eigenvectors * phases) @ eigenvectors.conj().T)
