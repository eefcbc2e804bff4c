"""Unit tests for the dense linear-algebra layer."""

from unittest.mock import patch

import numpy as np
import pytest
import scipy.linalg as la

from src.core.errors import (
    DimensionMismatchError,
    NoAlignmentError,
    NotHermitianError,
    NotNormalizedError,
    NotUnitaryError,
    NumericalBreakdownError,
    SpaceTooLargeError,
)
from src.linalg import (
    HermitianMatrix,
    StateVector,
    UnitaryMatrix,
    apply_operator,
    auxiliary_population,
    embed_qubit_operator,
    expm_hermitian,
    extract_subsystems,
    fidelity,
    global_phase_align,
    kron,
    kron_all,
    lift_subsystem,
    operator_residual,
    random_state,
)
from src.protocol.permutations import build_R2

I2 = UnitaryMatrix(np.eye(2))
X = UnitaryMatrix([[0, 1], [1, 0]])
Y = UnitaryMatrix([[0, -1j], [1j, 0]])
Z = UnitaryMatrix([[1, 0], [0, -1]])
CNOT = UnitaryMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def random_unitary(rng: np.random.Generator, dim: int) -> UnitaryMatrix:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return UnitaryMatrix(q * (np.diag(r) / np.abs(np.diag(r))))


def random_hermitian(rng: np.random.Generator, dim: int) -> HermitianMatrix:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianMatrix((z + z.conj().T) / 2)


@pytest.mark.unit
class TestStateVector:
    """Test state construction and validation."""

    def test_basis_state_is_big_endian(self):
        """Test that the left-most subsystem is the most significant index."""
        state = StateVector.basis((2, 2), (1, 0))
        assert state.amps[2] == 1.0

    def test_rejects_unnormalized(self):
        """Test that a state of norm 2 is refused."""
        with pytest.raises(NotNormalizedError):
            StateVector((2,), np.array([2.0, 0.0]))

    def test_rejects_non_finite(self):
        """Test that NaN amplitudes are refused."""
        with pytest.raises(NotNormalizedError):
            StateVector((2,), np.array([np.nan, 0.0]))

    def test_rejects_wrong_length(self):
        """Test that amplitudes must fill the product of the dimensions."""
        with pytest.raises(DimensionMismatchError):
            StateVector((2, 2), np.array([1.0, 0.0]))

    def test_normalize_option(self):
        """Test that from_amplitudes can rescale to unit norm."""
        state = StateVector.from_amplitudes([3.0, 4.0], normalize=True)
        np.testing.assert_allclose(state.amps, [0.6, 0.8])
        assert state.dims == (2,)

    def test_amplitudes_are_read_only(self):
        """Test that states cannot be mutated after construction."""
        state = StateVector.basis((2,), (0,))
        with pytest.raises(ValueError):
            state.amps[0] = 0.0


@pytest.mark.unit
class TestMatrices:
    """Test unitary and Hermitian matrix validation."""

    def test_checked_rejects_non_unitary(self):
        """Test that a non-unitary gate constant is refused."""
        with pytest.raises(NotUnitaryError):
            UnitaryMatrix.checked([[1, 1], [0, 1]])

    def test_hermitian_rejects_asymmetric(self):
        """Test that H != H^dagger is refused."""
        with pytest.raises(NotHermitianError):
            HermitianMatrix([[0, 1], [0, 0]])

    def test_non_square_rejected(self):
        """Test that operators must be square."""
        with pytest.raises(DimensionMismatchError):
            UnitaryMatrix(np.zeros((2, 3)))

    def test_unitary_application_preserves_norm(self, rng):
        """Test norm preservation over many random states and gates."""
        for _ in range(1000):
            u = random_unitary(rng, 4)
            psi = random_state(rng, (2, 2))
            assert abs(np.linalg.norm(u.apply(psi).amps) - 1.0) < 1e-12


@pytest.mark.unit
class TestKron:
    """Test tensor products."""

    def test_identity(self):
        """Test I2 x I2 = I4."""
        np.testing.assert_array_equal(kron(I2, I2).data, np.eye(4))

    def test_flip_on_first_factor(self):
        """Test (X x I)|00> = |10>."""
        out = kron(X, I2).apply(StateVector.basis((2, 2), (0, 0)))
        np.testing.assert_array_equal(out.amps, StateVector.basis((2, 2), (1, 0)).amps)

    def test_double_flip_is_r2_24(self):
        """Test X x X equals the 24th recovery permutation."""
        np.testing.assert_array_equal(kron(X, X).data, build_R2(24).data)

    def test_state_dims_concatenate(self):
        """Test that state tensor products concatenate the dimension lists."""
        a = StateVector.basis((3,), (2,))
        b = StateVector.basis((2,), (1,))
        product = kron(a, b)
        assert product.dims == (3, 2)
        assert product.amps[5] == 1.0

    def test_associativity_is_exact(self):
        """Test (A x B) x C = A x (B x C) bit for bit for Pauli and CNOT factors."""
        for a, b, c in [(X, Y, Z), (CNOT, Y, X), (Z, CNOT, Y)]:
            left = kron(kron(a, b), c).data
            right = kron(a, kron(b, c)).data
            np.testing.assert_array_equal(left, right)

    def test_kron_all(self):
        """Test left-to-right product of several factors."""
        np.testing.assert_array_equal(kron_all([X, I2, Z]).data, kron(kron(X, I2), Z).data)

    def test_space_too_large(self, small_space_settings):
        """Test that products beyond the configured maximum are refused."""
        with pytest.raises(SpaceTooLargeError, match="space too large"):
            kron(kron(CNOT, CNOT), X)
        with pytest.raises(SpaceTooLargeError):
            kron(random_state(np.random.default_rng(0), (2, 2, 2, 2)), StateVector.basis((2,), (0,)))

    def test_mixed_operands_rejected(self):
        """Test that a state and an operator cannot be combined."""
        with pytest.raises(DimensionMismatchError):
            kron(X, StateVector.basis((2,), (0,)))


@pytest.mark.unit
class TestSubsystems:
    """Test embedding operators and states on subsystems."""

    def test_apply_operator_matches_full_kron(self, rng):
        """Test that contracting on one subsystem equals I x U x I on the full space."""
        psi = random_state(rng, (2, 2, 2))
        u = random_unitary(rng, 2)
        expected = kron_all([I2, u, I2]).apply(psi)
        np.testing.assert_allclose(apply_operator(psi, u, [1]).amps, expected.amps, atol=1e-14)

    def test_apply_operator_respects_target_order(self):
        """Test that CNOT on subsystems (2, 0) uses subsystem 2 as control."""
        psi = StateVector.basis((2, 2, 2), (0, 0, 1))
        out = apply_operator(psi, CNOT, [2, 0])
        np.testing.assert_array_equal(out.amps, StateVector.basis((2, 2, 2), (1, 0, 1)).amps)

    def test_apply_operator_dimension_mismatch(self):
        """Test that a 4x4 operator cannot act on a single qubit."""
        with pytest.raises(DimensionMismatchError):
            apply_operator(StateVector.basis((2, 2), (0, 0)), CNOT, [0])

    def test_embedded_qubit_operator_leaves_auxiliary_level(self):
        """Test that X on a three-level atom swaps g and e and fixes i."""
        op = embed_qubit_operator(X.data, [3])
        np.testing.assert_array_equal(op.data, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])

    def test_lift_subsystem_pads_with_zeros(self):
        """Test lifting a qubit to three levels keeps its amplitudes."""
        psi = StateVector.from_amplitudes([0.6, 0.8])
        lifted = lift_subsystem(psi, 0)
        assert lifted.dims == (3,)
        np.testing.assert_allclose(lifted.amps, [0.6, 0.8, 0.0])
        assert auxiliary_population(lifted) == 0.0

    def test_extract_subsystems_renormalizes(self):
        """Test the conditional state of the second qubit given the first."""
        bell = StateVector.from_amplitudes([1, 0, 0, 1], normalize=True)
        conditional = extract_subsystems(bell, {0: 1})
        np.testing.assert_allclose(conditional.amps, [0, 1])


@pytest.mark.unit
class TestExpm:
    """Test exponentials of Hermitian generators."""

    def test_zero_time_is_identity(self, rng):
        """Test exp(-i H 0) = I."""
        np.testing.assert_array_equal(expm_hermitian(random_hermitian(rng, 5), 0.0).data, np.eye(5))

    def test_single_excited_level(self):
        """Test lambda |e><e| for t = pi/lambda gives -1 on |e>."""
        lam = 2.3e3
        u = expm_hermitian(HermitianMatrix(np.diag([0.0, lam])), np.pi / lam)
        np.testing.assert_allclose(u.data, np.diag([1.0, -1.0]), atol=1e-12)

    def test_pauli_rotation(self):
        """Test exp(-i X pi/2) = -i X."""
        u = expm_hermitian(HermitianMatrix(X.data), np.pi / 2)
        np.testing.assert_allclose(u.data, -1j * X.data, atol=1e-15)

    def test_result_is_unitary(self, rng):
        """Test unitarity of exponentials of random generators."""
        for dim in (2, 9, 27):
            assert expm_hermitian(random_hermitian(rng, dim), 1.7).unitarity_deviation() < 1e-10

    def test_group_property(self, rng):
        """Test U(t1) U(t2) = U(t1 + t2)."""
        h = random_hermitian(rng, 6)
        combined = expm_hermitian(h, 0.4) @ expm_hermitian(h, 1.1)
        np.testing.assert_allclose(combined.data, expm_hermitian(h, 1.5).data, atol=1e-10)

    def test_eigensolver_failure(self, rng):
        """Test that a failed eigendecomposition surfaces as a numerical breakdown."""
        h = random_hermitian(rng, 4)
        with patch("src.linalg.expm.la.eigh", side_effect=la.LinAlgError("eigenvalues did not converge")):
            with pytest.raises(NumericalBreakdownError) as exc_info:
                expm_hermitian(h, 1.0)
        assert "did not converge" in str(exc_info.value)
        assert exc_info.value.condition_number == pytest.approx(np.linalg.cond(h.data))


@pytest.mark.unit
class TestMetrics:
    """Test fidelity and phase alignment."""

    def test_fidelity_self(self, rng):
        """Test F(psi, psi) = 1."""
        psi = random_state(rng, (2, 2))
        assert fidelity(psi, psi) == pytest.approx(1.0, abs=1e-12)

    def test_fidelity_global_phase(self, rng):
        """Test F(psi, e^{i theta} psi) = 1."""
        psi = random_state(rng, (2, 2))
        rotated = StateVector(psi.dims, np.exp(0.7j) * psi.amps)
        assert fidelity(psi, rotated) == pytest.approx(1.0, abs=1e-12)

    def test_fidelity_orthogonal(self):
        """Test F(|0>, |1>) = 0."""
        assert fidelity(StateVector.basis((2,), (0,)), StateVector.basis((2,), (1,))) == 0.0

    def test_fidelity_symmetric_and_rotation_invariant(self, rng):
        """Test symmetry and invariance under a common unitary."""
        a, b = random_state(rng, (2, 2)), random_state(rng, (2, 2))
        u = random_unitary(rng, 4)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-15)
        assert fidelity(u.apply(a), u.apply(b)) == pytest.approx(fidelity(a, b), abs=1e-12)

    def test_fidelity_dimension_mismatch(self):
        """Test that states on different spaces cannot be compared."""
        with pytest.raises(DimensionMismatchError):
            fidelity(StateVector.basis((2,), (0,)), StateVector.basis((3,), (0,)))

    def test_align_identical(self, rng):
        """Test (psi, psi) aligns with phase 1 and zero residual."""
        psi = random_state(rng, (2, 2))
        phase, residual = global_phase_align(psi, psi)
        assert phase == pytest.approx(1.0)
        assert residual < 1e-15

    def test_align_negated(self, rng):
        """Test (psi, -psi) aligns with phase -1."""
        psi = random_state(rng, (2, 2))
        phase, residual = global_phase_align(psi, StateVector(psi.dims, -psi.amps))
        assert phase == pytest.approx(-1.0)
        assert residual < 1e-15

    def test_align_perturbed(self, rng):
        """Test the residual against a direct norm evaluation."""
        psi, phi = random_state(rng, (2, 2)), random_state(rng, (2, 2))
        perturbed = StateVector.from_amplitudes(psi.amps + 0.01 * phi.amps, psi.dims, normalize=True)
        phase, residual = global_phase_align(psi, perturbed)
        assert abs(phase) == pytest.approx(1.0)
        assert residual == pytest.approx(np.linalg.norm(psi.amps - phase * perturbed.amps), abs=1e-15)
        assert 0 < residual < 0.02

    def test_align_orthogonal(self):
        """Test that orthogonal states have no alignment."""
        with pytest.raises(NoAlignmentError, match="no alignment"):
            global_phase_align(StateVector.basis((2,), (0,)), StateVector.basis((2,), (1,)))

    def test_operator_residual(self):
        """Test that operators equal up to a phase have zero residual."""
        phase, residual = operator_residual(UnitaryMatrix(1j * CNOT.data), CNOT)
        assert phase == pytest.approx(1j)
        assert residual < 1e-15
