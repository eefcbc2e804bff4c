"""Unit tests for the T2(x, t) family, its decompositions and the remote protocol."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.errors import (
    DimensionMismatchError,
    InvalidIndexError,
    NonUnimodularPhasesError,
    NotAPermutationError,
)
from src.linalg import StateVector, UnitaryMatrix, kron, random_state
from src.protocol import (
    OPERATOR_COUNT,
    DiagonalPhases,
    Generator,
    PermutationSpec,
    apply_recovery,
    build_R2,
    build_T2,
    decode_x,
    decomposition_table,
    encode_x,
    enumerate_protocol_branches,
    generator_matrix,
    is_monomial,
    permutation_of_index,
    run_protocol,
    synthesize_permutation,
    verify_decompositions,
)

CNOT_12 = Generator.CNOT_12
CNOT_21 = Generator.CNOT_21


@pytest.mark.unit
class TestPermutations:
    """Test the indexing of the 24 permutations."""

    def test_first_is_identity_order(self):
        """Test p(1) = (00, 01, 10, 11)."""
        assert permutation_of_index(1).p == ("00", "01", "10", "11")

    def test_canonical_index(self):
        """Test p(10) = (01, 10, 11, 00)."""
        spec = permutation_of_index(10)
        assert spec.p == ("01", "10", "11", "00")
        assert spec.indices == (1, 2, 3, 0)
        assert spec.bits == "01010"

    def test_last_is_reversed(self):
        """Test p(24) = (11, 10, 01, 00)."""
        assert permutation_of_index(24).p == ("11", "10", "01", "00")

    def test_all_distinct(self):
        """Test that the 24 indices give 24 different orderings."""
        assert len({permutation_of_index(x).p for x in range(1, OPERATOR_COUNT + 1)}) == 24

    @pytest.mark.parametrize("x", [0, 25, -3])
    def test_out_of_range(self, x):
        """Test that indices outside 1..24 are refused."""
        with pytest.raises(InvalidIndexError):
            permutation_of_index(x)

    def test_spec_rejects_wrong_rank(self):
        """Test that x and p must agree."""
        with pytest.raises(ValidationError):
            PermutationSpec(x=2, p=("00", "01", "10", "11"))

    def test_encode_decode(self):
        """Test the 5-bit transmission format."""
        assert encode_x(10) == "01010"
        assert encode_x(24) == "11000"
        assert decode_x("00001") == 1
        for x in range(1, OPERATOR_COUNT + 1):
            assert decode_x(encode_x(x)) == x

    @pytest.mark.parametrize("bits", ["00000", "11001", "0101", "0101a"])
    def test_decode_rejects(self, bits):
        """Test that bit strings outside the 24 operators are refused."""
        with pytest.raises(InvalidIndexError):
            decode_x(bits)


@pytest.mark.unit
class TestOperators:
    """Test R2(x) and T2(x, t)."""

    def test_r2_identity(self):
        """Test R2(1) = I4."""
        np.testing.assert_array_equal(build_R2(1).data, np.eye(4))

    def test_r2_is_cnot(self):
        """Test R2(2) is CNOT with Y1 as control."""
        np.testing.assert_array_equal(build_R2(2).data, generator_matrix(CNOT_12).data)

    def test_r2_is_reversed_cnot(self):
        """Test R2(6) is CNOT with Y2 as control."""
        np.testing.assert_array_equal(build_R2(6).data, generator_matrix(CNOT_21).data)

    def test_r2_maps_p_m_to_m(self):
        """Test R2(x)|p_m(x)> = |m> for every x and m."""
        for x in range(1, OPERATOR_COUNT + 1):
            r2 = build_R2(x)
            for m, p_m in enumerate(permutation_of_index(x).indices):
                assert r2.data[m, p_m] == 1.0

    def test_t2_canonical_entries(self):
        """Test the four non-zero entries of T2(10, t)."""
        t = DiagonalPhases.from_array(np.exp(1j * np.array([0.1, 0.2, 0.3, 0.4])))
        t2 = build_T2(10, t).data
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 1], expected[1, 2], expected[2, 3], expected[3, 0] = t.as_array()
        np.testing.assert_array_equal(t2, expected)

    def test_t2_is_unitary_monomial(self, phases):
        """Test that every T2(x, t) is unitary with one entry per row and column."""
        for x in range(1, OPERATOR_COUNT + 1):
            t2 = build_T2(x, phases)
            assert t2.unitarity_deviation() < 1e-12
            assert is_monomial(t2.data)

    def test_non_unimodular_phases(self):
        """Test that |t_m| != 1 is refused."""
        with pytest.raises(NonUnimodularPhasesError):
            DiagonalPhases(1, 1, 2, 1)

    def test_uniform_phase(self):
        """Test that a common phase gives e^{i phase} R2."""
        t2 = build_T2(7, DiagonalPhases.uniform(np.pi / 3))
        np.testing.assert_allclose(t2.data, np.exp(1j * np.pi / 3) * build_R2(7).data, atol=1e-15)


@pytest.mark.unit
class TestDecompositions:
    """Test the published gate sequences and the shortest-word search."""

    def test_table_entries(self):
        """Test sample rows of the published table."""
        assert decomposition_table(1).generators == ()
        assert decomposition_table(11).labels == ["CNOT(Y2,Y1)", "XI", "CNOT(Y1,Y2)", "CNOT(Y2,Y1)"]
        assert decomposition_table(24).labels == ["XI", "IX"]

    def test_application_order_is_reversed(self):
        """Test that the right-most generator acts first."""
        sequence = decomposition_table(11)
        assert sequence.application_order() == tuple(reversed(sequence.generators))

    def test_every_published_sequence_matches(self):
        """Test that each written product equals R2(x) exactly."""
        for x in range(1, OPERATOR_COUNT + 1):
            np.testing.assert_array_equal(decomposition_table(x).matrix().data, build_R2(x).data)

    def test_audit_report(self):
        """Test the audit over all 24 operators."""
        report = verify_decompositions()
        assert len(report.rows) == 24
        assert report.all_match
        assert report.mismatches == []
        assert report.synthesized_never_longer
        assert report.rows[9].x_bits == "01010"
        assert report.rows[9].p == ["01", "10", "11", "00"]

    def test_synthesis_reproduces_target(self):
        """Test that synthesized sequences multiply out to R2(x)."""
        for x in range(1, OPERATOR_COUNT + 1):
            sequence = synthesize_permutation(build_R2(x))
            np.testing.assert_array_equal(sequence.matrix().data, build_R2(x).data)
            assert len(sequence) <= len(decomposition_table(x))

    def test_synthesis_of_swap(self):
        """Test that a swap needs three CNOTs."""
        assert len(synthesize_permutation(build_R2(3))) == 3

    def test_synthesis_rejects_non_permutation(self):
        """Test that H x H is refused."""
        h = UnitaryMatrix(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
        with pytest.raises(NotAPermutationError):
            synthesize_permutation(kron(h, h))


@pytest.mark.unit
class TestRecovery:
    """Test Bob's recovery on the data qubits alone."""

    def test_recovery_without_corrections_is_r2(self):
        """Test that the recovery with a = 00 applies R2(x) to basis states."""
        for x in range(1, OPERATOR_COUNT + 1):
            for k in range(4):
                state = StateVector.basis((2, 2), divmod(k, 2))
                out = apply_recovery(state, 0, 0, x)
                np.testing.assert_array_equal(out.amps, build_R2(x).data[:, k])

    def test_phase_corrections(self):
        """Test that a = 11 adds (-1)^(m1 + m2) after R2."""
        state = StateVector.from_amplitudes([0.5, 0.5, 0.5, 0.5])
        out = apply_recovery(state, 1, 1, 1)
        np.testing.assert_allclose(out.amps, [0.5, -0.5, -0.5, 0.5], atol=1e-15)

    def test_invalid_bits(self):
        """Test that measurement bits must be 0 or 1."""
        with pytest.raises(InvalidIndexError):
            apply_recovery(StateVector.basis((2, 2), (0, 0)), 2, 0, 1)


@pytest.mark.unit
class TestRemoteProtocol:
    """Test full protocol runs."""

    def test_identity_operator(self, xi):
        """Test that x = 1 with unit phases returns xi."""
        transcript = run_protocol(1, DiagonalPhases.ones(), xi, forced_bits=(0, 0, 0, 0))
        np.testing.assert_allclose(transcript.final_state.amps, xi.amps, atol=1e-12)
        assert transcript.residual < 1e-12

    def test_canonical_branch(self, xi, phases):
        """Test x = 10 along b = 00, a = 11 before and after recovery."""
        transcript = run_protocol(10, phases, xi, forced_bits=(0, 0, 1, 1))
        y, t = xi.amps, phases.as_array()
        # f = p^{-1}: f(00) = 11, f(01) = 00, f(10) = 01, f(11) = 10
        expected_pre = np.array([y[0] * t[3], y[1] * t[0], -y[2] * t[1], -y[3] * t[2]])
        np.testing.assert_allclose(transcript.pre_recovery_state.amps, expected_pre, atol=1e-12)
        np.testing.assert_allclose(transcript.final_state.amps, build_T2(10, phases).apply(xi).amps, atol=1e-12)
        assert transcript.b_probability == pytest.approx(0.25)
        assert transcript.a_probability == pytest.approx(0.25)
        assert transcript.x_bits == "01010"

    def test_all_branches_all_operators(self, rng):
        """Test that every branch of every operator yields T2(x, t)|xi>."""
        for x in range(1, OPERATOR_COUNT + 1):
            t = DiagonalPhases.random(rng)
            xi = random_state(rng, (2, 2))
            transcripts = enumerate_protocol_branches(x, t, xi)
            assert [tr.bits for tr in transcripts] == [
                (b1, b2, a1, a2) for b1 in (0, 1) for b2 in (0, 1) for a1 in (0, 1) for a2 in (0, 1)
            ]
            for transcript in transcripts:
                assert transcript.residual < 1e-10
                assert transcript.b_probability == pytest.approx(0.25, abs=1e-12)
                assert transcript.a_probability == pytest.approx(0.25, abs=1e-12)

    def test_sampled_run_is_reproducible(self, xi, phases):
        """Test that equal seeds select equal branches."""
        first = run_protocol(5, phases, xi, seed=42)
        second = run_protocol(5, phases, xi, seed=42)
        assert first.bits == second.bits
        np.testing.assert_array_equal(first.final_state.amps, second.final_state.amps)
        assert first.residual < 1e-10

    def test_invalid_index(self, xi):
        """Test that x = 25 is refused."""
        with pytest.raises(InvalidIndexError):
            run_protocol(25, DiagonalPhases.ones(), xi, forced_bits=(0, 0, 0, 0))

    def test_wrong_data_dimensions(self):
        """Test that xi must live on two qubits."""
        with pytest.raises(DimensionMismatchError):
            run_protocol(1, DiagonalPhases.ones(), StateVector.basis((2,), (0,)), forced_bits=(0, 0, 0, 0))
