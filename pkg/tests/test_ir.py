import math

import numpy as np
import pytest

from qtransforms import ir
from qtransforms.simulate import extract_matrix, run

from oracles import circuit_matrix, kron_single, random_circuit


SQ2 = 1 / math.sqrt(2)


class TestConvention:
    def test_ket_10_is_index_2(self):
        assert ir.basis_index("10") == 2
        assert ir.basis_label(2, 2) == "10"

    def test_qubit_zero_is_least_significant(self):
        assert ir.qubit_value(0b100, 2) == 1
        assert ir.qubit_value(0b100, 0) == 0

    def test_h_on_qubit0_is_block_butterfly(self):
        # the worked two-qubit example: (1 (x) H) acts on (a00, a01) and (a10, a11)
        expected = SQ2 * np.array([[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]])
        M = extract_matrix(ir.Circuit(2, gates=(ir.h_gate(0),)))
        np.testing.assert_allclose(M, expected, atol=1e-15)

    def test_h_on_qubit1_matches_kron_oracle(self):
        M = extract_matrix(ir.Circuit(2, gates=(ir.h_gate(1),)))
        np.testing.assert_allclose(M, kron_single(ir.make_named_gate("H"), 1, 2), atol=1e-15)
        np.testing.assert_allclose(M, np.kron(ir.make_named_gate("H"), np.eye(2)), atol=1e-15)

    def test_bad_bitstring(self):
        with pytest.raises(ir.CircuitError):
            ir.basis_index("102")


class TestNamedGates:
    def test_x_is_not(self):
        X = ir.make_named_gate("X")
        np.testing.assert_array_equal(X @ [1, 0], [0, 1])

    def test_z_phase(self):
        np.testing.assert_array_equal(ir.make_named_gate("Z") @ [0, 1], [0, -1])

    def test_h_superposition(self):
        np.testing.assert_allclose(ir.make_named_gate("H") @ [1, 0], [SQ2, SQ2], atol=1e-16)

    def test_unknown_name(self):
        with pytest.raises(ir.CircuitError):
            ir.make_named_gate("Q")

    def test_non_unitary_rejected(self):
        with pytest.raises(ir.CircuitError, match="unitary"):
            ir.u_gate(0, [[1, 1], [0, 1]])

    def test_non_finite_rejected(self):
        with pytest.raises(ir.CircuitError):
            ir.as_unitary2([[np.nan, 0], [0, 1]])

    def test_phase_and_rotation(self):
        np.testing.assert_allclose(ir.phase_matrix(math.pi), np.diag([1, -1]), atol=1e-15)
        np.testing.assert_allclose(ir.rotation_matrix(math.pi / 2), [[0, -1], [1, 0]], atol=1e-15)


class TestGateValidation:
    def test_overlapping_conditions(self):
        with pytest.raises(ir.CircuitError, match="both"):
            ir.x_gate(0, ones=(1,), zeros=(1,))

    def test_condition_on_target(self):
        with pytest.raises(ir.CircuitError, match="overlap"):
            ir.x_gate(0, ones=(0,))

    def test_macro_condition_inside_range(self):
        with pytest.raises(ir.CircuitError):
            ir.TwosComplement(0, 2, ones=frozenset({1}))

    def test_bad_ranges(self):
        with pytest.raises(ir.CircuitError):
            ir.BitReversal(3, 1)
        with pytest.raises(ir.CircuitError):
            ir.RotateWires(0, 2, "up")
        with pytest.raises(ir.CircuitError):
            ir.WireSwap(1, 1)
        with pytest.raises(ir.CircuitError):
            ir.Transposition(0, 1, 2, 2)

    def test_with_conditions(self):
        g = ir.z_gate(0, zeros=(1,)).with_conditions(ones=(2,))
        assert g.ones == {2} and g.zeros == {1}

    def test_gates_are_hashable_and_immutable(self):
        g = ir.h_gate(0)
        assert hash(g) == hash(ir.h_gate(0))
        with pytest.raises(AttributeError):
            g.target = 1


class TestCircuit:
    def test_append_cnot(self):
        c = ir.append_gate(ir.Circuit(2), ir.cnot(1, 0))
        assert len(c) == 1
        M = extract_matrix(c)
        assert M[3, 2] == 1 and M[2, 3] == 1 and M[0, 0] == 1 and M[1, 1] == 1

    def test_append_out_of_range(self):
        with pytest.raises(ir.CircuitError, match="qubit 5"):
            ir.append_gate(ir.Circuit(3), ir.h_gate(5))

    def test_three_cnots_swap(self):
        c = ir.Circuit(2, gates=(ir.cnot(0, 1), ir.cnot(1, 0), ir.cnot(0, 1)))
        swap = np.eye(4)[[0, 2, 1, 3]]
        np.testing.assert_array_equal(extract_matrix(c), swap)

    def test_ancilla_conditions_allowed(self):
        c = ir.Circuit(1, 1, (ir.x_gate(0, ones=(1,)),))
        assert c.num_qubits == 2

    def test_elementary_flags(self):
        assert ir.Circuit(2, gates=(ir.h_gate(0), ir.phase_gate(0, 0.3, ones=(1,)))).is_elementary
        assert not ir.Circuit(2, gates=(ir.x_gate(0, zeros=(1,)),)).is_elementary
        assert not ir.Circuit(3, gates=(ir.x_gate(0, ones=(1, 2)),)).is_elementary
        assert not ir.Circuit(2, gates=(ir.WireSwap(0, 1),)).is_elementary
        c = ir.Circuit(2, gates=(ir.h_gate(0), ir.cnot(0, 1)))
        assert c.is_strict_elementary
        assert not ir.Circuit(2, gates=(ir.z_gate(0, ones=(1,)),)).is_strict_elementary

    def test_composition_order(self):
        rng = np.random.default_rng(3)
        c1, c2 = random_circuit(rng, 3, 8), random_circuit(rng, 3, 8)
        both = c1.extend(c2.gates)
        np.testing.assert_allclose(extract_matrix(both),
                                   extract_matrix(c2) @ extract_matrix(c1), atol=1e-12)

    def test_inverse(self):
        rng = np.random.default_rng(4)
        c = random_circuit(rng, 4, 20)
        M = circuit_matrix(c.extend(c.inverse().gates))
        np.testing.assert_allclose(M, np.eye(16), atol=1e-12)

    def test_random_circuits_unitary(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            M = extract_matrix(random_circuit(rng, 3, 10))
            np.testing.assert_allclose(M.conj().T @ M, np.eye(8), atol=1e-10)

    def test_norm_preserved(self):
        rng = np.random.default_rng(6)
        psi = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        psi /= np.linalg.norm(psi)
        out = run(random_circuit(rng, 4, 50), psi)
        assert abs(np.linalg.norm(out) - 1) < 1e-10
