import dataclasses

import numpy as np
import pytest

from lnqec import scheme as S
from lnqec import statevector as sv
from lnqec.codes import catalog_get
from lnqec.gf4 import F2Matrix, F2Vector, mat_vec_mul


@pytest.fixture(scope="module")
def mds4():
    return S.build_quaternary(catalog_get("mds4_2_q"))


@pytest.fixture(scope="module")
def hamming():
    return S.build_binary(catalog_get("hamming7_b"))


def test_zero_blocks_give_no_gates():
    s = S.build_binary(catalog_get("rep3_b"))
    empty = dataclasses.replace(s, H_Zp=F2Matrix.zeros(4, 1), H_Xp=F2Matrix.zeros(4, 1))
    assert sv.gates_for_Q(empty) == ()
    psi = sv.random_state(5, np.random.default_rng(0))
    assert np.allclose(sv.apply_q_reference(empty, psi).amps, psi.amps)


def test_single_entry_gives_one_cx():
    s = S.build_binary(catalog_get("rep3_b"))
    one = dataclasses.replace(s, H_Zp=F2Matrix.zeros(4, 1), H_Xp=F2Matrix.from_lists([[1], [0], [0], [0]]))
    assert sv.gates_for_Q(one) == (sv.Gate("CX", 0, 4),)


def test_gate_order_cz_layer_first(mds4):
    kinds = [g.kind for g in sv.gates_for_Q(mds4)]
    assert kinds == sorted(kinds, key=lambda k: k != "CZ")
    assert kinds.count("CZ") == sum(map(int.bit_count, mds4.H_Zp.rows))
    assert kinds.count("CX") == sum(map(int.bit_count, mds4.H_Xp.rows))


def test_apply_pauli_examples():
    zero = sv.StateVector.basis(1, 0)
    assert np.allclose(sv.apply_pauli(zero, F2Vector.zeros(1), F2Vector.zeros(1)).amps, zero.amps)
    one = sv.apply_pauli(zero, F2Vector.from_list([1]), F2Vector.zeros(1))
    assert np.allclose(one.amps, [0, 1])
    # Y-like product X Z on |1>: Z gives -|1>, then X gives -|0>
    y = sv.apply_pauli(sv.StateVector.basis(1, 1), F2Vector.from_list([1]), F2Vector.from_list([1]))
    assert np.allclose(y.amps, [-1, 0])


def test_pauli_order_only_changes_global_phase():
    plus = sv.apply_hadamards(sv.StateVector.basis(1, 0), [0])
    one = F2Vector.from_list([1])
    x_then_z = sv.apply_pauli(sv.apply_pauli(plus, one, F2Vector.zeros(1)), F2Vector.zeros(1), one)
    z_then_x = sv.apply_pauli(plus, one, one)
    assert np.allclose(x_then_z.amps, -z_then_x.amps)
    assert x_then_z.overlap(z_then_x) == pytest.approx(1.0)


def test_qubit_zero_is_most_significant():
    state = sv.apply_pauli(sv.StateVector.basis(3, 0), F2Vector.from_list([1, 0, 0]), F2Vector.zeros(3))
    assert np.argmax(abs(state.amps)) == 0b100


def test_hadamard_and_controlled_gates():
    plus = sv.apply_hadamards(sv.StateVector.basis(1, 0), [0])
    assert np.allclose(plus.amps, [2 ** -0.5, 2 ** -0.5])
    # CX from qubit 0 onto qubit 1: |10> -> |11>
    out = sv.apply_gates(sv.StateVector.basis(2, 0b10), [sv.Gate("CX", 0, 1)])
    assert np.allclose(out.amps, [0, 0, 0, 1])
    out = sv.apply_gates(sv.StateVector.basis(2, 0b11), [sv.Gate("CZ", 0, 1)])
    assert np.allclose(out.amps, [0, 0, 0, -1])


@pytest.mark.parametrize("name", ["mds4_2_q", "rep3_b", "hamming7_b"])
def test_gate_circuit_equals_definition_on_every_basis_state(name):
    s = S.build_scheme(catalog_get(name))
    gates = sv.gates_for_Q(s)
    for index in range(1 << s.n_phys):
        basis = sv.StateVector.basis(s.n_phys, index)
        got = sv.apply_gates(basis, gates)
        want = sv.apply_q_reference(s, basis)
        assert np.allclose(got.amps, want.amps, atol=1e-12), index


def test_norm_preserved(hamming):
    rng = np.random.default_rng(4)
    for _ in range(20):
        err = S.PauliErrorVector.from_bits(hamming, int(rng.integers(1 << 10)), int(rng.integers(1 << 10)))
        out = sv.simulate_channel(hamming, err, sv.random_state(4, rng))
        assert abs(out.norm() - 1) < 1e-12


def test_reversed_gate_order_breaks_ancilla_x_prediction(mds4):
    # Running CX before CZ realises Z^(mu H_Zp) X^(mu H_Xp), which differs from
    # the defining X^(mu H_Xp) Z^(mu H_Zp) by a mu-dependent sign.
    gates = sv.gates_for_Q(mds4)
    reversed_layers = tuple(g for g in gates if g.kind == "CX") + tuple(g for g in gates if g.kind == "CZ")
    rng = np.random.default_rng(12)
    psi = sv.random_state(2, rng)
    worst_default = worst_reversed = 1.0
    for q in range(mds4.n_anc):
        err = S.PauliErrorVector.single(mds4, q, "X")
        want = sv.predicted_state(mds4, err, psi)
        worst_default = min(worst_default, sv.simulate_channel(mds4, err, psi).overlap(want))
        worst_reversed = min(worst_reversed, sv.simulate_channel(mds4, err, psi, reversed_layers).overlap(want))
    assert worst_default > 1 - 1e-10
    assert worst_reversed < 0.99
    # without ancilla X errors the two orders agree
    err = S.PauliErrorVector.from_string(mds4, "ZIZIYX")
    a = sv.simulate_channel(mds4, err, psi)
    b = sv.simulate_channel(mds4, err, psi, reversed_layers)
    assert a.overlap(b) > 1 - 1e-10


def test_fresh_ancillas_measure_zero(mds4):
    psi = sv.random_state(2, np.random.default_rng(1))
    outcome, data = sv.measure_ancillas(mds4, sv.prepare(mds4, psi))
    assert outcome.is_zero()
    assert psi.overlap(data) > 1 - 1e-12
    dual = S.dualize(mds4)
    outcome, _ = sv.measure_ancillas(dual, sv.prepare(dual, psi))
    assert outcome.is_zero()


def test_measurement_rejects_entangled_ancillas(mds4):
    psi = sv.random_state(2, np.random.default_rng(1))
    mixed = sv.apply_hadamards(sv.prepare(mds4, psi), [0])
    with pytest.raises(sv.NonProductStateError):
        sv.measure_ancillas(mds4, mixed)


def test_outcome_is_trace_syndrome_without_ancilla_x(mds4):
    rng = np.random.default_rng(2)
    for _ in range(50):
        x = int(rng.integers(1 << 6)) & ~0b1111
        err = S.PauliErrorVector.from_bits(mds4, x, int(rng.integers(1 << 6)))
        state = sv.simulate_channel(mds4, err, sv.random_state(2, rng))
        outcome, _ = sv.measure_ancilla_x(state, mds4)
        assert outcome == S.trace_syndrome(mds4, S.combined_error(err))


def test_outcome_with_ancilla_x_matches_closed_form(hamming):
    rng = np.random.default_rng(3)
    for _ in range(50):
        err = S.PauliErrorVector.from_bits(hamming, int(rng.integers(1, 1 << 10)), int(rng.integers(1 << 10)))
        state = sv.simulate_channel(hamming, err, sv.random_state(4, rng))
        outcome, _ = sv.measure_ancillas(hamming, state)
        x_shift = hamming.H_Xp.left_mul(err.e_X_l)
        expected = S.trace_syndrome(hamming, S.combined_error(err)) + mat_vec_mul(hamming.H_Zp, x_shift)
        assert outcome == expected


# Frozen from exhaustive search of the statevector oracle over all 4^4 data
# Paulis: one X on each hamming7_b ancilla -> (outcome, residual X, residual Z).
HAMMING_ANCILLA_X = [
    ("000000", "0000", "1101"),
    ("000000", "0000", "1011"),
    ("000000", "0000", "0111"),
    ("100000", "1101", "0000"),
    ("010000", "1011", "0000"),
    ("001000", "0111", "0000"),
]


def _bits(s):
    return F2Vector.from_list(int(c) for c in s)


@pytest.mark.parametrize("qubit, expected", list(enumerate(HAMMING_ANCILLA_X)))
def test_hamming_ancilla_x_by_simulation(hamming, qubit, expected):
    outcome, rx, rz = (_bits(v) for v in expected)
    psi = sv.random_state(4, np.random.default_rng(qubit))
    state = sv.simulate_channel(hamming, S.PauliErrorVector.single(hamming, qubit, "X"), psi)
    got, data = sv.measure_ancillas(hamming, state)
    assert got == outcome
    assert sv.apply_pauli(psi, rx, rz).overlap(data) > 1 - 1e-10


def test_propagation_zero_error(mds4):
    psi = sv.random_state(2, np.random.default_rng(0))
    assert sv.verify_propagation(mds4, S.PauliErrorVector.zero(mds4), psi)


@pytest.mark.parametrize("dual", [False, True])
def test_propagation_all_single_qubit_errors_mds4(mds4, dual):
    s = S.dualize(mds4) if dual else mds4
    rng = np.random.default_rng(6)
    for q in range(s.n_phys):
        for p in "XYZ":
            err = S.PauliErrorVector.single(s, q, p)
            for _ in range(20):
                assert sv.verify_propagation(s, err, sv.random_state(2, rng)), (q, p)


def test_propagation_random_hamming(hamming):
    rng = np.random.default_rng(7)
    for _ in range(200):
        err = S.PauliErrorVector.from_bits(hamming, int(rng.integers(1 << 10)), int(rng.integers(1 << 10)))
        assert sv.verify_propagation(hamming, err, sv.random_state(4, rng)), str(err)


def test_end_to_end_zero_error(mds4):
    table = S.build_syndrome_table(mds4)
    psi = sv.random_state(2, np.random.default_rng(0))
    assert sv.end_to_end(mds4, table, S.PauliErrorVector.zero(mds4), psi) == pytest.approx(1, abs=1e-12)


def test_qubit_cap(hamming):
    psi = sv.random_state(4, np.random.default_rng(0))
    with pytest.raises(sv.QubitCapError):
        sv.propagation_fidelity(hamming, S.PauliErrorVector.zero(hamming), psi, cap=8)
    with pytest.raises(sv.QubitCapError):
        sv.gates_for_Q(hamming, cap=9)


def test_state_validation():
    with pytest.raises(ValueError):
        sv.StateVector.from_amplitudes([1, 0, 0])
    with pytest.raises(ValueError):
        sv.prepare(S.build_quaternary(catalog_get("mds4_2_q")), sv.StateVector.basis(3, 0))
