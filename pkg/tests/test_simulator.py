import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicvqe.pauli import PauliString, dense
from magicvqe.simulator import (
    Gate,
    SimulatorError,
    StateVector,
    apply_circuit,
    apply_gate,
    cnot,
    expectation,
    prepare_bell_stack,
    rx,
    ry,
    rz,
    sample_joint,
    sample_sites,
)

import oracle

gate_st = st.one_of(
    st.builds(Gate, st.sampled_from(["RX", "RY", "RZ"]), st.integers(0, 5), st.floats(-7, 7)),
    st.tuples(st.integers(0, 5), st.integers(0, 5))
    .filter(lambda ct: ct[0] != ct[1])
    .map(lambda ct: cnot(*ct)),
)


def random_state(rng, n=6):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(v / np.linalg.norm(v))


def dense_gate(g, n=6):
    if g.kind == "CNOT":
        return oracle.cnot_matrix(g.control, g.target, n)
    return oracle.embed(oracle.rot(g.kind[1], g.angle), g.target, n)


def test_bell_stack_amplitudes(bell):
    amps = bell.amplitudes
    assert amps[0] == pytest.approx(2**-1.5)
    assert amps[1] == 0
    assert np.count_nonzero(amps) == 8
    np.testing.assert_allclose(amps, oracle.bell_stack(), atol=1e-12)
    assert expectation(bell, PauliString("ZIIZII")) == pytest.approx(1.0, abs=1e-12)


def test_bell_stack_is_immutable(bell):
    with pytest.raises(ValueError):
        bell.amplitudes[0] = 0


def test_zero_rotation_is_identity(rng):
    s = random_state(rng)
    np.testing.assert_array_equal(apply_gate(s, rx(0, 0.0)).amplitudes, s.amplitudes)


def test_ry_pi_flips():
    out = apply_gate(StateVector.basis(0), ry(2, np.pi))
    # |001000> : qubit 2 is bit 3
    assert abs(out.amplitudes[0b001000]) == pytest.approx(1.0)


def test_bell_pair_from_gates():
    out = apply_circuit(StateVector.basis(0), [ry(0, np.pi / 2), cnot(0, 3)])
    expected = np.zeros(64)
    expected[0] = expected[0b100100] = 1 / np.sqrt(2)
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)


def test_gate_validation():
    with pytest.raises(SimulatorError):
        apply_gate(StateVector.basis(0), rx(6, 0.1))
    with pytest.raises(SimulatorError):
        apply_gate(StateVector.basis(0), cnot(1, 7))
    with pytest.raises(SimulatorError):
        cnot(2, 2)
    with pytest.raises(SimulatorError):
        Gate("H", 0)


@settings(max_examples=50, deadline=None)
@given(st.lists(gate_st, max_size=12), st.integers(0, 2**32 - 1))
def test_gates_match_dense_and_preserve_norm(gates, seed):
    s = random_state(np.random.default_rng(seed))
    out = apply_circuit(s, gates)
    ref = s.amplitudes
    for g in gates:
        ref = dense_gate(g) @ ref
    np.testing.assert_allclose(out.amplitudes, ref, atol=1e-10)
    assert abs(out.norm - 1) < 1e-10


def test_expectation_examples(bell):
    assert expectation(bell, PauliString("ZZXZZX")) == pytest.approx(1.0, abs=1e-12)
    assert expectation(bell, PauliString("ZZXXZZ")) == pytest.approx(0.0, abs=1e-12)
    assert expectation(bell, PauliString("IIIIII")) == pytest.approx(1.0, abs=1e-12)


def test_expectation_rejects_non_hermitian(bell):
    with pytest.raises(SimulatorError):
        expectation(bell, PauliString("ZZXZZX", 1))


@settings(max_examples=40, deadline=None)
@given(st.text("IXYZ", min_size=6, max_size=6), st.sampled_from([0, 2]), st.integers(0, 2**32 - 1))
def test_expectation_dense_vs_gate_based(letters, phase, seed):
    s = random_state(np.random.default_rng(seed))
    p = PauliString(letters, phase)
    exact = float(np.real(s.amplitudes.conj() @ dense(p) @ s.amplitudes))
    assert expectation(s, p) == pytest.approx(exact, abs=1e-10)
    # gate-based: rotate each site's eigenbasis to Z, read off parities
    basis = {"X": [ry(0, -np.pi / 2)], "Y": [rx(0, np.pi / 2)], "Z": [], "I": []}
    gates = [Gate(g.kind, q, g.angle) for q, c in enumerate(letters) for g in basis[c]]
    probs = apply_circuit(s, gates).probabilities()
    zmask = sum(1 << (5 - q) for q, c in enumerate(letters) if c != "I")
    signs = np.array([(-1) ** bin(b & zmask).count("1") for b in range(64)])
    assert (-1 if phase else 1) * probs @ signs == pytest.approx(exact, abs=1e-10)


ALICE_A0 = [(0, "Z"), (1, "Z"), (2, "X")]


def test_sample_deterministic_correlation(bell):
    shots = sample_joint(bell, ALICE_A0, [(3, "Z"), (4, "Z"), (5, "X")], 500, seed=3)
    assert len(shots) == 500
    assert all(o.a * o.b == 1 for o in shots)


def test_sample_uncorrelated_term(bell):
    n = 10_000
    shots = sample_joint(bell, ALICE_A0, [(3, "X"), (4, "Z"), (5, "Z")], n, seed=11)
    mean = np.mean([o.a * o.b for o in shots])
    assert abs(mean) < 4 / np.sqrt(n)


def test_sample_zero_shots(bell):
    assert sample_joint(bell, ALICE_A0, [(3, "X"), (4, "Z"), (5, "Z")], 0, seed=0) == []


def test_sample_rejects_overlap(bell):
    with pytest.raises(SimulatorError):
        sample_joint(bell, ALICE_A0, [(2, "Z"), (4, "Z"), (5, "Z")], 10, seed=0)


def test_sample_is_seeded(bell):
    a = sample_sites(bell, ALICE_A0, 100, seed=5)
    b = sample_sites(bell, ALICE_A0, 100, seed=5)
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("seed", range(4))
def test_sampling_means_converge(seed):
    s = random_state(np.random.default_rng(seed))
    sites = [(0, "X"), (1, "Y"), (2, "Z"), (3, "Y"), (4, "X"), (5, "Z")]
    n = 20_000
    table = sample_sites(s, sites, n, seed=seed)
    for k, (q, c) in enumerate(sites):
        letters = ["I"] * 6
        letters[q] = c
        exact = expectation(s, PauliString("".join(letters)))
        assert abs(table[:, k].mean() - exact) < 5 / np.sqrt(n)
    # the product of Alice's three outcomes samples the product observable
    exact = expectation(s, PauliString("XYZIII"))
    assert abs(table[:, :3].prod(axis=1).mean() - exact) < 5 / np.sqrt(n)


def test_outcome_factorisation(bell):
    for o in sample_joint(bell, ALICE_A0, [(3, "X"), (4, "Z"), (5, "Z")], 50, seed=1):
        assert o.a == np.prod(o.alice)
        assert o.b == np.prod(o.bob)
