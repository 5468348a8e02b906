import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from magicvqe.pauli import (
    PauliError,
    PauliString,
    commutator_norm,
    commutes,
    dense,
    multiply,
)

from oracle import pauli_matrix

A = [PauliString(s) for s in ("ZZX", "XZZ", "ZXZ")]
B = [PauliString(s) for s in ("XZZ", "ZXZ", "ZZX")]


def paulis(n):
    return st.builds(PauliString, st.text("IXYZ", min_size=n, max_size=n), st.integers(0, 3))


pauli_pairs = st.integers(1, 4).flatmap(lambda n: st.tuples(paulis(n), paulis(n)))


def test_single_qubit_product():
    assert multiply(PauliString("Z"), PauliString("X")) == PauliString("Y", 1)


def test_row_products():
    a01 = A[0] * A[1]
    assert a01 == PauliString("YIY")
    np.testing.assert_allclose(dense(a01), pauli_matrix("ZZX") @ pauli_matrix("XZZ"), atol=1e-12)
    a012 = A[0] * A[1] * A[2]
    assert a012 == PauliString.parse("-XXX")
    np.testing.assert_allclose(
        dense(a012), pauli_matrix("ZZX") @ pauli_matrix("XZZ") @ pauli_matrix("ZXZ"), atol=1e-12
    )


@pytest.mark.parametrize(
    "a,b,expected",
    [("ZZX", "XZZ", True), ("X", "Z", False), ("ZZX", "ZZX", True), ("XY", "YX", True), ("XI", "ZI", False)],
)
def test_commutes(a, b, expected):
    pa, pb = PauliString(a), PauliString(b)
    assert commutes(pa, pb) is expected
    assert (commutator_norm(dense(pa), dense(pb)) < 1e-12) is expected


def test_commutator_norm_values():
    x, z = dense(PauliString("X")), dense(PauliString("Z"))
    assert commutator_norm(dense(A[0]), dense(A[1])) == 0.0
    assert commutator_norm(x, x) == 0.0
    assert commutator_norm(x, z) == pytest.approx(2 * np.sqrt(2), abs=1e-12)


def test_dense_examples():
    np.testing.assert_array_equal(dense(PauliString("Z")), np.diag([1, -1]))
    assert abs(np.trace(dense(PauliString("ZZX")))) == 0
    np.testing.assert_array_equal(dense(PauliString("III")), np.eye(8))


def test_qubit_zero_is_most_significant():
    # Z on qubit 0 of two qubits flips the sign of basis states 2 and 3
    np.testing.assert_array_equal(np.diag(dense(PauliString("ZI"))).real, [1, 1, -1, -1])
    assert PauliString("XI").masks() == (0b10, 0, 1)


def test_length_mismatch():
    with pytest.raises(PauliError):
        multiply(PauliString("X"), PauliString("XX"))
    with pytest.raises(PauliError):
        commutes(PauliString("X"), PauliString("XX"))
    with pytest.raises(PauliError):
        commutator_norm(np.eye(2), np.eye(4))


def test_parse_roundtrip():
    for label in ("+XYZ", "-ZZ", "+iY", "-iXX"):
        assert str(PauliString.parse(label)) == label
    with pytest.raises(PauliError):
        PauliString("XQ")


def test_table_intra_player_commutation():
    for group in (A, B):
        for p in group:
            for q in group:
                assert commutes(p, q)
    assert B[0] * B[1] * B[2] == PauliString.parse("-XXX")


def test_table_cross_pairs_commute_as_three_qubit_matrices():
    # all nine pairs anticommute on an even number of sites
    for a in A:
        for b in B:
            assert commutes(a, b)
            assert commutator_norm(dense(a), dense(b)) < 1e-12


@given(pauli_pairs)
def test_dense_is_homomorphism(pair):
    a, b = pair
    np.testing.assert_allclose(dense(multiply(a, b)), dense(a) @ dense(b), atol=1e-12)


@given(pauli_pairs)
def test_commutes_matches_dense(pair):
    a, b = pair
    assert commutes(a, b) == (commutator_norm(dense(a), dense(b)) < 1e-12)


@given(st.integers(1, 4).flatmap(paulis))
def test_hermitian_strings_square_to_identity(p):
    m = dense(p)
    if p.is_hermitian:
        np.testing.assert_allclose(m @ m, np.eye(m.shape[0]), atol=1e-12)
        np.testing.assert_allclose(m, m.conj().T, atol=1e-12)
        assert set(np.round(np.linalg.eigvalsh(m), 12)) <= {-1.0, 1.0}
    if p.weight > 0:
        assert abs(np.trace(m)) < 1e-12


@given(st.integers(1, 4).flatmap(paulis))
def test_masks_reproduce_dense_action(p):
    x_mask, z_mask, c = p.masks()
    n = p.n_qubits
    m = dense(p)
    for b in range(1 << n):
        col = np.zeros(1 << n, dtype=complex)
        col[b ^ x_mask] = c * (-1) ** bin(b & z_mask).count("1")
        np.testing.assert_allclose(m[:, b], col, atol=1e-12)
