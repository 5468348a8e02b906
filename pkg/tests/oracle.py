"""Independent dense-matrix oracles.

Everything here is built from explicit Kronecker products of 2x2 matrices,
sharing no code with the simulator or the kernels.
"""

from functools import reduce

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0 + 0j, -1.0])
P0 = np.diag([1.0 + 0j, 0.0])
P1 = np.diag([0.0 + 0j, 1.0])
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_all(mats):
    return reduce(np.kron, mats)


def pauli_matrix(letters, sign=1):
    return sign * kron_all([PAULI[c] for c in letters])


def rot(axis, theta):
    g = PAULI[axis]
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * g


def embed(op, q, n):
    return kron_all([op if k == q else I2 for k in range(n)])


def cnot_matrix(control, target, n):
    a = kron_all([P0 if k == control else I2 for k in range(n)])
    b = kron_all([P1 if k == control else (X if k == target else I2) for k in range(n)])
    return a + b


def ansatz_unitary(params):
    """8x8 unitary of the layered ansatz from dense gate products."""
    u = np.eye(8, dtype=complex)
    for layer in range(params.shape[0]):
        for q in range(3):
            for axis, ang in zip("ZYZ", params[layer, q]):
                u = embed(rot(axis, ang), q, 3) @ u
        r = layer % 2 + 1
        for q in range(3):
            u = cnot_matrix(q, (q + r) % 3, 3) @ u
    return u


def bell_stack():
    psi = np.zeros(64, dtype=complex)
    psi[0] = 1.0
    for q in range(3):
        psi = embed(rot("Y", np.pi / 2), q, 6) @ psi
    for q in range(3):
        psi = cnot_matrix(q, q + 3, 6) @ psi
    return psi


ROWS = ["ZZX", "XZZ", "ZXZ"]
COLS = ["XZZ", "ZXZ", "ZZX"]


def rotated_term(psi, theta_i, phi_j, i, j):
    u = ansatz_unitary(theta_i)
    v = ansatz_unitary(phi_j)
    a = u.conj().T @ pauli_matrix(ROWS[i]) @ u
    b = v.conj().T @ pauli_matrix(COLS[j]) @ v
    return float(np.real(psi.conj() @ np.kron(a, b) @ psi))


def rotated_ops(theta, phi):
    alice = []
    bob = []
    for k in range(3):
        u = ansatz_unitary(theta[k])
        v = ansatz_unitary(phi[k])
        alice.append(u.conj().T @ pauli_matrix(ROWS[k]) @ u)
        bob.append(v.conj().T @ pauli_matrix(COLS[k]) @ v)
    return alice, bob


def cost(psi, theta, phi):
    alice, bob = rotated_ops(theta, phi)
    return -sum(
        float(np.real(psi.conj() @ np.kron(alice[i], bob[j]) @ psi)) for i in range(3) for j in range(3)
    )


def finite_difference_gradient(psi, theta, phi, h=1e-5):
    """Central differences of the dense cost; re-builds only the touched unitary."""
    alice, bob = rotated_ops(theta, phi)

    def total(al, bo):
        return -sum(float(np.real(psi.conj() @ np.kron(al[i], bo[j]) @ psi)) for i in range(3) for j in range(3))

    def grad_side(params, own_rows, is_alice):
        g = np.zeros_like(params)
        for k in range(3):
            for idx in np.ndindex(params[k].shape):
                vals = []
                for step in (h, -h):
                    p = params[k].copy()
                    p[idx] += step
                    u = ansatz_unitary(p)
                    op = u.conj().T @ pauli_matrix(own_rows[k]) @ u
                    if is_alice:
                        al = list(alice)
                        al[k] = op
                        vals.append(total(al, bob))
                    else:
                        bo = list(bob)
                        bo[k] = op
                        vals.append(total(alice, bo))
                g[(k,) + idx] = (vals[0] - vals[1]) / (2 * h)
        return g

    return grad_side(theta, ROWS, True), grad_side(phi, COLS, False)


def classical_bruteforce():
    """(best wins out of 9, number of optimal pairs) over all parity-valid grids."""
    import itertools

    grids = list(itertools.product((1, -1), repeat=9))
    alice = [g for g in grids if all(g[3 * r] * g[3 * r + 1] * g[3 * r + 2] == 1 for r in range(3))]
    bob = [g for g in grids if all(g[c] * g[3 + c] * g[6 + c] == -1 for c in range(3))]
    best = -1
    count = 0
    for a in alice:
        for b in bob:
            wins = sum(a[k] == b[k] for k in range(9))
            if wins > best:
                best, count = wins, 1
            elif wins == best:
                count += 1
    return best, count, len(alice) * len(bob)
