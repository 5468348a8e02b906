"""Pure-numpy circuit kernels.

Same signatures as the compiled ``_ckernel`` module. Parameter-shift
evaluations are batched along a leading axis so the whole gradient of one
local unitary costs a few dozen vectorised gate applications.
"""

import numpy as np

N_QUBITS = 6
DIM = 1 << N_QUBITS
SHIFT = np.pi / 2

_INDEX = np.arange(DIM)


def _cnot_perm(control, target):
    cbit = 1 << (N_QUBITS - 1 - control)
    tbit = 1 << (N_QUBITS - 1 - target)
    return np.where(_INDEX & cbit, _INDEX ^ tbit, _INDEX)


_CNOT = {
    (c, t): _cnot_perm(c, t) for c in range(N_QUBITS) for t in range(N_QUBITS) if c != t
}


def _parity_signs(z_mask):
    bits = _INDEX & z_mask
    par = np.zeros(DIM, dtype=np.int64)
    while bits.any():
        par ^= bits & 1
        bits = bits >> 1
    return 1.0 - 2.0 * par


def _apply_rz(states, qubit, theta):
    view = states.reshape(states.shape[0], 1 << qubit, 2, -1)
    half = 0.5 * theta[:, None, None]
    view[:, :, 0, :] *= np.exp(-1j * half)
    view[:, :, 1, :] *= np.exp(1j * half)


def _apply_ry(states, qubit, theta):
    view = states.reshape(states.shape[0], 1 << qubit, 2, -1)
    c = np.cos(0.5 * theta)[:, None, None]
    s = np.sin(0.5 * theta)[:, None, None]
    a0 = view[:, :, 0, :].copy()
    a1 = view[:, :, 1, :]
    view[:, :, 0, :] = c * a0 - s * a1
    view[:, :, 1, :] = s * a0 + c * a1


def apply_register_batch(states, params, base):
    """Apply the layered ansatz to qubits ``base..base+2`` of every state.

    ``states`` is ``(B, 64)`` and is modified in place and returned;
    ``params`` is ``(B, L, 3, 3)`` or ``(L, 3, 3)`` (shared).
    """
    params = np.asarray(params, dtype=float)
    if params.ndim == 3:
        params = np.broadcast_to(params, (states.shape[0],) + params.shape)
    for layer in range(params.shape[1]):
        for q in range(3):
            _apply_rz(states, base + q, params[:, layer, q, 0])
            _apply_ry(states, base + q, params[:, layer, q, 1])
            _apply_rz(states, base + q, params[:, layer, q, 2])
        r = layer % 2 + 1
        for q in range(3):
            states[:] = states[:, _CNOT[(base + q, base + (q + r) % 3)]]
    return states


def expectation_batch(states, x_mask, z_mask, coeff):
    signs = _parity_signs(int(z_mask))
    flipped = states[:, _INDEX ^ int(x_mask)]
    vals = coeff * np.sum(np.conj(flipped) * states * signs, axis=1)
    return vals.real


def evolve(psi, params_a, params_b):
    states = np.array(psi, dtype=complex).reshape(1, DIM)
    apply_register_batch(states, params_a, 0)
    apply_register_batch(states, params_b, 3)
    return states[0]


def pauli_expectation(psi, x_mask, z_mask, coeff):
    states = np.asarray(psi, dtype=complex).reshape(1, DIM)
    return float(expectation_batch(states, x_mask, z_mask, coeff)[0])


def term_grid(psi, theta, phi, x_masks, z_masks, coeffs):
    psi = np.asarray(psi, dtype=complex)
    grid = np.empty((3, 3))
    for j in range(3):
        bob = apply_register_batch(psi.reshape(1, DIM).copy(), phi[j], 3)
        states = np.repeat(bob, 3, axis=0)
        apply_register_batch(states, theta, 0)
        for i in range(3):
            grid[i, j] = expectation_batch(
                states[i : i + 1], x_masks[i, j], z_masks[i, j], coeffs[i, j]
            )[0]
    return grid


def _shifted(base_params):
    n = base_params.size
    batch = np.repeat(base_params.reshape(1, n), 2 * n, axis=0)
    idx = np.arange(n)
    batch[idx, idx] += SHIFT
    batch[n + idx, idx] -= SHIFT
    return batch.reshape((2 * n,) + base_params.shape)


def _register_gradient(psi, own, other, own_base, other_base, masks_for):
    """Parameter-shift gradient w.r.t. ``own[k]`` for k = 0, 1, 2."""
    grads = np.zeros_like(own)
    n = own[0].size
    if n == 0:
        return grads
    # partner register evolved once per partner input
    partners = [apply_register_batch(psi.reshape(1, DIM).copy(), other[m], other_base) for m in range(3)]
    for k in range(3):
        shifted = _shifted(own[k])
        total = np.zeros(2 * n)
        for m in range(3):
            states = np.repeat(partners[m], 2 * n, axis=0)
            apply_register_batch(states, shifted, own_base)
            x, z, c = masks_for(k, m)
            total += expectation_batch(states, x, z, c)
        # cost = -sum(terms)
        grads[k] = (-(total[:n] - total[n:]) / 2).reshape(own[k].shape)
    return grads


def cost_gradient(psi, theta, phi, x_masks, z_masks, coeffs):
    psi = np.asarray(psi, dtype=complex)
    theta = np.ascontiguousarray(theta, dtype=float)
    phi = np.ascontiguousarray(phi, dtype=float)
    grid = term_grid(psi, theta, phi, x_masks, z_masks, coeffs)
    cost = 0.0
    for i in range(3):
        for j in range(3):
            cost -= grid[i, j]
    g_theta = _register_gradient(
        psi, theta, phi, 0, 3, lambda i, j: (x_masks[i, j], z_masks[i, j], coeffs[i, j])
    )
    g_phi = _register_gradient(
        psi, phi, theta, 3, 0, lambda j, i: (x_masks[i, j], z_masks[i, j], coeffs[i, j])
    )
    return cost, g_theta, g_phi
