# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled circuit kernels for the 6-qubit register.

Amplitudes are held as separate real/imaginary stack arrays of length 64;
qubit ``q`` lives in bit ``5 - q`` of the basis index.
"""

import numpy as np
from libc.math cimport cos, sin, M_PI
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_popcount(unsigned int) nogil

cdef enum:
    NQ = 6
    DIM = 64


cdef inline void _rz(double* re, double* im, int q, double theta) noexcept nogil:
    cdef int bit = 1 << (NQ - 1 - q)
    cdef double c = cos(0.5 * theta)
    cdef double s = sin(0.5 * theta)
    cdef int b
    cdef double r, i
    for b in range(DIM):
        r = re[b]
        i = im[b]
        if b & bit:
            re[b] = r * c - i * s
            im[b] = r * s + i * c
        else:
            re[b] = r * c + i * s
            im[b] = i * c - r * s


cdef inline void _ry(double* re, double* im, int q, double theta) noexcept nogil:
    cdef int bit = 1 << (NQ - 1 - q)
    cdef double c = cos(0.5 * theta)
    cdef double s = sin(0.5 * theta)
    cdef int b, b1
    cdef double r0, i0, r1, i1
    for b in range(DIM):
        if b & bit:
            continue
        b1 = b | bit
        r0 = re[b]
        i0 = im[b]
        r1 = re[b1]
        i1 = im[b1]
        re[b] = c * r0 - s * r1
        im[b] = c * i0 - s * i1
        re[b1] = s * r0 + c * r1
        im[b1] = s * i0 + c * i1


cdef inline void _cnot(double* re, double* im, int control, int target) noexcept nogil:
    cdef int cbit = 1 << (NQ - 1 - control)
    cdef int tbit = 1 << (NQ - 1 - target)
    cdef int b, b1
    cdef double t
    for b in range(DIM):
        if (b & cbit) and not (b & tbit):
            b1 = b | tbit
            t = re[b]
            re[b] = re[b1]
            re[b1] = t
            t = im[b]
            im[b] = im[b1]
            im[b1] = t


cdef void _register(double* re, double* im, const double[:, :, ::1] p, int base) noexcept nogil:
    cdef Py_ssize_t layer
    cdef int q, r
    for layer in range(p.shape[0]):
        for q in range(3):
            _rz(re, im, base + q, p[layer, q, 0])
            _ry(re, im, base + q, p[layer, q, 1])
            _rz(re, im, base + q, p[layer, q, 2])
        r = layer % 2 + 1
        for q in range(3):
            _cnot(re, im, base + q, base + (q + r) % 3)


cdef double _expval(const double* re, const double* im, long x, long z,
                    double cr, double ci) noexcept nogil:
    cdef int b, bx
    cdef double acc_r = 0.0
    cdef double acc_i = 0.0
    cdef double pr, pi
    for b in range(DIM):
        bx = b ^ x
        # conj(psi[bx]) * psi[b]
        pr = re[bx] * re[b] + im[bx] * im[b]
        pi = re[bx] * im[b] - im[bx] * re[b]
        if __builtin_popcount(<unsigned int>(b & z)) & 1:
            acc_r -= pr
            acc_i -= pi
        else:
            acc_r += pr
            acc_i += pi
    return cr * acc_r - ci * acc_i


cdef void _load(const double complex[::1] psi, double* re, double* im):
    cdef int b
    if psi.shape[0] != DIM:
        raise ValueError(f"expected {DIM} amplitudes, got {psi.shape[0]}")
    for b in range(DIM):
        re[b] = psi[b].real
        im[b] = psi[b].imag


def _as_state(psi):
    return np.ascontiguousarray(psi, dtype=np.complex128).reshape(-1)


def _as_params(p):
    p = np.ascontiguousarray(p, dtype=np.float64)
    if p.shape[-2:] != (3, 3):
        raise ValueError(f"parameter block must end in (3, 3), got {p.shape}")
    return p


def evolve(psi, params_a, params_b):
    cdef double re[DIM]
    cdef double im[DIM]
    _load(_as_state(psi), re, im)
    _register(re, im, _as_params(params_a), 0)
    _register(re, im, _as_params(params_b), 3)
    out = np.empty(DIM, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef int b
    for b in range(DIM):
        o[b] = re[b] + 1j * im[b]
    return out


def pauli_expectation(psi, long x_mask, long z_mask, coeff):
    cdef double re[DIM]
    cdef double im[DIM]
    _load(_as_state(psi), re, im)
    c = complex(coeff)
    return _expval(re, im, x_mask, z_mask, c.real, c.imag)


cdef void _term_grid(const double complex[::1] psi, const double[:, :, :, ::1] theta,
                     const double[:, :, :, ::1] phi, const long[:, ::1] xm,
                     const long[:, ::1] zm, const double complex[:, ::1] cf,
                     double[:, ::1] out):
    cdef double re0[DIM]
    cdef double im0[DIM]
    cdef double rb[DIM]
    cdef double ib[DIM]
    cdef double re[DIM]
    cdef double im[DIM]
    cdef int i, j
    _load(psi, re0, im0)
    for j in range(3):
        memcpy(rb, re0, DIM * sizeof(double))
        memcpy(ib, im0, DIM * sizeof(double))
        _register(rb, ib, phi[j], 3)
        for i in range(3):
            memcpy(re, rb, DIM * sizeof(double))
            memcpy(im, ib, DIM * sizeof(double))
            _register(re, im, theta[i], 0)
            out[i, j] = _expval(re, im, xm[i, j], zm[i, j], cf[i, j].real, cf[i, j].imag)


def _masks(x_masks, z_masks, coeffs):
    return (
        np.ascontiguousarray(x_masks, dtype=np.int64).astype(np.dtype("l"), copy=False),
        np.ascontiguousarray(z_masks, dtype=np.int64).astype(np.dtype("l"), copy=False),
        np.ascontiguousarray(coeffs, dtype=np.complex128),
    )


def term_grid(psi, theta, phi, x_masks, z_masks, coeffs):
    xm, zm, cf = _masks(x_masks, z_masks, coeffs)
    out = np.empty((3, 3))
    _term_grid(_as_state(psi), _as_params(theta), _as_params(phi), xm, zm, cf, out)
    return out


cdef void _register_gradient(double* re0, double* im0, double[:, :, :, ::1] own,
                             const double[:, :, :, ::1] other, int own_base,
                             int other_base, bint own_is_alice, const long[:, ::1] xm,
                             const long[:, ::1] zm, const double complex[:, ::1] cf,
                             double[:, :, :, ::1] grad):
    cdef double rp[3][DIM]
    cdef double ip[3][DIM]
    cdef double re[DIM]
    cdef double im[DIM]
    cdef int k, m, a, b, sgn, layer, q, e
    cdef double saved, total
    cdef double shift = 0.5 * M_PI
    for m in range(3):
        memcpy(rp[m], re0, DIM * sizeof(double))
        memcpy(ip[m], im0, DIM * sizeof(double))
        _register(rp[m], ip[m], other[m], other_base)
    for k in range(3):
        for layer in range(own.shape[1]):
            for q in range(3):
                for e in range(3):
                    saved = own[k, layer, q, e]
                    grad[k, layer, q, e] = 0.0
                    for sgn in range(2):
                        own[k, layer, q, e] = saved + (shift if sgn == 0 else -shift)
                        total = 0.0
                        for m in range(3):
                            memcpy(re, rp[m], DIM * sizeof(double))
                            memcpy(im, ip[m], DIM * sizeof(double))
                            _register(re, im, own[k], own_base)
                            if own_is_alice:
                                a = k
                                b = m
                            else:
                                a = m
                                b = k
                            total += _expval(re, im, xm[a, b], zm[a, b], cf[a, b].real, cf[a, b].imag)
                        # cost = -sum(terms); g = (cost(+) - cost(-)) / 2
                        if sgn == 0:
                            grad[k, layer, q, e] -= 0.5 * total
                        else:
                            grad[k, layer, q, e] += 0.5 * total
                    own[k, layer, q, e] = saved


def cost_gradient(psi, theta, phi, x_masks, z_masks, coeffs):
    xm, zm, cf = _masks(x_masks, z_masks, coeffs)
    state = _as_state(psi)
    work_theta = np.array(_as_params(theta), copy=True)
    work_phi = np.array(_as_params(phi), copy=True)
    grid = np.empty((3, 3))
    _term_grid(state, work_theta, work_phi, xm, zm, cf, grid)
    cdef double cost = 0.0
    cdef int i, j
    for i in range(3):
        for j in range(3):
            cost -= grid[i, j]
    g_theta = np.zeros_like(work_theta)
    g_phi = np.zeros_like(work_phi)
    cdef double re0[DIM]
    cdef double im0[DIM]
    _load(state, re0, im0)
    _register_gradient(re0, im0, work_theta, work_phi, 0, 3, True, xm, zm, cf, g_theta)
    _register_gradient(re0, im0, work_phi, work_theta, 3, 0, False, xm, zm, cf, g_phi)
    return cost, g_theta, g_phi
