"""Layered measurement unitaries, the game cost and its parameter-shift gradient.

Each of the six local unitaries (U_0..U_2 for Alice's rows, V_0..V_2 for
Bob's columns) acts on a 3-qubit register. A layer applies Euler rotations
RZ-RY-RZ to every qubit, then a ring of CNOTs ``q -> (q + r) mod 3`` with
range ``r = layer % 2 + 1``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .game import GameSpec
from .pauli import dense
from .simulator import Gate, StateVector, circuit_unitary, cnot, ry, rz

ANGLES_PER_QUBIT = 3
REGISTER = 3


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class AnsatzShape:
    layers: int = 3

    def __post_init__(self):
        if self.layers < 0:
            raise ShapeError("layers must be non-negative")

    @property
    def unitary_shape(self) -> tuple[int, int, int]:
        return (self.layers, REGISTER, ANGLES_PER_QUBIT)

    @property
    def params_per_unitary(self) -> int:
        return self.layers * REGISTER * ANGLES_PER_QUBIT

    @property
    def n_params(self) -> int:
        return 6 * self.params_per_unitary


@dataclass(frozen=True, eq=False)
class ParamSet:
    """Angles indexed ``[input][layer][qubit][angle]`` for Alice (theta) and Bob (phi)."""

    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float)
        phi = np.array(self.phi, dtype=float)
        if theta.ndim != 4 or theta.shape[0] != 3 or theta.shape[2:] != (3, 3):
            raise ShapeError(f"theta has shape {theta.shape}, expected (3, L, 3, 3)")
        if phi.shape != theta.shape:
            raise ShapeError(f"phi shape {phi.shape} differs from theta shape {theta.shape}")
        theta.flags.writeable = False
        phi.flags.writeable = False
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def shape(self) -> AnsatzShape:
        return AnsatzShape(self.theta.shape[1])

    @classmethod
    def zeros(cls, layers: int = 3) -> "ParamSet":
        return cls(np.zeros((3, layers, 3, 3)), np.zeros((3, layers, 3, 3)))

    @classmethod
    def standard_normal(cls, rng: np.random.Generator, layers: int = 3) -> "ParamSet":
        flat = rng.standard_normal(AnsatzShape(layers).n_params)
        return cls.from_flat(flat, layers)

    def flat(self) -> np.ndarray:
        return np.concatenate([self.theta.ravel(), self.phi.ravel()])

    @classmethod
    def from_flat(cls, flat, layers: int) -> "ParamSet":
        flat = np.asarray(flat, dtype=float)
        shape = AnsatzShape(layers)
        if flat.shape != (shape.n_params,):
            raise ShapeError(f"expected {shape.n_params} parameters, got {flat.shape}")
        half = shape.n_params // 2
        dims = (3,) + shape.unitary_shape
        return cls(flat[:half].reshape(dims), flat[half:].reshape(dims))

    def digest(self) -> str:
        """Stable fingerprint used to tie verification results to one ParamSet."""
        h = hashlib.sha256()
        h.update(np.asarray(self.theta.shape, dtype=np.int64).tobytes())
        h.update(np.ascontiguousarray(self.theta).tobytes())
        h.update(np.ascontiguousarray(self.phi).tobytes())
        return h.hexdigest()[:16]


def build_unitary_circuit(params, shape: AnsatzShape | None = None, offset: int = 0) -> list[Gate]:
    """Gate list for one local unitary on qubits ``offset .. offset + 2``."""
    params = np.asarray(params, dtype=float)
    if shape is None:
        shape = AnsatzShape(params.shape[0] if params.ndim == 3 else 0)
    if params.shape != shape.unitary_shape:
        raise ShapeError(f"parameter block {params.shape} does not match {shape.unitary_shape}")
    gates = []
    for layer in range(shape.layers):
        for q in range(REGISTER):
            a, b, c = params[layer, q]
            gates += [rz(offset + q, a), ry(offset + q, b), rz(offset + q, c)]
        r = layer % 2 + 1
        gates += [cnot(offset + q, offset + (q + r) % REGISTER) for q in range(REGISTER)]
    return gates


def local_unitary(params) -> np.ndarray:
    """8x8 matrix of one local unitary."""
    return circuit_unitary(build_unitary_circuit(params), REGISTER)


def rotated_observables(spec: GameSpec, params: ParamSet) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Dense ``U_i^dag A_i U_i`` and ``V_j^dag B_j V_j`` (8x8 each)."""
    alice = []
    bob = []
    for k in range(3):
        u = local_unitary(params.theta[k])
        v = local_unitary(params.phi[k])
        alice.append(u.conj().T @ dense(spec.rows[k]) @ u)
        bob.append(v.conj().T @ dense(spec.cols[k]) @ v)
    return alice, bob


def term_grid(state: StateVector, spec: GameSpec, params: ParamSet) -> np.ndarray:
    """All nine ``<A~_i (x) B~_j>`` as a (3, 3) array."""
    return _kernels.term_grid(state.amplitudes, params.theta, params.phi, *spec.term_masks())


def rotated_expectation(state: StateVector, spec: GameSpec, params: ParamSet, i: int, j: int) -> float:
    """``<psi| A~_i (x) B~_j |psi>``: evolve by U_i (x) V_j, then measure A_i (x) B_j."""
    term = spec.term(i, j)
    evolved = _kernels.evolve(state.amplitudes, params.theta[i], params.phi[j])
    return _kernels.pauli_expectation(evolved, *term.masks())


def cost(state: StateVector, spec: GameSpec, params: ParamSet) -> float:
    """``<H~> = -sum_ij <A~_i (x) B~_j>``; -9 is a perfect strategy."""
    grid = term_grid(state, spec, params)
    total = 0.0
    for v in grid.ravel():
        total -= float(v)
    return total


def cost_and_gradient(state: StateVector, spec: GameSpec, params: ParamSet) -> tuple[float, ParamSet]:
    value, g_theta, g_phi = _kernels.cost_gradient(
        state.amplitudes, params.theta, params.phi, *spec.term_masks()
    )
    return float(value), ParamSet(g_theta, g_phi)


def gradient(state: StateVector, spec: GameSpec, params: ParamSet) -> ParamSet:
    """Exact gradient by the two-point parameter-shift rule (shift pi/2)."""
    return cost_and_gradient(state, spec, params)[1]
