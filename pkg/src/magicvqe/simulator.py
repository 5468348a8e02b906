"""Dense statevector simulation for the 6-qubit Alice/Bob register.

Qubits 0-2 belong to Alice and 3-5 to Bob; qubit ``q`` is bit ``n - 1 - q``
of the basis index. States are immutable: every operation returns a new
:class:`StateVector`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .pauli import PauliString

N_QUBITS = 6
ALICE = (0, 1, 2)
BOB = (3, 4, 5)

GATE_KINDS = ("RX", "RY", "RZ", "CNOT")


class SimulatorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        n = amps.size.bit_length() - 1
        if amps.size < 1 or 1 << n != amps.size:
            raise SimulatorError(f"amplitude count {amps.size} is not a power of two")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @classmethod
    def basis(cls, index: int, n_qubits: int = N_QUBITS) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(amps)


@dataclass(frozen=True)
class Gate:
    """A rotation ``exp(-i angle G / 2)`` about G in {X, Y, Z}, or a CNOT."""

    kind: str
    target: int
    angle: float = 0.0
    control: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise SimulatorError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CNOT":
            if self.control is None or self.control == self.target:
                raise SimulatorError("CNOT needs a control distinct from its target")
        elif self.control is not None:
            raise SimulatorError("rotations take no control qubit")

    def shifted(self, offset: int) -> "Gate":
        control = None if self.control is None else self.control + offset
        return Gate(self.kind, self.target + offset, self.angle, control)

    def matrix(self) -> np.ndarray:
        """2x2 matrix of a rotation gate."""
        c, s = np.cos(self.angle / 2), np.sin(self.angle / 2)
        if self.kind == "RX":
            return np.array([[c, -1j * s], [-1j * s, c]])
        if self.kind == "RY":
            return np.array([[c, -s], [s, c]], dtype=complex)
        if self.kind == "RZ":
            return np.diag([np.exp(-0.5j * self.angle), np.exp(0.5j * self.angle)])
        raise SimulatorError("CNOT has no single-qubit matrix")


def rx(q, angle):
    return Gate("RX", q, angle)


def ry(q, angle):
    return Gate("RY", q, angle)


def rz(q, angle):
    return Gate("RZ", q, angle)


def cnot(control, target):
    return Gate("CNOT", target, control=control)


def prepare_bell_stack() -> StateVector:
    """|Phi+> on qubit pairs (0,3), (1,4), (2,5)."""
    amps = np.zeros(1 << N_QUBITS, dtype=complex)
    for bits in range(8):
        # Alice's three bits mirrored onto Bob's
        amps[(bits << 3) | bits] = 2.0 ** -1.5
    return StateVector(amps)


def _check_qubit(q: int, n: int) -> None:
    if not 0 <= q < n:
        raise SimulatorError(f"qubit index {q} out of range for {n} qubits")


def _apply_inplace(amps: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    _check_qubit(gate.target, n)
    t = gate.target
    if gate.kind == "CNOT":
        _check_qubit(gate.control, n)
        view = amps.reshape([2] * n)
        sel = [slice(None)] * n
        sel[gate.control] = 1
        # axis numbers shift down by one once the control axis is fixed
        axis = t - 1 if t > gate.control else t
        view[tuple(sel)] = np.flip(view[tuple(sel)], axis=axis).copy()
        return amps
    view = amps.reshape(1 << t, 2, -1)
    m = gate.matrix()
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :].copy()
    view[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
    view[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1
    return amps


def apply_gate(s: StateVector, g: Gate) -> StateVector:
    return StateVector(_apply_inplace(s.amplitudes.copy(), g, s.n_qubits))


def apply_circuit(s: StateVector, gates: Iterable[Gate]) -> StateVector:
    amps = s.amplitudes.copy()
    n = s.n_qubits
    for g in gates:
        _apply_inplace(amps, g, n)
    return StateVector(amps)


def circuit_unitary(gates: Sequence[Gate], n_qubits: int) -> np.ndarray:
    """Dense unitary of a gate sequence, built column by column."""
    cols = [apply_circuit(StateVector.basis(b, n_qubits), gates).amplitudes for b in range(1 << n_qubits)]
    return np.stack(cols, axis=1)


def expectation(s: StateVector, obs: PauliString) -> float:
    """<s|obs|s> for a Hermitian Pauli string, via its bit-mask action."""
    if not obs.is_hermitian:
        raise SimulatorError(f"observable {obs} is not Hermitian")
    if obs.n_qubits != s.n_qubits:
        raise SimulatorError(f"observable acts on {obs.n_qubits} qubits, state has {s.n_qubits}")
    x_mask, z_mask, coeff = obs.masks()
    psi = s.amplitudes
    idx = np.arange(psi.size)
    parity = np.array([bin(b & z_mask).count("1") & 1 for b in idx])
    val = coeff * np.sum(np.conj(psi[idx ^ x_mask]) * psi * (1 - 2 * parity))
    if abs(val.imag) > 1e-12:
        raise SimulatorError(f"non-real expectation {val}")
    return float(val.real)


# Rotations taking each Pauli's eigenbasis to the computational basis.
_BASIS_CHANGE = {
    "X": lambda q: [ry(q, -np.pi / 2)],
    "Y": lambda q: [rx(q, np.pi / 2)],
    "Z": lambda q: [],
    "I": lambda q: [],
}


def _validate_sites(sites: Sequence[tuple[int, str]], n: int) -> None:
    seen = set()
    for q, letter in sites:
        _check_qubit(q, n)
        if letter not in _BASIS_CHANGE:
            raise SimulatorError(f"invalid site letter {letter!r}")
        if letter == "I":
            continue
        if q in seen:
            raise SimulatorError(f"site observables overlap on qubit {q}")
        seen.add(q)


def sample_sites(
    s: StateVector, sites: Sequence[tuple[int, str]], shots: int, seed
) -> np.ndarray:
    """Jointly sample single-site Paulis; returns a ``(shots, len(sites))`` array of +/-1.

    ``sites`` is a sequence of ``(qubit, letter)``. Identity sites always read +1.
    """
    n = s.n_qubits
    _validate_sites(sites, n)
    if shots < 0:
        raise SimulatorError("shots must be non-negative")
    if shots == 0:
        return np.zeros((0, len(sites)), dtype=np.int8)
    rotated = apply_circuit(s, [g for q, c in sites for g in _BASIS_CHANGE[c](q)])
    probs = rotated.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(probs.size, size=shots, p=probs)
    out = np.ones((shots, len(sites)), dtype=np.int8)
    for k, (q, c) in enumerate(sites):
        if c != "I":
            out[:, k] = 1 - 2 * ((draws >> (n - 1 - q)) & 1)
    return out


@dataclass(frozen=True)
class Outcome:
    """One joint shot: per-site +/-1 values for Alice and Bob."""

    alice: tuple[int, ...]
    bob: tuple[int, ...]

    @property
    def a(self) -> int:
        return int(np.prod(self.alice))

    @property
    def b(self) -> int:
        return int(np.prod(self.bob))


def sample_joint(
    s: StateVector,
    alice_sites: Sequence[tuple[int, str]],
    bob_sites: Sequence[tuple[int, str]],
    shots: int,
    seed,
) -> list[Outcome]:
    """Sample Alice's and Bob's commuting site observables together."""
    alice_sites, bob_sites = list(alice_sites), list(bob_sites)
    table = sample_sites(s, alice_sites + bob_sites, shots, seed)
    na = len(alice_sites)
    return [Outcome(tuple(int(v) for v in row[:na]), tuple(int(v) for v in row[na:])) for row in table]


def player_sites(op: PauliString, qubits: Sequence[int]) -> list[tuple[int, str]]:
    """Split a player-local Pauli string into its per-site observables."""
    if op.phase_exp != 0:
        raise SimulatorError("site split needs a +1 phase")
    return list(zip(qubits, op.letters))


def sub_seed(seed: int, task: int) -> np.random.SeedSequence:
    """Independent child seed for task ``task`` of a run seeded with ``seed``."""
    return np.random.SeedSequence([seed, task])
