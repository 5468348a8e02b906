"""The 3x3 Magic Square Game: fixed observables, value Hamiltonian, values.

Conventions
-----------
Answer bits map to values ``(-1)**bit``. Alice's row must multiply to +1 and
Bob's column to -1. Position ``k`` of Alice's row-``i`` answer is cell
``(i, k)``; position ``k`` of Bob's column-``j`` answer is cell ``(k, j)``, so
input ``(i, j)`` is won when Alice's bit ``j`` equals Bob's bit ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .pauli import PauliString, dense

ALICE_PRODUCT = +1
BOB_PRODUCT = -1


class GameError(ValueError):
    pass


def _default_rows():
    return tuple(PauliString(s) for s in ("ZZX", "XZZ", "ZXZ"))


def _default_cols():
    return tuple(PauliString(s) for s in ("XZZ", "ZXZ", "ZZX"))


@dataclass(frozen=True)
class GameSpec:
    rows: tuple[PauliString, ...] = field(default_factory=_default_rows)
    cols: tuple[PauliString, ...] = field(default_factory=_default_cols)

    def __post_init__(self):
        for op in self.rows + self.cols:
            if op.n_qubits != 3 or op.phase_exp != 0:
                raise GameError(f"operator {op} is not an unsigned 3-qubit string")
            if sorted(op.letters) != ["X", "Z", "Z"]:
                raise GameError(f"operator {op} must hold one X and two Z")
        if len(self.rows) != 3 or len(self.cols) != 3:
            raise GameError("need three row and three column operators")

    @property
    def input_distribution(self) -> np.ndarray:
        return np.full((3, 3), 1 / 9)

    def term(self, i: int, j: int) -> PauliString:
        """Joint 6-qubit string ``A_i (x) B_j``."""
        _check_input(i, j)
        return self.rows[i].tensor(self.cols[j])

    def term_masks(self):
        """``(x_masks, z_masks, coeffs)`` arrays of shape (3, 3) for the kernels."""
        xm = np.zeros((3, 3), dtype=np.int64)
        zm = np.zeros((3, 3), dtype=np.int64)
        cf = np.zeros((3, 3), dtype=complex)
        for i in range(3):
            for j in range(3):
                xm[i, j], zm[i, j], cf[i, j] = self.term(i, j).masks()
        return xm, zm, cf


def _check_input(i, j):
    if i not in (0, 1, 2) or j not in (0, 1, 2):
        raise GameError(f"input ({i}, {j}) out of range")


def win_projector(spec: GameSpec, i: int, j: int) -> np.ndarray:
    return 0.5 * (np.eye(64) + dense(spec.term(i, j)))


def value_hamiltonian(spec: GameSpec) -> np.ndarray:
    """``H = -sum_ij A_i (x) B_j`` as a dense 64x64 matrix."""
    h = np.zeros((64, 64), dtype=complex)
    for i in range(3):
        for j in range(3):
            h -= dense(spec.term(i, j))
    return h


def quantum_game_value(cost: float) -> float:
    """Uniform-average winning probability for a value-Hamiltonian cost."""
    if not -9.0 - 1e-9 <= cost <= 9.0 + 1e-9:
        raise GameError(f"cost {cost} outside [-9, 9]")
    return 0.5 - cost / 18.0


def spectrum(spec: GameSpec, tol: float = 1e-9) -> tuple[float, float, int]:
    """Min eigenvalue, max eigenvalue and ground-space dimension of H."""
    evals = np.linalg.eigvalsh(value_hamiltonian(spec))
    lo, hi = float(evals[0]), float(evals[-1])
    return lo, hi, int(np.sum(evals < lo + tol))


def _assignments(product: int) -> list[tuple[int, int, int]]:
    return [bits for bits in itertools.product((0, 1), repeat=3) if (-1) ** sum(bits) == product]


ALICE_ASSIGNMENTS = _assignments(ALICE_PRODUCT)
BOB_ASSIGNMENTS = _assignments(BOB_PRODUCT)


@dataclass(frozen=True)
class ClassicalStrategy:
    """Deterministic answers: ``alice[i]`` for row i, ``bob[j]`` for column j."""

    alice: tuple[tuple[int, int, int], ...]
    bob: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if any(a not in ALICE_ASSIGNMENTS for a in self.alice):
            raise GameError("Alice row assignment violates the row parity")
        if any(b not in BOB_ASSIGNMENTS for b in self.bob):
            raise GameError("Bob column assignment violates the column parity")

    def wins(self) -> int:
        return sum(self.alice[i][j] == self.bob[j][i] for i in range(3) for j in range(3))

    def value(self) -> Fraction:
        return Fraction(self.wins(), 9)


def classical_value_bruteforce() -> tuple[Fraction, int]:
    """Best deterministic winning probability and the number of optimal pairs."""
    # alice_bits[s, i, k]: bit k of Alice's row i under strategy s
    alice_bits = np.array(list(itertools.product(ALICE_ASSIGNMENTS, repeat=3)))
    bob_bits = np.array(list(itertools.product(BOB_ASSIGNMENTS, repeat=3)))
    # agree[s, t, i, j] = alice[s, i, j] == bob[t, j, i]
    agree = alice_bits[:, None, :, :] == bob_bits.transpose(0, 2, 1)[None, :, :, :]
    wins = agree.sum(axis=(2, 3))
    best = int(wins.max())
    return Fraction(best, 9), int(np.sum(wins == best))
