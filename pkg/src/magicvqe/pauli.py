"""Signed Pauli strings with exact phase tracking and dense realizations.

A :class:`PauliString` is ``i**phase_exp * P_0 (x) P_1 (x) ... (x) P_{n-1}``.
Dense matrices use the qubit-0-most-significant convention: basis index
``b`` has qubit ``q`` in bit ``n - 1 - q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

LETTERS = "IXYZ"

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# (a, b) -> (exponent of i, letter) for the single-qubit product a*b
_PRODUCT: dict[tuple[str, str], tuple[int, str]] = {}
for _a in LETTERS:
    _PRODUCT[("I", _a)] = (0, _a)
    _PRODUCT[(_a, "I")] = (0, _a)
    _PRODUCT[(_a, _a)] = (0, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PRODUCT[(_a, _b)] = (1, _c)
    _PRODUCT[(_b, _a)] = (3, _c)

_PHASE_PREFIX = {"+": 0, "": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PHASE_LABEL = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class PauliError(ValueError):
    """Raised on malformed Pauli strings or mismatched operands."""


@dataclass(frozen=True)
class PauliString:
    """Tensor product of Pauli letters times ``i**phase_exp``."""

    letters: str
    phase_exp: int = 0

    def __post_init__(self):
        if any(c not in LETTERS for c in self.letters):
            raise PauliError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def parse(cls, label: str) -> "PauliString":
        """Parse labels such as ``"ZZX"``, ``"-XXX"`` or ``"+iY"``."""
        body = label.lstrip("+-i")
        prefix = label[: len(label) - len(body)]
        if prefix not in _PHASE_PREFIX:
            raise PauliError(f"invalid phase prefix in {label!r}")
        return cls(body, _PHASE_PREFIX[prefix])

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def coefficient(self) -> complex:
        return (1, 1j, -1, -1j)[self.phase_exp]

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.letters)

    def __str__(self) -> str:
        return _PHASE_LABEL[self.phase_exp] + self.letters

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __neg__(self) -> "PauliString":
        return PauliString(self.letters, self.phase_exp + 2)

    def tensor(self, other: "PauliString") -> "PauliString":
        """Concatenate ``self (x) other``; phases add."""
        return PauliString(self.letters + other.letters, self.phase_exp + other.phase_exp)

    def masks(self) -> tuple[int, int, complex]:
        """Bit-mask form ``(x_mask, z_mask, c)`` with ``P|b> = c (-1)^{|b & z|} |b ^ x>``.

        ``Y = i X Z`` so every Y letter contributes a factor of ``i`` to ``c``.
        """
        n = self.n_qubits
        x_mask = z_mask = 0
        n_y = 0
        for q, c in enumerate(self.letters):
            bit = 1 << (n - 1 - q)
            if c in "XY":
                x_mask |= bit
            if c in "YZ":
                z_mask |= bit
            n_y += c == "Y"
        return x_mask, z_mask, (1, 1j, -1, -1j)[(self.phase_exp + n_y) % 4]


def _check_lengths(a: PauliString, b: PauliString) -> None:
    if a.n_qubits != b.n_qubits:
        raise PauliError(f"length mismatch: {a.n_qubits} vs {b.n_qubits}")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Group product ``a * b`` with exactly tracked phase."""
    _check_lengths(a, b)
    phase = a.phase_exp + b.phase_exp
    out = []
    for x, y in zip(a.letters, b.letters):
        k, c = _PRODUCT[(x, y)]
        phase += k
        out.append(c)
    return PauliString("".join(out), phase)


def anticommuting_sites(a: PauliString, b: PauliString) -> int:
    _check_lengths(a, b)
    return sum(x != "I" and y != "I" and x != y for x, y in zip(a.letters, b.letters))


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff an even number of sites anticommute."""
    return anticommuting_sites(a, b) % 2 == 0


def dense(p: PauliString) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix, qubit 0 most significant."""
    if p.n_qubits == 0:
        return np.array([[p.coefficient]], dtype=complex)
    mat = reduce(np.kron, (_SINGLE[c] for c in p.letters))
    return p.coefficient * mat


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of ``ab - ba``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PauliError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a @ b - b @ a, ord="fro"))


def identity(n: int) -> PauliString:
    return PauliString("I" * n)
