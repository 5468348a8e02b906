"""Variational strategies for the Mermin-Peres magic square game."""

from ._kernels import BACKEND
from .ansatz import ParamSet, cost, gradient
from .game import GameSpec, classical_value_bruteforce, quantum_game_value, spectrum
from .pauli import PauliString
from .simulator import StateVector, prepare_bell_stack
from .training import TrainConfig, train
from .verify import verify

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GameSpec",
    "ParamSet",
    "PauliString",
    "StateVector",
    "TrainConfig",
    "classical_value_bruteforce",
    "cost",
    "gradient",
    "prepare_bell_stack",
    "quantum_game_value",
    "spectrum",
    "train",
    "verify",
]
