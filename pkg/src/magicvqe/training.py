"""Adam training loop for the measurement unitaries."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .ansatz import ParamSet, cost, cost_and_gradient
from .game import GameSpec
from .simulator import StateVector, prepare_bell_stack

log = logging.getLogger(__name__)


class NumericalError(RuntimeError):
    """Non-finite cost or gradient during training."""


class Adam:
    """Adam on a flat parameter vector (bias-corrected moments)."""

    def __init__(self, lr=0.1, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = None
        self.v = None
        self.t = 0

    def step(self, params: np.ndarray, grad: np.ndarray) -> np.ndarray:
        """Return the updated parameters; ``params`` is left untouched."""
        if self.m is None:
            self.m = np.zeros_like(params)
            self.v = np.zeros_like(params)
        self.t += 1
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad * grad
        m_hat = self.m / (1 - self.beta1**self.t)
        v_hat = self.v / (1 - self.beta2**self.t)
        return params - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    iterations: int = 200
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    seed: int = 0
    layers: int = 3

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")
        if self.layers < 0:
            raise ValueError("layers must be non-negative")


@dataclass
class TrainTrace:
    """Per-iteration history of one run.

    ``costs[k]`` is the cost after update ``k``; ``grad_norms[k]`` is the
    gradient norm that drove it and ``update_norms[k]`` the size of the step.
    """

    initial_params: ParamSet
    final_params: ParamSet
    initial_cost: float
    costs: list[float] = field(default_factory=list)
    grad_norms: list[float] = field(default_factory=list)
    update_norms: list[float] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.costs)

    @property
    def final_cost(self) -> float:
        return self.costs[-1] if self.costs else self.initial_cost


def _check_finite(what, value, iteration):
    if not np.all(np.isfinite(value)):
        raise NumericalError(f"non-finite {what} at iteration {iteration}")


def train(
    config: TrainConfig,
    spec: GameSpec | None = None,
    state: StateVector | None = None,
    initial: ParamSet | None = None,
) -> TrainTrace:
    """Minimise the value-Hamiltonian cost with Adam from a seeded normal start."""
    spec = spec or GameSpec()
    state = state or prepare_bell_stack()
    if initial is None:
        initial = ParamSet.standard_normal(np.random.default_rng(config.seed), config.layers)
    opt = Adam(config.learning_rate, config.beta1, config.beta2, config.eps)

    params = initial
    flat = params.flat()
    start_cost = cost(state, spec, params)
    _check_finite("cost", start_cost, 0)
    trace = TrainTrace(initial, initial, start_cost)
    for it in range(config.iterations):
        _, grad = cost_and_gradient(state, spec, params)
        g = grad.flat()
        _check_finite("gradient", g, it)
        with np.errstate(invalid="ignore", over="ignore"):
            new_flat = opt.step(flat, g)
        _check_finite("parameters", new_flat, it)
        params = ParamSet.from_flat(new_flat, config.layers)
        value = cost(state, spec, params)
        _check_finite("cost", value, it)
        trace.grad_norms.append(float(np.linalg.norm(g)))
        trace.update_norms.append(float(np.linalg.norm(new_flat - flat)))
        trace.costs.append(value)
        flat = new_flat
        if it % 50 == 0:
            log.debug("iter %d cost %.6f", it, value)
    trace.final_params = params
    return trace
