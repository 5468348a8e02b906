"""Post-training checks of a learned strategy.

Sampling follows one rule throughout: input ``(i, j)`` uses the child seed
``SeedSequence([seed, 3 * i + j])``, so win rates, parity statistics and
intersection agreement for the same ``seed`` all come from the same shots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .ansatz import ParamSet, rotated_observables, term_grid
from .game import ALICE_PRODUCT, BOB_PRODUCT, GameSpec, quantum_game_value
from .pauli import commutator_norm, identity
from .simulator import ALICE, BOB, StateVector, player_sites, sample_sites, sub_seed


class ProvenanceError(ValueError):
    """Report components were computed from different parameters."""


@dataclass
class ExpectationGrid:
    grid: np.ndarray
    alice_marginals: np.ndarray
    bob_marginals: np.ndarray
    params_digest: str


def expectation_grid(state: StateVector, spec: GameSpec, params: ParamSet) -> ExpectationGrid:
    grid = term_grid(state, spec, params)
    no_gates = np.zeros((0, 3, 3))
    alice = np.empty(3)
    bob = np.empty(3)
    for k in range(3):
        # A~_k (x) I: rotate only Alice's register, Bob's letters all identity
        evolved = _kernels.evolve(state.amplitudes, params.theta[k], no_gates)
        alice[k] = _kernels.pauli_expectation(evolved, *spec.rows[k].tensor(identity(3)).masks())
        evolved = _kernels.evolve(state.amplitudes, no_gates, params.phi[k])
        bob[k] = _kernels.pauli_expectation(evolved, *identity(3).tensor(spec.cols[k]).masks())
    return ExpectationGrid(grid, alice, bob, params.digest())


@dataclass
class CommutatorReport:
    norms: dict[str, float]
    params_digest: str


def commutator_report(params: ParamSet, spec: GameSpec | None = None) -> CommutatorReport:
    """Frobenius norms of ``[A~_i, A~_i']`` and ``[B~_j, B~_j']``."""
    spec = spec or GameSpec()
    alice, bob = rotated_observables(spec, params)
    norms = {}
    for name, ops in (("A", alice), ("B", bob)):
        for p, q in combinations(range(3), 2):
            norms[f"{name}{p}{name}{q}"] = commutator_norm(ops[p], ops[q])
    return CommutatorReport(norms, params.digest())


def sample_input(state: StateVector, spec: GameSpec, params: ParamSet, i: int, j: int, shots: int, seed: int):
    """Per-site +/-1 outcomes for input (i, j): columns 0-2 Alice, 3-5 Bob."""
    evolved = StateVector(_kernels.evolve(state.amplitudes, params.theta[i], params.phi[j]))
    sites = player_sites(spec.rows[i], ALICE) + player_sites(spec.cols[j], BOB)
    return sample_sites(evolved, sites, shots, sub_seed(seed, 3 * i + j))


def _all_samples(state, spec, params, shots, seed):
    if shots < 1:
        raise ValueError("shots must be at least 1")
    return {(i, j): sample_input(state, spec, params, i, j, shots, seed) for i in range(3) for j in range(3)}


@dataclass
class WinRates:
    per_input: np.ndarray
    overall: float
    shots: int
    params_digest: str


def _win_rates(samples, shots, digest):
    per = np.empty((3, 3))
    for (i, j), s in samples.items():
        a = s[:, :3].prod(axis=1)
        b = s[:, 3:].prod(axis=1)
        per[i, j] = np.mean(a * b == 1)
    return WinRates(per, float(per.mean()), shots, digest)


def sampled_win_rate(state: StateVector, spec: GameSpec, params: ParamSet, shots: int, seed: int) -> WinRates:
    return _win_rates(_all_samples(state, spec, params, shots, seed), shots, params.digest())


@dataclass
class ParityStats:
    """Fractions over shots for every input (i, j).

    ``alice_plus[i, j]``: Alice's three-site product was +1.
    ``bob_plus[i, j]``: Bob's three-site product was +1.
    ``intersection[i, j]``: Alice's site-j value equalled Bob's site-i value.
    """

    alice_plus: np.ndarray
    bob_plus: np.ndarray
    intersection: np.ndarray
    shots: int
    params_digest: str
    alice_target: int = ALICE_PRODUCT
    bob_target: int = BOB_PRODUCT

    @property
    def alice_constraint_rate(self) -> float:
        frac = self.alice_plus if self.alice_target == 1 else 1 - self.alice_plus
        return float(frac.mean())

    @property
    def bob_constraint_rate(self) -> float:
        frac = self.bob_plus if self.bob_target == 1 else 1 - self.bob_plus
        return float(frac.mean())


def _parity(samples, shots, digest):
    alice_plus = np.empty((3, 3))
    bob_plus = np.empty((3, 3))
    inter = np.empty((3, 3))
    for (i, j), s in samples.items():
        alice_plus[i, j] = np.mean(s[:, :3].prod(axis=1) == 1)
        bob_plus[i, j] = np.mean(s[:, 3:].prod(axis=1) == 1)
        inter[i, j] = np.mean(s[:, j] == s[:, 3 + i])
    return ParityStats(alice_plus, bob_plus, inter, shots, digest)


def parity_and_intersection(state: StateVector, spec: GameSpec, params: ParamSet, shots: int, seed: int) -> ParityStats:
    return _parity(_all_samples(state, spec, params, shots, seed), shots, params.digest())


def sample_checks(state, spec, params, shots, seed) -> tuple[WinRates, ParityStats]:
    """Win rates and parity statistics from one shared set of shots."""
    samples = _all_samples(state, spec, params, shots, seed)
    digest = params.digest()
    return _win_rates(samples, shots, digest), _parity(samples, shots, digest)


@dataclass
class VerificationReport:
    params_digest: str
    grid: np.ndarray
    alice_marginals: np.ndarray
    bob_marginals: np.ndarray
    commutator_norms: dict[str, float]
    win_rates: WinRates
    parity: ParityStats
    cost: float
    game_value: float
    iterations: int
    seed: int
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "params_digest": self.params_digest,
            "cost": self.cost,
            "game_value": self.game_value,
            "iterations": self.iterations,
            "expectation_grid": self.grid.tolist(),
            "alice_marginals": self.alice_marginals.tolist(),
            "bob_marginals": self.bob_marginals.tolist(),
            "commutator_norms": dict(self.commutator_norms),
            "sampling": {
                "seed": self.seed,
                "shots_per_input": self.win_rates.shots,
                "win_rate_per_input": self.win_rates.per_input.tolist(),
                "win_rate": self.win_rates.overall,
            },
            "parity": {
                "alice_target_product": self.parity.alice_target,
                "bob_target_product": self.parity.bob_target,
                "alice_product_plus_fraction": self.parity.alice_plus.tolist(),
                "bob_product_plus_fraction": self.parity.bob_plus.tolist(),
                "alice_constraint_rate": self.parity.alice_constraint_rate,
                "bob_constraint_rate": self.parity.bob_constraint_rate,
            },
            "intersection_agreement": self.parity.intersection.tolist(),
            **self.extra,
        }


def assemble_report(
    grid: ExpectationGrid,
    commutators: CommutatorReport,
    wins: WinRates,
    parity: ParityStats,
    seed: int,
    trace=None,
) -> VerificationReport:
    """Bundle checks computed on one ParamSet; the game value comes from the exact cost."""
    digests = {grid.params_digest, commutators.params_digest, wins.params_digest, parity.params_digest}
    if trace is not None:
        digests.add(trace.final_params.digest())
    if len(digests) != 1:
        raise ProvenanceError(f"components computed on different parameters: {sorted(digests)}")
    cost = 0.0
    for v in grid.grid.ravel():
        cost -= float(v)
    return VerificationReport(
        params_digest=grid.params_digest,
        grid=grid.grid,
        alice_marginals=grid.alice_marginals,
        bob_marginals=grid.bob_marginals,
        commutator_norms=commutators.norms,
        win_rates=wins,
        parity=parity,
        cost=cost,
        game_value=quantum_game_value(cost),
        iterations=0 if trace is None else trace.iterations,
        seed=seed,
    )


def verify(state: StateVector, spec: GameSpec, params: ParamSet, shots: int, seed: int, trace=None) -> VerificationReport:
    """Run every check on ``params`` and assemble the report."""
    wins, parity = sample_checks(state, spec, params, shots, seed)
    return assemble_report(
        expectation_grid(state, spec, params), commutator_report(params, spec), wins, parity, seed, trace
    )
