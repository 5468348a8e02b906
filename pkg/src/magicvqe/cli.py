"""Command-line entry point.

Commands::

    magicvqe train     [--config PATH] [--out DIR] [--seed N]
    magicvqe verify    --params PATH [--shots N] [--seed N] [--out DIR]
    magicvqe classical
    magicvqe spectrum

Exit status: 0 success, 1 usage or I/O error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from . import _kernels
from .ansatz import ShapeError
from .config import (
    ConfigError,
    atomic_write,
    dump_json,
    history_csv,
    load_config,
    load_params,
    params_document,
)
from .game import GameSpec, classical_value_bruteforce, spectrum
from .simulator import prepare_bell_stack
from .training import NumericalError, TrainConfig, train
from .verify import verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2

log = logging.getLogger("magicvqe")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_train(args) -> int:
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config = dataclasses.replace(config, seed=args.seed)
    except ConfigError as exc:
        return _fail(EXIT_USAGE, str(exc))
    out = Path(args.out or config.out_dir)
    tc = TrainConfig(
        learning_rate=float(config.learning_rate),
        iterations=config.iterations,
        seed=config.seed,
        layers=config.layers,
    )
    try:
        trace = train(tc)
    except NumericalError as exc:
        return _fail(EXIT_NUMERICAL, str(exc))
    doc = params_document(trace.final_params, config, trace.initial_cost, trace.final_cost)
    try:
        atomic_write(out / "history.csv", history_csv(trace))
        atomic_write(out / "params.json", dump_json(doc))
    except (OSError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"cannot write outputs to {out}: {exc}")
    print(f"final cost {trace.final_cost!r} after {trace.iterations} iterations -> {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        params, config, doc = load_params(args.params)
    except (ConfigError, ShapeError) as exc:
        return _fail(EXIT_USAGE, str(exc))
    shots = args.shots if args.shots is not None else config.shots_per_input
    seed = args.seed if args.seed is not None else config.seed
    if shots < 1:
        return _fail(EXIT_USAGE, "--shots must be positive")
    out = Path(args.out or config.out_dir)
    spec = GameSpec()
    state = prepare_bell_stack()
    try:
        report = verify(state, spec, params, shots, seed)
    except (ValueError, FloatingPointError) as exc:
        return _fail(EXIT_NUMERICAL, str(exc))
    tol = config.tolerances
    report.extra["trained_final_cost"] = doc.get("final_cost")
    report.extra["checks"] = {
        "converged": report.cost <= tol["converged_cost"],
        "win_rate_ok": report.win_rates.overall >= tol["min_win_rate"],
        "tolerances": dict(tol),
    }
    try:
        atomic_write(out / "report.json", dump_json(report.to_dict()))
    except (OSError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"cannot write report to {out}: {exc}")
    print(
        f"cost {report.cost!r} game value {report.game_value!r} "
        f"win rate {report.win_rates.overall!r} -> {out / 'report.json'}"
    )
    return EXIT_OK


def cmd_classical(args) -> int:
    value, count = classical_value_bruteforce()
    print(f"classical value {value} = {float(value)!r}")
    print(f"optimal deterministic strategy pairs: {count} of 4096")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    lo, hi, dim = spectrum(GameSpec())
    print(f"min eigenvalue {lo!r}")
    print(f"max eigenvalue {hi!r}")
    print(f"ground space dimension {dim}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="magicvqe", description="Variational Magic Square Game strategies")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="train the measurement unitaries with Adam")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="output directory (overrides out_dir)")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("verify", help="run every post-training check on a parameters file")
    p.add_argument("--params", required=True, help="params.json written by train")
    p.add_argument("--shots", type=int, help="shots per input pair")
    p.add_argument("--seed", type=int, help="sampling seed")
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classical", help="exhaustive classical value")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("spectrum", help="extreme eigenvalues of the value Hamiltonian")
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    log.debug("kernel backend: %s", _kernels.BACKEND)
    return args.func(args)
