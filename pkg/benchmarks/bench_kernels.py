"""Compare the compiled and numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--no-train]

Times one cost-plus-gradient evaluation per backend in-process, then one
full default training run per backend in a subprocess (the backend is fixed
at import, so each run gets its own interpreter).
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from magicvqe._kernels import available_backends
from magicvqe.ansatz import ParamSet
from magicvqe.game import GameSpec
from magicvqe.simulator import prepare_bell_stack

TRAIN_SNIPPET = (
    "import time; from magicvqe import _kernels; from magicvqe.training import TrainConfig, train;"
    "t = time.perf_counter(); tr = train(TrainConfig(seed=0));"
    "print(_kernels.BACKEND, time.perf_counter() - t, tr.final_cost)"
)


def bench_gradient(repeat):
    psi = prepare_bell_stack().amplitudes
    masks = GameSpec().term_masks()
    params = ParamSet.standard_normal(np.random.default_rng(0), 3)
    rows = {}
    for name, mod in sorted(available_backends().items()):
        call = lambda: mod.cost_gradient(psi, params.theta, params.phi, *masks)  # noqa: E731
        call()
        rows[name] = min(timeit.repeat(call, number=1, repeat=repeat))
    return rows


def bench_train(backend):
    env = dict(os.environ, MAGICVQE_KERNEL=backend)
    out = subprocess.run([sys.executable, "-c", TRAIN_SNIPPET], env=env, capture_output=True, text=True, check=True)
    name, seconds, final = out.stdout.split()
    return name, float(seconds), float(final)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--no-train", action="store_true")
    args = ap.parse_args(argv)

    grad = bench_gradient(args.repeat)
    print("cost + gradient (162 params, best of %d):" % args.repeat)
    for name, t in grad.items():
        print(f"  {name:9s} {t * 1e3:8.2f} ms")
    if len(grad) == 2:
        print(f"  speedup   {grad['python'] / grad['compiled']:8.1f}x")

    if not args.no_train:
        print("full training run (200 Adam steps, seed 0):")
        for backend in sorted(grad):
            name, seconds, final = bench_train(backend)
            print(f"  {name:9s} {seconds:8.2f} s   final cost {final:.10f}")


if __name__ == "__main__":
    main()
