"""Compare the compiled kernels with the NumPy fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--dim 10] [--repeat 20000] [--runs 3]

Kernel timings import both backends directly. The end-to-end timing runs a
full sphere optimisation in a subprocess per backend, with ``FDO_PURE_PYTHON``
set for the fallback, so backend selection goes through the normal import path.
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from fdo import _kernels_py

try:
    from fdo import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

RUN_SNIPPET = """
import json, time
from fdo import kernels
from fdo.engine import run
from fdo.objectives import sphere
from fdo.types import FdoConfig, SearchSpace
t0 = time.perf_counter()
for seed in range({runs}):
    res = run(SearchSpace({dim}, -100, 100), sphere, FdoConfig(population=30, iterations=500, seed=seed))
print(json.dumps({{"backend": kernels.BACKEND, "seconds": (time.perf_counter() - t0) / {runs},
                  "best": res.best_fitness}}))
"""


def kernel_table(dim, repeat):
    rng = np.random.default_rng(0)
    x, xs, r = rng.uniform(-100, 100, dim), rng.uniform(-100, 100, dim), rng.uniform(-1, 1, dim)
    lo, hi = np.full(dim, -100.0), np.full(dim, 100.0)
    calls = {
        "pace_vector": lambda m: m.pace_vector(x, xs, 0.4, r, 12.0),
        "move": lambda m: m.move(x, r, lo, hi, True),
        "sphere": lambda m: m.sphere(x),
        "rastrigin": lambda m: m.rastrigin(x),
        "rosenbrock": lambda m: m.rosenbrock(x),
        "ackley": lambda m: m.ackley(x),
    }
    rows = []
    for name, call in calls.items():
        py = min(timeit.repeat(lambda: call(_kernels_py), number=repeat, repeat=3)) / repeat
        c = None
        if _kernels_c is not None:
            c = min(timeit.repeat(lambda: call(_kernels_c), number=repeat, repeat=3)) / repeat
        rows.append((name, py, c))
    return rows


def end_to_end(dim, runs, pure):
    env = dict(os.environ)
    env.pop("FDO_PURE_PYTHON", None)
    if pure:
        env["FDO_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", RUN_SNIPPET.format(dim=dim, runs=runs)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=20000)
    ap.add_argument("--runs", type=int, default=3, help="full runs per backend (30 bees, 500 iterations)")
    args = ap.parse_args(argv)

    print(f"kernel calls, dim={args.dim} (microseconds per call)")
    print(f"{'kernel':<12} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, py, c in kernel_table(args.dim, args.repeat):
        if c is None:
            print(f"{name:<12} {py * 1e6:>10.3f} {'n/a':>10} {'':>8}")
        else:
            print(f"{name:<12} {py * 1e6:>10.3f} {c * 1e6:>10.3f} {py / c:>7.1f}x")

    print(f"\nfull run: sphere {args.dim}-D, 30 bees, 500 iterations, mean of {args.runs} seeds")
    results = [end_to_end(args.dim, args.runs, pure) for pure in (False, True)]
    for res in results:
        print(f"{res['backend']:<8} {res['seconds']:.3f} s/run  final best {res['best']:.6g}")
    if results[0]["backend"] != results[1]["backend"]:
        a, b = results[0]["best"], results[1]["best"]
        rel = abs(a - b) / max(abs(a), abs(b), 1e-300)
        # objective sums are ordered differently (loop vs np.dot), so runs can drift by ulps
        print(f"speedup {results[1]['seconds'] / results[0]['seconds']:.2f}x, "
              f"final best relative difference {rel:.2g}")


if __name__ == "__main__":
    main()
