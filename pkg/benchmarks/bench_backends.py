"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_backends.py [--repeat 200] [--runs 3]

Prints per-call kernel timings and whole-run timings for each backend.
"""

import argparse
import time
import timeit

import numpy as np

from itea import _backend
from itea.algorithms import Hyperparameters, run
from itea.model import sample_flips
from itea.problems import make_problem


def kernel_cases(rng):
    for n, lam, p in ((500, 50, 1 / 500), (1000, 100, 1 / 1000), (1000, 100, 0.05), (100, 100, 0.5)):
        center = rng.integers(0, 2, size=n).astype(np.uint8)
        center[: n // 2] = 1
        indptr, indices = sample_flips(lam, n, p, rng)
        yield f"n={n} lam={lam} p={p:g}", center, int(center.sum()), indptr, indices


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=200)
    parser.add_argument("--runs", type=int, default=3)
    args = parser.parse_args()

    backends = sorted(_backend.BACKENDS)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24}{'case':<28}" + "".join(f"{b + ' (us)':>16}" for b in backends))
    for label, center, f, indptr, indices in kernel_cases(rng):
        rows = np.arange(min(5, indptr.size - 1))
        calls = {
            "onemax_offspring": lambda k: k.onemax_offspring(center, f, indptr, indices),
            "leadingones_offspring": lambda k: k.leadingones_offspring(center, indptr, indices),
            "row_flip_counts": lambda k: k.row_flip_counts(indptr, indices, rows, center.size),
            "materialize": lambda k: k.materialize(center, indptr, indices, rows),
        }
        for name, call in calls.items():
            times = []
            for b in backends:
                mod = _backend.BACKENDS[b]
                times.append(min(timeit.repeat(lambda: call(mod), number=args.repeat, repeat=3)) / args.repeat * 1e6)
            print(f"{name:<24}{label:<28}" + "".join(f"{t:>16.1f}" for t in times))

    print()
    print(f"{'full run':<52}" + "".join(f"{b + ' (s/run)':>16}" for b in backends))
    for function, n, variant in (("onemax", 1000, "eit"), ("leadingones", 500, "eit"),
                                 ("leadingones", 500, "two_rate"), ("onemax", 300, "it")):
        problem = make_problem(function, n)
        hp = Hyperparameters.defaults(n, variant, mu=2 if variant == "it" else 1)
        times, runtimes = [], []
        for b in backends:
            with _backend.use(b):
                t0 = time.perf_counter()
                rts = [run(hp, problem, 10**8, seed).runtime for seed in range(args.runs)]
                times.append((time.perf_counter() - t0) / args.runs)
                runtimes.append(rts)
        same = "identical" if all(r == runtimes[0] for r in runtimes) else "DIFFERENT"
        print(f"{function + ' n=' + str(n) + ' ' + variant:<40}{same:<12}" + "".join(f"{t:>16.3f}" for t in times))


if __name__ == "__main__":
    main()
