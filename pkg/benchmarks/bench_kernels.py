"""Compiled vs pure-Python sweep kernels.

    python3 benchmarks/bench_kernels.py [--sizes 100,1000] [--queries 50] [--repeat 3]

Reports the best wall time per kernel and the speed-up. Both backends are
checked to agree on every timed call.
"""
import argparse
import time

import numpy as np

from conedepth import ORTHANT, dual_base, kernels
from conedepth.quantile import level


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,1000")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--queries", type=int, default=50, help="depth queries per size")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    base = dual_base(ORTHANT)
    rng = np.random.default_rng(args.seed)

    print(f"{'kernel':<16}{'N':>8}{'compiled [s]':>15}{'pure [s]':>12}{'speed-up':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        X = rng.uniform(0, 1, size=(n, 2))
        zs = rng.uniform(0, 1, size=(args.queries, 2))
        K = level(n, 0.5)
        cases = {
            "depth_many": lambda m: m.depth_many(X, zs, base.v1, base.v2)[0],
            "quantile_sweep": lambda m: m.quantile_sweep(X, K, base.v1, base.v2)[1],
        }
        for name, call in cases.items():
            tc, rc = best_of(lambda: call(kernels.compiled), args.repeat)
            tp, rp = best_of(lambda: call(kernels.pure), 1 if n > 1000 else args.repeat)
            if not np.array_equal(np.asarray(rc), np.asarray(rp)):
                raise SystemExit(f"{name} N={n}: backends disagree")
            print(f"{name:<16}{n:>8}{tc:>15.4f}{tp:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
