"""Benchmark the compiled budget-DP kernels against the pure-Python fallback.

Usage: python3 bench/benchmark_kernels.py [--nodes N] [--edges M] [--budget B]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from secroute._kernels import dp_py

try:
    from secroute._kernels import dp_cy
except ImportError:
    dp_cy = None


def random_instance(rng, n, m, w_max):
    eu = rng.integers(0, n, size=m).astype(np.int32)
    ev = (eu + rng.integers(1, n, size=m)).astype(np.int32) % n
    ew = rng.integers(0, w_max + 1, size=m).astype(np.int32)
    ec1 = rng.uniform(0.0, 10.0, size=m)
    return eu, ev, ew, ec1


def bench(fn, repeat, *args):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=60)
    ap.add_argument("--edges", type=int, default=500)
    ap.add_argument("--budget", type=int, default=4000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    n, m, b = args.nodes, args.edges, args.budget
    eu, ev, ew, ec1 = random_instance(rng, n, m, max(1, b // (n - 1)))
    backends = [("python", dp_py)] + ([("cython", dp_cy)] if dp_cy else [])

    print(f"instance: n={n} edges={m} budget={b}")
    for name, kernel in (("budget_dp", lambda k: (n, b, 0, eu, ev, ew, ec1)),
                         ("hop_budget_dp", lambda k: (n, b, n - 1, 0, n - 1, eu, ev, ew, ec1))):
        times = {}
        results = {}
        for label, mod in backends:
            fn = getattr(mod, name)
            t, out = bench(fn, args.repeat, *kernel(None))
            times[label] = t
            results[label] = out[0] if isinstance(out, tuple) else out
            print(f"{name:16s} {label:7s} {t * 1000:10.2f} ms")
        if len(backends) == 2:
            agree = np.allclose(results["python"], results["cython"], equal_nan=True)
            print(f"{name:16s} speedup {times['python'] / times['cython']:10.1f}x  "
                  f"results {'agree' if agree else 'DISAGREE'}")


if __name__ == "__main__":
    main()
