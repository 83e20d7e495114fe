"""Compare the compiled kernel core against the pure-Python fallback.

Usage: python3 benchmarks/bench_backends.py [--count N] [--seed S]

Times a pairwise L_1 distance matrix, a p=3.5 distance matrix and an
L_2 Gram matrix over the same synthetic collection on each available
backend and reports the speedup.  Results are checked to be bitwise
identical across backends before timings are printed.
"""

import argparse
import time

import numpy as np

import pcflib as pl
from pcflib import _backend


def run_case(label, fn):
    results = {}
    timings = {}
    for name in _backend.available_backends():
        _backend.set_backend(name)
        t0 = time.perf_counter()
        results[name] = np.asarray(fn())
        timings[name] = time.perf_counter() - t0
    names = list(timings)
    if len(names) == 2 and not np.array_equal(results[names[0]], results[names[1]]):
        raise AssertionError(f"{label}: backends disagree")
    line = f"{label:24s}"
    for name in names:
        line += f"  {name}: {timings[name]:8.3f}s"
    if len(names) == 2:
        line += f"  speedup: {timings['python'] / timings['compiled']:6.1f}x"
    print(line)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=60,
                    help="collection size (default 60)")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    fs = pl.synthetic_benchmark(args.count, rng=pl.RngSpec(args.seed))
    total = sum(f.size for f in fs)
    print(f"collection: {args.count} PCFs, {total} points total")
    print(f"available backends: {', '.join(_backend.available_backends())}")

    run_case("pdist p=1", lambda: pl.pdist(fs, p=1.0, workers=1))
    run_case("pdist p=3.5", lambda: pl.pdist(fs, p=3.5, workers=1))
    run_case("l2_kernel", lambda: pl.l2_kernel(fs, workers=1))


if __name__ == "__main__":
    main()
