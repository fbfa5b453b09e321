#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the three hot kernels on both available backends and prints a
speedup table.  Results must agree exactly (integer counts) between
backends; the benchmark asserts that while it is at it.

Usage: python benchmarks/bench_kernels.py [--triples N] [--census-bits N]
"""

import argparse
import time

import numpy as np

from genegeo._core import available_backends
from genegeo.harness import _random_bit_batch, _random_real_batch


def _time(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--triples", type=int, default=200_000)
    parser.add_argument("--census-bits", type=int, default=6)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("note: compiled backend not built; timing the fallback only")

    rng = np.random.default_rng(args.seed)
    bit_batch = _random_bit_batch(rng, 64, args.triples)
    real_batch = _random_real_batch(rng, 16, args.triples)

    cases = [
        (f"census_bits({args.census_bits})", lambda mod: mod.census_bits(args.census_bits)),
        (f"bit_sweep({args.triples:,} x 64)", lambda mod: mod.bit_sweep(*bit_batch)),
        (
            f"real_sweep({args.triples:,} x 16)",
            lambda mod: mod.real_sweep(*real_batch, (1, 2, 3), 1e-9),
        ),
    ]

    print(f"{'kernel':32s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, call in cases:
        times = {}
        results = {}
        for name, mod in backends.items():
            times[name], results[name] = _time(lambda m=mod: call(m))
        if len(results) == 2:
            a, b = results["python"], results["cython"]
            if isinstance(a, np.ndarray):
                assert np.array_equal(a, b), f"{label}: backend mismatch"
            else:
                # integer violation counts must agree exactly; float max
                # deviations may differ in the last digits (summation order)
                assert a[:-1] == b[:-1], f"{label}: backend mismatch"
        py = times.get("python", float("nan"))
        cy = times.get("cython", float("nan"))
        speedup = f"{py / cy:7.1f}x" if "cython" in times else "     n/a"
        cy_s = f"{cy:9.4f}s" if "cython" in times else "      n/a"
        print(f"{label:32s} {py:9.4f}s {cy_s} {speedup}")


if __name__ == "__main__":
    main()
