#!/usr/bin/env python3
"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--n 2000000] [--repeat 5]

Both backends are imported regardless of IRTR_DISABLE_NUMBA; the flag only
changes which one the library dispatches to.
"""
import argparse
import math
import time

import numpy as np

from irtr import _accel, kernels


def best_of(fn, repeat):
    fn()  # warm-up, includes JIT compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2_000_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    n = args.n
    phis = np.linspace(0.0, math.pi, n + 1)[1:]
    shift = math.asin(0.9)
    cases = {
        "normal_block": (
            lambda: kernels.normal_block_numba(np.uint64(7), np.uint64(0), n // 2),
            lambda: kernels.normal_block_numpy(np.uint64(7), np.uint64(0), n // 2),
        ),
        "uniform_block": (
            lambda: kernels.uniform_block_numba(np.uint64(7), np.uint64(0), n),
            lambda: kernels.uniform_block_numpy(np.uint64(7), np.uint64(0), n),
        ),
        "holevo_objective": (
            lambda: kernels.holevo_objective_numba(phis, 0.5, shift, 1e-6),
            lambda: kernels.holevo_objective_numpy(phis, 0.5, shift, 1e-6),
        ),
    }
    print(f"numba available: {_accel.HAVE_NUMBA}, library backend: {_accel.backend_name()}, n = {n}")
    print(f"{'kernel':<18}{'numba [ms]':>12}{'numpy [ms]':>12}{'speed-up':>10}{'max |diff|':>12}")
    for name, (fast, slow) in cases.items():
        a, b = fast(), slow()
        fin = np.isfinite(a)
        assert np.array_equal(fin, np.isfinite(b)), name
        diff = float(np.max(np.abs(a[fin] - b[fin])))
        t_fast = best_of(fast, args.repeat)
        t_slow = best_of(slow, args.repeat)
        print(f"{name:<18}{t_fast * 1e3:12.2f}{t_slow * 1e3:12.2f}{t_slow / t_fast:10.2f}{diff:12.2g}")


if __name__ == "__main__":
    main()
