#!/usr/bin/env python3
"""Benchmark the compiled integration kernel against the pure-numpy fallback.

Runs the same annealing problems with both kernels, reports wall time per run
and the speedup, and cross-checks that the trajectories agree.

Usage:
    python benchmarks/benchmark_backends.py [--t-final 2000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from iqa import IntegratorConfig, Schedule, anneal, available_backends, basis_descriptor, initial_couplings

CASES = [(50, 4), (50, 6), (50, 25), (60, 30)]


def time_run(basis, T, cfg, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        traj = anneal(initial_couplings(basis), Schedule(T), cfg, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, traj


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t-final", type=float, default=2000.0,
                        help="annealing time per run (default 2000)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions, best time kept (default 3)")
    args = parser.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernel not built; nothing to compare")
        return

    T = args.t_final
    cfg = IntegratorConfig.for_time(T)
    print(f"T = {T:g}, steps = {cfg.steps}, {cfg.sample_count} samples\n")
    print(f"{'N':>4} {'l':>4} {'dim':>4} {'python':>10} {'cython':>10} "
          f"{'speedup':>8} {'max |diff|':>11}")
    for N, l in CASES:
        basis = basis_descriptor(N, l)
        t_py, traj_py = time_run(basis, T, cfg, "python", args.repeat)
        t_cy, traj_cy = time_run(basis, T, cfg, "cython", args.repeat)
        diff = float(np.max(np.abs(traj_py.hs - traj_cy.hs)))
        print(f"{N:>4} {l:>4} {basis.size:>4} {t_py:>9.2f}s {t_cy:>9.2f}s "
              f"{t_py / t_cy:>7.1f}x {diff:>11.2e}")


if __name__ == "__main__":
    main()
