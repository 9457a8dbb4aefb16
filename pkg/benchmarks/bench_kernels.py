"""Benchmark the numba kernels against the pure-numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py

Covers the two hot paths: numeric two-pulse propagation over parameter
grids, and the exhaustive gate-quadruple search (all 16 gates per table).
"""

import math
import time

import numpy as np

from nmrlogic import _kernels as k
from nmrlogic.gates import ALL_GATES
from nmrlogic.observables import GridSpec, InitialState, ObservableKind
from nmrlogic.synthesis import Scenario, scenario_table

PI = math.pi


def best_of(func, repeats=3):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_propagation(n_points):
    rng = np.random.default_rng(42)
    phi2, beta2, phi1, beta1 = rng.uniform(-2 * PI, 2 * PI, size=(4, n_points))

    def run_numpy():
        k.two_pulse_components_numpy(phi2, beta2, phi1, beta1, 1.0, True)

    results = {"points": n_points, "numpy_s": best_of(run_numpy)}
    if k.NUMBA_AVAILABLE:
        def run_numba():
            k.two_pulse_components_numba(phi2, beta2, phi1, beta1, 1.0, True)

        run_numba()  # JIT warm-up
        results["numba_s"] = best_of(run_numba)
    return results


def bench_search(grid_count):
    grid = GridSpec(0.0, PI / 4, grid_count)
    scenario = Scenario(
        InitialState.THERMAL_Z, 1, ObservableKind.MX, ("phi", "beta")
    )
    cand = grid.values()
    table = scenario_table(scenario, cand, cand)
    outputs = [tt.outputs for tt in ALL_GATES]

    def run_numpy():
        for out in outputs:
            k.find_gate_quadruples_numpy(table, out, 1e-9)

    results = {
        "grid": grid_count,
        "quadruples": grid_count**4,
        "numpy_s": best_of(run_numpy),
    }
    if k.NUMBA_AVAILABLE:
        def run_numba():
            for out in outputs:
                k.find_gate_quadruples_numba(table, out, 1e-9)

        run_numba()  # JIT warm-up
        results["numba_s"] = best_of(run_numba)
    return results


def report(title, rows, size_key):
    print(f"\n{title}")
    print("-" * len(title))
    for row in rows:
        line = f"  {size_key}={row[size_key]:>9,}  numpy {row['numpy_s'] * 1e3:9.2f} ms"
        if "numba_s" in row:
            speedup = row["numpy_s"] / row["numba_s"]
            line += f"  numba {row['numba_s'] * 1e3:9.2f} ms  speedup {speedup:5.2f}x"
        print(line)


def main():
    print(f"numba available: {k.NUMBA_AVAILABLE}; active backend: "
          f"{'numba' if k.NUMBA_ENABLED else 'numpy'}")
    report(
        "two-pulse propagation (points per grid)",
        [bench_propagation(n) for n in (10_201, 40_401, 160_801)],
        "points",
    )
    report(
        "gate-quadruple search, all 16 gates (quadruples per gate)",
        [bench_search(n) for n in (16, 24, 32)],
        "quadruples",
    )


if __name__ == "__main__":
    main()
