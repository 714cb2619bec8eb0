#!/usr/bin/env python3
"""Benchmark the pure-numpy kernels against the compiled extension.

Solves the headline coloring systems (Allen-Swenberg links over the
25-element symplectic quandle) with each available kernel backend,
reports best-of-three wall times, and checks that both backends return
identical coloring sets.

    python benchmarks/bench_backends.py
"""

import time

import numpy as np

from qie import _kernels, algebra, diagram, solver


def run(backend, d, q, repeat=3):
    _kernels.select_backend(backend)
    best = float("inf")
    hom = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        hom = solver.solve(d, q)
        best = min(best, time.perf_counter() - t0)
    return best, hom


def main():
    q = algebra.build_quandle("symplectic:p=5,n=1")
    fixtures = [
        ("hopfsum", diagram.gen_hopf_sum()),
        ("aslink1", diagram.gen_allen_swenberg(1)),
        ("aslink2", diagram.gen_allen_swenberg(2)),
        ("aslink3", diagram.gen_allen_swenberg(3)),
    ]
    backends = ["pure"]
    try:
        _kernels.select_backend("fast")
        backends.append("fast")
    except ImportError:
        print("compiled backend unavailable; timing pure kernels only")
    finally:
        _kernels.select_backend("pure")

    print(f"{'fixture':<10} {'backend':<8} {'best of 3':>10}  colorings")
    try:
        for name, d in fixtures:
            results = {}
            for b in backends:
                dt, hom = run(b, d, q)
                results[b] = hom
                print(f"{name:<10} {b:<8} {dt:>9.3f}s  {len(hom)}")
            if len(results) == 2:
                same = np.array_equal(
                    results["pure"].colorings, results["fast"].colorings
                )
                if not same:
                    raise SystemExit(f"backend mismatch on {name}")
    finally:
        _kernels.select_backend(None)
    if len(backends) == 2:
        print("backends agree on all fixtures")


if __name__ == "__main__":
    main()
