"""Compiled vs pure-Python kernels on representative inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat R]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from acyclic_bounds import kernels
from acyclic_bounds.bounds import rho_table
from acyclic_bounds.models import generate
from acyclic_bounds.oracles import all_rankings


def _cases():
    er = generate("er", seed=1, n=100, p=0.5)
    sparse = generate("two-type", seed=2, n=200, p_low=0.9, q1=0.7, q2=0.5, q3=0.01)
    small = generate("er", seed=3, n=8, p=0.4)
    brute = generate("er", seed=4, n=14, p=0.25)
    masks = [sum(1 << w for w in brute.in_nbrs(v)) for v in range(brute.n)]
    rng = np.random.default_rng(5)
    mc_ranks = rng.permuted(np.tile(np.arange(1, 101, dtype=np.int64), (2000, 1)), axis=1)
    return [
        ("covariance_sum  ER n=100 p=0.5", lambda: kernels.covariance_sum(er, rho_table(er))),
        ("covariance_sum  two-type n=200", lambda: kernels.covariance_sum(sparse, rho_table(sparse))),
        ("dl_sizes        n=8, all 8! labellings", lambda: kernels.dl_sizes(small, all_rankings(8))),
        ("dl_sizes        ER n=100, 2000 labellings", lambda: kernels.dl_sizes(er, mc_ranks)),
        ("max_acyclic     n=14 subset DP", lambda: kernels.max_acyclic_mask(brute.n, masks)),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if "cython" not in kernels.AVAILABLE:
        print("compiled kernels not built; only the Python backend is available")
    all_rankings(8)  # warm the cache outside the timings
    print(f"{'kernel':44s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in _cases():
        times = {}
        for b in kernels.AVAILABLE:
            with kernels.use_backend(b):
                fn()
                times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        py = times["python"]
        cy = times.get("cython")
        cy_s = f"{cy * 1e3:8.2f}ms" if cy is not None else f"{'-':>10s}"
        sp = f"{py / cy:7.1f}x" if cy else f"{'-':>8s}"
        print(f"{name:44s} {py * 1e3:8.2f}ms {cy_s} {sp}")


if __name__ == "__main__":
    main()
