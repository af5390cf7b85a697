"""Time the Jordan-Wigner block builder with and without numba.

    python3 benchmarks/bench_kernels.py [--sites 7] [--repeat 5]

Builds the hopping Hamiltonian on every (N_up, N_dn) sector of a small open
grid and reports the best wall time per backend.
"""
import argparse
import time

import numpy as np

from hubbard_ft._jit import HAVE_NUMBA
from hubbard_ft.kernels import lookup_table, quadratic_block, sector_states
from hubbard_ft.lattice import chain, open_grid
from hubbard_ft.oracle import hopping_terms


def build_all(R, use_numba):
    n = R.dim
    p, q, c = (np.array(v) for v in zip(*hopping_terms(R.entries)))
    for nu in range(n + 1):
        for nd in range(n + 1):
            st = sector_states(n, nu, nd)
            quadratic_block(st, lookup_table(st, 2 * n), p, q, c, use_numba=use_numba)


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sites", type=int, default=6, choices=range(2, 8))
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    R = open_grid(2, args.sites // 2) if args.sites % 2 == 0 else chain(args.sites)
    backends = [("numpy", False)] + ([("numba", True)] if HAVE_NUMBA else [])
    if HAVE_NUMBA:
        build_all(chain(2), True)  # compile outside the timed region
    results = {name: best_time(lambda f=flag: build_all(R, f), args.repeat) for name, flag in backends}
    for name, t in results.items():
        print(f"{name:>6}: {t * 1e3:9.2f} ms  ({args.sites} sites, {2 * args.sites} modes)")
    if len(results) == 2:
        print(f"speedup: {results['numpy'] / results['numba']:.1f}x")
    else:
        print("numba unavailable or disabled (HUBBARD_FT_DISABLE_NUMBA); numpy only")


if __name__ == "__main__":
    main()
