"""Benchmark the numba kernels against the pure-numpy fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--quick]

Covers the two hot paths: the census bitset sweep and batched GF
row reduction (the line-decoder inner loop).  Numba timings exclude
the one-off JIT compile (a warm-up call runs first).
"""

import argparse
import time

import numpy as np

from liftmult import _kernels
from liftmult.exponents import achievable_bitset
from liftmult.gf2e import field_of_order

BACKENDS = ["numpy"]
try:
    import numba  # noqa: F401

    BACKENDS.insert(0, "numba")
except ImportError:
    pass


def bench_census(q, s, m, backend):
    blocks, bits = [(0,) * m], [1]
    if s > 1:
        import itertools

        blocks, bits = [], []
        for hat in itertools.product(range(s), repeat=m):
            if sum(hat) <= s - 1:
                blocks.append(hat)
                bits.append(achievable_bitset(tuple(h * q for h in hat)))
    t0 = time.perf_counter()
    hist = _kernels.stat_histogram_blocks(blocks, bits, m, q, s, s >= m, backend=backend)
    dt = time.perf_counter() - t0
    monomials = len(blocks) * q**m
    return dt, monomials, int(hist.sum())


def bench_solve(n_solves, backend, seed=0):
    fld = field_of_order(16)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 16, (24, 17))
    t0 = time.perf_counter()
    for _ in range(n_solves):
        b = rng.integers(0, 16, 24)
        _kernels.row_reduce(A, b, fld, backend=backend)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    args = parser.parse_args()

    census_cases = [(256, 1, 2), (512, 1, 2)] if args.quick else [(512, 1, 2), (1024, 1, 2), (64, 2, 2)]
    n_solves = 500 if args.quick else 3000

    # warm-up: JIT compile outside the timed region
    for be in BACKENDS:
        _kernels.stat_histogram_blocks([(0, 0)], [1], 2, 4, 1, False, backend=be)
        bench_solve(1, be)

    print(f"{'kernel':<28} {'backend':<8} {'time':>9} {'throughput':>16}")
    for q, s, m in census_cases:
        for be in BACKENDS:
            dt, monomials, total = bench_census(q, s, m, be)
            assert total == monomials
            print(
                f"census q={q:<5} s={s} m={m}     {be:<8} {dt:8.3f}s "
                f"{monomials / dt / 1e6:12.2f} Mvec/s"
            )
    for be in BACKENDS:
        dt = bench_solve(n_solves, be)
        print(
            f"gf16 row_reduce 24x17        {be:<8} {dt:8.3f}s "
            f"{n_solves / dt / 1e3:12.2f} ksolve/s"
        )


if __name__ == "__main__":
    main()
