"""Compare the compiled and pure-Python matching kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--full]

Each case is timed per backend (best of ``--repeat`` runs), and the outputs
of the two backends are checked for equality.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from binorder.identity import IdentitySpec
from binorder.lattice import level_iter
from binorder.matching import available_backends, get_kernel
from binorder.rng import SplitMix64

MATCHING_CASES = [
    ("n=6 {0,3}/{1,2}", IdentitySpec(6, (0, 3), (1, 2)), False),
    ("n=12 {2}/{10}", IdentitySpec(12, (2,), (10,)), False),
    ("n=15 {0,4,6,13}/{1,3,5,10}", IdentitySpec(15, (0, 4, 6, 13), (1, 3, 5, 10)), False),
    ("n=20 {0,5,6,7,18}/{1,3,4,8}", IdentitySpec(20, (0, 5, 6, 7, 18), (1, 3, 4, 8)), True),
]
COVERAGE_ROWS = 64


def _masks(n, levels):
    return [m for lv in levels for m in level_iter(n, lv)]


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def bench_matching(spec, backend, repeat):
    kernel = get_kernel(backend)
    left = _masks(spec.n, spec.A)
    return _best(lambda: [int(v) for v in kernel.hopcroft_karp(spec.n, spec.A, spec.B, left)], repeat)


def bench_coverage(spec, backend, repeat):
    kernel = get_kernel(backend)
    right = np.array(_masks(spec.n, spec.B), dtype=np.uint64)
    rows = SplitMix64(1).coin_flips(COVERAGE_ROWS * spec.left_size).reshape(COVERAGE_ROWS, spec.left_size)
    return _best(lambda: [int(c) for c in kernel.coverage_counts(spec.n, spec.A, spec.B, right, rows)], repeat)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--full", action="store_true", help="also run the n=20 cases on the python backend (minutes)")
    args = parser.parse_args(argv)
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; timing the python backend only")

    print(f"{'kernel':<10} {'case':<30} " + " ".join(f"{b:>10}" for b in backends) + "    speedup")
    for kind, fn in (("matching", bench_matching), (f"coverage{COVERAGE_ROWS}", bench_coverage)):
        for label, spec, slow in MATCHING_CASES:
            times, outs = {}, {}
            for b in backends:
                if b == "python" and slow and not args.full:
                    continue
                times[b], outs[b] = fn(spec, b, args.repeat if b == "compiled" else 1)
            if len(set(map(tuple, outs.values()))) > 1:
                raise SystemExit(f"backends disagree on {kind} {label}")
            cells = " ".join(f"{times[b]:>9.3f}s" if b in times else f"{'-':>10}" for b in backends)
            speedup = f"{times['python'] / times['compiled']:>9.1f}x" if len(times) == 2 else ""
            print(f"{kind:<10} {label:<30} {cells} {speedup}")


if __name__ == "__main__":
    main()
