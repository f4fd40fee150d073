#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Micro-benchmarks exercise the hot primitives directly; the macro benchmark
runs the ramee verification suite end to end in a subprocess with each
backend selected through ARGUESIA_PURE.

    python3 benchmarks/bench_kernels.py [--micro-reps N] [--macro-seeds N]
"""

import argparse
import os
import subprocess
import sys
import time

from arguesia import _pykernel

try:
    from arguesia import _ckernel
except ImportError:
    _ckernel = None

from arguesia.rng import SplitMix64


def _inputs(n):
    rng = SplitMix64.for_kind("bench", 1)
    triples = [tuple(rng.int_between(-10**9, 10**9) for _ in range(3)) for _ in range(n)]
    mats = [tuple(rng.int_between(-10**6, 10**6) for _ in range(4)) for _ in range(n)]
    return triples, mats


def bench_micro(kernel, triples, mats, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        for i in range(len(triples) - 1):
            a, b = triples[i], triples[i + 1]
            kernel.cross3(a, b)
            kernel.dot3(a, b)
            kernel.norm3(*a)
        for i in range(len(mats) - 1):
            m, n = mats[i], mats[i + 1]
            kernel.mat2_mul(m, n)
            kernel.norm_mat2(m)
    return time.perf_counter() - t0


def bench_macro(pure: bool, seeds: int) -> float:
    env = dict(os.environ)
    env["ARGUESIA_PURE"] = "1" if pure else "0"
    env.pop("ARGUESIA_SEED", None)
    t0 = time.perf_counter()
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "arguesia.cli",
            "verify",
            "ramee",
            "--seed",
            "1",
            "--trials",
            str(seeds),
        ],
        capture_output=True,
        env=env,
    )
    if proc.returncode != 0:
        raise SystemExit(f"macro benchmark failed: {proc.stderr.decode()}")
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--micro-reps", type=int, default=20)
    ap.add_argument("--macro-seeds", type=int, default=100)
    args = ap.parse_args()

    triples, mats = _inputs(500)
    rows = []
    py = bench_micro(_pykernel, triples, mats, args.micro_reps)
    rows.append(("micro: pure python", py, 1.0))
    if _ckernel is not None:
        cy = bench_micro(_ckernel, triples, mats, args.micro_reps)
        rows.append(("micro: cython", cy, py / cy))

    macro_py = bench_macro(True, args.macro_seeds)
    rows.append((f"macro ramee x{args.macro_seeds}: pure python", macro_py, 1.0))
    if _ckernel is not None:
        macro_cy = bench_macro(False, args.macro_seeds)
        rows.append((f"macro ramee x{args.macro_seeds}: cython", macro_cy, macro_py / macro_cy))

    width = max(len(r[0]) for r in rows)
    print(f"{'benchmark':<{width}}  seconds  speedup")
    for name, seconds, speedup in rows:
        print(f"{name:<{width}}  {seconds:7.3f}  {speedup:6.2f}x")
    if _ckernel is None:
        print("compiled kernel not available: rebuild with Cython to compare")


if __name__ == "__main__":
    main()
