"""Timings of the geometry kernels, compiled against numpy fallback.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 256 4096 --suite polarity

``--suite`` also times a whole check suite in two subprocesses, one with
``MINK_DISABLE_NUMBA=1``.
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from semipolar import kernels
from semipolar.geometry import convex_hull_2d


def best_of(fn, repeat=5):
    number, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def bench_kernels(sizes, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        pts = rng.standard_normal((n, 2))
        pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]
        # points on a circle keep every input on the hull, the worst case for Hausdorff
        t = np.sort(rng.uniform(0, 2 * np.pi, n))
        P = convex_hull_2d(np.column_stack([np.cos(t), np.sin(t)])).vertices
        Q = 1.01 * P[::-1][::2][::-1]
        cases = {
            "hull": (kernels._hull_chain_np, kernels._hull_chain_nb, (pts, 1e-13)),
            "hausdorff": (kernels._directed_hausdorff_np, kernels._directed_hausdorff_nb, (P, Q)),
        }
        for name, (f_np, f_nb, args) in cases.items():
            t_np = best_of(lambda: f_np(*args))
            if f_nb is None:
                t_nb = float("nan")
            else:
                f_nb(*args)  # compile outside the timing
                t_nb = best_of(lambda: f_nb(*args))
            rows.append((name, n, t_np, t_nb))
    return rows


def bench_suite(suite, seed=7):
    out = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, MINK_DISABLE_NUMBA=flag)
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-m", "semipolar", "check", "--suite", suite, "--seed", str(seed),
                        "--out", os.devnull], env=env, check=False)
        out[label] = time.perf_counter() - t0
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 512, 4096, 32768])
    ap.add_argument("--suite", help="also time this check suite end to end")
    args = ap.parse_args(argv)

    if kernels._hull_chain_nb is None:
        print("numba not installed; compiled column is nan")
    print(f"{'kernel':<10} {'n':>7} {'numpy [ms]':>11} {'numba [ms]':>11} {'speedup':>8}")
    for name, n, t_np, t_nb in bench_kernels(args.sizes):
        print(f"{name:<10} {n:>7} {1e3 * t_np:>11.4f} {1e3 * t_nb:>11.4f} {t_np / t_nb:>8.1f}")
    if args.suite:
        t = bench_suite(args.suite)
        print(f"suite {args.suite}: numba {t['numba']:.1f} s, numpy {t['numpy']:.1f} s (wall, incl. startup)")


if __name__ == "__main__":
    main()
