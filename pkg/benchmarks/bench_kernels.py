"""Time the compiled kernels against the numpy fallback on random point sets.

    python benchmarks/bench_kernels.py --sizes 500 2000 5000 --p 100003 --threads 4

Every kernel result is compared across backends; a mismatch aborts.
"""

from __future__ import annotations

import argparse
import sys
import time

from bisector_lab import kernels
from bisector_lab.gen import GenSpec, generate

KERNELS = {
    "distance_counts": lambda pts, p, t, b: tuple(map(tuple, kernels.distance_counts(pts, p, t, b))),
    "isosceles_count": kernels.isosceles_count,
    "lifted_sum_energy": kernels.lifted_sum_energy,
    "bisector_energy": kernels.bisector_energy,
}


def best_of(fn, repeats: int):
    best, value = float("inf"), None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 2000, 5000])
    ap.add_argument("--p", type=int, default=100003)
    ap.add_argument("--threads", type=int, default=kernels.default_threads())
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["cython"] if kernels._ckernels is not None else [])
    if len(backends) == 1:
        print("compiled extension not built; timing the numpy fallback only", file=sys.stderr)
    print(f"{'kernel':<18} {'n':>6} " + " ".join(f"{b + ' (s)':>12}" for b in backends) + f" {'speedup':>8}")
    for n in args.sizes:
        pts = generate(GenSpec("random_plane", args.p, n, args.seed)).points
        for name, fn in KERNELS.items():
            times, values = [], []
            for b in backends:
                t, v = best_of(lambda: fn(pts, args.p, args.threads, b), args.repeats)
                times.append(t)
                values.append(v)
            if any(v != values[0] for v in values):
                print(f"MISMATCH in {name} at n={n}", file=sys.stderr)
                return 1
            speed = f"{times[0] / times[-1]:8.1f}" if len(times) > 1 else f"{'-':>8}"
            print(f"{name:<18} {n:>6} " + " ".join(f"{t:12.4f}" for t in times) + f" {speed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
