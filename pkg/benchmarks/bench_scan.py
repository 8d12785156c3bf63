"""Lattice-scan kernel: numba vs pure numpy on growing search boxes.

    python benchmarks/bench_scan.py [--repeat N]

Both backends must return identical tallies; the script exits 1 otherwise.
"""

import argparse
import sys
import time

from rigidkit.toric import m12_fan, scan_box
from rigidkit.toric.kernels import HAS_NUMBA

CASES = [
    ("D1", (1, 0, 0, 0), 8),
    ("3K", (-3, -3, -3, -3), 32),
    ("mixed", (5, -4, 3, -2), 128),
    ("large", (20, -15, 12, -9), 512),
]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    rays = m12_fan().rays
    if HAS_NUMBA:
        scan_box(rays, (0, 0, 0, 0), 2, backend="numba")  # compile outside the timing
    print(f"{'case':<8}{'box':>6}{'points':>10}{'numpy s':>11}{'numba s':>11}{'speedup':>9}")
    ok = True
    for name, D, bound in CASES:
        t_np, ref = best_of(lambda: scan_box(rays, D, bound, backend="numpy"), args.repeat)
        if HAS_NUMBA:
            t_nb, got = best_of(lambda: scan_box(rays, D, bound, backend="numba"), args.repeat)
            ok &= got == ref
            speed = f"{t_np / t_nb:8.1f}x"
            nb = f"{t_nb:11.4f}"
        else:
            nb, speed = f"{'-':>11}", f"{'-':>9}"
        print(f"{name:<8}{bound:>6}{(2 * bound + 1) ** 2:>10}{t_np:11.4f}{nb}{speed}  h={ref[:3]}")
    if not ok:
        print("backends disagree", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
