"""Compare the compiled and pure-Python kernels on the two hot paths.

    python3 benchmarks/bench_kernels.py [--repeat N]

Pivoting is timed through a full exact simplex solve of the largest full
LP; the face scan is timed on the d = 7 extension grid.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qcx import _pykernels, kernels
from qcx.construction import build_profile, density_field
from qcx.lp import solve_simplex
from qcx.lp.builders import build_full_lp
from qcx.verify import _flat_integer_grid, grid_values


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if kernels.ck is None:
        raise SystemExit("compiled kernels are not built; reinstall with Cython and numpy available")

    rows = []

    for d, k in [(4, 2), (5, 3)]:
        lp = build_full_lp(d, k, "minus")
        tc, rc = best_of(args.repeat, lambda: solve_simplex(lp, compiled=True))
        tp, rp = best_of(args.repeat, lambda: solve_simplex(lp, compiled=False))
        assert rc.optimum == rp.optimum
        rows.append((f"simplex, full LP d={d} k={k} ({rc.pivot_count} pivots)", tc, tp))

    f = density_field(build_profile(7, 2, "minus"))
    flat, _ = _flat_integer_grid(grid_values(f), 7)
    arr = np.asarray(flat, dtype=np.int64)
    for j in (2, 4, 7):
        tc, rc = best_of(args.repeat, lambda: kernels.ck.face_scan(arr, 7, j, True, 100))
        tp, rp = best_of(args.repeat, lambda: _pykernels.face_scan(flat, 7, j, True, 100))
        assert rc == rp
        rows.append((f"face scan, d=7 level {j}", tc, tp))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'compiled':>10}  {'python':>10}  {'speedup':>8}")
    for name, tc, tp in rows:
        print(f"{name:<{width}}  {tc:>9.4f}s  {tp:>9.4f}s  {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
