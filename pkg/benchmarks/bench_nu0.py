"""Time the nu_0 sweep on breakpoint midpoints with the numba and pure-numpy backends.

    python benchmarks/bench_nu0.py --config zeta35.cfg --repeat 3
"""

import argparse
import time

import numpy as np

from zetacert import _kernels
from zetacert.config import load_config
from zetacert.geometry import breakpoints_x, build_floor_matrix


def midpoints(matrix):
    bp = breakpoints_x(matrix)
    n, d = bp.nums, bp.dens
    return n[:-1] * d[1:] + n[1:] * d[:-1], 2 * d[:-1] * d[1:]


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default="zeta35.cfg")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()

    matrix = build_floor_matrix(load_config(args.config).collection)
    P, Q = midpoints(matrix)
    c, a, b = matrix.arrays
    print(f"rows={matrix.H} points={len(P)}")

    results = {}
    if _kernels.HAVE_NUMBA:
        _kernels.set_threads(args.threads)
        _kernels.nu0_batch(c, a, b, P[:8], Q[:8], backend="numba")  # compile / load cache
        results["numba"] = best_of(lambda: _kernels.nu0_batch(c, a, b, P, Q, backend="numba"), args.repeat)
    results["numpy"] = best_of(lambda: _kernels.nu0_batch(c, a, b, P, Q, backend="numpy"), args.repeat)

    for name, (t, _) in results.items():
        print(f"{name:>6}: {t * 1000:9.1f} ms  ({len(P) / t:,.0f} points/s)")
    if len(results) == 2:
        same = np.array_equal(results["numba"][1], results["numpy"][1])
        print(f"speedup: {results['numpy'][0] / results['numba'][0]:.1f}x  identical={same}")


if __name__ == "__main__":
    main()
