#!/usr/bin/env python3
"""Benchmark the bicubic transport kernels: numba loops vs vectorised numpy.

Times the spline prefilter, the stencil evaluation, and a full Liouville
transport step on square grids.  The numba path is warmed up first so JIT
compilation does not pollute the numbers.  Run with PHASEQ_NUMBA=0 to check
which backend the package itself would pick.

    python3 benchmarks/bench_interpolation.py --sizes 128 256 512 --repeats 5
"""

import argparse
import time

import numpy as np

from phaseq import _kernels
from phaseq import phasespace as ps


def _timed(func, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = func()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_size(n, repeats):
    par = ps.NATURAL
    grid = ps.default_grid(8.0, n)
    density = ps.gaussian_density(grid, par, q0=1.0)
    qm, pm = grid.meshes()
    c, s = np.cos(1.1), np.sin(1.1)
    xi = ((qm * c - pm * s) - grid.q_min) / grid.dq
    yi = ((pm * c + qm * s) - grid.p_min) / grid.dp

    rows = []
    for name in ("numpy", "numba"):
        if name == "numba" and not _kernels.HAVE_NUMBA:
            continue
        coefficients, sample = _kernels.resolve(name)
        coefficients(density.values)  # warm-up (JIT compile on the numba path)
        sample(coefficients(density.values), xi, yi)
        t_coeff, coeffs = _timed(lambda: coefficients(density.values), repeats)
        t_sample, values = _timed(lambda: sample(coeffs, xi, yi), repeats)
        t_full, _ = _timed(lambda: ps.liouville_propagate(density, 1.1, par, backend=name),
                           repeats)
        rows.append((name, t_coeff, t_sample, t_full, values))

    print(f"\ngrid {n}x{n} ({n * n} backtraced points), best of {repeats}")
    print(f"{'backend':8s} {'prefilter':>12s} {'sample':>12s} {'transport':>12s}")
    for name, t_coeff, t_sample, t_full, _ in rows:
        print(f"{name:8s} {t_coeff * 1e3:10.2f}ms {t_sample * 1e3:10.2f}ms {t_full * 1e3:10.2f}ms")
    if len(rows) == 2:
        agreement = np.abs(rows[0][4] - rows[1][4]).max()
        speedup = rows[0][3] / rows[1][3]
        print(f"numba transport speedup x{speedup:.1f}; backend agreement {agreement:.2e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[128, 256, 512])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    print(f"package default backend: {_kernels.BACKEND}")
    for n in args.sizes:
        bench_size(n, args.repeats)


if __name__ == "__main__":
    main()
