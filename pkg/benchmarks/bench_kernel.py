"""Benchmark the zonal series hot loop: numba @njit vs vectorized numpy.

Times series_disk / series_ball on kernel-evaluation-shaped workloads
(coefficient tables from gamma_coefs, node counts matching the default
quadrature grids) and prints a small table with the speedup.  Run as

    python3 benchmarks/bench_kernel.py

The jitted path is compiled once before timing so compilation cost is
excluded.  If numba is unavailable (or BERGBESOV_NO_NUMBA is set) only the
numpy path is timed.
"""

import time

import numpy as np

from bergbesov._accel import (
    JIT_ENABLED,
    backend,
    series_ball_numpy,
    series_disk_numpy,
)
from bergbesov.kernel import gamma_coefs

if JIT_ENABLED:
    from bergbesov._accel import series_ball, series_disk


def _timeit(fn, args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _workload(dim, nodes, kmax, alpha, seed):
    rng = np.random.default_rng(seed)
    gam = gamma_coefs(kmax, alpha, dim).astype(float)
    rho = rng.uniform(0.0, 0.9, size=nodes)
    cost = rng.uniform(-1.0, 1.0, size=nodes)
    return gam, rho, cost


def main():
    cases = [
        # (dim, nodes, kmax, alpha)
        (2, 32768, 64, 0.0),
        (2, 32768, 256, -2.0),
        (3, 131072, 64, 0.0),
        (3, 1048576, 96, 1.5),
    ]
    print(f"active backend: {backend()}")
    header = f"{'dim':>4} {'nodes':>9} {'kmax':>5} {'numpy (ms)':>11}"
    if JIT_ENABLED:
        header += f" {'numba (ms)':>11} {'speedup':>8}"
    print(header)
    for dim, nodes, kmax, alpha in cases:
        gam, rho, cost = _workload(dim, nodes, kmax, alpha, seed=dim * 1000 + kmax)
        if dim == 2:
            np_fn, np_args = series_disk_numpy, (gam, rho, cost)
        else:
            np_fn, np_args = series_ball_numpy, (gam, rho, cost, dim)
        row = ""
        if JIT_ENABLED:
            jit_fn = series_disk if dim == 2 else series_ball
            jit_fn(*np_args)  # compile outside the timed region
            t_jit = _timeit(jit_fn, np_args)
            ref = jit_fn(*np_args)
            got = np_fn(*np_args)
            assert np.allclose(ref, got, rtol=1e-12, atol=1e-12)
        t_np = _timeit(np_fn, np_args)
        row = f"{dim:>4} {nodes:>9} {kmax:>5} {t_np * 1e3:>11.2f}"
        if JIT_ENABLED:
            row += f" {t_jit * 1e3:>11.2f} {t_np / t_jit:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
