"""Hot loops for zonal series evaluation.

Two interchangeable implementations of the degree-summed zonal series (and of
the degree-by-node zonal table behind the polar-grid image evaluator): a numba
@njit version (node-outer, degree-inner loops) and a vectorized numpy
fallback.  Selection happens once at import time: setting the environment
variable BERGBESOV_NO_NUMBA to 1/true forces the numpy path, and an
unimportable numba falls back silently.  Both paths accumulate each node's sum
in ascending degree order, so they agree to rounding.

The numpy implementations are always importable (benchmarks and parity tests
compare them against the jitted ones directly).
"""

import math
import os

import numpy as np

_flag = os.environ.get("BERGBESOV_NO_NUMBA", "").strip().lower()
JIT_ENABLED = _flag not in ("1", "true", "yes", "on")

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:
        JIT_ENABLED = False


def backend():
    """Name of the active series backend: 'numba' or 'numpy'."""
    return "numba" if JIT_ENABLED else "numpy"


def series_disk_numpy(gam, rho, cost):
    """Sum_k gam[k] * (2 - (k==0)) * rho**k * cos(k*theta) per node, dim 2.

    gam is the coefficient table (length K+1), rho[j] = |x||y_j| and
    cost[j] = cos of the angle between x and y_j.
    """
    kmax = gam.shape[0] - 1
    acc = np.full(rho.shape, gam[0])
    if kmax == 0:
        return acc
    cm1 = np.ones_like(cost)
    c = cost.copy()
    rk = rho.copy()
    acc += gam[1] * 2.0 * rk * c
    for k in range(2, kmax + 1):
        cm1, c = c, 2.0 * cost * c - cm1
        rk = rk * rho
        acc += gam[k] * 2.0 * rk * c
    return acc


def series_ball_numpy(gam, rho, cost, dim):
    """Sum_k gam[k] * rho**k * ((dim+2k-2)/(dim-2)) * C_k^{(dim-2)/2}(cost), dim >= 3."""
    kmax = gam.shape[0] - 1
    lam = 0.5 * (dim - 2.0)
    acc = np.full(rho.shape, gam[0])
    if kmax == 0:
        return acc
    cm1 = np.ones_like(cost)
    c = 2.0 * lam * cost
    rk = rho.copy()
    acc += gam[1] * (dim / (dim - 2.0)) * rk * c
    for k in range(2, kmax + 1):
        cm1, c = c, (2.0 * cost * (k + lam - 1.0) * c - (k + 2.0 * lam - 2.0) * cm1) / k
        rk = rk * rho
        acc += gam[k] * ((dim + 2.0 * k - 2.0) / (dim - 2.0)) * rk * c
    return acc


def zonal_table_numpy(kmax, u, dim):
    """Table P[k, j] of the zonal harmonic between unit vectors with inner
    product u[j]: P[k, j] = Z_k(zeta, eta_j), degrees 0..kmax.

    Row 0 is 1; dimension 2 rows are 2 cos(k theta); higher dimensions use the
    Gegenbauer form, same recurrence as the series evaluators.
    """
    m = u.shape[0]
    out = np.empty((kmax + 1, m))
    out[0] = 1.0
    if kmax == 0:
        return out
    if dim == 2:
        theta = np.arccos(np.clip(u, -1.0, 1.0))
        ks = np.arange(1.0, kmax + 1.0)
        out[1:] = 2.0 * np.cos(ks[:, None] * theta[None, :])
        return out
    lam = 0.5 * (dim - 2.0)
    cm1 = np.ones(m)
    c = 2.0 * lam * u
    out[1] = (dim / (dim - 2.0)) * c
    for k in range(2, kmax + 1):
        cm1, c = c, (2.0 * u * (k + lam - 1.0) * c - (k + 2.0 * lam - 2.0) * cm1) / k
        out[k] = ((dim + 2.0 * k - 2.0) / (dim - 2.0)) * c
    return out


if JIT_ENABLED:

    @njit(cache=True)
    def _series_disk_jit(gam, rho, cost):
        kmax = gam.shape[0] - 1
        m = rho.shape[0]
        out = np.empty(m)
        for j in range(m):
            t = cost[j]
            r = rho[j]
            acc = gam[0]
            if kmax >= 1:
                cm1 = 1.0
                c = t
                rk = r
                acc += gam[1] * 2.0 * rk * c
                for k in range(2, kmax + 1):
                    cnew = 2.0 * t * c - cm1
                    cm1 = c
                    c = cnew
                    rk *= r
                    acc += gam[k] * 2.0 * rk * c
            out[j] = acc
        return out

    @njit(cache=True)
    def _series_ball_jit(gam, rho, cost, dim):
        kmax = gam.shape[0] - 1
        lam = 0.5 * (dim - 2.0)
        m = rho.shape[0]
        out = np.empty(m)
        for j in range(m):
            t = cost[j]
            r = rho[j]
            acc = gam[0]
            if kmax >= 1:
                cm1 = 1.0
                c = 2.0 * lam * t
                rk = r
                acc += gam[1] * (dim / (dim - 2.0)) * rk * c
                for k in range(2, kmax + 1):
                    cnew = (2.0 * t * (k + lam - 1.0) * c - (k + 2.0 * lam - 2.0) * cm1) / k
                    cm1 = c
                    c = cnew
                    rk *= r
                    acc += gam[k] * ((dim + 2.0 * k - 2.0) / (dim - 2.0)) * rk * c
            out[j] = acc
        return out

    @njit(cache=True)
    def _zonal_table_jit(kmax, u, dim):
        m = u.shape[0]
        out = np.empty((kmax + 1, m))
        for j in range(m):
            out[0, j] = 1.0
        if kmax == 0:
            return out
        if dim == 2:
            for j in range(m):
                t = min(1.0, max(-1.0, u[j]))
                theta = math.acos(t)
                for k in range(1, kmax + 1):
                    out[k, j] = 2.0 * math.cos(k * theta)
            return out
        lam = 0.5 * (dim - 2.0)
        for j in range(m):
            t = u[j]
            cm1 = 1.0
            c = 2.0 * lam * t
            out[1, j] = (dim / (dim - 2.0)) * c
            for k in range(2, kmax + 1):
                cnew = (2.0 * t * (k + lam - 1.0) * c - (k + 2.0 * lam - 2.0) * cm1) / k
                cm1 = c
                c = cnew
                out[k, j] = ((dim + 2.0 * k - 2.0) / (dim - 2.0)) * c
        return out

    series_disk = _series_disk_jit
    series_ball = _series_ball_jit
    zonal_table = _zonal_table_jit
else:
    series_disk = series_disk_numpy
    series_ball = series_ball_numpy
    zonal_table = zonal_table_numpy
