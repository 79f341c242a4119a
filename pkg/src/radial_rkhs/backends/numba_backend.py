"""Numba-compiled implementations of the hot array kernels.

Signature-compatible with ``numpy_backend``; logs of the inputs are
hoisted out of the pair loops and the expansion reductions are fused, so
no (len(ts), len(rs)) temporaries are built.  Compiled objects are
cached on disk, so the JIT cost is paid once per interpreter/version.
"""

import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _logs(xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = math.log(xs[i])
    return out


@njit(cache=True)
def pairwise_log_min(ts, rs):
    lts = _logs(ts)
    lrs = _logs(rs)
    out = np.empty((ts.shape[0], rs.shape[0]))
    for i in range(lts.shape[0]):
        lt = lts[i]
        for j in range(lrs.shape[0]):
            m = lt if lt > lrs[j] else lrs[j]
            out[i, j] = -m / TWO_PI
    return out


@njit(cache=True)
def pairwise_power_min(n, omega, ts, rs):
    lts = _logs(ts)
    lrs = _logs(rs)
    out = np.empty((ts.shape[0], rs.shape[0]))
    scale = (n - 2.0) * omega
    for i in range(lts.shape[0]):
        lt = lts[i]
        for j in range(lrs.shape[0]):
            m = lt if lt > lrs[j] else lrs[j]
            out[i, j] = math.expm1((2.0 - n) * m) / scale
    return out


@njit(cache=True)
def expansion_values_log(centers, coeffs, rs):
    lcs = _logs(centers)
    out = np.zeros(rs.shape[0])
    for j in range(rs.shape[0]):
        lr = math.log(rs[j])
        acc = 0.0
        for i in range(lcs.shape[0]):
            m = lcs[i] if lcs[i] > lr else lr
            acc += coeffs[i] * (-m / TWO_PI)
        out[j] = acc
    return out


@njit(cache=True)
def expansion_values_power(n, omega, centers, coeffs, rs):
    lcs = _logs(centers)
    out = np.zeros(rs.shape[0])
    scale = (n - 2.0) * omega
    for j in range(rs.shape[0]):
        lr = math.log(rs[j])
        acc = 0.0
        for i in range(lcs.shape[0]):
            m = lcs[i] if lcs[i] > lr else lr
            acc += coeffs[i] * math.expm1((2.0 - n) * m) / scale
        out[j] = acc
    return out


@njit(cache=True)
def _count_below(centers, r):
    # first index with centers[idx] >= r, i.e. how many centers are < r
    lo = 0
    hi = centers.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if centers[mid] < r:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def expansion_derivs_log(centers, cum_coeffs, rs):
    out = np.zeros(rs.shape[0])
    if centers.shape[0] == 0:
        return out
    for j in range(rs.shape[0]):
        idx = _count_below(centers, rs[j])
        if idx > 0:
            out[j] = -cum_coeffs[idx - 1] / (TWO_PI * rs[j])
    return out


@njit(cache=True)
def expansion_derivs_power(n, omega, centers, cum_coeffs, rs):
    out = np.zeros(rs.shape[0])
    if centers.shape[0] == 0:
        return out
    for j in range(rs.shape[0]):
        idx = _count_below(centers, rs[j])
        if idx > 0:
            out[j] = -cum_coeffs[idx - 1] * rs[j] ** (1.0 - n) / omega
    return out
