"""Pure-numpy implementations of the hot array kernels.

Every function here has a numba twin in ``numba_backend`` with the same
signature; ``radial_rkhs.backends`` re-exports one of the two sets.  All
inputs are contiguous float64 arrays, all radii lie in (0, 1], and the
power-family routines receive the corrected positive prefactor through
``omega`` (sign conventions are applied one layer up).
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def pairwise_log_min(ts, rs):
    """(len(ts), len(rs)) table of (1/2pi) * min(log 1/t_i, log 1/r_j)."""
    return -np.maximum.outer(np.log(ts), np.log(rs)) / TWO_PI


def pairwise_power_min(n, omega, ts, rs):
    """(len(ts), len(rs)) table of (max(t_i, r_j)^(2-n) - 1) / ((n-2) omega)."""
    m = np.maximum.outer(np.log(ts), np.log(rs))
    return np.expm1((2.0 - n) * m) / ((n - 2.0) * omega)


def expansion_values_log(centers, coeffs, rs):
    """sum_i c_i * pairwise_log_min(t_i, r) evaluated at each r."""
    if centers.size == 0:
        return np.zeros_like(rs)
    return coeffs @ pairwise_log_min(centers, rs)


def expansion_values_power(n, omega, centers, coeffs, rs):
    """sum_i c_i * pairwise_power_min(t_i, r) evaluated at each r."""
    if centers.size == 0:
        return np.zeros_like(rs)
    return coeffs @ pairwise_power_min(n, omega, centers, rs)


def expansion_derivs_log(centers, cum_coeffs, rs):
    """Radial derivative of a two-dimensional kernel combination.

    ``centers`` must be sorted ascending and ``cum_coeffs`` holds the
    running coefficient sums in that order.  Each kernel is flat left of
    its center, so u'(r) = -(sum of coefficients with t_i < r) / (2 pi r);
    at r exactly equal to a center the left limit is returned.
    """
    out = np.zeros_like(rs)
    if centers.size == 0:
        return out
    idx = np.searchsorted(centers, rs, side="left")
    active = idx > 0
    out[active] = -cum_coeffs[idx[active] - 1] / (TWO_PI * rs[active])
    return out


def expansion_derivs_power(n, omega, centers, cum_coeffs, rs):
    """Same as expansion_derivs_log for n > 2: u'(r) = -S(r) r^(1-n) / omega."""
    out = np.zeros_like(rs)
    if centers.size == 0:
        return out
    idx = np.searchsorted(centers, rs, side="left")
    active = idx > 0
    out[active] = -cum_coeffs[idx[active] - 1] * rs[active] ** (1.0 - n) / omega
    return out
