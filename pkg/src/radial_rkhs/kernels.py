"""Closed forms for the min-type kernels on the unit ball.

Everything lives on the radial coordinate r in (0, 1].  The reproducing
kernel centered at t is flat on (0, t], decays logarithmically (n = 2)
or like r^(2-n) - 1 (n > 2) on [t, 1], and vanishes at r = 1.  Because
both branches are decreasing in the larger argument, every min of the
two branch values reduces to the branch evaluated at max(t, r); that is
how the formulas below avoid overflow for centers as small as 1e-300.

All functions are pure; the only module state is the sign-convention
test hook, which is not thread-safe and exists solely so the test suite
and ``verify --legacy-sign`` can demonstrate what breaks when the n > 2
prefactor is taken as 1/((2-n) omega) instead of 1/((n-2) omega).
"""

import math
from contextlib import contextmanager

import numpy as np

from . import backends
from .errors import DomainError, KinkError

TWO_PI = 2.0 * math.pi

# +1.0 is the working convention: prefactor 1/((n-2) omega), which keeps
# K(t, t) >= 0.  -1.0 flips every n > 2 family to the 1/((2-n) omega)
# variant.
_SIGN = 1.0


def sign_convention():
    """Current sign of the n > 2 prefactor (+1 corrected, -1 legacy)."""
    return _SIGN


@contextmanager
def negative_prefactor(enabled=True):
    """Test hook: evaluate the n > 2 families with the 1/((2-n) omega) prefactor."""
    global _SIGN
    previous = _SIGN
    _SIGN = -1.0 if enabled else 1.0
    try:
        yield
    finally:
        _SIGN = previous


def check_dimension(n):
    """Validate and return the ambient dimension as a float >= 2."""
    n = float(n)
    if not n >= 2.0:
        raise DomainError(f"dimension must be >= 2, got {n}")
    return n


def check_radius(x, name="r"):
    """Validate and return a radial coordinate in (0, 1]."""
    x = float(x)
    if not 0.0 < x <= 1.0:
        raise DomainError(f"{name} must lie in (0, 1], got {x}")
    return x


def sphere_measure(n):
    """Measure of the unit (n-1)-sphere, 2 pi^(n/2) / Gamma(n/2)."""
    n = check_dimension(n)
    return 2.0 * math.pi ** (0.5 * n) / math.gamma(0.5 * n)


def ball_volume(n):
    """Volume of the unit ball, sphere_measure(n) / n."""
    return sphere_measure(n) / float(n)


def alpha_critical(n):
    """Critical exponential coefficient n * sphere_measure(n)^(1/(n-1)).

    Equals 4 pi exactly at n = 2.
    """
    n = check_dimension(n)
    return n * sphere_measure(n) ** (1.0 / (n - 1.0))


def gamma2(t, r):
    """Two-dimensional kernel (1/2pi) min(log 1/t, log 1/r)."""
    t = check_radius(t, "t")
    r = check_radius(r, "r")
    return -math.log(max(t, r)) / TWO_PI


def gammaN(n, t, r):
    """Kernel for n > 2: (max(t, r)^(2-n) - 1) / ((n-2) omega), sign hook aside."""
    n = check_dimension(n)
    if n <= 2.0:
        raise DomainError(f"gammaN requires n > 2 (use gamma2 at n = 2), got {n}")
    t = check_radius(t, "t")
    r = check_radius(r, "r")
    omega = sphere_measure(n)
    return _SIGN * math.expm1((2.0 - n) * math.log(max(t, r))) / ((n - 2.0) * omega)


def kernel_K(n, t, s):
    """Inner product of the kernels centered at t and s.

    By the reproducing property this equals the kernel centered at t
    evaluated at s, so it shares a code path with gamma2/gammaN.
    """
    n = check_dimension(n)
    if n == 2.0:
        return gamma2(t, s)
    return gammaN(n, t, s)


def kernel_derivative(n, t, r):
    """d/dr of the kernel centered at t; zero left of the kink at r = t."""
    n = check_dimension(n)
    t = check_radius(t, "t")
    r = check_radius(r, "r")
    if r == t:
        raise KinkError(f"no classical derivative at the kink r = t = {r}")
    if r < t:
        return 0.0
    if n == 2.0:
        return -1.0 / (TWO_PI * r)
    return _SIGN * -(r ** (1.0 - n)) / sphere_measure(n)


def eval_functional_norm(n, t):
    """Operator norm of point evaluation at t, sqrt(K(t, t)); 0 at t = 1."""
    n = check_dimension(n)
    t = check_radius(t, "t")
    k = kernel_K(n, t, t)
    if k < 0.0:
        raise DomainError(
            f"K(t, t) = {k} is negative under the current sign convention"
        )
    return math.sqrt(k)


def moser_mu(s, r):
    """Unit-energy truncated-log bump with plateau sqrt(log(1/s) / 2pi) on (0, s]."""
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1) strictly, got {s}")
    r = check_radius(r, "r")
    return -math.log(max(s, r)) / math.sqrt(TWO_PI * -math.log(s))


def tm_candidate(n, t, r):
    """Power-law bump for n > 2 scaled by (omega (t^(2-n)-1)/(n-2))^(-1/n).

    Computed through logs so the scale survives centers near zero; the
    value at r = 1 is exactly zero.
    """
    n = check_dimension(n)
    if n <= 2.0:
        raise DomainError(f"tm_candidate requires n > 2, got {n}")
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"center t must lie in (0, 1) strictly, got {t}")
    r = check_radius(r, "r")
    m = max(t, r)
    if m == 1.0:
        return 0.0
    omega = sphere_measure(n)
    lt = math.log(t)
    lm = math.log(m)
    # log of (x^(2-n) - 1)/(n-2) without forming x^(2-n)
    log_a = (2.0 - n) * lt + math.log1p(-math.exp((n - 2.0) * lt)) - math.log(n - 2.0)
    log_body = (2.0 - n) * lm + math.log1p(-math.exp((n - 2.0) * lm)) - math.log(n - 2.0)
    log_scale = -(math.log(omega) + log_a) / n
    return _SIGN * math.exp(log_scale + log_body)


def tm_candidate_scale(n, t):
    """The normalizing factor (omega (t^(2-n)-1)/(n-2))^(-1/n) of tm_candidate."""
    n = check_dimension(n)
    if n <= 2.0:
        raise DomainError(f"tm_candidate requires n > 2, got {n}")
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"center t must lie in (0, 1) strictly, got {t}")
    omega = sphere_measure(n)
    lt = math.log(t)
    log_a = (2.0 - n) * lt + math.log1p(-math.exp((n - 2.0) * lt)) - math.log(n - 2.0)
    return math.exp(-(math.log(omega) + log_a) / n)


def _as_radius_array(xs, name):
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    if xs.size and (not np.all(xs > 0.0) or not np.all(xs <= 1.0)):
        bad = xs[(xs <= 0.0) | (xs > 1.0)][0]
        raise DomainError(f"{name} values must lie in (0, 1], got {bad}")
    return xs


def kernel_matrix(n, ts, rs):
    """Pairwise K(t_i, r_j) as a (len(ts), len(rs)) array (backend hot path)."""
    n = check_dimension(n)
    ts = _as_radius_array(ts, "t")
    rs = _as_radius_array(rs, "r")
    if n == 2.0:
        return backends.pairwise_log_min(ts, rs)
    return _SIGN * backends.pairwise_power_min(n, sphere_measure(n), ts, rs)


def kernel_values(n, t, rs):
    """Kernel centered at t on an array of radii."""
    return kernel_matrix(n, [t], rs)[0]


def kernel_derivative_values(n, t, rs):
    """Array version of kernel_derivative using the left limit at r = t."""
    n = check_dimension(n)
    t = check_radius(t, "t")
    rs = _as_radius_array(rs, "r")
    out = np.zeros_like(rs)
    right = rs > t
    if n == 2.0:
        out[right] = -1.0 / (TWO_PI * rs[right])
    else:
        out[right] = _SIGN * -(rs[right] ** (1.0 - n)) / sphere_measure(n)
    return out
