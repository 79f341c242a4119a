"""Weighted radial integration on (0, 1].

Panel-adaptive Gauss-Legendre quadrature with mandatory panel boundaries
at every declared kink.  Panels wider than a 2:1 ratio are pre-split
geometrically, which makes piecewise power-law integrands (all the
kernel pairs) exact to machine precision on the initial panels; the
adaptive stage bisects the worst panel until the summed two-rule
discrepancy meets max(abs_tol, rel_tol * |integral|).

Integration starts at r = 1e-14.  The untraversed tail is bounded from
the profiles' declared envelopes |u'(r)| <= C r^(-p) and folded into the
error estimate, never into the value; profiles whose envelope would make
the weighted integrand non-integrable are rejected up front.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, QuadratureError
from .profiles import kernel_profile

FLOOR = 1e-14


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_subdivisions: int = 4000
    base_nodes: int = 16

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if not 0.0 < self.abs_tol < 1.0:
            raise DomainError(f"abs_tol must lie in (0, 1), got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")
        if self.base_nodes < 1:
            raise DomainError(f"base_nodes must be >= 1, got {self.base_nodes}")


DEFAULT_SPEC = QuadratureSpec()

_rule_cache = {}


def _rule(m):
    if m not in _rule_cache:
        x, w = np.polynomial.legendre.leggauss(m)
        _rule_cache[m] = (0.5 * (x + 1.0), 0.5 * w)  # mapped to [0, 1]
    return _rule_cache[m]


def panel_boundaries(lo, kinks, hi=1.0, max_ratio=2.0):
    """Sorted panel edges over [lo, hi]: kinks plus geometric pre-splits."""
    edges = [lo] + sorted({float(k) for k in kinks if lo < k < hi}) + [hi]
    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        out.append(a)
        if b > a * max_ratio:
            m = math.ceil(math.log(b / a) / math.log(max_ratio))
            ratio = (b / a) ** (1.0 / m)
            out.extend(a * ratio ** i for i in range(1, m))
    out.append(hi)
    return np.array(out)


def _estimate_panels(f, a, b, spec):
    """Two-rule estimates over panels [a_i, b_i]: returns (values, errors)."""
    width = b - a
    vals = []
    for m in (spec.base_nodes, 2 * spec.base_nodes):
        x, w = _rule(m)
        nodes = a[:, None] + width[:, None] * x[None, :]
        fx = np.asarray(f(nodes.ravel()), dtype=np.float64).reshape(nodes.shape)
        vals.append((fx * w[None, :]).sum(axis=1) * width)
    return vals[1], np.abs(vals[1] - vals[0])


@dataclass
class IntegralResult:
    value: float
    error: float
    subdivisions: int
    converged: bool
    tail_bound: float = 0.0


def adaptive_integral(f, boundaries, spec=DEFAULT_SPEC):
    """Integrate vectorized f over the panels defined by ``boundaries``."""
    a = np.asarray(boundaries[:-1], dtype=np.float64)
    b = np.asarray(boundaries[1:], dtype=np.float64)
    if a.size == 0:
        return IntegralResult(0.0, 0.0, 0, True)
    values, errors = _estimate_panels(f, a, b, spec)
    total = float(values.sum())
    err_total = float(errors.sum())
    heap = []
    tick = 0
    for i in range(a.size):
        heapq.heappush(heap, (-errors[i], tick, a[i], b[i], values[i], errors[i]))
        tick += 1

    splits = 0
    while True:
        if not (math.isfinite(total) and math.isfinite(err_total)):
            # a NaN would sail through the comparison below as "converged"
            return IntegralResult(total, err_total, splits, False)
        if err_total <= max(spec.abs_tol, spec.rel_tol * abs(total)):
            return IntegralResult(total, err_total, splits, True)
        if splits >= spec.max_subdivisions or not heap:
            return IntegralResult(total, err_total, splits, False)
        _, _, pa, pb, pv, pe = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if not pa < mid < pb:
            # panel at float resolution; nothing further to gain
            return IntegralResult(total, err_total, splits, False)
        ha = np.array([pa, mid])
        hb = np.array([mid, pb])
        hv, he = _estimate_panels(f, ha, hb, spec)
        total += float(hv.sum() - pv)
        err_total += float(he.sum() - pe)
        for i in range(2):
            heapq.heappush(heap, (-he[i], tick, ha[i], hb[i], hv[i], he[i]))
            tick += 1
        splits += 1


def _check_envelope(profile, n):
    if profile.envelope_p >= 0.5 * n:
        raise DomainError(
            f"profile {profile.label!r} declares |u'| <= C r^(-{profile.envelope_p:g}), "
            f"outside the square-integrable range p < {0.5 * n:g} for dimension {n:g}"
        )


def _tail_bound(n, u, v, lo):
    # |integral over (0, lo]| <= omega C_u C_v lo^(n - pu - pv) / (n - pu - pv)
    if max(u.support_floor, v.support_floor) >= lo:
        return 0.0
    q = n - u.envelope_p - v.envelope_p
    return kernels.sphere_measure(n) * u.envelope_c * v.envelope_c * lo ** q / q


def inner_product_result(n, u, v, spec=DEFAULT_SPEC):
    """Like inner_product but returns the full IntegralResult."""
    n = kernels.check_dimension(n)
    _check_envelope(u, n)
    _check_envelope(v, n)
    lo = max(FLOOR, u.support_floor, v.support_floor)
    if lo >= 1.0:
        return IntegralResult(0.0, 0.0, 0, True)
    omega = kernels.sphere_measure(n)

    def f(r):
        # grouping keeps <u, v> and <v, u> bitwise identical
        return omega * (u.derivative(r) * v.derivative(r)) * r ** (n - 1.0)

    res = adaptive_integral(f, panel_boundaries(lo, u.kinks + v.kinks), spec)
    res.tail_bound = _tail_bound(n, u, v, lo)
    res.error += res.tail_bound
    if not res.converged:
        raise QuadratureError(
            f"inner product <{u.label}, {v.label}> did not converge after "
            f"{res.subdivisions} subdivisions (error estimate {res.error:.3e})"
        )
    return res


def inner_product(n, u, v, spec=DEFAULT_SPEC):
    """omega * integral of u'(r) v'(r) r^(n-1) dr over (0, 1].

    Panels are anchored at the union of both profiles' kinks, so the
    integrand is smooth on every panel.  Deterministic for a fixed spec.
    """
    return inner_product_result(n, u, v, spec).value


def apply_evaluation(n, t, u, spec=DEFAULT_SPEC):
    """Pair u with the kernel centered at t; equals u(t) up to quadrature error."""
    t = kernels.check_radius(t, "t")
    return inner_product(n, kernel_profile(n, t), u, spec)


def sobolev_norm(n, u, spec=DEFAULT_SPEC):
    """sqrt of the weighted Dirichlet energy <u, u>."""
    return math.sqrt(inner_product(n, u, u, spec))


def gradient_seminorm(n, u, spec=DEFAULT_SPEC):
    """(omega * integral of |u'|^n r^(n-1) dr)^(1/n).

    The n-homogeneous companion seminorm; exposed separately so callers
    can compare both normalizations of the exponential-growth constraint.
    """
    n = kernels.check_dimension(n)
    if u.envelope_p >= 1.0:
        raise DomainError(
            f"profile {u.label!r} declares |u'| <= C r^(-{u.envelope_p:g}); "
            "the n-homogeneous seminorm needs p < 1"
        )
    lo = max(FLOOR, u.support_floor)
    if lo >= 1.0:
        return 0.0
    omega = kernels.sphere_measure(n)

    def f(r):
        return omega * np.abs(u.derivative(r)) ** n * r ** (n - 1.0)

    res = adaptive_integral(f, panel_boundaries(lo, u.kinks), spec)
    if not res.converged:
        raise QuadratureError(
            f"seminorm of {u.label} did not converge after {res.subdivisions} subdivisions"
        )
    return res.value ** (1.0 / n)
