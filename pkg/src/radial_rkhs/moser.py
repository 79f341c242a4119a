"""Exponential-growth functional and scans along the bump families.

The functional is the radial reduction of the ball integral of
exp(alpha |u|^(n/(n-1))): omega * integral of exp(alpha |u(r)|^p) r^(n-1) dr.
Exponents above 700 are capped and flagged instead of overflowing, so
supercritical scans report growth rather than crash.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, QuadratureError
from .profiles import moser_profile, scale_profile, tm_candidate_profile
from .quadrature import (DEFAULT_SPEC, FLOOR, adaptive_integral,
                         panel_boundaries, sobolev_norm)

EXP_CAP = 700.0


@dataclass(frozen=True)
class TMParameters:
    """Exponent coefficient alpha and the derived power n/(n-1)."""

    dim: float
    alpha: float
    exponent_power: float = None

    def __post_init__(self):
        dim = kernels.check_dimension(self.dim)
        if not self.alpha > 0.0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        power = dim / (dim - 1.0)
        if self.exponent_power is not None and not math.isclose(
            self.exponent_power, power, rel_tol=1e-12
        ):
            raise DomainError(
                f"exponent_power {self.exponent_power} does not equal "
                f"n/(n-1) = {power} for n = {dim}"
            )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "exponent_power", power)


class TMValue(NamedTuple):
    value: float
    overflow: bool


@dataclass(frozen=True)
class ScanResult:
    """One functional value per family parameter, with overflow flags.

    For dim > 2 the family is normalized to unit Dirichlet norm at run
    time and ``raw_values`` keeps the unnormalized curve alongside.
    ``notes`` holds one message per flagged point ("" when clean).
    """

    dim: float
    alpha: float
    s_grid: np.ndarray
    functional_values: np.ndarray
    overflow_flags: np.ndarray
    raw_values: np.ndarray = None
    notes: tuple = ()


def tm_functional(params, u, spec=DEFAULT_SPEC):
    """omega * integral of exp(alpha |u(r)|^p) r^(n-1) dr as a TMValue.

    The integrand is at least r^(n-1), so the value is at least the unit
    ball volume.  When any exponent exceeds 700 the result carries
    overflow=True and refinement stops early; the capped number is a
    growth sentinel, not an integral.
    """
    n = params.dim
    omega = kernels.sphere_measure(n)
    power = params.exponent_power
    flagged = [False]

    def f(r):
        e = params.alpha * np.abs(u.value(r)) ** power
        mask = e > EXP_CAP
        if mask.any():
            flagged[0] = True
            e = np.where(mask, EXP_CAP, e)
        return omega * np.exp(e) * r ** (n - 1.0)

    res = adaptive_integral(f, panel_boundaries(FLOOR, u.kinks), spec)
    if not res.converged and not flagged[0]:
        raise QuadratureError(
            f"exponential functional of {u.label} did not converge after "
            f"{res.subdivisions} subdivisions"
        )
    # tail below the floor: the families plateau near 0, so u(FLOOR) bounds |u|
    head = float(np.asarray(u.value(np.array([FLOOR])))[0])
    tail = omega * math.exp(min(params.alpha * abs(head) ** power, EXP_CAP)) * FLOOR ** n / n
    res.error += tail
    return TMValue(res.value, flagged[0])


def tm_average(params, u, spec=DEFAULT_SPEC):
    """tm_functional divided by the unit ball volume."""
    raw = tm_functional(params, u, spec)
    return TMValue(raw.value / kernels.ball_volume(params.dim), raw.overflow)


def _family_member(n, s, spec):
    """Scan profile for parameter s: mu_s at n = 2, normalized candidate above."""
    if n == 2.0:
        return moser_profile(s), None
    raw = tm_candidate_profile(n, s)
    norm = sobolev_norm(n, raw, spec)
    return scale_profile(raw, 1.0 / norm, label=f"unit[{raw.label}]"), raw


def moser_scan(dim, alpha, s_grid, spec=DEFAULT_SPEC):
    """Evaluate the functional along the bump family at each s in s_grid.

    Per-point failures become flagged entries (value 0, note with the
    message); the scan itself never aborts.
    """
    n = kernels.check_dimension(dim)
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    params = TMParameters(n, alpha)
    s_grid = np.asarray(list(s_grid), dtype=np.float64)
    values = np.zeros(s_grid.size)
    raw_values = np.zeros(s_grid.size) if n > 2.0 else None
    flags = np.zeros(s_grid.size, dtype=bool)
    notes = []
    for i, s in enumerate(s_grid):
        try:
            member, raw_member = _family_member(n, float(s), spec)
            out = tm_functional(params, member, spec)
            values[i] = out.value
            flags[i] = out.overflow
            if raw_member is not None:
                raw_out = tm_functional(params, raw_member, spec)
                raw_values[i] = raw_out.value
                flags[i] = flags[i] or raw_out.overflow
            notes.append("")
        except Exception as exc:  # per-point isolation
            flags[i] = True
            notes.append(str(exc))
    return ScanResult(
        dim=n,
        alpha=float(alpha),
        s_grid=s_grid,
        functional_values=values,
        overflow_flags=flags,
        raw_values=raw_values,
        notes=tuple(notes),
    )


def unit_norm_check(dim, profile, spec=DEFAULT_SPEC):
    """Dirichlet norm of a family member (1 on the constraint sphere)."""
    return sobolev_norm(dim, profile, spec)
