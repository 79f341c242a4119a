"""Radial profiles: the objects fed to the quadrature and the functionals.

A profile is a function u on (0, 1] with u(1) = 0, carried together with
its derivative, the kink radii where the derivative jumps, and a
power-law envelope |u'(r)| <= C r^(-p) valid on all of (0, 1].  The
envelope bounds the untraversed tail below the integration floor; a
positive ``support_floor`` additionally asserts u' vanishes identically
on (0, support_floor), which is true for every kernel-type family.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import DomainError, ProfileError

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class RadialProfile:
    """A function u on (0, 1] with u(1) = 0, its derivative, and metadata.

    ``envelope_c``/``envelope_p`` declare |u'(r)| <= C r^(-p) on (0, 1];
    ``support_floor`` > 0 asserts u' vanishes identically below it.
    """

    value: Callable
    derivative: Callable
    kinks: tuple = ()
    label: str = ""
    envelope_c: float = 0.0
    envelope_p: float = 0.0
    support_floor: float = 0.0

    def __post_init__(self):
        ks = tuple(float(k) for k in self.kinks)
        if list(ks) != sorted(set(ks)):
            raise ProfileError(f"kinks must be sorted and distinct, got {ks}")
        if ks and not (0.0 < ks[0] and ks[-1] < 1.0):
            raise ProfileError(f"kinks must lie strictly inside (0, 1), got {ks}")
        object.__setattr__(self, "kinks", ks)
        if not (math.isfinite(self.envelope_c) and self.envelope_c >= 0.0):
            raise ProfileError(f"envelope constant must be finite and >= 0, got {self.envelope_c}")
        if not (math.isfinite(self.envelope_p) and self.envelope_p >= 0.0):
            raise ProfileError(f"envelope power must be finite and >= 0, got {self.envelope_p}")
        if not 0.0 <= self.support_floor <= 1.0:
            raise ProfileError(f"support_floor must lie in [0, 1], got {self.support_floor}")
        boundary = float(np.asarray(self.value(np.array([1.0])))[0])
        if abs(boundary) > _BOUNDARY_TOL:
            raise ProfileError(f"profile must vanish at r = 1, got value {boundary}")

    def __call__(self, r):
        return self.value(r)


def from_callables(value, derivative, *, envelope, kinks=(),
                   label="", support_floor=0.0):
    """Wrap plain vectorized callables into a validated profile.

    ``envelope = (C, p)`` must declare |u'(r)| <= C r^(-p) on (0, 1];
    it bounds the integration tail below 1e-14 and gates admissibility.
    """
    c, p = envelope
    return RadialProfile(value=value, derivative=derivative, kinks=tuple(kinks),
                         label=label, envelope_c=float(c), envelope_p=float(p),
                         support_floor=float(support_floor))


def zero_profile():
    """The zero element."""
    return RadialProfile(
        value=lambda r: np.zeros_like(np.asarray(r, dtype=np.float64)),
        derivative=lambda r: np.zeros_like(np.asarray(r, dtype=np.float64)),
        label="zero",
        support_floor=1.0,
    )


def kernel_profile(n, t):
    """The kernel centered at t as a profile (k_1 is identically zero)."""
    n = kernels.check_dimension(n)
    t = kernels.check_radius(t, "t")
    if t == 1.0:
        return zero_profile()
    if n == 2.0:
        slope_c = 1.0 / (kernels.TWO_PI * t)
    else:
        slope_c = t ** (1.0 - n) / kernels.sphere_measure(n)
    return RadialProfile(
        value=lambda r: kernels.kernel_values(n, t, r),
        derivative=lambda r: kernels.kernel_derivative_values(n, t, r),
        kinks=(t,),
        label=f"kernel[n={n:g}, t={t:g}]",
        envelope_c=slope_c,
        support_floor=t,
    )


def moser_profile(s):
    """The unit-norm truncated-log bump with plateau on (0, s] (two-dimensional)."""
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1) strictly, got {s}")
    norm = math.sqrt(kernels.TWO_PI * -math.log(s))

    def value(r):
        r = kernels._as_radius_array(r, "r")
        return -np.log(np.maximum(r, s)) / norm

    def derivative(r):
        r = kernels._as_radius_array(r, "r")
        out = np.zeros_like(r)
        right = r > s
        out[right] = -1.0 / (norm * r[right])
        return out

    return RadialProfile(
        value=value,
        derivative=derivative,
        kinks=(s,),
        label=f"mu[s={s:g}]",
        envelope_c=1.0 / (norm * s),
        support_floor=s,
    )


def tm_candidate_profile(n, t):
    """The scaled power-law bump for n > 2 as a profile."""
    n = kernels.check_dimension(n)
    if n <= 2.0:
        raise DomainError(f"tm_candidate requires n > 2, got {n}")
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"center t must lie in (0, 1) strictly, got {t}")
    scale = kernels.tm_candidate_scale(n, t)

    def value(r):
        r = kernels._as_radius_array(r, "r")
        m = np.maximum(r, t)
        body = -np.expm1((2.0 - n) * np.log(m)) / (2.0 - n)
        return kernels.sign_convention() * scale * body

    def derivative(r):
        r = kernels._as_radius_array(r, "r")
        out = np.zeros_like(r)
        right = r > t
        out[right] = kernels.sign_convention() * scale * -(r[right] ** (1.0 - n))
        return out

    return RadialProfile(
        value=value,
        derivative=derivative,
        kinks=(t,),
        label=f"tm_candidate[n={n:g}, t={t:g}]",
        envelope_c=scale * t ** (1.0 - n),
        support_floor=t,
    )


def scale_profile(profile, factor, label=""):
    """The profile multiplied by a scalar."""
    factor = float(factor)
    return RadialProfile(
        value=lambda r: factor * profile.value(r),
        derivative=lambda r: factor * profile.derivative(r),
        kinks=profile.kinks,
        label=label or f"{abs(factor):g}*({profile.label})",
        envelope_c=abs(factor) * profile.envelope_c,
        envelope_p=profile.envelope_p,
        support_floor=profile.support_floor,
    )


def linear_ramp():
    """The test profile r -> 1 - r."""
    return RadialProfile(
        value=lambda r: 1.0 - np.asarray(r, dtype=np.float64),
        derivative=lambda r: -np.ones_like(np.asarray(r, dtype=np.float64)),
        label="1-r",
        envelope_c=1.0,
    )
