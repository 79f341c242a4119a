import math

import numpy as np
import pytest

from radial_rkhs import (ProfileError, from_callables, kernel_profile, linear_ramp,
                         moser_profile, scale_profile, tm_candidate_profile,
                         zero_profile)
from radial_rkhs.quadrature import adaptive_integral, panel_boundaries


def test_boundary_value_enforced():
    with pytest.raises(ProfileError):
        from_callables(lambda r: np.asarray(r) * 0.0 + 0.1,
                       lambda r: np.zeros_like(np.asarray(r)),
                       envelope=(0.0, 0.0))


def test_kinks_must_be_sorted_distinct_interior():
    ok = lambda r: np.zeros_like(np.asarray(r, dtype=float))
    with pytest.raises(ProfileError):
        from_callables(ok, ok, envelope=(0.0, 0.0), kinks=(0.7, 0.3))
    with pytest.raises(ProfileError):
        from_callables(ok, ok, envelope=(0.0, 0.0), kinks=(0.3, 0.3))
    with pytest.raises(ProfileError):
        from_callables(ok, ok, envelope=(0.0, 0.0), kinks=(1.0,))


def test_envelope_validation():
    ok = lambda r: np.zeros_like(np.asarray(r, dtype=float))
    with pytest.raises(ProfileError):
        from_callables(ok, ok, envelope=(-1.0, 0.0))
    with pytest.raises(ProfileError):
        from_callables(ok, ok, envelope=(1.0, math.nan))


def test_zero_profile():
    z = zero_profile()
    rs = np.array([0.1, 0.5, 1.0])
    assert np.array_equal(z.value(rs), np.zeros(3))
    assert z.support_floor == 1.0


def test_linear_ramp():
    u = linear_ramp()
    assert u.value(np.array([0.25]))[0] == 0.75
    assert u.derivative(np.array([0.25]))[0] == -1.0


def test_scale_profile():
    mu = moser_profile(0.5)
    half = scale_profile(mu, 0.5)
    rs = np.array([0.3, 0.8])
    assert np.allclose(half.value(rs), 0.5 * mu.value(rs))
    assert np.allclose(half.derivative(rs), 0.5 * mu.derivative(rs))
    assert half.envelope_c == 0.5 * mu.envelope_c
    assert half.support_floor == mu.support_floor


@pytest.mark.parametrize("profile", [
    kernel_profile(2, 0.4),
    kernel_profile(3, 0.4),
    moser_profile(0.3),
    tm_candidate_profile(3, 0.3),
])
def test_derivative_integrates_to_value(profile):
    # value(b) - value(a) must equal the integral of the derivative
    for a, b in ((0.1, 0.9), (0.25, 0.5), (0.35, 1.0)):
        res = adaptive_integral(profile.derivative,
                                panel_boundaries(a, profile.kinks, hi=b))
        va, vb = profile.value(np.array([a, b]))
        assert res.value == pytest.approx(vb - va, abs=1e-12)


def test_kernel_profile_at_center_one_is_zero():
    prof = kernel_profile(2, 1.0)
    assert np.array_equal(prof.value(np.array([0.5])), np.zeros(1))
    assert prof.support_floor == 1.0
