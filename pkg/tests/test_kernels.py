import math

import numpy as np
import pytest

from radial_rkhs import (DomainError, KinkError, alpha_critical, eval_functional_norm,
                         gamma2, gammaN, kernel_derivative, kernel_K, kernel_matrix,
                         moser_mu, sphere_measure, tm_candidate)
from radial_rkhs.kernels import negative_prefactor, sign_convention

TWO_PI = 2.0 * math.pi
# frozen from a 40-digit gamma-function evaluation of 2 pi^(n/2) / Gamma(n/2)
SPHERE_4 = 19.739208802178716
LOG2_OVER_2PI = 0.1103178000763258
INV_4PI = 0.07957747154594767


class TestSphereMeasure:
    def test_circle(self):
        assert sphere_measure(2) == pytest.approx(TWO_PI, rel=1e-15)

    def test_sphere(self):
        assert sphere_measure(3) == pytest.approx(4.0 * math.pi, rel=1e-15)

    def test_four_dimensional(self):
        assert sphere_measure(4) == pytest.approx(SPHERE_4, rel=1e-15)

    def test_continuous_in_n(self):
        assert sphere_measure(3 + 1e-9) == pytest.approx(sphere_measure(3), rel=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            sphere_measure(1.9)


class TestAlphaCritical:
    def test_two_dimensional_value(self):
        assert alpha_critical(2) == 4.0 * math.pi

    def test_two_formulas_coincide(self):
        assert alpha_critical(2) == 2.0 * (2.0 * math.pi)

    def test_three_dimensional(self):
        # frozen: 3 * sqrt(4 pi)
        assert alpha_critical(3) == pytest.approx(10.634723105433096, rel=1e-15)


class TestGamma2:
    def test_example(self):
        assert gamma2(0.5, 0.25) == pytest.approx(LOG2_OVER_2PI, rel=1e-15)

    def test_boundary(self):
        assert gamma2(0.5, 1.0) == 0.0

    def test_symmetric(self):
        assert gamma2(0.3, 0.7) == gamma2(0.7, 0.3)

    def test_plateau(self):
        assert gamma2(0.5, 0.25) == gamma2(0.5, 0.5)

    def test_domain(self):
        for bad in (0.0, -0.1, 1.5):
            with pytest.raises(DomainError):
                gamma2(bad, 0.5)
            with pytest.raises(DomainError):
                gamma2(0.5, bad)

    def test_tiny_center_is_finite(self):
        assert gamma2(1e-300, 1e-300) == pytest.approx(300 * math.log(10) / TWO_PI, rel=1e-12)


class TestGammaN:
    def test_diagonal(self):
        assert gammaN(3, 0.5, 0.5) == pytest.approx(INV_4PI, rel=1e-15)

    def test_plateau(self):
        assert gammaN(3, 0.5, 0.25) == gammaN(3, 0.5, 0.5)

    def test_boundary(self):
        assert gammaN(3, 0.5, 1.0) == 0.0

    def test_symmetric(self):
        assert gammaN(3.5, 0.3, 0.7) == gammaN(3.5, 0.7, 0.3)

    def test_rejects_n_two(self):
        with pytest.raises(DomainError):
            gammaN(2, 0.5, 0.5)

    def test_monotone_in_r(self):
        vals = [gammaN(3, 0.4, r) for r in np.linspace(0.05, 1.0, 40)]
        assert all(a >= b - 1e-15 for a, b in zip(vals, vals[1:]))

    def test_tiny_center_survives(self):
        # max(t, r) keeps the evaluation away from the overflowing branch
        assert gammaN(3, 1e-300, 0.5) == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-14)


@pytest.mark.parametrize("eps,bound", [(1e-3, None), (1e-6, 1e-4)])
def test_dimension_continuity(eps, bound):
    grid = np.linspace(0.05, 0.95, 10)
    for t in grid:
        for r in grid:
            err = abs(gammaN(2.0 + eps, t, r) - gamma2(t, r))
            scale = 10.0 * eps * (1.0 + abs(math.log(r))) * (1.0 + abs(math.log(t)))
            assert err <= scale
            if bound is not None:
                assert err <= bound


class TestKernelDerivative:
    def test_flat_left_of_kink(self):
        assert kernel_derivative(2, 0.5, 0.25) == 0.0

    def test_log_branch(self):
        assert kernel_derivative(2, 0.5, 0.75) == pytest.approx(-0.2122065907891938, rel=1e-15)

    def test_power_branch(self):
        assert kernel_derivative(3, 0.5, 0.75) == pytest.approx(-0.14147106052612918, rel=1e-15)

    def test_kink(self):
        with pytest.raises(KinkError):
            kernel_derivative(2, 0.5, 0.5)


class TestMoserMu:
    def test_plateau_value(self):
        s = math.exp(-1.0)
        assert moser_mu(s, s) == pytest.approx(0.3989422804014327, rel=1e-15)

    def test_boundary(self):
        assert moser_mu(0.5, 1.0) == 0.0

    def test_multiple_of_kernel(self):
        s, r = 0.5, 0.7
        expected = TWO_PI * gamma2(s, r) / math.sqrt(TWO_PI * math.log(2.0))
        assert moser_mu(s, r) == pytest.approx(expected, rel=1e-14)

    def test_plateau_energy_identity(self):
        for s in (0.9, 0.1, 1e-4, 1e-8):
            assert moser_mu(s, s) ** 2 * TWO_PI == pytest.approx(math.log(1.0 / s), rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            moser_mu(1.0, 0.5)
        with pytest.raises(DomainError):
            moser_mu(0.0, 0.5)


class TestKernelK:
    def test_matches_families_bitwise(self):
        assert kernel_K(2, 0.5, 0.25) == gamma2(0.5, 0.25)
        assert kernel_K(3, 0.5, 0.25) == gammaN(3, 0.5, 0.25)

    def test_diagonal_nonnegative(self):
        for t in (1e-6, 0.3, 0.999, 1.0):
            assert kernel_K(2, t, t) >= 0.0
            assert kernel_K(3, t, t) >= 0.0

    def test_psd_gram(self):
        rng = np.random.default_rng(3)
        for n in (2.0, 3.0, 4.0):
            ts = np.sort(rng.uniform(0.02, 0.98, 12))
            gram = kernel_matrix(n, ts, ts)
            assert np.linalg.eigvalsh(gram)[0] >= -1e-12


class TestEvalFunctionalNorm:
    def test_unit_value(self):
        assert eval_functional_norm(2, math.exp(-TWO_PI)) == pytest.approx(1.0, rel=1e-14)

    def test_boundary(self):
        assert eval_functional_norm(2, 1.0) == 0.0

    def test_three_dimensional(self):
        assert eval_functional_norm(3, 0.5) == pytest.approx(0.28209479177387814, rel=1e-15)

    def test_diverges_toward_zero(self):
        assert eval_functional_norm(2, 1e-300) > 10.0

    def test_strictly_decreasing(self):
        ts = np.linspace(0.05, 0.95, 12)
        vals = [eval_functional_norm(2, float(t)) for t in ts]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_functional_norm(2, 0.0)


class TestTMCandidate:
    def test_boundary(self):
        assert tm_candidate(3, 0.5, 1.0) == 0.0

    def test_value(self):
        assert tm_candidate(3, 0.5, 0.5) == pytest.approx(0.4301270069140498, rel=1e-14)

    def test_plateau(self):
        assert tm_candidate(3, 0.5, 0.25) == pytest.approx(tm_candidate(3, 0.5, 0.5), rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            tm_candidate(2, 0.5, 0.5)
        with pytest.raises(DomainError):
            tm_candidate(3, 1.0, 0.5)

    def test_tiny_center_finite_for_n3(self):
        assert math.isfinite(tm_candidate(3, 1e-300, 0.5))


class TestSignHook:
    def test_flips_power_family_only(self):
        base_n3 = gammaN(3, 0.4, 0.6)
        base_n2 = gamma2(0.4, 0.6)
        with negative_prefactor():
            assert sign_convention() == -1.0
            assert gammaN(3, 0.4, 0.6) == -base_n3
            assert kernel_K(3, 0.4, 0.4) < 0.0
            assert gamma2(0.4, 0.6) == base_n2
            with pytest.raises(DomainError):
                eval_functional_norm(3, 0.4)
        assert sign_convention() == 1.0
        assert gammaN(3, 0.4, 0.6) == base_n3

    def test_matrix_follows_hook(self):
        ts = np.array([0.3, 0.6])
        base = kernel_matrix(3, ts, ts)
        with negative_prefactor():
            assert np.array_equal(kernel_matrix(3, ts, ts), -base)
