import numpy as np
import pytest

from conftest import make_expansion
from radial_rkhs import (DomainError, KernelExpansion, QuadratureError,
                         QuadratureSpec, add_expansions, apply_evaluation,
                         from_callables, gamma2, gradient_seminorm, inner_product,
                         kernel_K, kernel_profile, linear_ramp, moser_profile,
                         sobolev_norm, zero_profile)
from radial_rkhs.quadrature import inner_product_result

LOG2_OVER_2PI = 0.1103178000763258
SQRT_LOG2_OVER_2PI = 0.33214123513398003


def test_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(abs_tol=2.0)
    with pytest.raises(DomainError):
        QuadratureSpec(max_subdivisions=0)
    with pytest.raises(DomainError):
        QuadratureSpec(base_nodes=0)


class TestInnerProduct:
    def test_kernel_pair(self):
        got = inner_product(2, kernel_profile(2, 0.5), kernel_profile(2, 0.25))
        assert got == pytest.approx(LOG2_OVER_2PI, abs=1e-13)

    def test_zero_argument(self):
        assert inner_product(2, moser_profile(0.5), zero_profile()) == 0.0

    def test_moser_unit_energy(self):
        got = inner_product(2, moser_profile(0.5), moser_profile(0.5))
        assert got == pytest.approx(1.0, abs=1e-10)

    def test_symmetry_is_exact(self):
        u = kernel_profile(2, 0.3)
        v = moser_profile(0.6)
        assert inner_product(2, u, v) == inner_product(2, v, u)

    def test_deterministic(self):
        u = moser_profile(0.37)
        assert inner_product(2, u, u) == inner_product(2, u, u)

    def test_bilinearity(self):
        rng = np.random.default_rng(11)
        spec = QuadratureSpec()
        for n in (2.0, 3.0):
            u = make_expansion(rng, n, 3)
            v = make_expansion(rng, n, 3)
            w = make_expansion(rng, n, 3)
            a, b = rng.uniform(-2, 2, 2)
            au_bv = add_expansions(
                KernelExpansion(n, u.centers, a * u.coefficients),
                KernelExpansion(n, v.centers, b * v.coefficients),
            )
            lhs = inner_product(n, au_bv.as_profile(), w.as_profile(), spec)
            rhs = (a * inner_product(n, u.as_profile(), w.as_profile(), spec)
                   + b * inner_product(n, v.as_profile(), w.as_profile(), spec))
            assert lhs == pytest.approx(rhs, abs=10 * max(spec.abs_tol, spec.rel_tol * abs(rhs)) + 1e-12)

    def test_matches_closed_form_gram(self):
        rng = np.random.default_rng(5)
        for n in (2.0, 3.0):
            ts = rng.uniform(0.02, 0.95, 6)
            for t in ts:
                for s in ts:
                    closed = kernel_K(n, t, s)
                    quad = inner_product(n, kernel_profile(n, t), kernel_profile(n, s))
                    assert quad == pytest.approx(closed, rel=1e-10)


class TestReproducingIdentity:
    @pytest.mark.parametrize("n", [2.0, 3.0, 4.0])
    def test_kernel_expansions(self, n):
        rng = np.random.default_rng(int(n))
        ts = np.linspace(0.025, 0.975, 20)
        worst = 0.0
        for _ in range(5):
            u = make_expansion(rng, n)
            prof = u.as_profile()
            for t in ts:
                got = apply_evaluation(n, float(t), prof)
                worst = max(worst, abs(got - u.evaluate(float(t))))
        assert worst <= 1e-8

    def test_non_integer_dimension(self):
        # n > 2 need not be an integer; the pairing must still reproduce
        rng = np.random.default_rng(25)
        u = make_expansion(rng, 2.5, 3)
        prof = u.as_profile()
        for t in (0.1, 0.45, 0.9):
            got = apply_evaluation(2.5, t, prof)
            assert got == pytest.approx(u.evaluate(t), abs=1e-8)

    def test_nan_integrand_is_not_reported_converged(self):
        toxic = from_callables(
            lambda r: np.zeros_like(np.asarray(r, dtype=float)),
            lambda r: np.full_like(np.asarray(r, dtype=float), np.nan),
            envelope=(1.0, 0.0),
        )
        with pytest.raises(QuadratureError):
            inner_product(2, toxic, toxic)

    def test_kernel_argument(self):
        got = apply_evaluation(2, 0.5, kernel_profile(2, 0.25))
        assert got == pytest.approx(gamma2(0.25, 0.5), abs=1e-13)

    def test_boundary_center(self):
        assert apply_evaluation(2, 1.0, moser_profile(0.5)) == 0.0

    def test_ramp(self):
        assert apply_evaluation(3, 0.5, linear_ramp()) == pytest.approx(0.5, abs=1e-12)


class TestSobolevNorm:
    def test_moser(self):
        assert sobolev_norm(2, moser_profile(0.5)) == pytest.approx(1.0, abs=1e-10)

    def test_zero(self):
        assert sobolev_norm(2, zero_profile()) == 0.0

    def test_kernel(self):
        got = sobolev_norm(2, kernel_profile(2, 0.5))
        assert got == pytest.approx(SQRT_LOG2_OVER_2PI, abs=1e-12)

    def test_gradient_seminorm_matches_at_n2(self):
        u = moser_profile(0.3)
        assert gradient_seminorm(2, u) == pytest.approx(sobolev_norm(2, u), abs=1e-12)


class TestPanels:
    def test_kernel_pair_exact_without_refinement(self):
        # piecewise power-law integrand: the geometric pre-split already
        # integrates it to machine precision on a handful of panels
        res = inner_product_result(2, kernel_profile(2, 0.1), kernel_profile(2, 0.1))
        assert res.subdivisions == 0
        assert res.value == pytest.approx(kernel_K(2, 0.1, 0.1), rel=1e-14)

    def test_converges_without_declared_kinks(self):
        mu = moser_profile(0.35)
        blind = from_callables(mu.value, mu.derivative,
                               envelope=(mu.envelope_c, 0.0),
                               label="undeclared-kink")
        got = inner_product(2, blind, blind)
        assert got == pytest.approx(1.0, abs=1e-10)

    def test_envelope_policy_rejects_nonintegrable(self):
        spiky = from_callables(
            lambda r: np.zeros_like(np.asarray(r, dtype=float)),
            lambda r: np.asarray(r, dtype=float) ** -1.5,
            envelope=(1.0, 1.5),
        )
        with pytest.raises(DomainError):
            inner_product(2, spiky, spiky)
        with pytest.raises(DomainError):
            gradient_seminorm(2, spiky)

    def test_nonconvergence_raises(self):
        rough = from_callables(
            lambda r: np.zeros_like(np.asarray(r, dtype=float)),
            lambda r: np.cos(200.0 / np.asarray(r, dtype=float)),
            envelope=(1.0, 0.0),
        )
        spec = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-14,
                              max_subdivisions=2, base_nodes=2)
        with pytest.raises(QuadratureError):
            inner_product(2, rough, rough, spec)
