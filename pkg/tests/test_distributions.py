"""Closed-form distribution tests.

Cross-validation pattern: every density/CF is checked against an
independent numerical route (quadrature of the defining integral,
change of variables, or cosine inversion), plus frozen high-precision
spot values.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from cauchycorr import cfnum, distributions as dist
from cauchycorr.exceptions import DomainError, NotAvailableError, SingularPointError


class TestCauchy:
    def test_pdf_mode(self):
        assert dist.cauchy_pdf(0.0) == pytest.approx(1 / math.pi, abs=1e-16)

    def test_pdf_at_quartile(self):
        assert dist.cauchy_pdf(1.0) == pytest.approx(1 / (2 * math.pi), abs=1e-16)

    def test_cf(self):
        assert dist.cauchy_cf(0.0) == 1.0
        assert dist.cauchy_cf(-2.0) == dist.cauchy_cf(2.0) == pytest.approx(math.exp(-2))

    def test_cdf_quartiles(self):
        assert dist.cauchy_cdf(0.0) == pytest.approx(0.5)
        assert dist.cauchy_cdf(1.0) == pytest.approx(0.75)


class TestCauchySquared:
    def test_cdf_median(self):
        assert dist.cauchy_sq_cdf(1.0) == pytest.approx(0.5, abs=1e-15)

    def test_pdf_at_one(self):
        assert dist.cauchy_sq_pdf(1.0) == pytest.approx(1 / (2 * math.pi), abs=1e-15)

    def test_support(self):
        assert dist.cauchy_sq_pdf(-1.0) == 0.0
        assert dist.cauchy_sq_cdf(0.0) == 0.0

    def test_cdf_pdf_coherence(self):
        for z in (0.5, 1.0, 4.0, 25.0):
            integral = cfnum.integrate(dist.cauchy_sq_pdf, 0.0, z).value
            assert integral == pytest.approx(dist.cauchy_sq_cdf(z), abs=1e-10)

    def test_cf_frozen_value(self):
        got = dist.cauchy_sq_cf(0.3)
        assert got.real == pytest.approx(0.6152539246779806, abs=1e-12)
        assert got.imag == pytest.approx(0.2175786103276155, abs=1e-12)

    def test_cf_matches_fourier_quadrature_oracle(self):
        # substituting z = y^2 gives (2/pi) int_0^inf e^{i t y^2}/(1+y^2) dy;
        # rotating the contour to y = e^{i pi/4} s makes the integrand damped
        def oracle(t):
            def rotated(s):
                return np.exp(-t * s * s) / (1 + 1j * s * s)
            re = quad(lambda s: rotated(s).real, 0, np.inf, epsabs=1e-13)[0]
            im = quad(lambda s: rotated(s).imag, 0, np.inf, epsabs=1e-13)[0]
            return 2 / math.pi * np.exp(1j * math.pi / 4) * (re + 1j * im)

        for t in (0.3, 1.0, 3.0):
            assert dist.cauchy_sq_cf(t) == pytest.approx(oracle(t), abs=1e-8)

    def test_cf_unit_at_zero_and_bounded(self):
        assert dist.cauchy_sq_cf(0.0) == 1.0 + 0.0j
        for t in np.linspace(-40.0, 40.0, 81):
            assert abs(dist.cauchy_sq_cf(float(t))) <= 1.0 + 1e-12

    def test_cf_conjugate_symmetry(self):
        for t in (0.4, 2.1, 9.0):
            assert dist.cauchy_sq_cf(-t) == pytest.approx(dist.cauchy_sq_cf(t).conjugate())


class TestSumSqLimit:
    def test_cf_at_zero(self):
        assert dist.sum_sq_limit_cf(0.0) == 1.0 + 0.0j

    def test_cf_modulus_closed_form(self):
        # |exp(-2 sqrt(-it/pi))| = exp(-sqrt(2t/pi)): equals 1/e at t = pi/2
        assert abs(dist.sum_sq_limit_cf(math.pi / 2)) == pytest.approx(math.exp(-1), abs=1e-12)

    def test_cdf_matches_pdf_quadrature(self):
        for w in (0.1, 1.0, 10.0):
            integral = cfnum.integrate(dist.sum_sq_limit_pdf, 0.0, w).value
            assert integral == pytest.approx(dist.sum_sq_limit_cdf(w), abs=1e-10)

    def test_cdf_frozen_value(self):
        assert dist.sum_sq_limit_cdf(1.0) == pytest.approx(0.4249374836833620, abs=1e-14)

    def test_stable_limit_construction(self):
        # the n-fold product of the rescaled squared-Cauchy CF approaches this CF
        for t in (0.5, 2.0):
            deviations = [abs(dist.cauchy_sq_cf(t / n ** 2) ** n - dist.sum_sq_limit_cf(t))
                          for n in (100, 1_000, 10_000)]
            assert deviations[0] > deviations[1] > deviations[2]


class TestHalfNormal:
    def test_support(self):
        assert dist.half_normal_pdf(-1.0) == 0.0
        assert dist.half_normal_cdf(0.0) == 0.0

    def test_normalization(self):
        total = cfnum.integrate(dist.half_normal_pdf, 0.0, math.inf).value
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_unnormalized_kernel_integrates_to_half(self):
        total = cfnum.integrate(dist.half_normal_pdf_unnormalized, 0.0, math.inf).value
        assert total == pytest.approx(0.5, abs=1e-10)

    def test_change_of_variables_from_sum_sq_limit(self):
        # U = 1/sqrt(W): f_U(u) = f_W(1/u^2) * |d(1/u^2)/du| = f_W(u^-2) * 2 u^-3
        for u in (0.5, 1.0, 2.0):
            expected = dist.sum_sq_limit_pdf(u ** -2) * 2.0 * u ** -3
            assert dist.half_normal_pdf(u) == pytest.approx(expected, abs=1e-12)

    def test_cdf_closed_form(self):
        for u in (0.3, 1.0, 2.5):
            integral = cfnum.integrate(dist.half_normal_pdf, 0.0, u).value
            assert dist.half_normal_cdf(u) == pytest.approx(integral, abs=1e-10)


class TestProduct:
    def test_removable_point_value(self):
        assert dist.product_pdf(1.0) == pytest.approx(1 / math.pi ** 2, abs=1e-15)
        assert dist.product_pdf(-1.0) == pytest.approx(1 / math.pi ** 2, abs=1e-15)

    def test_removable_band_is_continuous(self):
        inside = dist.product_pdf(1.0 + 5e-7)   # series branch
        outside = dist.product_pdf(1.0 + 2e-6)  # direct formula
        assert inside == pytest.approx(outside, rel=1e-5)

    def test_singular_point_signalled(self):
        with pytest.raises(SingularPointError):
            dist.product_pdf(0.0)

    def test_cf_at_zero_and_bounds(self):
        assert dist.product_cf(0.0) == 1.0
        for t in np.linspace(-30.0, 30.0, 61):
            value = dist.product_cf(float(t))
            assert abs(value) <= 1.0 + 1e-12

    def test_cf_even(self):
        for t in (0.7, 3.0, 18.0):
            assert dist.product_cf(-t) == dist.product_cf(t)

    def test_cf_frozen_value(self):
        assert dist.product_cf(1.0) == pytest.approx(0.3956271183189225, abs=1e-13)

    def test_pdf_matches_cf_inversion(self):
        for s in (0.5, 2.0, 5.0):
            inverted = cfnum.invert_symmetric_cf(dist.product_cf, s)
            assert inverted.value == pytest.approx(dist.product_pdf(s), abs=1e-6)

    @given(st.floats(min_value=1e-6, max_value=100.0))
    @settings(max_examples=100)
    def test_even_density(self, s):
        assert dist.product_pdf(-s) == dist.product_pdf(s)


class TestCorrectionFactor:
    def test_value_at_400(self):
        assert float(dist.correction_factor(400)) == pytest.approx(0.80894, abs=1e-5)

    def test_boundary_legal(self):
        assert float(dist.correction_factor(4)) > 0.0

    def test_domain(self):
        for n in (3, 2, 1, 0, -7):
            with pytest.raises(DomainError):
                dist.correction_factor(n)

    def test_monotone_and_limit(self):
        values = [float(dist.correction_factor(n)) for n in (4, 10, 100, 10_000, 10 ** 9)]
        assert all(b > a for a, b in zip(values[:-1], values[1:]))
        assert abs(values[-1] - 1.0) < 0.06


class TestCorrLimit:
    def test_pdf_frozen_value(self):
        # 2 ln(1 + sqrt 2) / (pi^2 sqrt 2)
        assert dist.corr_limit_pdf(1.0, 1.0) == pytest.approx(0.1262918380135767, abs=1e-13)

    def test_pdf_even_exactly(self):
        for r in (0.25, 1.0, 7.0):
            assert dist.corr_limit_pdf(-r, 0.8) == dist.corr_limit_pdf(r, 0.8)

    def test_singular_point_signalled(self):
        with pytest.raises(SingularPointError):
            dist.corr_limit_pdf(0.0, 1.0)

    def test_correction_factor_domain(self):
        for bad_a in (0.0, -0.2, 1.2):
            with pytest.raises(DomainError):
                dist.corr_limit_pdf(1.0, bad_a)

    def test_accepts_correction_factor_object(self):
        cf400 = dist.correction_factor(400)
        assert dist.corr_limit_pdf(1.0, cf400) == dist.corr_limit_pdf(1.0, float(cf400))

    def test_tail_law(self):
        target = 2 / math.pi ** 2
        at_1e4 = 1e4 ** 2 * dist.corr_limit_pdf(1e4, 1.0)
        at_1e5 = 1e5 ** 2 * dist.corr_limit_pdf(1e5, 1.0)
        assert at_1e4 == pytest.approx(target, rel=0.01)
        assert abs(at_1e5 - target) < abs(at_1e4 - target)  # converging

    def test_cf_unit_at_zero(self):
        assert dist.corr_limit_cf(0.0, 1.0) == 1.0

    def test_pdf_matches_cf_inversion(self):
        inverted = cfnum.invert_symmetric_cf(lambda t: dist.corr_limit_cf(t, 1.0), 2.0)
        assert inverted.value == pytest.approx(dist.corr_limit_pdf(2.0, 1.0), abs=1e-6)

    def test_cdf_center_and_symmetry(self):
        assert dist.corr_limit_cdf(0.0, 0.9) == 0.5
        for r in (0.3, 1.0, 5.0):
            assert dist.corr_limit_cdf(-r, 0.9) == pytest.approx(
                1.0 - dist.corr_limit_cdf(r, 0.9), abs=1e-12)

    def test_cdf_against_direct_pdf_quadrature(self):
        a = 0.8089398882612183
        for r in (0.5, 1.0, 3.0):
            direct = quad(lambda x: dist.corr_limit_pdf(x, a), 0.0, r,
                          epsabs=1e-12, epsrel=1e-12, limit=500)[0]
            assert dist.corr_limit_cdf(r, a) - 0.5 == pytest.approx(direct, abs=1e-9)

    def test_cdf_normalizes(self):
        assert dist.corr_limit_cdf(math.inf, 1.0) == pytest.approx(1.0, abs=1e-8)
        assert dist.corr_limit_cdf(-math.inf, 1.0) == pytest.approx(0.0, abs=1e-8)

    def test_cdf_sorted_matches_scalar(self):
        a = 0.85
        rng = np.random.default_rng(42)
        values = np.sort(np.concatenate([rng.standard_cauchy(40), [0.0, 1.0, -1.0]]))
        bulk = dist.corr_limit_cdf_sorted(values, a)
        for v, f in zip(values, bulk):
            assert f == pytest.approx(dist.corr_limit_cdf(float(v), a), abs=1e-9)

    def test_cdf_sorted_input_validation(self):
        with pytest.raises(DomainError):
            dist.corr_limit_cdf_sorted(np.array([1.0, 0.5]), 1.0)  # not ascending


class TestModelRegistry:
    def test_all_models_constructible(self):
        for name in dist.ModelName:
            kwargs = {"n": 400} if name is dist.ModelName.ASYMPTOTIC_RC else {}
            model = dist.make_model(name.value, **kwargs)
            assert model.name is name

    def test_product_cdf_not_available(self):
        model = dist.make_model("ProductS")
        assert not model.has_cdf
        with pytest.raises(NotAvailableError):
            model.cdf(1.0)

    def test_half_normal_cf_not_available(self):
        model = dist.make_model("HalfNormalU")
        assert not model.has_cf
        with pytest.raises(NotAvailableError):
            model.cf(1.0)

    def test_asymptotic_rc_parameterization(self):
        via_n = dist.make_model("AsymptoticRc", n=400)
        assert via_n.params[0] == pytest.approx(0.8089398882612183, abs=1e-15)
        via_a = dist.make_model("AsymptoticRc", a=0.9)
        assert via_a.pdf(1.0) == dist.corr_limit_pdf(1.0, 0.9)
        with pytest.raises(DomainError):
            dist.make_model("AsymptoticRc")
        with pytest.raises(DomainError):
            dist.make_model("AsymptoticRc", a=0.9, n=400)

    def test_other_models_take_no_params(self):
        with pytest.raises(DomainError):
            dist.make_model("CauchyStd", n=100)

    def test_model_pdf_cdf_cf_dispatch(self):
        model = dist.make_model("CauchySquared")
        assert model.pdf(1.0) == dist.cauchy_sq_pdf(1.0)
        assert model.cdf(1.0) == dist.cauchy_sq_cdf(1.0)
        assert model.cf(0.3) == dist.cauchy_sq_cf(0.3)
