import math

import numpy as np
import pytest

from copula_outage import (
    PRODUCT,
    SUM,
    Exponential,
    TypeMismatch,
    Uniform,
    closed_form_sum_exponential,
    closed_form_sum_uniform,
    numerical_bounds,
    phi_upper,
    tau_lower,
)

UX = Uniform(1.0, 3.0)
UY = Uniform(2.0, 5.0)
E1 = Exponential(1.0)


class TestTauLower:
    def test_uniform_sum_fig2(self):
        val, pt = tau_lower(UX, UY, SUM, 6.0)
        assert val == pytest.approx(1.0 / 3.0, abs=1e-8)
        assert pt[0] == pytest.approx(3.0, abs=1e-6)
        assert pt[1] == pytest.approx(3.0, abs=1e-6)

    def test_exp_sum_below_shift(self):
        # lower bound clips at zero for s below k = 2 ln 2
        val, _ = tau_lower(E1, E1, SUM, 1.0)
        assert val == 0.0

    def test_uniform_product_small_s(self):
        val, _ = tau_lower(UX, UY, PRODUCT, 2.0)
        assert val == 0.0

    def test_argpoint_on_level_set(self):
        for s in (5.5, 6.0, 7.0):
            _, pt = tau_lower(UX, UY, SUM, s)
            assert pt[0] + pt[1] == pytest.approx(s, abs=1e-6)


class TestPhiUpper:
    def test_uniform_sum(self):
        val, _ = phi_upper(UX, UY, SUM, 4.0)
        assert val == pytest.approx(1.0 / 3.0, abs=1e-8)

    def test_exp_sum_fig3(self):
        val, _ = phi_upper(E1, E1, SUM, 0.1)
        assert val == pytest.approx(0.09516258196404044, abs=1e-6)

    def test_below_level_range(self):
        assert phi_upper(UX, UY, SUM, 2.0) == (0.0, None)
        assert phi_upper(UX, UY, PRODUCT, 1.0) == (0.0, None)


class TestClosedFormUniform:
    def test_supports(self):
        # lower CDF uniform on [5, 8], upper on [3, 6]
        assert closed_form_sum_uniform(UX, UY, 5.0).lower == 0.0
        assert closed_form_sum_uniform(UX, UY, 8.0).lower == 1.0
        assert closed_form_sum_uniform(UX, UY, 3.0).upper == 0.0
        assert closed_form_sum_uniform(UX, UY, 6.0).upper == 1.0

    def test_linear_interior(self):
        r = closed_form_sum_uniform(UX, UY, 5.5)
        assert r.lower == pytest.approx(1.0 / 6.0, abs=1e-12)
        assert r.upper == pytest.approx(5.0 / 6.0, abs=1e-12)

    def test_type_check(self):
        with pytest.raises(TypeMismatch):
            closed_form_sum_uniform(UX, E1, 4.0)


class TestClosedFormExponential:
    def test_shift_boundary(self):
        r = closed_form_sum_exponential(E1, E1, 2.0 * math.log(2.0))
        assert r.lower == pytest.approx(0.0, abs=1e-12)

    def test_upper_small_s(self):
        r = closed_form_sum_exponential(E1, E1, 0.1)
        assert r.upper == pytest.approx(0.09516258196404044, abs=1e-12)

    def test_mixed_rates(self):
        # lam = (1, 2): scales (1, 0.5), k = 1.5 ln 1.5 - 0.5 ln 0.5
        r = closed_form_sum_exponential(E1, Exponential(2.0), 10.0)
        k = 1.5 * math.log(1.5) - 0.5 * math.log(0.5)
        assert r.lower == pytest.approx(-math.expm1(-(10.0 - k) / 1.5), abs=1e-12)
        assert r.lower == pytest.approx(0.997594872827326, abs=1e-9)
        num = numerical_bounds(E1, Exponential(2.0), SUM, 10.0)
        assert num.lower == pytest.approx(r.lower, abs=1e-6)

    def test_stationary_point_on_curve(self):
        r = closed_form_sum_exponential(E1, Exponential(2.0), 3.0)
        x, y = r.lower_argpoint
        assert x + y == pytest.approx(3.0, abs=1e-12)
        assert 0.0 <= x <= 3.0

    def test_type_check(self):
        with pytest.raises(TypeMismatch):
            closed_form_sum_exponential(UX, E1, 4.0)


class TestAgreement:
    def test_uniform_sum_grid(self):
        for s in np.linspace(0.0, 20.0, 201):
            cf = closed_form_sum_uniform(UX, UY, float(s))
            nm = numerical_bounds(UX, UY, SUM, float(s))
            assert nm.lower == pytest.approx(cf.lower, abs=1e-6)
            assert nm.upper == pytest.approx(cf.upper, abs=1e-6)

    def test_exp_sum_grid(self):
        ey = Exponential(2.0)
        for s in np.linspace(0.01, 20.0, 60):
            cf = closed_form_sum_exponential(E1, ey, float(s))
            nm = numerical_bounds(E1, ey, SUM, float(s))
            assert nm.lower == pytest.approx(cf.lower, abs=1e-6)
            assert nm.upper == pytest.approx(cf.upper, abs=1e-6)


class TestProperties:
    def test_bounds_monotone_in_s(self):
        for op, grid in ((SUM, np.linspace(0.0, 12.0, 100)),
                         (PRODUCT, np.linspace(0.0, 20.0, 100))):
            lows = [numerical_bounds(UX, UY, op, float(s)).lower for s in grid]
            ups = [numerical_bounds(UX, UY, op, float(s)).upper for s in grid]
            assert all(a <= b + 1e-9 for a, b in zip(lows, lows[1:]))
            assert all(a <= b + 1e-9 for a, b in zip(ups, ups[1:]))

    def test_bracket_independence(self):
        # under the product copula, X + Y (iid exp(lam)) has CDF
        # 1 - exp(-lam s)(1 + lam s); it must sit between the bounds
        lam = 1.3
        e = Exponential(lam)
        for s in np.linspace(0.05, 15.0, 80):
            cdf_pi = -math.expm1(-lam * s) - lam * s * math.exp(-lam * s)
            r = closed_form_sum_exponential(e, e, float(s))
            assert r.lower - 1e-12 <= cdf_pi <= r.upper + 1e-12

    def test_ordering_and_range(self):
        for s in np.linspace(-1.0, 25.0, 90):
            r = numerical_bounds(UX, UY, SUM, float(s))
            assert 0.0 <= r.lower <= r.upper <= 1.0

    def test_degenerate_tightness(self):
        assert numerical_bounds(UX, UY, SUM, 8.5).lower == 1.0
        assert numerical_bounds(UX, UY, SUM, 2.5).upper == 0.0
        assert closed_form_sum_exponential(E1, E1, 200.0).lower > 1.0 - 1e-12
        assert closed_form_sum_exponential(E1, E1, 1e-9).upper < 1e-8

    def test_product_lower_support(self):
        # lower product CDF reaches 1 at s = 15 and is 0.5 at s = 10
        assert numerical_bounds(UX, UY, PRODUCT, 15.0).lower == pytest.approx(1.0, abs=1e-8)
        assert numerical_bounds(UX, UY, PRODUCT, 10.0).lower == pytest.approx(0.5, abs=1e-6)
