import math

import numpy as np
import pytest

from copula_outage import M, PI, W, DomainError, Exponential, sklar_joint_cdf
from copula_outage.copulas import check_copula, custom, sample_mixture, sample_pairs
from copula_outage.numerics import RandomSource


class TestEval:
    def test_w_floor(self):
        assert W.eval(0.5, 0.5) == 0.0

    def test_m_min(self):
        assert M.eval(0.3, 0.8) == 0.3

    def test_pi_product(self):
        assert PI.eval(0.5, 0.5) == 0.25

    def test_domain(self):
        with pytest.raises(DomainError):
            W.eval(1.2, 0.5)


class TestDual:
    def test_values(self):
        assert W.dual(0.5, 0.5) == 1.0
        assert M.dual(0.3, 0.8) == pytest.approx(0.8)
        for b in (0.0, 0.3, 1.0):
            assert PI.dual(1.0, b) == pytest.approx(1.0)

    def test_dual_involution(self):
        for a in np.linspace(0.0, 1.0, 11):
            for b in np.linspace(0.0, 1.0, 11):
                for c in (W, M, PI):
                    assert a + b - c.dual(a, b) == pytest.approx(c.eval(a, b), abs=1e-15)


class TestSklar:
    def test_independent_exponentials(self):
        e = Exponential(1.0)
        expected = (1.0 - math.exp(-1.0)) ** 2
        assert sklar_joint_cdf(PI, e, e, 1.0, 1.0) == pytest.approx(expected, abs=1e-9)

    def test_comonotone_min(self):
        e = Exponential(1.0)
        x, y = e.quantile(0.4), e.quantile(0.7)
        assert sklar_joint_cdf(M, e, e, x, y) == pytest.approx(0.4)

    def test_countermonotone_floor(self):
        e = Exponential(1.0)
        assert sklar_joint_cdf(W, e, e, e.quantile(0.4), e.quantile(0.5)) == 0.0

    def test_marginal_limit(self):
        e = Exponential(1.0)
        for x in (0.1, 1.0, 4.0):
            assert sklar_joint_cdf(PI, e, e, x, math.inf) == pytest.approx(e.cdf(x), abs=1e-12)


class TestCheckCopula:
    @pytest.mark.parametrize("cop", [W, M, PI])
    def test_named_copulas_valid(self, cop):
        assert check_copula(cop, grid_n=50).is_valid

    def test_max_is_not_a_copula(self):
        report = check_copula(custom(lambda a, b: max(a, b)), grid_n=10)
        assert not report.is_valid
        assert any(v.kind == "boundary" for v in report.violations)

    def test_frechet_ordering(self):
        for a in np.linspace(0.0, 1.0, 21):
            for b in np.linspace(0.0, 1.0, 21):
                assert W.eval(a, b) <= PI.eval(a, b) + 1e-12 <= M.eval(a, b) + 2e-12


class TestSampling:
    def test_named_kinds(self):
        rng = RandomSource(5)
        u, v = sample_pairs(W, 1000, rng)
        assert np.allclose(u + v, 1.0)
        u, v = sample_pairs(M, 1000, rng)
        assert np.array_equal(u, v)
        u, v = sample_pairs(PI, 1000, rng)
        assert not np.array_equal(u, v)

    def test_mixture_weights_checked(self):
        with pytest.raises(DomainError):
            sample_mixture((0.5, 0.5, 0.5), 10, RandomSource(0))

    def test_mixture_marginals_uniform(self):
        u, v = sample_mixture((0.3, 0.3, 0.4), 200_000, RandomSource(8))
        for z in (u, v):
            z = np.sort(z)
            emp = np.arange(1, len(z) + 1) / len(z)
            assert np.max(np.abs(z - emp)) < 0.01
