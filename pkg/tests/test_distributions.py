import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdbf import DomainError, InvalidSpecError, PriorSpec

from conftest import prior_specs
from oracles import ks_distance, trunc_normal_pdf, trunc_t_pdf


class TestPdf:
    def test_standard_normal_at_zero(self):
        spec = PriorSpec("normal", 0.0, 1.0)
        assert spec.pdf(0.0) == pytest.approx(1.0 / math.sqrt(2 * math.pi), rel=1e-12)

    def test_truncated_normal_boundary_ordinate(self):
        # interior limit at the bound, oracle phi(-2) / (0.15 * (1 - Phi(-2)))
        spec = PriorSpec("normal", 0.30, 0.15, lower=0.0)
        assert spec.pdf(0.0) == pytest.approx(0.36831908452659984, rel=1e-10)
        assert spec.pdf(0.0) == pytest.approx(
            float(trunc_normal_pdf(0.0, 0.30, 0.15, lower=0.0)), rel=1e-12
        )

    def test_truncated_student_t_boundary_ordinate(self):
        spec = PriorSpec("student_t", 0.35, 0.102, df=3, lower=0.0)
        assert spec.pdf(0.0) == pytest.approx(0.15172341180280996, rel=1e-10)
        assert spec.pdf(0.0) == pytest.approx(
            float(trunc_t_pdf(0.0, 0.35, 0.102, 3, lower=0.0)), rel=1e-12
        )

    def test_zero_outside_support(self):
        spec = PriorSpec("normal", 0.30, 0.15, lower=0.0, upper=1.0)
        assert spec.pdf(-1e-9) == 0.0
        assert spec.pdf(1.0 + 1e-9) == 0.0
        assert spec.logpdf(-1.0) == -math.inf

    def test_vectorized_matches_scalar(self):
        spec = PriorSpec("cauchy", 0.5, 2.0, lower=-1.0)
        grid = np.linspace(-2, 4, 17)
        vec = spec.pdf(grid)
        assert vec == pytest.approx([spec.pdf(float(t)) for t in grid], rel=1e-14)


class TestCdf:
    def test_untruncated_median(self):
        assert PriorSpec("normal", 1.7, 0.3).cdf(1.7) == pytest.approx(0.5, abs=1e-14)
        assert PriorSpec("cauchy", -2.0, 1.5).cdf(-2.0) == pytest.approx(0.5, abs=1e-14)

    def test_cauchy_arctan_value(self):
        assert PriorSpec("cauchy", 0.0, 1.0).cdf(1.0) == pytest.approx(0.75, abs=1e-14)

    def test_student_t_table_value(self):
        # two-sided 95% critical value of t(3) is 3.182
        assert PriorSpec("student_t", 0.0, 1.0, df=3).cdf(3.182) == pytest.approx(
            0.9749914317283431, abs=1e-10
        )

    def test_truncation_edges(self):
        spec = PriorSpec("normal", 0.0, 1.0, lower=-1.0, upper=2.0)
        assert spec.cdf(-1.0) == 0.0
        assert spec.cdf(-5.0) == 0.0
        assert spec.cdf(2.0) == 1.0
        assert spec.cdf(5.0) == 1.0

    @settings(max_examples=60, deadline=None)
    @given(prior_specs(), st.floats(-6, 6), st.floats(-6, 6))
    def test_monotone(self, spec, a, b):
        lo, hi = sorted((a, b))
        x1 = spec.location + lo * spec.scale
        x2 = spec.location + hi * spec.scale
        assert spec.cdf(x1) <= spec.cdf(x2) + 1e-15


class TestQuantile:
    def test_normal_constant(self):
        assert PriorSpec("normal", 0.0, 1.0).quantile(0.975) == pytest.approx(
            1.959963984540054, abs=1e-9
        )

    def test_cauchy_constant(self):
        assert PriorSpec("cauchy", 0.0, 1.0).quantile(0.75) == pytest.approx(1.0, abs=1e-12)

    def test_domain_errors(self):
        spec = PriorSpec("normal", 0.0, 1.0)
        for p in (0.0, 1.0, -0.1, 1.1):
            with pytest.raises(DomainError):
                spec.quantile(p)

    @settings(max_examples=80, deadline=None)
    @given(prior_specs(), st.floats(0.001, 0.999))
    def test_cdf_round_trip(self, spec, p):
        q = spec.quantile(p)
        assert spec.lower <= q <= spec.upper
        assert spec.cdf(q) == pytest.approx(p, abs=1e-10)

    @settings(max_examples=60, deadline=None)
    @given(prior_specs(), st.floats(-3, 3))
    def test_quantile_of_cdf_round_trip(self, spec, z):
        theta = spec.location + z * spec.scale
        theta = min(max(theta, spec.lower), spec.upper)
        p = spec.cdf(theta)
        if 1e-12 < p < 1 - 1e-12:
            assert spec.quantile(p) == pytest.approx(theta, abs=1e-8 * max(1.0, spec.scale))

    def test_extreme_truncation(self):
        # support deep in the upper tail of the family
        spec = PriorSpec("normal", 0.0, 1.0, lower=6.0, upper=7.0)
        q = spec.quantile(0.5)
        assert 6.0 < q < 7.0
        assert spec.cdf(q) == pytest.approx(0.5, abs=1e-10)


class TestFamilyRelations:
    def test_student_t_df1_equals_cauchy(self):
        t1 = PriorSpec("student_t", 0.3, 1.7, df=1.0)
        cauchy = PriorSpec("cauchy", 0.3, 1.7)
        grid = np.linspace(-8, 8, 41)
        assert t1.pdf(grid) == pytest.approx(cauchy.pdf(grid), abs=1e-12)
        assert t1.cdf(grid) == pytest.approx(cauchy.cdf(grid), abs=1e-12)

    def test_student_t_large_df_is_normal(self):
        t = PriorSpec("student_t", 0.0, 1.0, df=1e6)
        normal = PriorSpec("normal", 0.0, 1.0)
        grid = np.linspace(-5, 5, 101)
        assert t.pdf(grid) == pytest.approx(normal.pdf(grid), abs=1e-4)


class TestSampling:
    def test_support(self, rng):
        spec = PriorSpec("normal", 0.30, 0.15, lower=0.0)
        draws = spec.sample(rng, 100_000)
        assert draws.min() > 0.0

    def test_deterministic_for_seed(self):
        spec = PriorSpec("student_t", 0.0, 1.0, df=4, lower=-1.0, upper=3.0)
        a = spec.sample(np.random.default_rng(7), 100)
        b = spec.sample(np.random.default_rng(7), 100)
        assert np.array_equal(a, b)

    def test_empty(self, rng):
        assert PriorSpec("normal", 0.0, 1.0).sample(rng, 0).shape == (0,)

    def test_ks_statistic_standard_normal(self, rng):
        spec = PriorSpec("normal", 0.0, 1.0)
        draws = spec.sample(rng, 100_000)
        assert ks_distance(draws, spec.cdf) < 0.01

    def test_ks_statistic_truncated_cauchy(self, rng):
        spec = PriorSpec("cauchy", 1.0, 2.0, lower=0.0, upper=10.0)
        draws = spec.sample(rng, 100_000)
        assert draws.min() >= 0.0 and draws.max() <= 10.0
        assert ks_distance(draws, spec.cdf) < 0.01


class TestValidation:
    def test_rejects_bad_scale(self):
        with pytest.raises(InvalidSpecError):
            PriorSpec("normal", 0.0, 0.0)
        with pytest.raises(InvalidSpecError):
            PriorSpec("normal", 0.0, -1.0)

    def test_rejects_bad_df(self):
        with pytest.raises(InvalidSpecError):
            PriorSpec("student_t", 0.0, 1.0)
        with pytest.raises(InvalidSpecError):
            PriorSpec("student_t", 0.0, 1.0, df=-2.0)
        with pytest.raises(InvalidSpecError):
            PriorSpec("normal", 0.0, 1.0, df=3.0)

    def test_rejects_bad_bounds(self):
        with pytest.raises(InvalidSpecError):
            PriorSpec("normal", 0.0, 1.0, lower=2.0, upper=1.0)
        with pytest.raises(InvalidSpecError):
            PriorSpec("normal", 0.0, 1.0, lower=1.0, upper=1.0)

    def test_rejects_empty_mass(self):
        # interval so deep in the tail that it carries no float probability
        with pytest.raises(InvalidSpecError):
            PriorSpec("normal", 0.0, 1.0, lower=50.0, upper=51.0)

    def test_unknown_family(self):
        with pytest.raises(InvalidSpecError):
            PriorSpec("gamma", 0.0, 1.0)
