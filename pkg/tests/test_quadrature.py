import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdbf import (
    ApproxLikelihood,
    DomainError,
    PriorSpec,
    QuadratureConvergenceError,
    integrate,
    marginal_likelihood,
)

from conftest import likelihoods, prior_specs
from oracles import closed_form_bf01, sd_bf10_quad, trunc_conjugate_bf01


def normal_pdf(x, mu=0.0, sigma=1.0):
    z = (np.asarray(x, dtype=float) - mu) / sigma
    return np.exp(-0.5 * z * z) / (sigma * math.sqrt(2 * math.pi))


class TestIntegrate:
    def test_constant(self):
        res = integrate(lambda x: np.ones_like(x), 0.0, 1.0)
        assert res.value == pytest.approx(1.0, abs=1e-13)
        assert res.evaluations >= 15
        assert res.error_estimate >= 0.0

    def test_standard_normal_normalization(self):
        res = integrate(normal_pdf, -math.inf, math.inf)
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_density_product_convolution_identity(self):
        # integral of N(x;0,0.1^2) * N(x;0,0.3^2) equals the ordinate of
        # N(0; 0, 0.1^2 + 0.3^2)
        res = integrate(
            lambda x: normal_pdf(x, 0.0, 0.1) * normal_pdf(x, 0.0, 0.3),
            -math.inf,
            math.inf,
        )
        assert res.value == pytest.approx(1.2615662610100802, rel=1e-8)

    def test_scalar_only_integrand(self):
        res = integrate(lambda x: math.exp(-x), 0.0, math.inf)
        assert res.value == pytest.approx(1.0, rel=1e-9)

    def test_semi_infinite_lower(self):
        res = integrate(lambda x: np.exp(x), -math.inf, 0.0)
        assert res.value == pytest.approx(1.0, rel=1e-9)

    def test_split_points_catch_narrow_spike(self):
        # a width-1e-3 bump far from the origin is invisible to the initial
        # rule unless the caller splits there
        c = 123.456
        res = integrate(
            lambda x: normal_pdf(x, c, 1e-3), -math.inf, math.inf,
            split_points=[c, c - 1e-3, c + 1e-3],
        )
        assert res.value == pytest.approx(1.0, rel=1e-8)

    def test_validation(self):
        with pytest.raises(DomainError):
            integrate(normal_pdf, 1.0, 0.0)
        with pytest.raises(DomainError):
            integrate(normal_pdf, 0.0, 1.0, rel_tol=0.0)

    def test_convergence_error_carries_best(self):
        f = lambda x: np.abs(x - 0.3) ** -0.4
        with pytest.raises(QuadratureConvergenceError) as err:
            integrate(f, 0.0, 1.0, rel_tol=1e-13, abs_tol=1e-300, max_subdivisions=4)
        assert err.value.best is not None
        assert err.value.best.value > 0

    def test_budget_doubling_never_increases_error(self):
        f = lambda x: np.abs(x - 0.3) ** -0.4
        errors = []
        for budget in (4, 8, 16, 32, 64):
            try:
                res = integrate(f, 0.0, 1.0, rel_tol=1e-15, abs_tol=1e-300,
                                max_subdivisions=budget)
            except QuadratureConvergenceError as exc:
                res = exc.best
            errors.append(res.error_estimate)
        for coarse, fine in zip(errors, errors[1:]):
            assert fine <= coarse * (1.0 + 1e-12)

    def test_affine_reparametrization_invariance(self):
        base = integrate(lambda x: normal_pdf(x, 0.7, 0.4), -math.inf, math.inf,
                         split_points=[0.7])
        for a, b in [(2.0, 1.0), (-3.0, 0.5), (0.25, -2.0)]:
            # substitute x = a*t + b
            res = integrate(
                lambda t: normal_pdf(a * t + b, 0.7, 0.4) * abs(a),
                -math.inf, math.inf,
                split_points=[(0.7 - b) / a],
            )
            assert res.value == pytest.approx(base.value, rel=1e-9)


class TestPriorNormalization:
    @settings(max_examples=40, deadline=None)
    @given(prior_specs())
    def test_pdf_integrates_to_one(self, spec):
        splits = [spec.location, spec.location - spec.scale, spec.location + spec.scale]
        res = integrate(spec.pdf, spec.lower, spec.upper,
                        rel_tol=1e-10, split_points=splits)
        assert res.value == pytest.approx(1.0, abs=1e-8)


class TestMarginalLikelihood:
    def test_conjugate_identity_ratio(self):
        lik = ApproxLikelihood(0.0, 1.0)
        prior = PriorSpec("normal", 0.0, 1.0)
        res = marginal_likelihood(lik, prior)
        closed = math.sqrt(2 * math.pi) * 1.0 * normal_pdf(0.0, 0.0, math.sqrt(2.0))
        assert res.value / closed == pytest.approx(1.0, abs=1e-8)

    def test_t_test_case_value_over_ordinate(self):
        lik = ApproxLikelihood(-0.17, 0.19)
        prior = PriorSpec("student_t", 0.35, 0.102, df=3, lower=0.0)
        res = marginal_likelihood(lik, prior)
        la0 = math.exp(-0.5 * (0.17 / 0.19) ** 2)
        assert res.value / la0 == pytest.approx(0.08585957436349864, rel=1e-9)

    def test_survival_informed_case(self):
        lik = ApproxLikelihood(-0.19, 0.08)
        prior = PriorSpec("normal", 0.30, 0.15, lower=0.0)
        res = marginal_likelihood(lik, prior)
        la0 = math.exp(-0.5 * (0.19 / 0.08) ** 2)
        # erf-based truncated-conjugate oracle: BF01 = 63.46979
        assert la0 / res.value == pytest.approx(63.46978528919738, rel=1e-9)
        assert la0 / res.value == pytest.approx(
            trunc_conjugate_bf01(-0.19, 0.08, 0.30, 0.15), rel=1e-10
        )

    @settings(max_examples=40, deadline=None)
    @given(likelihoods(), st.floats(-3, 3), st.floats(0.05, 3))
    def test_matches_normal_closed_form(self, lik, mu0, sigma0):
        prior = PriorSpec("normal", mu0, sigma0)
        res = marginal_likelihood(lik, prior)
        closed = (
            math.sqrt(2 * math.pi) * lik.se
            * normal_pdf(lik.theta_hat, mu0, math.hypot(sigma0, lik.se))
        )
        assert res.value == pytest.approx(closed, rel=1e-8)

    @settings(max_examples=25, deadline=None)
    @given(likelihoods(), prior_specs())
    def test_matches_independent_quadrature(self, lik, prior):
        res = marginal_likelihood(lik, prior)
        lo = prior.lower if math.isfinite(prior.lower) else -np.inf
        hi = prior.upper if math.isfinite(prior.upper) else np.inf
        oracle = sd_bf10_quad(
            lik.theta_hat, lik.se,
            lambda t: np.asarray(prior.pdf(t)), lik.theta_hat, lo, hi,
            points=[lik.theta_hat, prior.location],
        )
        la_hat = 1.0  # sd_bf10_quad divides by the likelihood at its theta0 argument
        assert res.value == pytest.approx(oracle * la_hat, rel=1e-6)

    def test_log_value_survives_underflow(self):
        # likelihood centered far outside a tight truncated prior
        lik = ApproxLikelihood(-60.0, 0.05)
        prior = PriorSpec("normal", 0.30, 0.15, lower=0.0)
        res = marginal_likelihood(lik, prior)
        assert res.value == 0.0
        assert res.log_value is not None and res.log_value < -700000.0
        assert math.isfinite(res.log_value)

    def test_extreme_narrow_likelihood(self):
        # se ~ 3e-10: the spike sits exactly on the standardized grid
        lik = ApproxLikelihood(0.5, 1e-9 / math.sqrt(10))
        prior = PriorSpec("normal", 0.0, 1.0)
        res = marginal_likelihood(lik, prior)
        closed = (
            math.sqrt(2 * math.pi) * lik.se
            * normal_pdf(lik.theta_hat, 0.0, math.hypot(1.0, lik.se))
        )
        assert res.log_value == pytest.approx(math.log(closed), abs=1e-9)

    def test_flat_likelihood_limit_returns_prior_mass(self):
        # the se -> inf limit of the likelihood is a flat function, so the
        # marginal collapses to the prior's unit mass
        for spec in (
            PriorSpec("normal", 0.3, 0.15, lower=0.0),
            PriorSpec("student_t", 0.0, 1.0, df=2),
            PriorSpec("cauchy", -1.0, 2.0, upper=4.0),
        ):
            res = integrate(
                lambda t: np.asarray(spec.pdf(t)), spec.lower, spec.upper,
                rel_tol=1e-10, split_points=[spec.location],
            )
            assert res.value == pytest.approx(1.0, abs=1e-6)
