"""Bayes factors for a point null against an informed prior on one focal parameter.

The workhorse is the Savage-Dickey normal approximation: with a normal-shaped
approximate likelihood built from ``(theta_hat, se)``, the Bayes factor for
``H1: theta ~ prior`` against ``H0: theta = theta0`` is the marginal
likelihood of the data under the prior divided by the approximate likelihood
ordinate at the test value. Equivalently it is the prior ordinate over the
approximate posterior ordinate at ``theta0``; both routes are provided and
agree up to quadrature error.

Also included: the closed-form normal-prior special case (a Bayesian z-test),
Jeffreys-style default approximations (the unit-information variant reduces
to the BIC two-model comparison for one nested parameter when ``A = 1``), and
a one-parameter Laplace baseline that illustrates how mode-based
approximations break down under strong or truncated priors.

All arithmetic runs on the log scale; ``bf10``/``bf01`` are exposed as
``+inf``/``0`` with an ``overflowed`` flag when ``|log BF| > 700``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import NORMAL, PriorSpec
from .errors import (
    IllPosedTestError,
    InvalidSpecError,
    MethodNotApplicableError,
    UndefinedLaplaceError,
)
from .likelihood import ApproxLikelihood, approx_likelihood_at, log_approx_likelihood_at
from .quadrature import marginal_likelihood

SAVAGE_DICKEY_QUADRATURE = "savage_dickey_quadrature"
SAVAGE_DICKEY_RATIO = "savage_dickey_ratio"
CLOSED_FORM_NORMAL = "closed_form_normal"
JEFFREYS_UNIT_INFO = "jeffreys_unit_info"
JEFFREYS_GENERAL = "jeffreys_general"
LAPLACE = "laplace"
METHODS = frozenset({
    SAVAGE_DICKEY_QUADRATURE,
    SAVAGE_DICKEY_RATIO,
    CLOSED_FORM_NORMAL,
    JEFFREYS_UNIT_INFO,
    JEFFREYS_GENERAL,
    LAPLACE,
})

_LOG_OVERFLOW = 700.0


@dataclass(frozen=True)
class HypothesisTest:
    """A point null value ``theta0`` and the prior that defines the alternative.

    ``theta0`` must lie in the closure of the prior support; a value exactly
    on a truncation bound is legal (ordinates are interior limits), a value
    strictly outside makes the test ill posed.
    """

    theta0: float
    prior: PriorSpec

    def __post_init__(self):
        if not math.isfinite(self.theta0):
            raise InvalidSpecError("theta0 must be finite")
        if not (self.prior.lower <= self.theta0 <= self.prior.upper):
            raise IllPosedTestError(
                f"theta0={self.theta0} lies outside the prior support "
                f"[{self.prior.lower}, {self.prior.upper}]"
            )


@dataclass(frozen=True)
class BayesFactorResult:
    """A Bayes factor on the log scale plus method and error metadata.

    ``numerical_error`` is the estimated absolute error of ``log_bf10``
    (equivalently the relative error of ``bf10``); it is zero for the
    closed-form methods.
    """

    log_bf10: float
    method: str
    numerical_error: float = 0.0
    note: str = ""

    @property
    def bf10(self) -> float:
        return math.exp(self.log_bf10) if self.log_bf10 < _LOG_OVERFLOW else math.inf

    @property
    def bf01(self) -> float:
        return math.exp(-self.log_bf10) if self.log_bf10 > -_LOG_OVERFLOW else math.inf

    @property
    def overflowed(self) -> bool:
        """True when bf10/bf01 are not both representable as ordinary floats."""
        return abs(self.log_bf10) > _LOG_OVERFLOW


def sd_bf(lik: ApproxLikelihood, test: HypothesisTest) -> BayesFactorResult:
    """Savage-Dickey normal approximation via the marginal-likelihood integral.

    ``BF10 = integral(L_a * prior) / L_a(theta0)``.
    """
    ml = marginal_likelihood(lik, test.prior)
    log_bf10 = ml.log_value - log_approx_likelihood_at(lik, test.theta0)
    return BayesFactorResult(
        log_bf10=log_bf10,
        method=SAVAGE_DICKEY_QUADRATURE,
        numerical_error=ml.relative_error if ml.relative_error is not None else 0.0,
    )


def sd_bf_ratio_form(lik: ApproxLikelihood, test: HypothesisTest) -> BayesFactorResult:
    """Savage-Dickey ratio: prior ordinate over posterior ordinate at ``theta0``."""
    from .posterior import posterior_ordinate_with_error

    log_prior_ord = test.prior.logpdf(test.theta0)
    post_ord, rel_err = posterior_ordinate_with_error(lik, test.prior, test.theta0)
    if post_ord == 0.0:
        return BayesFactorResult(
            log_bf10=math.inf,
            method=SAVAGE_DICKEY_RATIO,
            numerical_error=math.inf,
            note="posterior ordinate underflowed to 0 at theta0; BF10 reported as +inf",
        )
    return BayesFactorResult(
        log_bf10=log_prior_ord - math.log(post_ord),
        method=SAVAGE_DICKEY_RATIO,
        numerical_error=rel_err,
    )


def closed_form_normal_bf(
    lik: ApproxLikelihood,
    mu0: float,
    sigma0: float,
    theta0: float = 0.0,
) -> BayesFactorResult:
    """Exact Savage-Dickey approximation for an untruncated normal prior.

    ``BF01 = sqrt(sigma0^2/se^2 + 1)
    * exp(-0.5 * [ (theta_hat-theta0)^2/se^2
    - (theta_hat-mu0)^2/(sigma0^2+se^2) ])``
    """
    if not (math.isfinite(sigma0) and sigma0 > 0):
        raise InvalidSpecError("sigma0 must be finite and > 0")
    if not math.isfinite(mu0) or not math.isfinite(theta0):
        raise InvalidSpecError("mu0 and theta0 must be finite")
    se2 = lik.se * lik.se
    v0 = sigma0 * sigma0
    log_bf01 = 0.5 * math.log1p(v0 / se2) - 0.5 * (
        (lik.theta_hat - theta0) ** 2 / se2 - (lik.theta_hat - mu0) ** 2 / (v0 + se2)
    )
    return BayesFactorResult(log_bf10=-log_bf01, method=CLOSED_FORM_NORMAL)


def jeffreys_unit_info_bf(lik: ApproxLikelihood, n: int) -> BayesFactorResult:
    """Unit-information normal prior centered at the MLE, tested against 0.

    ``BF01 = sqrt(n + 1) * exp(-0.5 * theta_hat^2 / se^2)``; identical to
    ``closed_form_normal_bf`` with ``mu0 = theta_hat``, ``sigma0^2 = n se^2``,
    ``theta0 = 0``.
    """
    if n < 1:
        raise InvalidSpecError("n must be >= 1")
    log_bf01 = 0.5 * math.log(n + 1.0) - 0.5 * (lik.theta_hat / lik.se) ** 2
    return BayesFactorResult(log_bf10=-log_bf01, method=JEFFREYS_UNIT_INFO)


def jeffreys_general_bf(chi2: float, n: int, A: float = 1.0) -> BayesFactorResult:
    """Jeffreys's general approximate Bayes factor ``BF01 = A sqrt(n) exp(-chi2/2)``.

    ``chi2`` is a Wald statistic; ``A`` is a constant usually close to 1, and
    ``A = 1`` gives the unit-information / BIC-style default.
    """
    if chi2 < 0 or not math.isfinite(chi2):
        raise InvalidSpecError("chi2 must be finite and >= 0")
    if n < 1:
        raise InvalidSpecError("n must be >= 1")
    if not (A > 0 and math.isfinite(A)):
        raise InvalidSpecError("A must be finite and > 0")
    log_bf01 = math.log(A) + 0.5 * math.log(n) - 0.5 * chi2
    return BayesFactorResult(log_bf10=-log_bf01, method=JEFFREYS_GENERAL)


def laplace_bf(
    lik: ApproxLikelihood,
    test: HypothesisTest,
    ignore_truncation: bool = False,
) -> BayesFactorResult:
    """One-parameter Laplace baseline ``BF10 = sqrt(2 pi) se g(theta_hat) / L_a(theta0)``.

    ``g`` is the prior density at the MLE. When the MLE falls outside a
    truncated prior's support the method is undefined and
    :class:`~sdbf.errors.UndefinedLaplaceError` is raised; passing
    ``ignore_truncation=True`` instead evaluates ``g`` from the raw
    (untruncated, unrenormalized) family density, the usual workaround.
    """
    prior = test.prior
    if ignore_truncation:
        log_g = prior.untruncated_logpdf(lik.theta_hat)
        note = "truncation ignored when evaluating the prior ordinate at the MLE"
    else:
        log_g = prior.logpdf(lik.theta_hat)
        note = ""
        if log_g == -math.inf:
            raise UndefinedLaplaceError(
                f"prior density is zero at theta_hat={lik.theta_hat}: the MLE lies "
                f"outside the prior support [{prior.lower}, {prior.upper}]"
            )
    log_bf10 = (
        0.5 * math.log(2.0 * math.pi)
        + math.log(lik.se)
        + log_g
        - log_approx_likelihood_at(lik, test.theta0)
    )
    return BayesFactorResult(log_bf10=log_bf10, method=LAPLACE, note=note)


def evaluate_method(
    method: str,
    lik: ApproxLikelihood,
    test: HypothesisTest,
    *,
    ignore_truncation: bool = False,
) -> BayesFactorResult:
    """Dispatch to one of the likelihood-and-prior driven methods by name."""
    if method == SAVAGE_DICKEY_QUADRATURE:
        return sd_bf(lik, test)
    if method == SAVAGE_DICKEY_RATIO:
        return sd_bf_ratio_form(lik, test)
    if method == LAPLACE:
        return laplace_bf(lik, test, ignore_truncation=ignore_truncation)
    if method == CLOSED_FORM_NORMAL:
        prior = test.prior
        if prior.family != NORMAL or prior.truncated:
            raise MethodNotApplicableError(
                "closed_form_normal requires an untruncated normal prior"
            )
        return closed_form_normal_bf(lik, prior.location, prior.scale, test.theta0)
    if method in METHODS:
        raise MethodNotApplicableError(
            f"method {method!r} needs sample-size or test-statistic inputs and "
            "cannot be driven by (likelihood, test) alone"
        )
    raise MethodNotApplicableError(f"unknown method {method!r}")


@dataclass(frozen=True)
class MethodOutcome:
    """Per-cell outcome of a method evaluation that must never abort a batch."""

    method: str
    status: str  # "ok" | "failed"
    result: BayesFactorResult | None = None
    message: str = ""


def try_method(
    method: str,
    lik: ApproxLikelihood,
    test: HypothesisTest,
    *,
    ignore_truncation: bool = False,
) -> MethodOutcome:
    """Like :func:`evaluate_method` but captures failures as data."""
    from .errors import SdbfError

    try:
        result = evaluate_method(method, lik, test, ignore_truncation=ignore_truncation)
    except SdbfError as exc:
        return MethodOutcome(method=method, status="failed", message=str(exc))
    return MethodOutcome(method=method, status="ok", result=result)
