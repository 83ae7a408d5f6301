"""Approximate marginal posterior of the focal parameter under the alternative.

The posterior is the normalized product of the approximate likelihood and the
prior density; the normalizer is the same marginal-likelihood integral used by
the Savage-Dickey numerator. Ordinates at a truncation bound are interior
limits, densities vanish outside the prior support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .distributions import PriorSpec
from .errors import DomainError, QuadratureConvergenceError
from .likelihood import ApproxLikelihood, log_approx_likelihood_at
from .quadrature import integrate, marginal_likelihood


@dataclass(frozen=True)
class PosteriorGrid:
    """Evenly spaced posterior ordinates, normalized by the continuous integral.

    ``normalizer`` is the marginal-likelihood value. The trapezoid mass of the
    grid approaches 1 as the grid is refined (within 1e-4 at a few hundred
    points for smooth cases); ordinates themselves are exact pointwise.
    """

    grid: np.ndarray
    density: np.ndarray
    normalizer: float


def _log_posterior_unnorm(lik: ApproxLikelihood, prior: PriorSpec, theta):
    return log_approx_likelihood_at(lik, theta) + prior.logpdf(theta)


def posterior_ordinate_with_error(
    lik: ApproxLikelihood, prior: PriorSpec, theta
) -> tuple[float, float]:
    """Posterior ordinate at a single point plus the normalizer's relative error."""
    ml = marginal_likelihood(lik, prior)
    log_ord = _log_posterior_unnorm(lik, prior, theta) - ml.log_value
    ordinate = math.exp(log_ord) if log_ord > -745.0 else 0.0
    rel = ml.relative_error if ml.relative_error is not None else 0.0
    return ordinate, rel


def posterior_pdf_at(lik: ApproxLikelihood, prior: PriorSpec, theta):
    """Posterior density ``L_a(theta) * prior_pdf(theta) / normalizer``.

    Accepts a scalar or an array of evaluation points; zero outside the prior
    support, interior limit on a finite bound.
    """
    ml = marginal_likelihood(lik, prior)
    out = np.exp(_log_posterior_unnorm(lik, prior, np.asarray(theta, dtype=float)) - ml.log_value)
    if np.isscalar(theta) or getattr(theta, "ndim", 0) == 0:
        return float(out)
    return out


def _grid_span(lik: ApproxLikelihood, prior: PriorSpec) -> tuple[float, float]:
    """Support-clipped hull of +-8 spreads around the likelihood and the prior."""
    hull_lo = min(lik.theta_hat - 8.0 * lik.se, prior.location - 8.0 * prior.scale)
    hull_hi = max(lik.theta_hat + 8.0 * lik.se, prior.location + 8.0 * prior.scale)
    lo = max(prior.lower, hull_lo)
    hi = min(prior.upper, hull_hi)
    if lo < hi:
        return lo, hi
    # support lies entirely outside the hull: fall back to a window hugging
    # the near edge of the support, where the posterior mass piles up
    width = 8.0 * (lik.se + prior.scale)
    if prior.lower > hull_hi:  # support to the right
        return prior.lower, min(prior.upper, prior.lower + width)
    return max(prior.lower, prior.upper - width), prior.upper


def posterior_grid(lik: ApproxLikelihood, prior: PriorSpec, n_points: int) -> PosteriorGrid:
    """Plot-ready posterior ordinates on an evenly spaced grid.

    The grid spans the intersection of the prior support with the hull of
    ``theta_hat +- 8 se`` and ``location +- 8 scale``.
    """
    if n_points < 16:
        raise DomainError("n_points must be >= 16")
    ml = marginal_likelihood(lik, prior)
    lo, hi = _grid_span(lik, prior)
    grid = np.linspace(lo, hi, int(n_points))
    density = np.exp(_log_posterior_unnorm(lik, prior, grid) - ml.log_value)
    return PosteriorGrid(grid=grid, density=density, normalizer=ml.value)


def posterior_quantile(lik: ApproxLikelihood, prior: PriorSpec, p: float) -> float:
    """Quantile of the normalized posterior, solved on the continuous integral.

    The returned point satisfies ``|posterior_cdf(q) - p| <= 1e-8``.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"posterior quantile requires 0 < p < 1, got {p!r}")
    ml = marginal_likelihood(lik, prior)
    log_norm = ml.log_value

    def density(theta):
        return np.exp(_log_posterior_unnorm(lik, prior, np.asarray(theta, dtype=float)) - log_norm)

    spread = lik.se + prior.scale
    lo, hi = _bracket(lik, prior, density, spread)
    splits = [s for s in (lik.theta_hat, prior.location) if lo < s < hi]

    def cdf_minus_p(x: float) -> float:
        if x <= lo:
            return -p
        mass = integrate(
            density, lo, x,
            rel_tol=1e-10, abs_tol=1e-12,
            split_points=[s for s in splits if s < x],
        ).value
        return mass - p

    if cdf_minus_p(hi) <= 0.0:
        # essentially all mass sits left of hi yet p exceeds it: p is within
        # the <=1e-12 tail allowance of 1, so hi is correct to tolerance
        return float(hi)
    root = brentq(cdf_minus_p, lo, hi, xtol=1e-13, rtol=8.9e-16, maxiter=200)
    resid = cdf_minus_p(root)
    if abs(resid) > 1e-8:
        raise QuadratureConvergenceError(
            f"posterior quantile residual {resid:.2e} exceeds 1e-8"
        )
    return float(root)


def _bracket(lik, prior, density, spread) -> tuple[float, float]:
    """A finite interval carrying essentially all posterior mass."""
    lo = prior.lower
    hi = prior.upper
    if not math.isfinite(lo):
        lo = min(lik.theta_hat - 12.0 * lik.se, prior.location - 12.0 * prior.scale)
        while integrate(density, -math.inf, lo, rel_tol=1e-6, abs_tol=1e-14).value > 1e-12:
            lo -= 16.0 * spread
    if not math.isfinite(hi):
        hi = max(lik.theta_hat + 12.0 * lik.se, prior.location + 12.0 * prior.scale)
        while integrate(density, hi, math.inf, rel_tol=1e-6, abs_tol=1e-14).value > 1e-12:
            hi += 16.0 * spread
    return lo, hi
