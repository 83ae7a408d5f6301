"""Independent reference implementations used to pin expected test values.

Everything here is built on scipy.stats / plain numpy so it shares no code
path with the package under test (which uses its own quadrature and its own
scipy.special-based density layer).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import stats
from scipy.integrate import quad


def approx_lik(theta_hat, se):
    return lambda t: np.exp(-0.5 * ((theta_hat - t) / se) ** 2)


def sd_bf10_quad(theta_hat, se, prior_pdf, theta0, lo, hi, points=()):
    """Savage-Dickey BF10 via scipy.integrate.quad on the raw product."""
    la = approx_lik(theta_hat, se)
    pts = [p for p in points if lo < p < hi]
    num, _ = quad(lambda t: la(t) * prior_pdf(t), lo, hi,
                  points=pts or None, limit=400, epsabs=1e-14, epsrel=1e-12)
    return num / la(theta0)


def trunc_normal_pdf(x, mu, sigma, lower=-math.inf, upper=math.inf):
    mass = stats.norm.cdf(upper, mu, sigma) - stats.norm.cdf(lower, mu, sigma)
    x = np.asarray(x, dtype=float)
    val = stats.norm.pdf(x, mu, sigma) / mass
    return np.where((x >= lower) & (x <= upper), val, 0.0)


def trunc_t_pdf(x, mu, sigma, df, lower=-math.inf, upper=math.inf):
    zl = (lower - mu) / sigma
    zu = (upper - mu) / sigma
    mass = stats.t.cdf(zu, df) - stats.t.cdf(zl, df)
    x = np.asarray(x, dtype=float)
    val = stats.t.pdf((x - mu) / sigma, df) / sigma / mass
    return np.where((x >= lower) & (x <= upper), val, 0.0)


def trunc_conjugate_bf01(theta_hat, se, mu0, sigma0, lower=0.0, theta0=0.0):
    """erf-based closed form for a lower-truncated normal prior."""
    z = stats.norm.sf((lower - mu0) / sigma0)
    v0, ve = sigma0 * sigma0, se * se
    m = (v0 * theta_hat + ve * mu0) / (v0 + ve)
    s = math.sqrt(v0 * ve / (v0 + ve))
    marginal = (
        math.sqrt(2 * math.pi) * se
        * stats.norm.pdf(theta_hat, mu0, math.sqrt(v0 + ve))
        * stats.norm.sf((lower - m) / s) / z
    )
    la0 = math.exp(-0.5 * ((theta_hat - theta0) / se) ** 2)
    return la0 / marginal


def closed_form_bf01(theta_hat, se, mu0, sigma0, theta0=0.0):
    """Normal-prior Bayesian z-test closed form."""
    v0, ve = sigma0 * sigma0, se * se
    return math.sqrt(v0 / ve + 1.0) * math.exp(
        -0.5 * ((theta_hat - theta0) ** 2 / ve - (theta_hat - mu0) ** 2 / (v0 + ve))
    )


def ks_distance(sample, cdf) -> float:
    """Kolmogorov-Smirnov distance between an empirical sample and a CDF."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = len(x)
    f = np.asarray(cdf(x), dtype=float)
    upper = np.abs(np.arange(1, n + 1) / n - f).max()
    lower = np.abs(f - np.arange(0, n) / n).max()
    return float(max(upper, lower))


def wls_lstsq(y, se, x):
    """Weighted least squares via numpy lstsq on pre-whitened rows."""
    y = np.asarray(y, float)
    se = np.asarray(se, float)
    x = np.asarray(x, float)
    design = np.column_stack([np.ones_like(x), x]) / se[:, None]
    coef, *_ = np.linalg.lstsq(design, y / se, rcond=None)
    cov = np.linalg.inv(design.T @ design)
    return coef[0], math.sqrt(cov[0, 0]), coef[1], math.sqrt(cov[1, 1])
