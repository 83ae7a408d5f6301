"""The normal-shaped approximate likelihood built from an MLE and its standard error."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError


@dataclass(frozen=True)
class ApproxLikelihood:
    """Approximate likelihood of the focal parameter.

    ``exp(-0.5 * ((theta_hat - theta) / se)**2)``: proportional to a normal
    density centered at the maximum likelihood estimate ``theta_hat`` with
    standard deviation ``se``, and normalized to 1 at its mode.
    """

    theta_hat: float
    se: float

    def __post_init__(self):
        if not math.isfinite(self.theta_hat):
            raise InvalidSpecError("theta_hat must be finite")
        if not (math.isfinite(self.se) and self.se > 0):
            raise InvalidSpecError("se must be finite and > 0")


def log_approx_likelihood_at(lik: ApproxLikelihood, theta):
    """Log of the approximate likelihood; 0 at the mode, negative elsewhere."""
    z = (np.asarray(theta, dtype=float) - lik.theta_hat) / lik.se
    out = -0.5 * z * z
    if np.isscalar(theta) or getattr(theta, "ndim", 0) == 0:
        return float(out)
    return out


def approx_likelihood_at(lik: ApproxLikelihood, theta):
    """Approximate likelihood in ``(0, 1]``, with maximum 1 at ``theta_hat``."""
    out = np.exp(log_approx_likelihood_at(lik, theta))
    if np.isscalar(theta) or getattr(theta, "ndim", 0) == 0:
        return float(out)
    return out
