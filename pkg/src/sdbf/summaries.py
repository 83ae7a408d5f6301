"""Turn commonly reported summary statistics into (theta_hat, se) pairs.

Covers the standardized mean difference from two-sample summaries, a
fixed-effect weighted-least-squares meta-regression with a single moderator,
and the p-value to z-statistic transform. The ``power_pose`` builtin dataset
holds the twelve subgroup effect sizes of the six power-posing replication
studies, split by participants' familiarity with the hypothesis and coded
``x = +0.5`` (familiar) / ``x = -0.5`` (non-familiar).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import special

from .errors import DomainError, InvalidSpecError, SingularDesignError

TWO_SIDED = "two_sided"
GREATER = "greater"
LESS = "less"

_MAX_CONDITION = 1e12


@dataclass(frozen=True)
class TwoSampleSummary:
    """Group means, standard deviations, and sizes of a two-sample comparison."""

    mean1: float
    sd1: float
    n1: int
    mean2: float
    sd2: float
    n2: int

    def __post_init__(self):
        if self.sd1 < 0 or self.sd2 < 0:
            raise InvalidSpecError("standard deviations must be >= 0")
        if self.n1 < 2 or self.n2 < 2:
            raise InvalidSpecError("group sizes must be >= 2")
        for v in (self.mean1, self.sd1, self.mean2, self.sd2):
            if not math.isfinite(v):
                raise InvalidSpecError("summary statistics must be finite")


@dataclass(frozen=True)
class MetaDatum:
    """One study-level effect size ``y`` with standard error and moderator code."""

    y: float
    se_y: float
    x: float

    def __post_init__(self):
        if not (math.isfinite(self.se_y) and self.se_y > 0):
            raise InvalidSpecError("se_y must be finite and > 0")
        if not (math.isfinite(self.y) and math.isfinite(self.x)):
            raise InvalidSpecError("y and x must be finite")


@dataclass(frozen=True)
class WlsFit:
    """Intercept and moderator estimates of ``y ~ Normal(alpha + beta x, se_y^2)``."""

    alpha_hat: float
    se_alpha: float
    beta_hat: float
    se_beta: float


def cohen_d_mle(s: TwoSampleSummary) -> tuple[float, float]:
    """Standardized mean difference and its large-sample standard error.

    ``d = (mean1 - mean2) / s_pooled`` with the usual pooled variance, and
    ``se(d) = sqrt((n1+n2)/(n1 n2) + d^2 / (2 (n1+n2)))`` (the Hedges-Olkin
    large-sample form; variants that divide the second term by ``n1+n2-2``
    differ in the third decimal for moderate samples).
    """
    pooled_var = ((s.n1 - 1) * s.sd1**2 + (s.n2 - 1) * s.sd2**2) / (s.n1 + s.n2 - 2)
    if pooled_var <= 0:
        raise DomainError("pooled variance is zero: effect size undefined")
    d = (s.mean1 - s.mean2) / math.sqrt(pooled_var)
    n1, n2 = s.n1, s.n2
    se_d = math.sqrt((n1 + n2) / (n1 * n2) + d * d / (2.0 * (n1 + n2)))
    return d, se_d


def wls_fit(data: Sequence[MetaDatum] | Iterable[MetaDatum]) -> WlsFit:
    """Weighted least squares for an intercept plus one moderator.

    Weights are the inverse squared standard errors; the parameter covariance
    is the inverse of the weighted normal-equations matrix. Raises
    :class:`~sdbf.errors.SingularDesignError` when the design is rank
    deficient (all moderator values equal) or numerically near-singular.
    """
    rows = list(data)
    if len(rows) < 2:
        raise InvalidSpecError("need at least two data points")
    y = np.array([r.y for r in rows])
    x = np.array([r.x for r in rows])
    w = np.array([1.0 / (r.se_y * r.se_y) for r in rows])

    sw = float(w.sum())
    swx = float((w * x).sum())
    swxx = float((w * x * x).sum())
    swy = float((w * y).sum())
    swxy = float((w * x * y).sum())

    det = sw * swxx - swx * swx
    trace = sw + swxx
    # eigenvalues of the symmetric 2x2 normal matrix
    disc = math.sqrt(max(trace * trace - 4.0 * det, 0.0))
    lam_max = 0.5 * (trace + disc)
    lam_min = 0.5 * (trace - disc)
    if lam_min <= 0.0 or lam_max / lam_min > _MAX_CONDITION:
        raise SingularDesignError(
            "weighted design matrix is singular or ill-conditioned "
            "(is the moderator constant?)"
        )

    alpha = (swy * swxx - swx * swxy) / det
    beta = (sw * swxy - swx * swy) / det
    return WlsFit(
        alpha_hat=alpha,
        se_alpha=math.sqrt(swxx / det),
        beta_hat=beta,
        se_beta=math.sqrt(sw / det),
    )


def p_value_to_z(p: float, direction: str = TWO_SIDED, sign_hint: float = 1.0) -> float:
    """Convert a p-value into the z-statistic that would have produced it.

    Two-sided p-values lose the sign of the effect, so ``sign_hint`` supplies
    it; one-sided conversions are signed by the direction itself.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must be in (0, 1), got {p!r}")
    if direction == TWO_SIDED:
        mag = float(special.ndtri(1.0 - 0.5 * p))
        return -mag if sign_hint < 0 else mag
    if direction == GREATER:
        return float(special.ndtri(1.0 - p))
    if direction == LESS:
        return -float(special.ndtri(1.0 - p))
    raise DomainError(f"unknown direction {direction!r}")


# Subgroup effect sizes (standardized mean differences) and standard errors of
# the six power-posing replication studies, familiar vs non-familiar with the
# hypothesis; moderator coded +0.5 (familiar) / -0.5 (non-familiar).
_POWER_POSE_ROWS = (
    # study, familiar (y, se), non-familiar (y, se)
    ("Bailey et al. (2017)", (0.05, 0.77), (0.24, 0.40)),
    ("Ronay et al. (2017)", (0.16, 0.31), (0.21, 0.48)),
    ("Klaschinski et al. (2017)", (0.33, 0.22), (0.16, 0.31)),
    ("Bombari et al. (2017)", (0.38, 0.69), (0.15, 0.48)),
    ("Latu et al. (2017)", (0.16, 0.11), (0.15, 0.42)),
    ("Keller et al. (2017)", (0.03, 0.28), (0.17, 0.18)),
)


def power_pose() -> list[MetaDatum]:
    """The builtin power-posing moderation dataset: 12 (y, se, x) rows."""
    out = []
    for _, familiar, non_familiar in _POWER_POSE_ROWS:
        out.append(MetaDatum(y=familiar[0], se_y=familiar[1], x=0.5))
        out.append(MetaDatum(y=non_familiar[0], se_y=non_familiar[1], x=-0.5))
    return out
