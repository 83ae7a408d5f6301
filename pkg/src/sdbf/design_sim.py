"""Sequential Bayes-factor design analysis by Monte-Carlo simulation.

Observations accumulate as i.i.d. normal draws around a postulated true
effect; at each pre-specified look the running mean and its standard error
feed the Savage-Dickey approximation, and the trajectory stops at the first
look whose Bayes factor crosses a stopping threshold. Replicates use
counter-based Philox substreams keyed by the replicate index, so results are
reproducible and independent of any execution order.

``sequential_bf_from_observed`` applies the same per-look machinery to an
externally observed sequence of (theta_hat, se) pairs, optionally under
several methods at once, with per-look failures captured rather than raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bayes_core import (
    BayesFactorResult,
    HypothesisTest,
    MethodOutcome,
    SAVAGE_DICKEY_QUADRATURE,
    sd_bf,
    try_method,
)
from .errors import InvalidSpecError
from .likelihood import ApproxLikelihood

BOUNDARY_H1 = "H1"
BOUNDARY_H0 = "H0"
BOUNDARY_MAX_N = "max_n"

_STOP_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass(frozen=True)
class DesignSpec:
    """A sequential design: data-generating truth, look schedule, test, thresholds."""

    true_effect: float
    unit_sd: float
    looks: tuple[int, ...]
    test: HypothesisTest
    upper_threshold: float
    lower_threshold: float
    replications: int
    seed: int

    def __post_init__(self):
        if not math.isfinite(self.true_effect):
            raise InvalidSpecError("true_effect must be finite")
        if not (math.isfinite(self.unit_sd) and self.unit_sd > 0):
            raise InvalidSpecError("unit_sd must be finite and > 0")
        looks = tuple(int(n) for n in self.looks)
        object.__setattr__(self, "looks", looks)
        if not looks or looks[0] < 2:
            raise InvalidSpecError("need at least one look with first look >= 2")
        if any(b <= a for a, b in zip(looks, looks[1:])):
            raise InvalidSpecError("looks must be strictly increasing")
        if not self.lower_threshold < 1.0 < self.upper_threshold:
            raise InvalidSpecError("require lower_threshold < 1 < upper_threshold")
        if self.replications < 1:
            raise InvalidSpecError("replications must be >= 1")


@dataclass(frozen=True)
class Trajectory:
    """Per-look estimates and Bayes factors of one simulated data stream."""

    estimates: list[tuple[float, float]]  # (theta_hat, se) per look
    bayes_factors: list[BayesFactorResult]


@dataclass(frozen=True)
class ReplicateOutcome:
    """Stopping summary of one replicate."""

    stop_index: int  # index into looks
    stop_n: int
    boundary: str  # H1 | H0 | max_n
    terminal_log_bf10: float


@dataclass(frozen=True)
class DesignResult:
    """Per-replicate outcomes plus the aggregate operating characteristics."""

    replicates: list[ReplicateOutcome]
    boundary_probabilities: dict[str, float]
    stopping_n_quantiles: dict[float, int]
    mean_terminal_log_bf10: float

    def aggregates(self) -> dict:
        """JSON-ready summary of the run."""
        return {
            "boundary_probabilities": dict(self.boundary_probabilities),
            "stopping_n_quantiles": {str(q): int(n) for q, n in self.stopping_n_quantiles.items()},
            "mean_terminal_log_bf10": self.mean_terminal_log_bf10,
            "replications": len(self.replicates),
        }


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Philox stream for one replicate: same key, counter blocks 2^128 apart."""
    return np.random.Generator(np.random.Philox(key=seed, counter=replicate << 128))


def _running_estimates(spec: DesignSpec, rng: np.random.Generator) -> list[tuple[float, float]]:
    """(theta_hat, se) at each look from one incrementally extended stream."""
    draws = rng.normal(spec.true_effect, spec.unit_sd, size=spec.looks[-1])
    csum = np.cumsum(draws)
    out = []
    for n in spec.looks:
        out.append((float(csum[n - 1] / n), spec.unit_sd / math.sqrt(n)))
    return out


def simulate_trajectory(spec: DesignSpec, rng: np.random.Generator) -> Trajectory:
    """One full trajectory: estimates and the Savage-Dickey BF at every look."""
    estimates = _running_estimates(spec, rng)
    bfs = [sd_bf(ApproxLikelihood(th, se), spec.test) for th, se in estimates]
    return Trajectory(estimates=estimates, bayes_factors=bfs)


def _run_replicate(spec: DesignSpec, replicate: int) -> ReplicateOutcome:
    estimates = _running_estimates(spec, replicate_rng(spec.seed, replicate))
    log_hi = math.log(spec.upper_threshold)
    log_lo = math.log(spec.lower_threshold)
    for i, (th, se) in enumerate(estimates):
        res = sd_bf(ApproxLikelihood(th, se), spec.test)
        if res.log_bf10 >= log_hi:
            return ReplicateOutcome(i, spec.looks[i], BOUNDARY_H1, res.log_bf10)
        if res.log_bf10 <= log_lo:
            return ReplicateOutcome(i, spec.looks[i], BOUNDARY_H0, res.log_bf10)
    last = len(spec.looks) - 1
    return ReplicateOutcome(last, spec.looks[last], BOUNDARY_MAX_N, res.log_bf10)


def run_design(spec: DesignSpec) -> DesignResult:
    """Simulate all replicates and aggregate the boundary-hit behavior."""
    outcomes = [_run_replicate(spec, r) for r in range(spec.replications)]
    counts = {BOUNDARY_H1: 0, BOUNDARY_H0: 0, BOUNDARY_MAX_N: 0}
    for o in outcomes:
        counts[o.boundary] += 1
    total = float(len(outcomes))
    stop_ns = np.array([o.stop_n for o in outcomes])
    quantiles = {
        q: int(np.quantile(stop_ns, q, method="inverted_cdf")) for q in _STOP_QUANTILES
    }
    return DesignResult(
        replicates=outcomes,
        boundary_probabilities={k: v / total for k, v in counts.items()},
        stopping_n_quantiles=quantiles,
        mean_terminal_log_bf10=float(np.mean([o.terminal_log_bf10 for o in outcomes])),
    )


def sequential_bf_from_observed(
    observed: list[tuple[float, float]],
    test: HypothesisTest,
    methods: tuple[str, ...] = (SAVAGE_DICKEY_QUADRATURE,),
) -> list[dict[str, MethodOutcome]]:
    """Per-look Bayes factors for an observed (theta_hat, se) sequence.

    One dict per look, keyed by method; failures (for instance an undefined
    Laplace ordinate at a look with a negative estimate) are captured
    per cell.
    """
    out = []
    for theta_hat, se in observed:
        lik = ApproxLikelihood(theta_hat, se)
        out.append({m: try_method(m, lik, test) for m in methods})
    return out
