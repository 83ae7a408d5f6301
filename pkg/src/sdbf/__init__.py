"""Approximate informed Bayes factors from an MLE and its standard error.

The Savage-Dickey normal approximation treats ``exp(-0.5 ((theta_hat -
theta)/se)^2)`` as the likelihood of a single focal parameter, multiplies it
with an informed prior, and reads the Bayes factor for ``H0: theta = theta0``
off the prior-to-posterior density ratio at the test value. The package also
provides the closed-form normal-prior case, Jeffreys/BIC-style defaults, a
one-parameter Laplace baseline, approximate posteriors, prior-sensitivity
sweeps, and sequential design simulation.
"""

from .bayes_core import (
    BayesFactorResult,
    HypothesisTest,
    MethodOutcome,
    approx_likelihood_at,
    closed_form_normal_bf,
    evaluate_method,
    jeffreys_general_bf,
    jeffreys_unit_info_bf,
    laplace_bf,
    sd_bf,
    sd_bf_ratio_form,
    try_method,
)
from .design_sim import (
    DesignResult,
    DesignSpec,
    ReplicateOutcome,
    Trajectory,
    replicate_rng,
    run_design,
    sequential_bf_from_observed,
    simulate_trajectory,
)
from .distributions import PriorSpec
from .errors import (
    DomainError,
    IllPosedTestError,
    InvalidSpecError,
    MethodNotApplicableError,
    QuadratureConvergenceError,
    SdbfError,
    SingularDesignError,
    UndefinedLaplaceError,
)
from .likelihood import ApproxLikelihood
from .posterior import PosteriorGrid, posterior_grid, posterior_pdf_at, posterior_quantile
from .quadrature import IntegrationResult, integrate, marginal_likelihood
from .sensitivity import SensitivityRow, SensitivitySpec, log_spaced_grid, sweep
from .summaries import (
    MetaDatum,
    TwoSampleSummary,
    WlsFit,
    cohen_d_mle,
    p_value_to_z,
    power_pose,
    wls_fit,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxLikelihood",
    "BayesFactorResult",
    "DesignResult",
    "DesignSpec",
    "DomainError",
    "HypothesisTest",
    "IllPosedTestError",
    "IntegrationResult",
    "InvalidSpecError",
    "MetaDatum",
    "MethodNotApplicableError",
    "MethodOutcome",
    "PosteriorGrid",
    "PriorSpec",
    "QuadratureConvergenceError",
    "ReplicateOutcome",
    "SdbfError",
    "SensitivityRow",
    "SensitivitySpec",
    "SingularDesignError",
    "Trajectory",
    "TwoSampleSummary",
    "UndefinedLaplaceError",
    "WlsFit",
    "approx_likelihood_at",
    "closed_form_normal_bf",
    "cohen_d_mle",
    "evaluate_method",
    "integrate",
    "jeffreys_general_bf",
    "jeffreys_unit_info_bf",
    "laplace_bf",
    "log_spaced_grid",
    "marginal_likelihood",
    "p_value_to_z",
    "posterior_grid",
    "posterior_pdf_at",
    "posterior_quantile",
    "power_pose",
    "replicate_rng",
    "run_design",
    "sd_bf",
    "sd_bf_ratio_form",
    "sequential_bf_from_observed",
    "simulate_trajectory",
    "sweep",
    "try_method",
    "wls_fit",
]
