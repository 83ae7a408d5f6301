"""Exception hierarchy shared across the package.

All input-contract violations derive from :class:`ValueError` so that callers
who do not care about the finer distinctions can catch the usual builtin.
"""

from __future__ import annotations


class SdbfError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpecError(SdbfError, ValueError):
    """A distribution or scenario specification violates its invariants."""


class DomainError(SdbfError, ValueError):
    """A numeric argument lies outside the mathematical domain of an operation."""


class IllPosedTestError(SdbfError, ValueError):
    """The test value lies strictly outside the closure of the prior support,
    so the Savage-Dickey ordinate at that point is undefined."""


class UndefinedLaplaceError(SdbfError, ValueError):
    """Laplace's method is undefined: the prior density vanishes at the MLE."""


class MethodNotApplicableError(SdbfError, ValueError):
    """The requested Bayes-factor method cannot be applied to these inputs."""


class SingularDesignError(SdbfError, ValueError):
    """The weighted regression design matrix is rank deficient or too
    ill-conditioned to solve reliably."""


class QuadratureConvergenceError(SdbfError, RuntimeError):
    """Adaptive integration exhausted its subdivision budget.

    The best estimate obtained so far is attached as ``best``.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
