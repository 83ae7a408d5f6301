"""Prior-sensitivity sweeps: one Bayes factor per prior hyperparameter value.

Each grid value replaces a single field of the base prior (scale, location,
or degrees of freedom) and re-runs the requested methods. Failures of a
single cell (for instance Laplace's method being undefined under truncation)
are recorded in that cell and never abort the sweep.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .bayes_core import (
    LAPLACE,
    METHODS,
    SAVAGE_DICKEY_QUADRATURE,
    HypothesisTest,
    MethodOutcome,
    try_method,
)
from .distributions import STUDENT_T
from .errors import InvalidSpecError, SdbfError
from .likelihood import ApproxLikelihood

VARY_SCALE = "scale"
VARY_LOCATION = "location"
VARY_DF = "df"
_VARY_FIELDS = frozenset({VARY_SCALE, VARY_LOCATION, VARY_DF})


@dataclass(frozen=True)
class SensitivitySpec:
    """A base test, the prior field to vary, the grid, and the methods to run."""

    base: HypothesisTest
    vary: str
    grid: tuple[float, ...]
    methods: tuple[str, ...] = (SAVAGE_DICKEY_QUADRATURE,)
    ignore_truncation: bool = False

    def __post_init__(self):
        if self.vary not in _VARY_FIELDS:
            raise InvalidSpecError(f"vary must be one of {sorted(_VARY_FIELDS)}")
        grid = tuple(float(v) for v in self.grid)
        object.__setattr__(self, "grid", grid)
        if not grid:
            raise InvalidSpecError("grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidSpecError("grid must be strictly increasing")
        if self.vary in (VARY_SCALE, VARY_DF) and grid[0] <= 0:
            raise InvalidSpecError(f"{self.vary} grid values must be > 0")
        if self.vary == VARY_DF and self.base.prior.family != STUDENT_T:
            raise InvalidSpecError("df can only be varied for a student_t prior")
        methods = tuple(self.methods)
        object.__setattr__(self, "methods", methods)
        if not methods:
            raise InvalidSpecError("methods must be nonempty")
        unknown = [m for m in methods if m not in METHODS]
        if unknown:
            raise InvalidSpecError(f"unknown methods: {unknown}")


@dataclass(frozen=True)
class SensitivityRow:
    """Per-method outcomes at one grid value, in requested-method order."""

    varied_value: float
    outcomes: dict[str, MethodOutcome]


def sweep(lik: ApproxLikelihood, spec: SensitivitySpec) -> list[SensitivityRow]:
    """Evaluate every requested method at every grid value, in grid order."""
    rows = []
    for value in spec.grid:
        outcomes: dict[str, MethodOutcome] = {}
        try:
            prior = dataclasses.replace(spec.base.prior, **{spec.vary: value})
            test = HypothesisTest(spec.base.theta0, prior)
        except SdbfError as exc:
            for m in spec.methods:
                outcomes[m] = MethodOutcome(method=m, status="failed", message=str(exc))
            rows.append(SensitivityRow(varied_value=value, outcomes=outcomes))
            continue
        for m in spec.methods:
            ignore = spec.ignore_truncation and m == LAPLACE
            outcomes[m] = try_method(m, lik, test, ignore_truncation=ignore)
        rows.append(SensitivityRow(varied_value=value, outcomes=outcomes))
    return rows


def log_spaced_grid(lo: float, hi: float, n: int) -> tuple[float, ...]:
    """n log-spaced points on [lo, hi]; the CLI default is 40 on [0.05, 2]."""
    if not (0 < lo < hi) or n < 1:
        raise InvalidSpecError("need 0 < lo < hi and n >= 1")
    if n == 1:
        return (lo,)
    ratio = math.log(hi / lo) / (n - 1)
    return tuple(lo * math.exp(i * ratio) for i in range(n))
