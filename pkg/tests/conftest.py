import math
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from sdbf import ApproxLikelihood, PriorSpec


@st.composite
def prior_specs(draw, families=("normal", "student_t", "cauchy"), allow_truncation=True):
    family = draw(st.sampled_from(families))
    location = draw(st.floats(-5, 5))
    scale = draw(st.floats(0.05, 5))
    df = draw(st.floats(0.5, 50)) if family == "student_t" else None
    lower, upper = -math.inf, math.inf
    if allow_truncation:
        kind = draw(st.sampled_from(["none", "lower", "upper", "both"]))
        if kind in ("lower", "both"):
            lower = location + draw(st.floats(-4, 1)) * scale
        if kind in ("upper", "both"):
            upper = location + draw(st.floats(1.5, 4)) * scale
    return PriorSpec(family, location, scale, df=df, lower=lower, upper=upper)


@st.composite
def likelihoods(draw):
    return ApproxLikelihood(draw(st.floats(-5, 5)), draw(st.floats(0.02, 3)))


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240817)
