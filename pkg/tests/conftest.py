import math
import time

import pytest

from hardy_mf.continuation import trace_branch
from hardy_mf.greens import ASYMPTOTE_INTERCEPT
from hardy_mf.radial import solve_given_c


def asymptotic_bracket(c, factor=3.0):
    lam = math.exp(0.5 * (ASYMPTOTE_INTERCEPT - c))
    return lam / factor, lam * factor


@pytest.fixture(scope="session")
def sol30():
    return solve_given_c(30.0, asymptotic_bracket(30.0))


@pytest.fixture(scope="session")
def sol40():
    return solve_given_c(40.0, asymptotic_bracket(40.0))


@pytest.fixture(scope="session")
def branch80():
    """The 80-point branch over c in [20, 60] shared by the acceptance checks."""
    start = time.perf_counter()
    branch = trace_branch(20.0, 60.0, 80)
    branch.elapsed = time.perf_counter() - start
    return branch
