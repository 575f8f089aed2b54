from fractions import Fraction

import pytest

from alphaspectra.families import (
    Family,
    FamilySpec,
    build,
    bstar3,
    bstar5,
    complete,
    cycle,
    path,
    star,
)
from alphaspectra.graph import Graph
from alphaspectra.settings import Settings


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive enumeration oracles")


@pytest.fixture
def alpha_grid():
    """The alphas used by the oracle suites"""
    return [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


@pytest.fixture
def zoo():
    """Small named graphs shared by the test modules"""
    return {
        "k2": path(2),
        "p4": path(4),
        "k13": star(3),
        "c5": cycle(5),
        "k4": complete(4),
        "theta_small": build(FamilySpec(family=Family.THETA_SMALL)),
        "inf_small": build(FamilySpec(family=Family.INF_SMALL)),
        "two_edges": Graph.from_edges(4, [(0, 1), (2, 3)]),
    }


@pytest.fixture(scope="session")
def table1_pair():
    """B3*(16,9) and B5*(16,9)"""
    return bstar3(16, 9), bstar5(16, 9)


@pytest.fixture(
    params=[
        # Default tolerances
        {},
        # Tighter residual tolerance
        {"TOL": 1e-12},
        # Warnings silenced
        {"SHOW_WARNINGS": False},
    ]
)
def config(request):
    """Settings fixture, parameterized by a few overrides"""
    return Settings.model_validate(request.param)
