from fractions import Fraction

import pytest
from hypothesis import settings

from toricmass import PolytopeSpec

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def square():
    return PolytopeSpec(2, ((-1, 0), (0, -1), (1, 0), (0, 1)), (0, 0, 1, 1))


@pytest.fixture
def hirz1():
    """Hirzebruch trapezium r=1 with vertices (0,0), (0,1), (1,1), (2,0)."""
    return PolytopeSpec(2, ((-1, 0), (0, -1), (0, 1), (1, 1)), (0, 0, 1, 2))


@pytest.fixture
def bad_triangle():
    return PolytopeSpec(2, ((-1, 0), (0, -1), (1, 2)), (0, 0, 1))


def simplex_spec(n: int, tau) -> PolytopeSpec:
    conormals = tuple(tuple(-int(i == l) for l in range(n)) for i in range(n)) + ((1,) * n,)
    return PolytopeSpec(n, conormals, (0,) * n + (Fraction(tau),))
