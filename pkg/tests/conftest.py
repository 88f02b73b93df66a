import pytest

from higher_tamari.ground import Subset
from higher_tamari.simplicial import Triangulation, triangulation_from_internal
from higher_tamari.zonotopal import InversionSet, cubillage_from_inversion_set


def S(n, text):
    return Subset.parse(n, text)


def tri_from_e(n, delta, items):
    """Triangulation given by its internal simplices, written as digit strings."""
    return triangulation_from_internal(n, delta, [Subset.parse(n, s).mask for s in items])


def cub_from_inv(n, delta, items):
    return cubillage_from_inversion_set(InversionSet.of(n, delta, [Subset.parse(n, s) for s in items]))


def labels(subsets):
    return {str(s) for s in subsets}


@pytest.fixture
def q1():
    return cub_from_inv(4, 1, ["123"])


@pytest.fixture
def q2():
    return cub_from_inv(4, 2, [])


@pytest.fixture
def hexagon():
    return tri_from_e(6, 2, ["13", "15", "35"])


@pytest.fixture
def heptagon():
    return tri_from_e(7, 2, ["13", "16", "35", "36"])


@pytest.fixture
def octagon():
    return Triangulation.from_simplices(8, 2, [[1, 3, 5], [1, 5, 7], [1, 2, 3], [3, 4, 5], [5, 6, 7], [1, 7, 8]])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
