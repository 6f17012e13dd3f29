import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from barylef.complex_core import from_facets, simplex, simplex_boundary, skeleton  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def two_triangles():
    return from_facets([{1, 2, 3}, {2, 3, 4}])


@pytest.fixture
def skeleton_2_of_4_simplex():
    return skeleton(simplex(4), 2)


@pytest.fixture
def boundary_3():
    return simplex_boundary(3)


@pytest.fixture
def hexagon():
    from barylef.complex_core import barycentric_subdivision

    return barycentric_subdivision(simplex_boundary(2))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
