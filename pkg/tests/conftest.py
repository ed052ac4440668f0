"""Shared fixtures for the octa test suite."""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from octa.complex_core import CrossPolytopalComplex, OctaCell  # noqa: E402
from octa.exact_geom import Point  # noqa: E402
from octa.fixtures import regular_octahedron, unit_tetrahedron, unit_tetrahedron_points  # noqa: E402
from octa.subdivide import octahedralize, schlegel_24cell_reference, subdivide_tetrahedron  # noqa: E402

OCTAHEDRON_POINTS = (
    Point.of(1, 0, 0),
    Point.of(-1, 0, 0),
    Point.of(0, 1, 0),
    Point.of(0, -1, 0),
    Point.of(0, 0, 1),
    Point.of(0, 0, -1),
)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: end-to-end runs over many bipyramids")


@pytest.fixture(scope="session")
def data_dir():
    return ROOT / "data"


@pytest.fixture
def octahedron():
    return regular_octahedron()


@pytest.fixture
def tetrahedron():
    return unit_tetrahedron()


@pytest.fixture
def single_cell():
    """The regular octahedron as a one-cell complex"""
    return CrossPolytopalComplex(OCTAHEDRON_POINTS, (OctaCell(tuple(range(6))),))


@pytest.fixture
def glued_pair():
    """Regular octahedron plus its mirror image across the facet x + y + z = 1"""
    third, four_thirds = Fraction(1, 3), Fraction(4, 3)
    mirrored = (
        Point(third, four_thirds, four_thirds),
        Point(four_thirds, third, four_thirds),
        Point(four_thirds, four_thirds, third),
    )
    vertices = OCTAHEDRON_POINTS + mirrored
    cells = (
        OctaCell((0, 1, 2, 3, 4, 5)),
        OctaCell((0, 6, 2, 7, 4, 8)),
    )
    return CrossPolytopalComplex(vertices, cells)


@pytest.fixture(scope="session")
def octahedron_complex():
    return octahedralize(regular_octahedron())


@pytest.fixture(scope="session")
def schlegel_complex():
    return schlegel_24cell_reference()


@pytest.fixture(scope="session")
def tetra23():
    return subdivide_tetrahedron(unit_tetrahedron_points())
