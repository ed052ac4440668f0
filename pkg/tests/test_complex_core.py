"""Tests for polytopes, octahedral cells and complex validation."""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import OCTAHEDRON_POINTS
from octa.complex_core import (
    PAIRING,
    CrossPolytopalComplex,
    OctaCell,
    PointPool,
    SimplicialPolytope,
    boundary_of,
    f_vector,
    is_cross_polytope,
    octahedron_volume,
    validate_complex,
)
from octa.errors import DegenerateInput, InvalidPolytope
from octa.exact_geom import Point, centroid, convex_hull, orient

ONE_PER_PAIR = {frozenset(tri) for tri in product(*PAIRING)}


def _hull_says_octahedron(points):
    """Brute-force face-lattice check: the hull is exactly the 8 one-per-pair triangles"""
    try:
        hull = convex_hull(points)
    except DegenerateInput:
        return False
    return hull.simplicial and hull.vertex_indices == list(range(6)) and hull.facet_set() == ONE_PER_PAIR


def _random_rational(rng):
    return Fraction(rng.randint(-100, 100), rng.randint(1, 100))


def _perturbed_octahedron(rng):
    pts = []
    for base in OCTAHEDRON_POINTS:
        coords = []
        for value in base.key():
            if value:
                coords.append(value * Fraction(rng.randint(60, 100), 100))
            else:
                coords.append(Fraction(rng.randint(-10, 10), 100))
        pts.append(Point(*coords))
    return pts


def test_is_cross_polytope_regular_octahedron():
    assert is_cross_polytope(OCTAHEDRON_POINTS)
    assert not is_cross_polytope(OCTAHEDRON_POINTS, pairs=((0, 2), (1, 3), (4, 5)))
    assert not is_cross_polytope(OCTAHEDRON_POINTS[:5])


def test_is_cross_polytope_rejects_flat_configuration():
    flat = [Point(p.x, p.y, Fraction(0)) for p in OCTAHEDRON_POINTS[:4]] + [Point.of(2, 2, 0), Point.of(-2, 2, 0)]
    assert not is_cross_polytope(flat)


def test_is_cross_polytope_agrees_with_hull_oracle():
    rng = random.Random(20240607)
    positives = 0
    for trial in range(1200):
        if trial % 2:
            pts = [Point(*(_random_rational(rng) for _ in range(3))) for _ in range(6)]
        else:
            pts = _perturbed_octahedron(rng)
            if trial % 4 == 2:
                rng.shuffle(pts)
        expected = _hull_says_octahedron(pts)
        positives += expected
        assert is_cross_polytope(pts) == expected, pts
    assert positives > 100


@given(
    shift=st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=7)] * 3),
    matrix=st.lists(st.integers(min_value=-3, max_value=3), min_size=9, max_size=9),
)
def test_certification_is_affine_invariant(shift, matrix):
    rows = [matrix[0:3], matrix[3:6], matrix[6:9]]
    a, b, c = rows
    det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
    offset = Point(*shift)

    def image(p):
        v = p.key()
        return Point(*(sum(r[k] * v[k] for k in range(3)) for r in rows)) + offset

    mapped = [image(p) for p in OCTAHEDRON_POINTS]
    assert is_cross_polytope(mapped) == (det != 0)


def test_octahedron_volume():
    assert octahedron_volume(OCTAHEDRON_POINTS) == Fraction(4, 3)


def test_polytope_from_points(octahedron):
    assert octahedron.f_vector() == (6, 12, 8)
    assert octahedron.volume() == Fraction(4, 3)
    assert octahedron.problems() == []
    assert octahedron.validate() is octahedron


def test_polytope_from_points_rejects_cube():
    cube = [Point.of(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    with pytest.raises(InvalidPolytope) as exc_info:
        SimplicialPolytope.from_points(cube)
    assert "non-triangular" in str(exc_info.value)


def test_polytope_from_points_rejects_interior_point():
    pts = list(OCTAHEDRON_POINTS) + [Point.of(0, 0, 0)]
    with pytest.raises(InvalidPolytope, match="point 6 is not a hull vertex"):
        SimplicialPolytope.from_points(pts)


def test_inward_facets_are_reported_and_reoriented(octahedron):
    flipped = SimplicialPolytope(octahedron.vertices, [(a, c, b) for a, b, c in octahedron.facets])
    assert any("outward" in problem for problem in flipped.problems())
    with pytest.raises(InvalidPolytope):
        flipped.validate()
    assert flipped.oriented().facet_set() == octahedron.facet_set()
    assert flipped.oriented().problems() == []


def test_polytope_problems_on_open_surface(octahedron):
    assert SimplicialPolytope(octahedron.vertices, octahedron.facets[:-1]).problems()
    assert SimplicialPolytope(octahedron.vertices[:3], []).problems() == ["need at least 4 vertices, got 3"]


def test_point_pool_deduplicates():
    pool = PointPool([Point.of(0, 0, 0), Point.of(1, 0, 0)])
    assert pool.add(Point.of("2/2", 0, 0)) == 1
    assert pool.extend([Point.of(0, 1, 0), Point.of(0, 0, 0)]) == [2, 0]
    assert len(pool) == 3
    assert Point.of(0, 1, 0) in pool
    assert pool.index(Point.of(0, 1, 0)) == 2
    assert pool[2] == Point.of(0, 1, 0)


def test_octa_cell_structure():
    cell = OctaCell((10, 11, 12, 13, 14, 15), 2)
    assert cell.pairs == ((10, 11), (12, 13), (14, 15))
    assert cell.antipode(13) == 12
    assert len(cell.triangles()) == 8
    assert len(cell.edges()) == 12
    assert (10, 11) not in cell.edges()
    with pytest.raises(ValueError):
        OctaCell((0, 1, 2, 3, 4))


def test_single_cell_complex(single_cell):
    report = validate_complex(single_cell, "full")
    assert report.passed, report.rows()
    assert f_vector(single_cell) == (6, 12, 8, 1)
    assert single_cell.volume() == Fraction(4, 3)
    boundary = boundary_of(single_cell)
    assert len(boundary) == 8
    inside = centroid(single_cell.vertices)
    for a, b, c in boundary:
        assert orient(*(single_cell.vertices[i] for i in (a, b, c)), inside) < 0


def test_glued_pair_complex(glued_pair):
    report = validate_complex(glued_pair, "full")
    assert report.passed, report.rows()
    assert f_vector(glued_pair) == (9, 21, 15, 2)
    assert len(glued_pair.boundary) == 14
    assert glued_pair.volume() == Fraction(8, 3)
    assert glued_pair.triangle_incidence[frozenset((0, 2, 4))] == [0, 1]


def test_overlapping_cells_fail_only_full_validation():
    shift = Point.of("1/2", 0, 0)
    vertices = OCTAHEDRON_POINTS + tuple(p + shift for p in OCTAHEDRON_POINTS)
    c = CrossPolytopalComplex(vertices, (OctaCell((0, 1, 2, 3, 4, 5)), OctaCell((6, 7, 8, 9, 10, 11))))
    assert validate_complex(c, "fast").passed
    full = validate_complex(c, "full")
    assert not full.passed
    assert [check.name for check in full.failures()] == ["pairwise_intersection"]


def test_far_apart_cells_pass_full_validation():
    shift = Point.of(5, 0, 0)
    vertices = OCTAHEDRON_POINTS + tuple(p + shift for p in OCTAHEDRON_POINTS)
    c = CrossPolytopalComplex(vertices, (OctaCell((0, 1, 2, 3, 4, 5)), OctaCell((6, 7, 8, 9, 10, 11))))
    assert validate_complex(c, "full").passed


def test_swapped_pairing_fails_certification(single_cell):
    broken = CrossPolytopalComplex(single_cell.vertices, (OctaCell((0, 2, 1, 3, 4, 5)),))
    report = validate_complex(broken)
    assert not report.get("is_cross_polytope").passed


def test_unknown_validation_level(single_cell):
    with pytest.raises(ValueError):
        validate_complex(single_cell, "thorough")


def test_merge_shares_vertices(glued_pair):
    first = CrossPolytopalComplex(glued_pair.vertices[:6], glued_pair.cells[:1])
    second = CrossPolytopalComplex(
        (glued_pair.vertices[0], glued_pair.vertices[6], glued_pair.vertices[2], glued_pair.vertices[7],
         glued_pair.vertices[4], glued_pair.vertices[8]),
        (OctaCell(tuple(range(6)), 1),),
    )
    merged = CrossPolytopalComplex.merge([first, second], PointPool(glued_pair.vertices[:6]))
    assert merged.vertices == glued_pair.vertices
    assert merged.cells[1].vertices == glued_pair.cells[1].vertices
    assert merged.type_census() == {1: 1, None: 1}


def test_degenerate_cell_is_reported_not_raised():
    # e1, -e1 and (2, 0, 0) sit on one line, so the cell has a flat facet
    vertices = OCTAHEDRON_POINTS + (Point.of(2, 0, 0),)
    c = CrossPolytopalComplex(vertices, (OctaCell((0, 2, 1, 3, 6, 5)),))
    report = validate_complex(c, "full")
    assert not report.passed
    assert not report.get("is_cross_polytope").passed
    assert report.get("pairwise_intersection").passed


def test_cell_rejects_repeated_vertices():
    with pytest.raises(ValueError, match="repeated vertex"):
        OctaCell((0, 0, 1, 2, 3, 4))
