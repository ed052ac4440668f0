"""
Fixtures
Small exact polytopes used by the CLI, the scripts and the tests
"""

from fractions import Fraction

import numpy as np

from .complex_core import SimplicialPolytope
from .exact_geom import Point


def regular_octahedron():
    points = [
        Point.of(1, 0, 0),
        Point.of(-1, 0, 0),
        Point.of(0, 1, 0),
        Point.of(0, -1, 0),
        Point.of(0, 0, 1),
        Point.of(0, 0, -1),
    ]
    return SimplicialPolytope.from_points(points)


def unit_tetrahedron_points():
    return (Point.of(0, 0, 0), Point.of(1, 0, 0), Point.of(0, 1, 0), Point.of(0, 0, 1))


def unit_tetrahedron():
    return SimplicialPolytope.from_points(unit_tetrahedron_points())


def icosahedron():
    """Pyritohedral icosahedron (0, +-1, +-8/5) and cyclic permutations"""
    r = Fraction(8, 5)
    points = []
    for s in (1, -1):
        for t in (1, -1):
            a, b = s, t * r
            points.extend([Point.of(0, a, b), Point.of(a, b, 0), Point.of(b, 0, a)])
    return SimplicialPolytope.from_points(points)


def circle_point(j, k, max_denominator=10**6):
    """
    Exact rational point on the unit circle near angle pi*j/k

    Uses ((1 - u^2) / (1 + u^2), 2u / (1 + u^2)) with u a rational
    approximation of tan(pi*j / 2k); the point lies on the circle exactly.
    """
    j %= 2 * k
    if j == k:
        return Fraction(-1), Fraction(0)
    u = Fraction(float(np.tan(np.pi * j / (2 * k)))).limit_denominator(max_denominator)
    d = 1 + u * u
    return (1 - u * u) / d, 2 * u / d


def bipyramid2k(k):
    """
    Bipyramid over a 2k-gon inscribed in the unit circle, apexes (0, 0, +-1)

    Raises:
        ValueError: k < 2
    """
    if k < 2:
        raise ValueError(f"bipyramid2k needs k >= 2, got {k}")
    points = [Point.of(0, 0, 1), Point.of(0, 0, -1)]
    for j in range(2 * k):
        x, y = circle_point(j, k)
        points.append(Point(x, y, Fraction(0)))
    return SimplicialPolytope.from_points(points)
