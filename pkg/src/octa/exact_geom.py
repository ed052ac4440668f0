"""
Exact Geometry Kernel
Rational points, orientation predicates, convex hulls and volumes.

Every decision in the package goes through this module. Coordinates are
``fractions.Fraction`` values (always stored in lowest terms), so predicates
are exact and there are no tolerances anywhere.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import DegenerateInput


def _sign(value):
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class Point:
    """Exact rational 3-vector"""

    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, x, y, z):
        """Build a point from anything ``Fraction`` accepts (int, str "p/q", Fraction)"""
        return cls(Fraction(x), Fraction(y), Fraction(z))

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Point(-self.x, -self.y, -self.z)

    def __mul__(self, k):
        return Point(self.x * k, self.y * k, self.z * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return Point(self.x / k, self.y / k, self.z / k)

    def dot(self, other):
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other):
        return Point(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def lerp(self, other, t):
        """Point at parameter t on the segment self -> other"""
        return self + (other - self) * t

    def is_zero(self):
        return self.x == 0 and self.y == 0 and self.z == 0

    def key(self):
        return (self.x, self.y, self.z)

    def __repr__(self):
        return f"Point({self.x}, {self.y}, {self.z})"


def det3(u, v, w):
    """Determinant of the 3x3 matrix with rows u, v, w"""
    return u.dot(v.cross(w))


def orient(p, q, r, s):
    """
    Orientation of four points

    Returns:
        +1, 0 or -1: sign of det(q - p, r - p, s - p); 0 iff coplanar
    """
    ax, ay, az = q.x - p.x, q.y - p.y, q.z - p.z
    bx, by, bz = r.x - p.x, r.y - p.y, r.z - p.z
    cx, cy, cz = s.x - p.x, s.y - p.y, s.z - p.z
    det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx)
    return _sign(det)


def centroid(points):
    points = list(points)
    if not points:
        raise DegenerateInput("centroid of an empty point set")
    total = Point.of(0, 0, 0)
    for p in points:
        total = total + p
    return total / len(points)


def tetra_volume(a, b, c, d):
    """Unsigned volume of the tetrahedron abcd"""
    return abs(det3(b - a, c - a, d - a)) / 6


@dataclass(frozen=True)
class Plane:
    """Plane {p : <normal, p> = offset}"""

    normal: Point
    offset: Fraction

    @classmethod
    def through(cls, p, q, r):
        """
        Plane through three points, normal (q - p) x (r - p)

        ``plane.side(s) == orient(p, q, r, s)`` for every s.
        """
        normal = (q - p).cross(r - p)
        if normal.is_zero():
            raise DegenerateInput(f"collinear points {p}, {q}, {r} span no plane")
        return cls(normal, normal.dot(p))

    def value(self, point):
        return self.normal.dot(point) - self.offset

    def side(self, point):
        return _sign(self.value(point))


@dataclass(frozen=True)
class HullFacets:
    """
    Convex hull as a list of outward-oriented vertex-index triangles

    Facet (a, b, c) is outward when orient(a, b, c, x) < 0 for interior x.
    Coplanar hull faces with more than three input points are fan-triangulated;
    ``simplicial`` is False in that case.
    """

    points: tuple
    facets: tuple
    simplicial: bool = True
    planes: tuple = field(default=(), compare=False, repr=False)

    @property
    def vertex_indices(self):
        return sorted({i for facet in self.facets for i in facet})

    def facet_set(self):
        """Facets as unordered index triples"""
        return {frozenset(f) for f in self.facets}


def _has_volume(points):
    p0 = points[0]
    p1 = next((p for p in points if p != p0), None)
    if p1 is None:
        return False
    direction = p1 - p0
    p2 = next((p for p in points if not direction.cross(p - p0).is_zero()), None)
    if p2 is None:
        return False
    return any(orient(p0, p1, p2, p) != 0 for p in points)


def _face_ring(points, members, outward):
    """Vertices of a planar hull face in counterclockwise order seen from outside"""

    def turn(a, b, c):
        return _sign((points[b] - points[a]).cross(points[c] - points[a]).dot(outward))

    def dist2(a, b):
        d = points[b] - points[a]
        return d.dot(d)

    start = min(members, key=lambda m: points[m].key())
    ring = [start]
    current = start
    for _ in range(len(members)):
        candidate = None
        for m in members:
            if m == current:
                continue
            if candidate is None:
                candidate = m
                continue
            t = turn(current, candidate, m)
            if t < 0 or (t == 0 and dist2(current, m) > dist2(current, candidate)):
                candidate = m
        if candidate == start:
            return ring
        ring.append(candidate)
        current = candidate
    raise DegenerateInput("gift wrapping of a hull face did not close")


def convex_hull(points):
    """
    Exact convex hull of a small point set

    Args:
        points: iterable of Point (at least 4, not all coplanar)

    Returns:
        HullFacets with outward-oriented triangles; points interior to the hull
        (or interior to a hull face/edge) appear in no facet

    Raises:
        DegenerateInput: fewer than 4 points or all points coplanar
    """
    pts = tuple(points)
    n = len(pts)
    if n < 4:
        raise DegenerateInput(f"convex hull needs at least 4 points, got {n}")
    if not _has_volume(pts):
        raise DegenerateInput("all points are coplanar")

    faces = {}
    for i, j, k in combinations(range(n), 3):
        p = pts[i]
        normal = (pts[j] - p).cross(pts[k] - p)
        if normal.is_zero():
            continue
        offset = normal.dot(p)
        above = below = False
        on = []
        for m, s in enumerate(pts):
            v = normal.dot(s) - offset
            if v > 0:
                above = True
            elif v < 0:
                below = True
            else:
                on.append(m)
            if above and below:
                break
        if above and below:
            continue
        key = frozenset(on)
        if key not in faces:
            faces[key] = -normal if above else normal

    facets = []
    simplicial = True
    for key in sorted(faces, key=sorted):
        outward = faces[key]
        if len(key) == 3:
            a, b, c = sorted(key)
            if (pts[b] - pts[a]).cross(pts[c] - pts[a]).dot(outward) < 0:
                b, c = c, b
            facets.append((a, b, c))
            continue
        simplicial = False
        ring = _face_ring(pts, sorted(key), outward)
        for t in range(1, len(ring) - 1):
            facets.append((ring[0], ring[t], ring[t + 1]))

    planes = tuple(Plane.through(pts[a], pts[b], pts[c]) for a, b, c in facets)
    return HullFacets(pts, tuple(facets), simplicial, planes)


def point_in_hull(hull, point, strict=False):
    """Closed (or open, with strict=True) membership test"""
    for plane in hull.planes:
        v = plane.value(point)
        if v > 0 or (strict and v == 0):
            return False
    return True


def segment_meets_interior(hull, a, b):
    """
    True iff the open segment (a, b) contains a point strictly inside the hull

    Clips the segment parameter interval against every facet halfspace.
    """
    d = b - a
    lo, hi = Fraction(0), Fraction(1)
    for plane in hull.planes:
        alpha = plane.value(a)
        beta = plane.normal.dot(d)
        if beta == 0:
            if alpha >= 0:
                return False
            continue
        root = -alpha / beta
        if beta > 0:
            hi = min(hi, root)
        else:
            lo = max(lo, root)
        if lo >= hi:
            return False
    return lo < hi


def volume(hull):
    """Exact volume, summed over tetrahedra from the vertex centroid"""
    ref = centroid(hull.points[i] for i in hull.vertex_indices)
    total = Fraction(0)
    for a, b, c in hull.facets:
        p = hull.points[a]
        total -= det3(hull.points[b] - p, hull.points[c] - p, ref - p)
    return total / 6


def segments_cross(p, q, r, s):
    """True iff coplanar segments pq and rs cross at a point interior to both"""
    if orient(p, q, r, s) != 0:
        return False
    normal = (q - p).cross(s - r)
    if normal.is_zero():
        return False

    def side(a, b, c):
        return _sign((b - a).cross(c - a).dot(normal))

    return side(p, q, r) * side(p, q, s) < 0 and side(r, s, p) * side(r, s, q) < 0


def segment_crosses_polygon(polygon, a, b):
    """
    True iff segment ab passes through the relative interior of a convex
    planar polygon given in cyclic order
    """
    ring = list(polygon)
    if len(ring) < 3:
        raise DegenerateInput("polygon needs at least 3 vertices")
    p0, p1, p2 = ring[0], ring[1], ring[2]
    if (p1 - p0).cross(p2 - p0).is_zero():
        raise DegenerateInput("polygon starts with collinear vertices")
    if orient(p0, p1, p2, a) * orient(p0, p1, p2, b) >= 0:
        return False
    n = len(ring)
    signs = {orient(a, b, ring[i], ring[(i + 1) % n]) for i in range(n)}
    return signs == {1} or signs == {-1}
