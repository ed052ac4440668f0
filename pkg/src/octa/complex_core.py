"""
Complex Core
Simplicial polytopes, octahedral cells and cross-polytopal complexes
"""

import logging
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .errors import InvalidPolytope
from .exact_geom import HullFacets, Plane, centroid, convex_hull, det3, orient, volume
from .report import VerificationReport

logger = logging.getLogger(__name__)

# Local vertex slots of an octahedral cell: (0, 1), (2, 3), (4, 5) are antipodal
PAIRING = ((0, 1), (2, 3), (4, 5))
VALIDATION_LEVELS = ("fast", "full")


class SimplicialPolytope:
    """Convex simplicial 3-polytope given by vertex points and outward facets"""

    def __init__(self, vertices, facets):
        """
        Args:
            vertices: sequence of Point
            facets: sequence of vertex-index triples, outward-oriented
        """
        self.vertices = tuple(vertices)
        self.facets = tuple(tuple(int(i) for i in facet) for facet in facets)

    @classmethod
    def from_points(cls, points):
        """
        Polytope spanned by a point set

        Raises:
            DegenerateInput: points are coplanar
            InvalidPolytope: hull is not simplicial or some point is not a vertex
        """
        hull = convex_hull(points)
        problems = []
        if not hull.simplicial:
            problems.append("convex hull has a non-triangular face")
        used = set(hull.vertex_indices)
        problems.extend(f"point {i} is not a hull vertex" for i in range(len(hull.points)) if i not in used)
        if problems:
            raise InvalidPolytope(problems)
        return cls(hull.points, hull.facets)

    def __repr__(self):
        f0, f1, f2 = self.f_vector()
        return f"SimplicialPolytope(f0={f0}, f1={f1}, f2={f2})"

    def edges(self):
        return sorted({tuple(sorted(e)) for facet in self.facets for e in combinations(facet, 2)})

    def f_vector(self):
        return len(self.vertices), len(self.edges()), len(self.facets)

    def facet_set(self):
        return {frozenset(facet) for facet in self.facets}

    def point_facets(self):
        """Facets as sets of points, independent of vertex numbering"""
        return {frozenset(self.vertices[i] for i in facet) for facet in self.facets}

    def problems(self):
        """List of violated polytope invariants (empty when valid)"""
        n = len(self.vertices)
        if n < 4:
            return [f"need at least 4 vertices, got {n}"]
        for idx, facet in enumerate(self.facets):
            if len(facet) != 3 or len(set(facet)) != 3:
                return [f"facet {idx} is not a triangle of distinct vertices"]
            if not all(0 <= i < n for i in facet):
                return [f"facet {idx} references a missing vertex"]

        problems = []
        edge_facets = defaultdict(list)
        for idx, facet in enumerate(self.facets):
            for e in combinations(sorted(facet), 2):
                edge_facets[e].append(idx)
        bad_edges = [e for e, owners in edge_facets.items() if len(owners) != 2]
        if bad_edges:
            problems.append(f"{len(bad_edges)} edges not in exactly two facets, e.g. {bad_edges[0]}")

        degree = Counter(i for facet in self.facets for i in facet)
        low = [v for v in range(n) if degree[v] < 3]
        if low:
            problems.append(f"vertices in fewer than three facets: {low[:5]}")

        seen = {0}
        queue = deque([0])
        while queue:
            idx = queue.popleft()
            for e in combinations(sorted(self.facets[idx]), 2):
                for other in edge_facets[e]:
                    if other not in seen:
                        seen.add(other)
                        queue.append(other)
        if len(seen) != len(self.facets):
            problems.append("facet graph is not connected")

        f0, f1, f2 = n, len(edge_facets), len(self.facets)
        if f0 - f1 + f2 != 2:
            problems.append(f"Euler relation fails: {f0} - {f1} + {f2} != 2")
        if f2 != 2 * (f0 - 2):
            problems.append(f"f2 = {f2} but 2(f0 - 2) = {2 * (f0 - 2)}")

        for idx, (a, b, c) in enumerate(self.facets):
            pa, pb, pc = self.vertices[a], self.vertices[b], self.vertices[c]
            for x, point in enumerate(self.vertices):
                if x in (a, b, c):
                    continue
                if orient(pa, pb, pc, point) >= 0:
                    problems.append(f"facet {idx} is not strictly supporting with outward orientation")
                    break
        return problems

    def validate(self):
        """Raise InvalidPolytope unless every invariant holds"""
        problems = self.problems()
        if problems:
            raise InvalidPolytope(problems)
        return self

    def oriented(self):
        """Copy with every facet turned to face away from the vertex centroid"""
        ref = centroid(self.vertices)
        facets = []
        for a, b, c in self.facets:
            if orient(self.vertices[a], self.vertices[b], self.vertices[c], ref) > 0:
                facets.append((a, c, b))
            else:
                facets.append((a, b, c))
        return SimplicialPolytope(self.vertices, facets)

    def volume(self):
        return volume(HullFacets(self.vertices, self.facets))


@dataclass(frozen=True)
class OctaCell:
    """Six pool indices in pairing order v0 v1 | v2 v3 | v4 v5, plus a type tag"""

    vertices: tuple
    cell_type: Optional[int] = None

    def __post_init__(self):
        if len(self.vertices) != 6:
            raise ValueError(f"an octahedral cell needs 6 vertices, got {len(self.vertices)}")
        if len(set(self.vertices)) != 6:
            raise ValueError(f"repeated vertex in octahedral cell {self.vertices}")

    @property
    def pairs(self):
        return tuple((self.vertices[i], self.vertices[j]) for i, j in PAIRING)

    def antipode(self, vertex):
        slot = self.vertices.index(vertex)
        return self.vertices[slot ^ 1]

    def triangles(self):
        """The 8 one-per-pair triangles"""
        return tuple(tuple(self.vertices[i] for i in slots) for slots in product(*PAIRING))

    def edges(self):
        v = self.vertices
        return tuple((v[i], v[j]) for i, j in combinations(range(6), 2) if j != i ^ 1)


class PointPool:
    """Vertex pool keyed by exact point equality; indices are stable"""

    def __init__(self, points=()):
        self._points = []
        self._index = {}
        self.extend(points)

    def add(self, point):
        idx = self._index.get(point)
        if idx is None:
            idx = len(self._points)
            self._index[point] = idx
            self._points.append(point)
        return idx

    def extend(self, points):
        return [self.add(p) for p in points]

    def index(self, point):
        return self._index[point]

    def __contains__(self, point):
        return point in self._index

    def __len__(self):
        return len(self._points)

    def __getitem__(self, idx):
        return self._points[idx]

    @property
    def points(self):
        return tuple(self._points)


def is_cross_polytope(points, pairs=PAIRING):
    """
    Certify that six points with a pairing span a combinatorial octahedron

    Every one-per-pair triangle must have the three remaining points strictly
    on one side of its plane. Degenerate input returns False.
    """
    points = list(points)
    if len(points) != 6:
        return False
    flat = [i for pair in pairs for i in pair]
    if len(pairs) != 3 or sorted(flat) != list(range(6)):
        return False
    for tri in product(*pairs):
        a, b, c = (points[i] for i in tri)
        signs = {orient(a, b, c, points[i]) for i in range(6) if i not in tri}
        if signs != {1} and signs != {-1}:
            return False
    return True


def octahedron_volume(points, pairs=PAIRING):
    """Volume of a certified cell: cone over its 8 facets from the vertex centroid"""
    ref = centroid(points)
    total = Fraction(0)
    for a, b, c in product(*pairs):
        p = points[a]
        total += abs(det3(points[b] - p, points[c] - p, ref - p))
    return total / 6


@dataclass(frozen=True)
class CrossPolytopalComplex:
    """Shared vertex pool plus octahedral cells referencing it"""

    vertices: tuple
    cells: tuple

    @classmethod
    def build(cls, vertices, cells):
        return cls(tuple(vertices), tuple(cells))

    @classmethod
    def merge(cls, parts, pool=None):
        """
        Union of complexes over one vertex pool

        Args:
            parts: complexes to merge, in order
            pool: optional PointPool pre-seeded with vertices that must keep
                  their indices (e.g. the input polytope's vertices)
        """
        pool = PointPool() if pool is None else pool
        cells = []
        for part in parts:
            remap = pool.extend(part.vertices)
            for cell in part.cells:
                cells.append(OctaCell(tuple(remap[i] for i in cell.vertices), cell.cell_type))
        return cls(pool.points, tuple(cells))

    def __len__(self):
        return len(self.cells)

    def cell_points(self, cell):
        if isinstance(cell, int):
            cell = self.cells[cell]
        return tuple(self.vertices[i] for i in cell.vertices)

    def cell_volume(self, cell):
        return octahedron_volume(self.cell_points(cell))

    def volume(self):
        return sum((self.cell_volume(cell) for cell in self.cells), Fraction(0))

    def type_census(self):
        """Cell count per type tag, e.g. {1: 8, 2: 8, 3: 6, 4: 1}"""
        counts = Counter(cell.cell_type for cell in self.cells)
        return dict(sorted(counts.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)))

    @cached_property
    def triangle_incidence(self):
        """frozenset of 3 pool indices -> list of cell indices containing it"""
        incidence = defaultdict(list)
        for idx, cell in enumerate(self.cells):
            for tri in cell.triangles():
                incidence[frozenset(tri)].append(idx)
        return dict(incidence)

    @cached_property
    def boundary(self):
        return boundary_of(self)

    def f_vector(self):
        return f_vector(self)


def f_vector(c):
    """(f0, f1, f2, f3) after identification of shared faces"""
    vertices = {i for cell in c.cells for i in cell.vertices}
    edges = {frozenset(e) for cell in c.cells for e in cell.edges()}
    return len(vertices), len(edges), len(c.triangle_incidence), len(c.cells)


def boundary_of(c):
    """
    Triangles lying in exactly one cell

    Returns:
        tuple of index triples, each oriented outward from its cell
    """
    triangles = []
    for tri, owners in c.triangle_incidence.items():
        if len(owners) != 1:
            continue
        cell = c.cells[owners[0]]
        a, b, x = sorted(tri)
        inner = next(v for v in cell.vertices if v not in tri)
        pa, pb, px = c.vertices[a], c.vertices[b], c.vertices[x]
        if orient(pa, pb, px, c.vertices[inner]) > 0:
            b, x = x, b
        triangles.append((a, b, x))
    return tuple(sorted(triangles, key=sorted))


def boundary_edge_counts(triangles):
    counts = Counter()
    for tri in triangles:
        for e in combinations(sorted(tri), 2):
            counts[e] += 1
    return counts


class _CellShape:
    """Cached geometry of one cell for pairwise intersection tests"""

    def __init__(self, c, idx):
        cell = c.cells[idx]
        self.index = idx
        self.ids = tuple(cell.vertices)
        self.points = c.cell_points(cell)
        self.antipode = {cell.vertices[s]: cell.vertices[s ^ 1] for s in range(6)}
        ref = centroid(self.points)
        self.planes = []
        for a, b, x in product(*PAIRING):
            plane = Plane.through(self.points[a], self.points[b], self.points[x])
            if plane.side(ref) > 0:
                plane = Plane(-plane.normal, -plane.offset)
            self.planes.append(plane)
        self.edges = [(self.points[i], self.points[j]) for i, j in combinations(range(6), 2) if j != i ^ 1]
        self.lo = tuple(min(p.key()[k] for p in self.points) for k in range(3))
        self.hi = tuple(max(p.key()[k] for p in self.points) for k in range(3))

    def contains(self, point):
        return all(plane.value(point) <= 0 for plane in self.planes)


def _separated(a, b, shared):
    """A facet plane of a weakly separates b, touching only at shared vertices"""
    for plane in a.planes:
        ok = True
        for vid, point in zip(b.ids, b.points):
            v = plane.value(point)
            if v < 0 or (v == 0 and vid not in shared):
                ok = False
                break
        if ok:
            return True
    return False


def _intersection_candidates(a, b):
    """Points that include every vertex of conv(a) intersected with conv(b)"""
    for p in a.points:
        if b.contains(p):
            yield p
    for p in b.points:
        if a.contains(p):
            yield p
    for first, second in ((a, b), (b, a)):
        for p, q in first.edges:
            for plane in second.planes:
                vp, vq = plane.value(p), plane.value(q)
                if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
                    x = p.lerp(q, vp / (vp - vq))
                    if first.contains(x) and second.contains(x):
                        yield x


def _in_hull_of(face, x):
    """Membership of x in the hull of 0..3 points (a common face)"""
    if not face:
        return False
    if len(face) == 1:
        return x == face[0]
    if len(face) == 2:
        a, b = face
        d = b - a
        if not (x - a).cross(d).is_zero():
            return False
        t = (x - a).dot(d)
        return 0 <= t <= d.dot(d)
    a, b, c = face
    if orient(a, b, c, x) != 0:
        return False
    normal = (b - a).cross(c - a)
    for p, q in ((a, b), (b, c), (c, a)):
        if (q - p).cross(x - p).dot(normal) < 0:
            return False
    return True


def _check_pair(c, a, b):
    shared = set(a.ids) & set(b.ids)
    if len(shared) > 3:
        return f"cells {a.index} and {b.index} share {len(shared)} vertices"
    for u, v in combinations(shared, 2):
        if a.antipode[u] == v or b.antipode[u] == v:
            return f"cells {a.index} and {b.index} share an antipodal pair"
    if _separated(a, b, shared) or _separated(b, a, shared):
        return None
    face = [c.vertices[i] for i in sorted(shared)]
    for x in _intersection_candidates(a, b):
        if not _in_hull_of(face, x):
            return f"cells {a.index} and {b.index} meet outside a common face"
    return None


def _pairwise_violations(c, skip=()):
    """Sweep over x-extents; cells in skip are already reported and left out"""
    shapes = (_CellShape(c, i) for i in range(len(c.cells)) if i not in skip)
    shapes = sorted(shapes, key=lambda s: s.lo[0])
    violations = []
    active = []
    for shape in shapes:
        active = [s for s in active if s.hi[0] >= shape.lo[0]]
        for other in active:
            if any(other.hi[k] < shape.lo[k] or shape.hi[k] < other.lo[k] for k in (1, 2)):
                continue
            first, second = sorted((other, shape), key=lambda s: s.index)
            problem = _check_pair(c, first, second)
            if problem:
                violations.append(problem)
        active.append(shape)
    return violations


def validate_complex(c, level="fast"):
    """
    Check the complex axioms

    Args:
        c: CrossPolytopalComplex
        level: "fast" (face-incidence checks) or "full" (adds exact pairwise
               intersection tests over all cell pairs with overlapping boxes)

    Returns:
        VerificationReport; violations never raise
    """
    if level not in VALIDATION_LEVELS:
        raise ValueError(f"unknown validation level: {level}")
    report = VerificationReport()

    uncertified = [i for i in range(len(c.cells)) if not is_cross_polytope(c.cell_points(i))]
    report.add(
        "is_cross_polytope",
        not uncertified,
        f"{len(c.cells)} cells certified" if not uncertified
        else f"{len(uncertified)} cells fail is_cross_polytope, first: cell {uncertified[0]}",
    )

    incidence = c.triangle_incidence
    crowded = [tri for tri, owners in incidence.items() if len(owners) > 2]
    report.add(
        "triangle_incidence",
        not crowded,
        "every triangle in at most two cells" if not crowded
        else f"{len(crowded)} triangles in more than two cells, e.g. {sorted(crowded[0])}",
    )

    same_side = []
    for tri, owners in incidence.items():
        if len(owners) != 2:
            continue
        a, b, x = (c.vertices[i] for i in sorted(tri))
        sides = []
        for owner in owners:
            apex = next(v for v in c.cells[owner].vertices if v not in tri)
            sides.append(orient(a, b, x, c.vertices[apex]))
        if sides[0] * sides[1] >= 0:
            same_side.append(tuple(owners))
    report.add(
        "shared_face_geometry",
        not same_side,
        "cells sharing a triangle lie on opposite sides" if not same_side
        else f"{len(same_side)} shared triangles with cells on one side, e.g. cells {same_side[0]}",
    )

    boundary = boundary_of(c)
    open_edges = [e for e, k in boundary_edge_counts(boundary).items() if k != 2]
    report.add(
        "boundary_closed",
        not open_edges,
        f"{len(boundary)} boundary triangles" if not open_edges
        else f"{len(open_edges)} boundary edges not in exactly two boundary triangles",
    )

    interior = sum(1 for owners in incidence.values() if len(owners) == 2)
    lhs, rhs = 2 * interior + len(boundary), 8 * len(c.cells)
    report.add("incidence_identity", lhs == rhs, f"2*{interior} + {len(boundary)} vs 8*{len(c.cells)}")

    if level == "full":
        violations = _pairwise_violations(c, skip=set(uncertified))
        report.add(
            "pairwise_intersection",
            not violations,
            "all cell pairs meet in common faces" if not violations
            else f"{len(violations)} violations, first: {violations[0]}",
        )
    logger.debug("validate_complex(%s): %s", level, report.summary())
    return report
