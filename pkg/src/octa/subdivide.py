"""
Subdivide
Certified 23-octahedron subdivision of generalized bipyramids, of a single
tetrahedron and of the regular octahedron (24-cell Schlegel picture).

Every frame reduces to a DegenerateFrame: a center O and six outer points
X1 Y1 X2 Y2 X3 Y3 whose one-per-pair triangles bound the region. The engine
places an inner cross-polytope C around O, one point on each of its 12 edges
and a shrunken copy eps*C, each parameter found by halving until the exact
predicates certify it.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product, repeat
from typing import Optional

from tqdm import tqdm

from .balance import GeneralizedBipyramid, cone_triangulate, match_bipyramids, three_color
from .complex_core import (
    PAIRING,
    CrossPolytopalComplex,
    OctaCell,
    PointPool,
    boundary_of,
    is_cross_polytope,
    validate_complex,
)
from .config import default_settings
from .errors import CellCertificationFailed, DegenerateInput, SearchExhausted
from .exact_geom import (
    Point,
    centroid,
    convex_hull,
    orient,
    point_in_hull,
    segment_crosses_polygon,
    segments_cross,
    tetra_volume,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

# Edges of C as slot pairs (i, j), i < j, skipping antipodal pairs
EDGES = tuple((i, j) for i in range(6) for j in range(i + 1, 6) if j != i ^ 1)
EDGE_SLOT = {edge: 6 + k for k, edge in enumerate(EDGES)}
INNER_BASE = 18

# Accepted by the reference search from the default seeds
SCHLEGEL_LAMBDA = Fraction(1, 4)
SCHLEGEL_MU = Fraction(1, 8)


def _edge(i, j):
    return (i, j) if i < j else (j, i)


def _cell_layout():
    """(type, 6 local slots) for the 23 cells; slots 0-5 outer, 6-17 edge points, 18-23 eps*C"""
    layout = []
    for u0, u1, u2 in product(*PAIRING):
        layout.append((1, (u0, EDGE_SLOT[_edge(u1, u2)], u1, EDGE_SLOT[_edge(u0, u2)], u2, EDGE_SLOT[_edge(u0, u1)])))
    for u0, u1, u2 in product(*PAIRING):
        layout.append(
            (
                2,
                (
                    INNER_BASE + u0,
                    EDGE_SLOT[_edge(u1, u2)],
                    INNER_BASE + u1,
                    EDGE_SLOT[_edge(u0, u2)],
                    INNER_BASE + u2,
                    EDGE_SLOT[_edge(u0, u1)],
                ),
            )
        )
    for u in range(6):
        ring = tuple(EDGE_SLOT[_edge(u, k)] for k in range(6) if k // 2 != u // 2)
        layout.append((3, (u, INNER_BASE + u) + ring))
    layout.append((4, tuple(range(INNER_BASE, INNER_BASE + 6))))
    return tuple(layout)


CELL_LAYOUT = _cell_layout()


@dataclass(frozen=True)
class DegenerateFrame:
    """
    Common input of the engine

    Attributes:
        center: O
        outer: X1, Y1, X2, Y2, X3, Y3 (slots 0-5, pairs (0,1) (2,3) (4,5))
        support_volume: exact volume of the region bounded by the 8
                        one-per-pair outer triangles
        bipyramid_id: index used in error messages
    """

    center: Point
    outer: tuple
    support_volume: Fraction
    bipyramid_id: Optional[int] = None

    def boundary_slots(self):
        return {frozenset(tri) for tri in product(*PAIRING)}


def frame_of(b):
    """Reduce a GeneralizedBipyramid (or pass through a DegenerateFrame)"""
    if isinstance(b, DegenerateFrame):
        return b
    if isinstance(b, GeneralizedBipyramid):
        return DegenerateFrame(b.center, b.outer, b.volume(), b.index)
    raise TypeError(f"cannot build a frame from {type(b).__name__}")


@dataclass(frozen=True)
class FrameSeeds:
    """Starting values of the halving searches"""

    t1: Fraction = HALF
    t2: Optional[Fraction] = None
    t3: Optional[Fraction] = None
    delta2: Fraction = HALF
    delta3: Fraction = HALF
    epsilon: Fraction = HALF

    @classmethod
    def from_settings(cls, settings):
        return cls(t1=settings.t1, delta2=settings.delta, delta3=settings.delta, epsilon=settings.epsilon)

    def halved(self, inner=None):
        """Seeds for a joint retry: every searched value halved once more"""
        if inner is not None:
            t2, t3 = inner.t[1], inner.t[2]
        else:
            t2 = self.t2 if self.t2 is not None else self.t1 / 2
            t3 = self.t3 if self.t3 is not None else t2 / 2
        d2, d3 = inner.delta if inner is not None and inner.delta else (self.delta2, self.delta3)
        eps = inner.epsilon if inner is not None and inner.epsilon is not None else self.epsilon
        return replace(self, t2=t2 / 2, t3=t3 / 2, delta2=d2 / 2, delta3=d3 / 2, epsilon=eps / 2)


@dataclass(frozen=True)
class InnerFrame:
    """
    Inner cross-polytope C with its edge points and shrink factor

    ``cross`` is V1 W1 V2 W2 V3 W3 with Vi = O + ti(Xi - O), Wi = O + ti(Yi - O);
    ``edge_points`` follows EDGES order.
    """

    frame: DegenerateFrame
    t: tuple
    cross: tuple
    delta: Optional[tuple] = None
    edge_points: Optional[tuple] = None
    epsilon: Optional[Fraction] = None

    def edge_point(self, i, j):
        return self.edge_points[EDGE_SLOT[_edge(i, j)] - 6]

    def scaled(self):
        return _scaled_cross(self.frame.center, self.cross, self.epsilon)

    def local_points(self):
        """The 24 points indexed by CELL_LAYOUT slots"""
        return self.frame.outer + self.edge_points + self.scaled()


@dataclass(frozen=True)
class FrameResult:
    frame: DegenerateFrame
    inner: InnerFrame
    complex: CrossPolytopalComplex
    retries: int = 0


def _halving_search(stage, start, accept, cap, bipyramid_id=None):
    value = Fraction(start)
    for step in range(cap + 1):
        if accept(value):
            logger.debug("%s = %s accepted after %d halvings", stage, value, step)
            return value
        value /= 2
    raise SearchExhausted(stage, cap, bipyramid_id)


def _cross_points(frame, t):
    o = frame.center
    return tuple(o.lerp(frame.outer[k], t[k // 2]) for k in range(6))


def _place_edge_points(cross, delta):
    """P_e = Ui + delta_k (Uj - Ui) where Uj is the stage-k endpoint"""
    return tuple(cross[i].lerp(cross[j], delta[0] if j <= 3 else delta[1]) for i, j in EDGES)


def _scaled_cross(center, cross, epsilon):
    return tuple(center.lerp(u, epsilon) for u in cross)


def _plane_quads_ok(o, cross, edge_points):
    """Stage 2: the quadrilaterals conv(U, O, P, P') inside the plane of V1 W1 V2 W2"""
    p = dict(zip(EDGES, edge_points))
    for u in (0, 1):
        if not segments_cross(cross[u], o, p[(u, 2)], p[(u, 3)]):
            return False
    for u in (2, 3):
        if not segments_cross(cross[u], o, p[(0, u)], p[(1, u)]):
            return False
    return True


def _vertex_octahedra_ok(o, cross, edge_points):
    """Stage 3: conv(U, O, {P_e : U in e}) is an octahedron for every vertex U of C"""
    p = dict(zip(EDGES, edge_points))
    for u in range(6):
        ring = [p[_edge(u, k)] for k in range(6) if k // 2 != u // 2]
        if not is_cross_polytope([cross[u], o] + ring):
            return False
    return True


def inner_cross_polytope(b, seeds=None, settings=None):
    """
    Place the inner cross-polytope C

    t1 is fixed; t2 and t3 halve from their seeds until V2W2 crosses V1W1 and
    V3W3 crosses the quadrilateral V1 V2 W1 W2.

    Returns:
        InnerFrame with t and cross set

    Raises:
        SearchExhausted: a stage hit the halving cap
        CellCertificationFailed: C itself does not certify
    """
    frame = frame_of(b)
    settings = settings or default_settings()
    seeds = seeds or FrameSeeds.from_settings(settings)
    t1 = seeds.t1

    def stage2(t):
        cross = _cross_points(frame, (t1, t, t))
        return segments_cross(cross[0], cross[1], cross[2], cross[3])

    t2 = _halving_search(
        "t2", seeds.t2 if seeds.t2 is not None else t1 / 2, stage2, settings.cap, frame.bipyramid_id
    )

    def stage3(t):
        cross = _cross_points(frame, (t1, t2, t))
        return segment_crosses_polygon((cross[0], cross[2], cross[1], cross[3]), cross[4], cross[5])

    t3 = _halving_search(
        "t3", seeds.t3 if seeds.t3 is not None else t2 / 2, stage3, settings.cap, frame.bipyramid_id
    )
    cross = _cross_points(frame, (t1, t2, t3))
    if not is_cross_polytope(cross):
        raise CellCertificationFailed("inner cross-polytope is not certified", None, frame.bipyramid_id)
    return InnerFrame(frame, (t1, t2, t3), cross)


def edge_points(b, inner, seeds=None, settings=None):
    """
    Place one point in the interior of every edge of C

    delta2 (edges inside the plane of V1 W1 V2 W2) and then delta3 (edges to
    V3, W3) halve until the vertex figures of C around O certify.
    """
    frame = frame_of(b)
    settings = settings or default_settings()
    seeds = seeds or FrameSeeds.from_settings(settings)
    o, cross = frame.center, inner.cross

    delta2 = _halving_search(
        "delta2",
        seeds.delta2,
        lambda d: _plane_quads_ok(o, cross, _place_edge_points(cross, (d, d))),
        settings.cap,
        frame.bipyramid_id,
    )
    delta3 = _halving_search(
        "delta3",
        seeds.delta3,
        lambda d: _vertex_octahedra_ok(o, cross, _place_edge_points(cross, (delta2, d))),
        settings.cap,
        frame.bipyramid_id,
    )
    points = _place_edge_points(cross, (delta2, delta3))
    return replace(inner, delta=(delta2, delta3), edge_points=points)


def _epsilon_ok(frame, inner, eps):
    candidate = replace(inner, epsilon=eps)
    points = candidate.local_points()
    for kind, slots in CELL_LAYOUT:
        if kind == 3 and not is_cross_polytope([points[s] for s in slots]):
            return False
    hull = convex_hull(candidate.scaled())
    return not any(point_in_hull(hull, p) for p in inner.edge_points)


def choose_epsilon(b, inner, seeds=None, settings=None):
    """
    Shrink factor of the innermost octahedron

    eps halves until the six cells conv(X, eps*U, {P_e : U in e}) certify and
    every edge point lies strictly outside eps*C.
    """
    frame = frame_of(b)
    settings = settings or default_settings()
    seeds = seeds or FrameSeeds.from_settings(settings)
    eps = _halving_search(
        "epsilon", seeds.epsilon, lambda e: _epsilon_ok(frame, inner, e), settings.cap, frame.bipyramid_id
    )
    return replace(inner, epsilon=eps)


def assemble_cells(b, inner, settings=None):
    """
    Build and certify the 23 cells (8 type 1, 8 type 2, 6 type 3, 1 type 4)

    Raises:
        CellCertificationFailed: a cell, the local complex, the volume sum or
                                 the boundary does not certify
    """
    frame = frame_of(b)
    settings = settings or default_settings()
    points = inner.local_points()
    cells = tuple(OctaCell(slots, kind) for kind, slots in CELL_LAYOUT)
    c = CrossPolytopalComplex(points, cells)

    for idx, cell in enumerate(cells):
        if not is_cross_polytope(c.cell_points(cell)):
            raise CellCertificationFailed(
                f"type {cell.cell_type} cell {idx} is not a cross-polytope", cell.cell_type, frame.bipyramid_id
            )
    report = validate_complex(c, settings.bipyramid_level)
    if not report.passed:
        first = report.failures()[0]
        raise CellCertificationFailed(f"{first.name}: {first.detail}", None, frame.bipyramid_id)
    total = c.volume()
    if total != frame.support_volume:
        raise CellCertificationFailed(
            f"cell volumes sum to {total}, support has {frame.support_volume}", None, frame.bipyramid_id
        )
    if {frozenset(tri) for tri in boundary_of(c)} != frame.boundary_slots():
        raise CellCertificationFailed("boundary differs from the outer triangles", None, frame.bipyramid_id)
    return c


def subdivide_frame(b, settings=None):
    """
    Run the four stages with bounded joint retry

    Returns:
        FrameResult with the accepted parameters and the 23-cell complex
    """
    frame = frame_of(b)
    settings = settings or default_settings()
    seeds = FrameSeeds.from_settings(settings)
    last = None
    for attempt in range(settings.retry_cap + 1):
        inner = None
        try:
            inner = inner_cross_polytope(frame, seeds, settings)
            inner = edge_points(frame, inner, seeds, settings)
            inner = choose_epsilon(frame, inner, seeds, settings)
            c = assemble_cells(frame, inner, settings)
        except CellCertificationFailed as exc:
            last = exc
            logger.warning("frame %s: %s; retrying with halved parameters", frame.bipyramid_id, exc)
            seeds = seeds.halved(inner)
            continue
        logger.debug(
            "frame %s: t=%s delta=%s eps=%s after %d retries",
            frame.bipyramid_id,
            [str(x) for x in inner.t],
            [str(x) for x in inner.delta],
            inner.epsilon,
            attempt,
        )
        return FrameResult(frame, inner, c, attempt)
    raise CellCertificationFailed(
        f"no certified assembly after {settings.retry_cap} retries ({last.detail})",
        last.cell_type,
        frame.bipyramid_id,
    )


def _run_frames(frames, settings, progress):
    bar = {"total": len(frames), "desc": "bipyramids", "unit": "bp", "disable": not progress}
    if settings.num_workers > 1 and len(frames) > 1:
        with ProcessPoolExecutor(max_workers=settings.num_workers) as executor:
            return list(tqdm(executor.map(subdivide_frame, frames, repeat(settings)), **bar))
    return [subdivide_frame(frame, settings) for frame in tqdm(frames, **bar)]


def octahedralize(p, settings=None, progress=False):
    """
    Proper cross-polytopal subdivision of a balanced simplicial 3-polytope

    Args:
        p: SimplicialPolytope
        settings: SearchSettings (defaults when None)
        progress: show a tqdm bar over the bipyramids

    Returns:
        CrossPolytopalComplex with 23(f0 - 2) cells whose first f0 pool
        vertices are the vertices of p

    Raises:
        InvalidPolytope, NotBalanced, SearchExhausted, CellCertificationFailed
    """
    settings = settings or default_settings()
    p.validate()
    coloring = three_color(p)
    cone = cone_triangulate(p, coloring)
    bipyramids = match_bipyramids(cone)
    frames = [frame_of(b) for b in bipyramids]
    results = _run_frames(frames, settings, progress)
    retries = sum(r.retries for r in results)
    if retries:
        logger.info("%d joint retries across %d bipyramids", retries, len(results))
    c = CrossPolytopalComplex.merge([r.complex for r in results], PointPool(p.vertices))
    logger.info("octahedralized f0=%d into %d cells", len(p.vertices), len(c.cells))
    return c


def tetrahedron_frame(s, flag=(0, 1, 2)):
    """
    Frame of a single tetrahedron

    The flag (i0, i1, i2) names F0 = s[i0], F1 = s[i0] s[i1], F2 = s[i0] s[i1] s[i2].
    With A, B the ends of F1, C the third vertex of F2 and D the last vertex,
    the outer pairs are (D, G), (C, M), (A, B) for G the barycenter of F2 and
    M the midpoint of F1; the center is the barycenter of s.
    """
    s = tuple(s)
    if len(s) != 4:
        raise DegenerateInput(f"a tetrahedron needs 4 points, got {len(s)}")
    flag = tuple(flag)
    if len(flag) != 3 or len(set(flag)) != 3 or not all(0 <= i < 4 for i in flag):
        raise ValueError(f"flag must name three distinct vertices of the tetrahedron, got {flag}")
    if orient(*s) == 0:
        raise DegenerateInput("tetrahedron is flat")
    a, b, c = (s[i] for i in flag)
    d = s[({0, 1, 2, 3} - set(flag)).pop()]
    g = centroid((a, b, c))
    m = a.lerp(b, HALF)
    o = centroid(s)
    if orient(d, g, c, m) != 0 or orient(d, g, c, o) != 0:
        raise DegenerateInput("D, G, C, M, O are not coplanar")
    if orient(d, g, c, a) * orient(d, g, c, b) >= 0:
        raise DegenerateInput("A and B are not strictly on opposite sides of the plane DGC")
    return DegenerateFrame(o, (d, g, c, m, a, b), tetra_volume(*s))


def subdivide_tetrahedron(s, flag=(0, 1, 2), settings=None):
    """Non-proper 23-cell subdivision of one tetrahedron"""
    return subdivide_frame(tetrahedron_frame(s, flag), settings).complex


def octahedron_frame():
    """Regular octahedron conv(+-ei) centered at the origin"""
    e1, e2, e3 = Point.of(1, 0, 0), Point.of(0, 1, 0), Point.of(0, 0, 1)
    return DegenerateFrame(Point.of(0, 0, 0), (e1, -e1, e2, -e2, e3, -e3), Fraction(4, 3))


def _schlegel_inner(frame, lam, mu):
    t = 2 * lam
    cross = _cross_points(frame, (t, t, t))
    points = _place_edge_points(cross, (HALF, HALF))
    return InnerFrame(frame, (t, t, t), cross, (HALF, HALF), points, mu / t)


def schlegel_parameters(settings=None):
    """
    Search the cuboctahedron scale lambda, then the inner scale mu

    Returns:
        (lambda, mu) as exact rationals
    """
    settings = settings or default_settings()
    frame = octahedron_frame()

    def outer_ok(lam):
        inner = _schlegel_inner(frame, lam, lam)
        if not is_cross_polytope(inner.cross):
            return False
        if not _vertex_octahedra_ok(frame.center, inner.cross, inner.edge_points):
            return False
        points = inner.local_points()
        return all(is_cross_polytope([points[s] for s in slots]) for kind, slots in CELL_LAYOUT if kind == 1)

    lam = _halving_search("schlegel_lambda", settings.schlegel_lambda, outer_ok, settings.cap)

    def inner_ok(mu):
        if mu >= 2 * lam:
            return False
        try:
            assemble_cells(frame, _schlegel_inner(frame, lam, mu), settings)
        except CellCertificationFailed:
            return False
        return True

    mu = _halving_search("schlegel_mu", settings.schlegel_mu, inner_ok, settings.cap)
    logger.info("24-cell reference: lambda=%s mu=%s", lam, mu)
    return lam, mu


def schlegel_24cell_reference(settings=None):
    """
    The 23-octahedron decomposition of conv(+-ei) from the 24-cell Schlegel
    diagram: cuboctahedron lambda*conv(+-ei +-ej), inner octahedron mu*conv(+-ei)
    """
    settings = settings or default_settings()
    lam, mu = schlegel_parameters(settings)
    frame = octahedron_frame()
    return assemble_cells(frame, _schlegel_inner(frame, lam, mu), settings)
