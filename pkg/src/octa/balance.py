"""
Balance
3-coloring, cone triangulation and bipyramid matching for balanced polytopes
"""

import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DegenerateInput, MatchingFailure, NotBalanced
from .exact_geom import Point, centroid, orient, tetra_volume

logger = logging.getLogger(__name__)

APEX_COLOR = 4


@dataclass(frozen=True)
class Coloring:
    """colors[v] in {1, 2, 3} for every polytope vertex v"""

    colors: tuple

    def __getitem__(self, vertex):
        return self.colors[vertex]

    def __len__(self):
        return len(self.colors)

    def classes(self):
        groups = defaultdict(list)
        for v, color in enumerate(self.colors):
            groups[color].append(v)
        return {color: tuple(vs) for color, vs in sorted(groups.items())}

    def relabeled(self, mapping):
        return Coloring(tuple(mapping[color] for color in self.colors))

    def is_proper(self, edges):
        return all(self.colors[u] != self.colors[v] for u, v in edges)


def three_color(p, seed_colors=(1, 2, 3)):
    """
    Forced 3-coloring by propagation across the dual graph

    Facet 0 gets seed_colors on its sorted vertices; every neighbouring facet
    then determines the color of its third vertex.

    Args:
        p: valid SimplicialPolytope
        seed_colors: permutation of (1, 2, 3) for the seed facet

    Returns:
        Coloring

    Raises:
        NotBalanced: propagation reaches a contradiction
    """
    if sorted(seed_colors) != [1, 2, 3]:
        raise ValueError(f"seed_colors must be a permutation of (1, 2, 3), got {seed_colors}")

    edge_facets = defaultdict(list)
    for idx, facet in enumerate(p.facets):
        for e in combinations(sorted(facet), 2):
            edge_facets[e].append(idx)

    colors = [0] * len(p.vertices)
    for v, color in zip(sorted(p.facets[0]), seed_colors):
        colors[v] = color

    seen = {0}
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        for u, v in combinations(sorted(p.facets[idx]), 2):
            for other in edge_facets[(u, v)]:
                if other in seen:
                    continue
                w = next(x for x in p.facets[other] if x not in (u, v))
                forced = 6 - colors[u] - colors[v]
                if colors[w] == 0:
                    colors[w] = forced
                elif colors[w] != forced:
                    raise NotBalanced(
                        f"vertex {w} needs color {forced} from facet {other} but already has {colors[w]}"
                    )
                seen.add(other)
                queue.append(other)

    missing = [v for v, color in enumerate(colors) if color == 0]
    if missing:
        raise NotBalanced(f"vertices {missing[:5]} were never reached by propagation")
    logger.debug("3-colored %d vertices", len(colors))
    return Coloring(tuple(colors))


@dataclass(frozen=True)
class ConeTriangulation:
    """Cones from an interior apex over every facet; apex has color 4"""

    polytope: object
    coloring: Coloring
    apex: Point
    tetrahedra: tuple

    @property
    def apex_index(self):
        return len(self.polytope.vertices)

    @property
    def points(self):
        return self.polytope.vertices + (self.apex,)

    @property
    def colors(self):
        return self.coloring.colors + (APEX_COLOR,)


def cone_triangulate(p, coloring):
    """
    Cone triangulation from the vertex centroid

    Returns:
        ConeTriangulation with one tetrahedron (a, b, c, apex) per facet
    """
    edges = p.edges()
    if not coloring.is_proper(edges):
        raise NotBalanced("coloring is not proper on the polytope graph")
    apex = centroid(p.vertices)
    for a, b, c in p.facets:
        if orient(p.vertices[a], p.vertices[b], p.vertices[c], apex) >= 0:
            raise DegenerateInput("vertex centroid is not strictly interior")
    apex_index = len(p.vertices)
    tetrahedra = tuple((a, b, c, apex_index) for a, b, c in p.facets)
    return ConeTriangulation(p, coloring, apex, tetrahedra)


@dataclass(frozen=True)
class GeneralizedBipyramid:
    """
    Two cone tetrahedra glued along their {2, 3, 4}-colored triangle

    ``vertex_ids`` are (apex, color-2, color-3, tip of first facet, tip of
    second facet) in the cone's numbering; ``points`` are the matching Points.
    Flag: F0 = apex, F1 = apex and the color-3 vertex.
    """

    index: int
    facets: tuple
    vertex_ids: tuple
    points: tuple

    @property
    def apex(self):
        return self.points[0]

    @property
    def equator(self):
        return self.points[:3]

    @property
    def f0(self):
        return self.points[0]

    @property
    def f1(self):
        return (self.points[0], self.points[2])

    @property
    def s1(self):
        return self.points[:3] + (self.points[3],)

    @property
    def s2(self):
        return self.points[:3] + (self.points[4],)

    @property
    def center(self):
        return centroid(self.equator)

    @property
    def outer(self):
        """X1, Y1, X2, Y2, X3, Y3"""
        apex, v2, v3, tip1, tip2 = self.points
        return (v2, apex.lerp(v3, Fraction(1, 2)), v3, apex, tip1, tip2)

    def volume(self):
        return tetra_volume(*self.s1) + tetra_volume(*self.s2)


def match_bipyramids(t):
    """
    Pair the cone tetrahedra across their {2, 3, 4}-colored triangles

    Returns:
        list of GeneralizedBipyramid ordered by their lower facet index

    Raises:
        MatchingFailure: some facet is not rainbow or some equatorial
                         triangle is not shared by exactly two tetrahedra
    """
    colors = t.colors
    groups = defaultdict(list)
    tips = {}
    for idx, (a, b, c, _) in enumerate(t.tetrahedra):
        by_color = {colors[v]: v for v in (a, b, c)}
        if sorted(by_color) != [1, 2, 3]:
            raise MatchingFailure(f"facet {idx} is not colored with 1, 2, 3")
        groups[(by_color[2], by_color[3])].append(idx)
        tips[idx] = by_color[1]

    bad = {key: owners for key, owners in groups.items() if len(owners) != 2}
    if bad:
        key, owners = next(iter(bad.items()))
        raise MatchingFailure(f"equatorial triangle on edge {key} lies in {len(owners)} tetrahedra")

    points = t.points
    apex_id = t.apex_index
    bipyramids = []
    for index, ((v2, v3), owners) in enumerate(sorted(groups.items(), key=lambda kv: min(kv[1]))):
        f, g = sorted(owners)
        ids = (apex_id, v2, v3, tips[f], tips[g])
        pts = tuple(points[i] for i in ids)
        if orient(pts[0], pts[1], pts[2], pts[3]) * orient(pts[0], pts[1], pts[2], pts[4]) >= 0:
            raise MatchingFailure(f"tips of bipyramid {index} are not on opposite sides of the equator")
        bipyramids.append(GeneralizedBipyramid(index, (f, g), ids, pts))

    if 2 * len(bipyramids) != len(t.tetrahedra):
        raise MatchingFailure("matching is not perfect")
    logger.info("matched %d tetrahedra into %d bipyramids", len(t.tetrahedra), len(bipyramids))
    return bipyramids
