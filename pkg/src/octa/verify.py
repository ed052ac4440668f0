"""
Verify
Post-hoc checks of a cross-polytopal complex: balanced 2-skeleton, even links
of the stellar subdivision, properness, face counts and volume.

Only exact predicates and the complex data model are shared with the
constructor; nothing here trusts the construction parameters.
"""

import logging
from collections import defaultdict, deque
from itertools import combinations

from .complex_core import boundary_of, f_vector, validate_complex
from .report import CheckResult

logger = logging.getLogger(__name__)


def check_balanced_skeleton(c):
    """Propagate a 3-coloring over the triangles of the 2-skeleton"""
    triangles = sorted({tuple(sorted(tri)) for tri in c.triangle_incidence})
    edge_triangles = defaultdict(list)
    for idx, tri in enumerate(triangles):
        for e in combinations(tri, 2):
            edge_triangles[e].append(idx)

    colors = {}
    seen = set()
    for start, tri in enumerate(triangles):
        if start in seen:
            continue
        missing = [v for v in tri if v not in colors]
        free = [k for k in (1, 2, 3) if k not in {colors[v] for v in tri if v in colors}]
        if len(free) < len(missing):
            return CheckResult("balanced_skeleton", False, f"triangle {tri} cannot be colored")
        for v, k in zip(missing, free):
            colors[v] = k
        seen.add(start)
        queue = deque([start])
        while queue:
            idx = queue.popleft()
            for u, v in combinations(triangles[idx], 2):
                for other in edge_triangles[(u, v)]:
                    if other in seen:
                        continue
                    w = next(x for x in triangles[other] if x not in (u, v))
                    forced = 6 - colors[u] - colors[v]
                    if w not in colors:
                        colors[w] = forced
                    elif colors[w] != forced:
                        return CheckResult(
                            "balanced_skeleton", False, f"vertex {w} forced to {forced} but colored {colors[w]}"
                        )
                    seen.add(other)
                    queue.append(other)

    for tri in triangles:
        if len({colors[v] for v in tri}) != 3:
            return CheckResult("balanced_skeleton", False, f"triangle {tri} is not rainbow")
    return CheckResult("balanced_skeleton", True, f"{len(colors)} vertices 3-colored")


def _cycle_length(link_edges):
    """Length of the single cycle formed by the edges, None otherwise"""
    adjacency = defaultdict(list)
    for a, b in link_edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    if not adjacency or any(len(nbrs) != 2 for nbrs in adjacency.values()):
        return None
    start = next(iter(adjacency))
    prev, current, length = None, start, 0
    while True:
        a, b = adjacency[current]
        nxt = b if a == prev else a
        prev, current = current, nxt
        length += 1
        if current == start:
            break
    return length if length == len(adjacency) else None


def edge_links(c):
    """
    Links of the interior edges of the stellar subdivision at cell centers

    Vertices of the subdivision are ("v", pool index) and ("c", cell index).

    Returns:
        dict edge -> cycle length (None when the link is not a single cycle)
    """
    boundary_edges = {e for tri in boundary_of(c) for e in combinations(sorted(tri), 2)}
    links = defaultdict(list)
    for idx, cell in enumerate(c.cells):
        center = ("c", idx)
        for tri in cell.triangles():
            for v in tri:
                rest = [("v", w) for w in tri if w != v]
                links[(center, ("v", v))].append(tuple(rest))
            for u, v in combinations(sorted(tri), 2):
                if (u, v) in boundary_edges:
                    continue
                w = next(x for x in tri if x not in (u, v))
                links[(("v", u), ("v", v))].append((center, ("v", w)))
    return {edge: _cycle_length(link) for edge, link in links.items()}


def check_even_links(c):
    links = edge_links(c)
    odd = [edge for edge, length in links.items() if length is None or length % 2]
    if odd:
        return CheckResult("even_links", False, f"{len(odd)} interior edges with odd or broken links, e.g. {odd[0]}")
    lengths = sorted({length for length in links.values()})
    return CheckResult("even_links", True, f"{len(links)} interior edges, cycle lengths {lengths}")


def check_proper(c, p):
    """Boundary of c and the facets of p coincide as point triangles"""
    boundary = {frozenset(c.vertices[i] for i in tri) for tri in boundary_of(c)}
    facets = p.point_facets()
    if boundary == facets:
        return CheckResult("proper", True, f"{len(facets)} boundary triangles match the input facets")
    extra, missing = len(boundary - facets), len(facets - boundary)
    return CheckResult("proper", False, f"{extra} boundary triangles not in the input, {missing} input facets missing")


def check_counts_and_volume(c, p):
    f0, _, f2 = p.f_vector()
    f3 = f_vector(c)[3]
    problems = []
    if f3 != 23 * (f0 - 2):
        problems.append(f"f3 = {f3}, expected 23({f0} - 2) = {23 * (f0 - 2)}")
    if f2 != 2 * (f0 - 2):
        problems.append(f"input f2 = {f2}, expected {2 * (f0 - 2)}")
    if f2 % 2:
        problems.append(f"input f2 = {f2} is odd")
    total, expected = c.volume(), p.volume()
    if total != expected:
        problems.append(f"cell volumes sum to {total}, input volume {expected}")
    if problems:
        return CheckResult("counts_and_volume", False, "; ".join(problems))
    return CheckResult("counts_and_volume", True, f"f3 = {f3}, volume {total}")


def verify_complex(c, polytope=None, level="fast"):
    """
    Run the whole battery

    Args:
        c: CrossPolytopalComplex
        polytope: input SimplicialPolytope; enables properness, counts and volume
        level: "fast" or "full" complex validation

    Returns:
        VerificationReport listing every executed check
    """
    report = validate_complex(c, level)
    report.checks.append(check_balanced_skeleton(c))
    report.checks.append(check_even_links(c))
    if polytope is not None:
        report.checks.append(check_proper(c, polytope))
        report.checks.append(check_counts_and_volume(c, polytope))
    logger.info("verification (%s): %s", level, report.summary())
    return report
