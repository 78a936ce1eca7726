"""Vertex curvature, Gauss-Bonnet, Poincare-Hopf indices, and edge degrees.

The curvature of a vertex is the alternating series over the clique counts
of its unit sphere; the degree of an edge counts the tetrahedra hinging on
it, read off the link graph.  Odd interior edges form the obstruction set
driving the refinement modules.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .graphs import Edge, SimplicialGraph, normalize_edge


def vertex_curvature(g: SimplicialGraph, x: int) -> Fraction:
    """K(x) = sum_k (-1)^k V_{k-1}(x)/(k+1) with V_{-1} = 1, where V_k counts
    the k-simplices of the unit sphere of x."""
    sphere = g.unit_sphere(x)
    total = Fraction(1, 1)
    k = 1
    while True:
        count = len(sphere.simplices(k - 1))
        if count == 0:
            break
        total += Fraction((-1) ** k * count, k + 1)
        k += 1
    return total


def total_curvature(g: SimplicialGraph) -> Fraction:
    return sum((vertex_curvature(g, x) for x in g.vertices), Fraction(0))


def gauss_bonnet(g: SimplicialGraph) -> tuple[Fraction, int, bool]:
    """(curvature sum, Euler characteristic, exact equality)."""
    s = total_curvature(g)
    chi = g.euler_characteristic()
    return s, chi, s == chi


def _check_locally_injective(g: SimplicialGraph, f: Mapping[int, float] | Callable[[int], float]):
    value = f if callable(f) else f.__getitem__
    for a, b in g.edges():
        if value(a) == value(b):
            raise ValueError(f"function is not locally injective: edge ({a},{b})")
    return value


def poincare_hopf_index(g: SimplicialGraph, f, x: int) -> int:
    """i_f(x) = 1 - chi(S^-(x)) with S^-(x) the part of the unit sphere
    where f is smaller than at x.  f must separate every adjacent pair."""
    value = _check_locally_injective(g, f)
    below = {y for y in g.neighbors(x) if value(y) < value(x)}
    return 1 - g.induced(below).euler_characteristic()


def index_sum(g: SimplicialGraph, f) -> int:
    value = _check_locally_injective(g, f)
    total = 0
    for x in g.vertices:
        below = {y for y in g.neighbors(x) if value(y) < value(x)}
        total += 1 - g.induced(below).euler_characteristic()
    return total


def curvature_is_color_index_expectation(g: SimplicialGraph, colors: int, budget: int = 20_000_000) -> bool:
    """Average the Poincare-Hopf index over all proper colorings with the
    given number of colors and compare with the curvature, exactly."""
    n = len(g)
    if colors**n > budget:
        raise ValueError(f"enumeration budget exceeded: {colors}^{n} assignments")
    verts = g.vertices
    pos = {v: i for i, v in enumerate(verts)}
    nb_idx = [[pos[w] for w in g.neighbors(v)] for v in verts]
    sums = [Fraction(0)] * n
    count = 0
    assignment = [-1] * n

    def backtrack(i: int):
        nonlocal count
        if i == n:
            count += 1
            for j, v in enumerate(verts):
                below = {verts[t] for t in nb_idx[j] if assignment[t] < assignment[j]}
                sums[j] += 1 - g.induced(below).euler_characteristic()
            return
        for c in range(colors):
            if all(assignment[t] != c for t in nb_idx[i] if t < i or assignment[t] >= 0):
                assignment[i] = c
                backtrack(i + 1)
                assignment[i] = -1

    backtrack(0)
    if count == 0:
        raise ValueError("graph admits no proper coloring with the given colors")
    return all(sums[j] / count == vertex_curvature(g, verts[j]) for j, _ in enumerate(verts))


# -- edge degrees and the odd set ------------------------------------------------------


@dataclass(frozen=True)
class EdgeReport:
    edge: Edge
    kind: str  # "interior" | "boundary"
    degree: int  # tetrahedra hinging at the edge
    ricci: Fraction  # 1 - degree/6
    distance_to_boundary: int


def edge_link(g: SimplicialGraph, e: Edge) -> SimplicialGraph:
    a, b = e
    if not g.has_edge(a, b):
        raise KeyError(f"no edge ({a},{b})")
    return g.induced(g.neighbors(a) & g.neighbors(b))


def edge_kind(g: SimplicialGraph, e: Edge) -> str:
    link = edge_link(g, e)
    if link.is_cycle_graph(min_len=3):
        return "interior"
    if link.is_path_graph():
        return "boundary"
    raise ValueError(f"edge {e} has a link that is neither a cycle nor a path; host is not 3-dimensional geometric")


def edge_degree(g: SimplicialGraph, e: Edge) -> int:
    """Number of tetrahedra containing e (= edge count of the link graph)."""
    return edge_link(g, e).edge_count()


def boundary_distances(g: SimplicialGraph, boundary: Iterable[int]) -> dict[int, int]:
    """Multi-source BFS distance to the boundary vertex set; unreachable
    vertices are absent.  Boundary vertices have distance 0."""
    dist = {v: 0 for v in boundary}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def edge_report(g: SimplicialGraph, e: Edge, boundary: Iterable[int] = (),
                distances: Mapping[int, int] | None = None) -> EdgeReport:
    e = normalize_edge(*e)
    link = edge_link(g, e)
    if link.is_cycle_graph(min_len=3):
        kind = "interior"
    elif link.is_path_graph():
        kind = "boundary"
    else:
        raise ValueError(f"edge {e} has a link that is neither a cycle nor a path")
    deg = link.edge_count()
    if distances is None:
        distances = boundary_distances(g, boundary)
    d = max(distances.get(e[0], 0), distances.get(e[1], 0))
    return EdgeReport(e, kind, deg, 1 - Fraction(deg, 6), d)


def _require_3_dimensional(g: SimplicialGraph) -> None:
    if not g.simplices(3):
        raise ValueError("host has no tetrahedra; odd-edge machinery needs a 3-dimensional graph")
    if g.simplices(4):
        raise ValueError("host contains a 5-clique; not 3-dimensional")


def odd_edge_set(g: SimplicialGraph, check_dimension: bool = True) -> set[Edge]:
    """Interior edges (cyclic link) with an odd number of hinging tetrahedra."""
    if check_dimension:
        _require_3_dimensional(g)
    out = set()
    for e in g.edges():
        link = edge_link(g, e)
        if link.is_cycle_graph(min_len=3) and link.edge_count() % 2 == 1:
            out.add(e)
    return out


def phi(g: SimplicialGraph, boundary: Iterable[int], check_dimension: bool = True) -> int:
    """Sum over odd interior edges of the geodesic distance to the boundary,
    where an edge's distance is the max over its endpoints.  For a closed
    host (empty boundary) this falls back to |O| so minimization still has
    a signal."""
    odd = odd_edge_set(g, check_dimension=check_dimension)
    boundary = set(boundary)
    if not boundary:
        return len(odd)
    dist = boundary_distances(g, boundary)
    return sum(max(dist.get(a, 0), dist.get(b, 0)) for a, b in odd)
