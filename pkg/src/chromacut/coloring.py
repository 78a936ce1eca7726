"""Minimal-coloring propagation, exact chromatic oracles, Kempe greedy
coloring, Eulerian 3-coloring, level curves, and the host-boundary pipeline.

A minimal coloring of a d-dimensional geometric graph is forced: coloring
one top simplex determines every neighbor across shared faces, so the dual
graph is the propagation medium and inconsistencies along closed dual walks
are the only failure mode.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import random

from .constructions import cone, self_cobordism, wheel
from .graphs import SimplicialGraph, dual_graph, normalize_edge
from .refine import Outcome, RefinementSession, parse_move


@dataclass
class Coloring:
    """Vertex color assignment with validity status.

    status is "proper", "improper" (witness: the offending edge), or
    "conflict" (witness: a closed walk of top simplices along which the
    forced colors disagree).
    """

    assignment: dict[int, int]
    colors_used: int
    status: str
    witness_edge: tuple[int, int] | None = None
    witness_walk: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def proper(self) -> bool:
        return self.status == "proper"

    def to_doc(self) -> dict:
        return {"colors": {str(v): c for v, c in sorted(self.assignment.items())}}


def find_improper_edge(g: SimplicialGraph, assignment) -> tuple[int, int] | None:
    for a, b in g.edges():
        if assignment.get(a) is not None and assignment.get(a) == assignment.get(b):
            return (a, b)
    return None


def _proper_coloring(g: SimplicialGraph, assignment: dict[int, int]) -> Coloring:
    bad = find_improper_edge(g, assignment)
    used = len(set(assignment.values()))
    if bad is not None:
        return Coloring(assignment, used, "improper", witness_edge=bad)
    return Coloring(assignment, used, "proper")


# -- minimal coloring by dual propagation -------------------------------------------------


def propagate_minimal(g: SimplicialGraph, d: int) -> Coloring:
    """Seed the first top simplex with colors 0..d and force the unique new
    color across every shared codimension-1 face, breadth-first over the
    dual graph.  Returns the proper (d+1)-coloring, or a conflict with a
    closed dual walk as witness."""
    if d not in (2, 3):
        raise ValueError("propagation is implemented for dimensions 2 and 3")
    cells = g.simplices(d)
    if not cells:
        raise ValueError(f"graph has no {d}-dimensional simplices")
    if g.simplices(d + 1):
        raise ValueError(f"graph is more than {d}-dimensional")
    dual, index = dual_graph(g)
    if not dual.is_connected():
        raise ValueError("dual graph is disconnected; propagation cannot reach every cell")
    assignment: dict[int, int] = {}
    for c, v in enumerate(index[0]):
        assignment[v] = c
    parent: dict[int, int | None] = {0: None}
    order = deque([0])
    tree_edges = set()
    while order:
        i = order.popleft()
        for j in sorted(dual.neighbors(i)):
            if j in parent:
                continue
            parent[j] = i
            tree_edges.add(normalize_edge(i, j))
            shared = set(index[i]) & set(index[j])
            (extra,) = set(index[j]) - shared
            forced = ({0, 1, 2, 3} if d == 3 else {0, 1, 2}) - {assignment[v] for v in shared}
            (forced_color,) = forced
            if extra in assignment:
                if assignment[extra] != forced_color:
                    return Coloring(assignment, d + 1, "conflict",
                                    witness_walk=_dual_walk(parent, index, i, j))
            else:
                assignment[extra] = forced_color
            order.append(j)
    if set(assignment) != set(g.vertices):
        raise ValueError("propagation left vertices uncolored; input is not geometric")
    # consistency across every non-tree dual edge: each cell must be rainbow
    for i, j in ((a, b) for a, b in dual.edges() if (a, b) not in tree_edges):
        for cell in (index[i], index[j]):
            if len({assignment[v] for v in cell}) != d + 1:
                return Coloring(assignment, d + 1, "conflict",
                                witness_walk=_dual_walk(parent, index, i, j))
    result = _proper_coloring(g, assignment)
    if result.status == "improper":
        # an edge outside any common cell disagreeing is still a holonomy failure
        return Coloring(assignment, d + 1, "conflict", witness_edge=result.witness_edge,
                        witness_walk=[])
    return result


def _dual_walk(parent, index, i, j) -> list[tuple[int, ...]]:
    """Closed dual walk witnessing the conflict: BFS-tree path root..i, the
    crossing edge (i,j), and the tree path j..root."""

    def path_to_root(k):
        out = []
        while k is not None:
            out.append(k)
            k = parent[k]
        return out

    walk = path_to_root(i)[::-1] + path_to_root(j)
    return [index[k] for k in walk]


# -- boundary coloring pipeline ------------------------------------------------------------


@dataclass
class BoundaryColoringResult:
    outcome: Outcome
    coloring: Coloring | None
    session: RefinementSession


def color_boundary_via_host(g: SimplicialGraph, strategy: str = "cone",
                            driver: str = "greedy", budget: int = 200,
                            schedule: dict | None = None,
                            script: Sequence[str] | None = None) -> BoundaryColoringResult:
    """Realize g as the boundary of a host, refine until every interior edge
    degree is even, minimally 4-color the host, and restrict to g.

    The session rides along in the result so failed refinements can be
    inspected or continued."""
    if strategy == "cone":
        host = cone(g)
    elif strategy == "prism":
        host = self_cobordism(g)
    else:
        raise ValueError("strategy must be cone or prism")
    session = RefinementSession(host)
    if driver == "greedy":
        outcome = session.greedy_reduce(budget)
    elif driver == "anneal":
        outcome = session.anneal(**(schedule or {}))
    elif driver == "script":
        outcome = session.apply_script([parse_move(line) for line in (script or []) if line.strip()])
    else:
        raise ValueError("driver must be greedy, anneal, or script")
    if session.odd_set():
        return BoundaryColoringResult(outcome, None, session)
    host_coloring = propagate_minimal(session.graph, 3)
    if not host_coloring.proper:
        return BoundaryColoringResult(outcome, host_coloring, session)
    restricted = {v: host_coloring.assignment[v] for v in g.vertices}
    result = _proper_coloring(g, restricted)
    return BoundaryColoringResult(outcome, result, session)


def color_cycle_via_disc(n: int) -> tuple[Coloring, RefinementSession]:
    """The 1-dimensional analogue: realize C_n as the boundary of a disc and
    even out the interior vertex degrees.  Even n needs no subdivision; odd
    n needs exactly two."""
    disc = wheel(n)
    hub = n
    session = RefinementSession(disc, boundary=frozenset(range(n)), dimension=2)
    if n % 2 == 1:
        v1 = session.edge_cut((0, hub)).created[0]
        session.edge_cut(tuple(sorted((v1, 1))))
    if session.odd_set():
        raise AssertionError("disc refinement left odd interior vertices")
    host_coloring = propagate_minimal(session.graph, 2)
    restricted = {v: host_coloring.assignment[v] for v in range(n)}
    cycle = SimplicialGraph(range(n), [(v, (v + 1) % n) for v in range(n)])
    return _proper_coloring(cycle, restricted), session


# -- Kempe greedy ---------------------------------------------------------------------------


def kempe_greedy(g: SimplicialGraph, colors: int, seed: int = 0) -> Coloring | None:
    """Degeneracy-order greedy coloring with one Kempe-chain switch per stuck
    vertex; None when the switch does not free a color (failure is a
    legitimate outcome)."""
    if colors < 1:
        raise ValueError("need at least one color")
    rng = random.Random(seed)
    work = g.copy()
    order = []
    while len(work) > 0:
        degrees = {v: work.degree(v) for v in work.vertices}
        low = min(degrees.values())
        candidates = [v for v in sorted(degrees) if degrees[v] == low]
        v = candidates[rng.randrange(len(candidates))] if len(candidates) > 1 else candidates[0]
        order.append(v)
        work.remove_vertex(v)
    assignment: dict[int, int] = {}
    for v in reversed(order):
        used = {assignment[w] for w in g.neighbors(v) if w in assignment}
        free = [c for c in range(colors) if c not in used]
        if free:
            assignment[v] = free[0]
            continue
        if not _kempe_switch(g, assignment, v, colors):
            return None
    result = _proper_coloring(g, assignment)
    return result if result.proper else None


def _kempe_switch(g: SimplicialGraph, assignment: dict[int, int], v: int, colors: int) -> bool:
    """Try color pairs lexicographically; swap the two-color component at one
    neighbor and keep the swap when it frees a color at v."""
    for i in range(colors):
        for j in range(colors):
            if i == j:
                continue
            for u in sorted(g.neighbors(v)):
                if assignment.get(u) != i:
                    continue
                component = _two_color_component(g, assignment, u, i, j)
                for w in component:
                    assignment[w] = j if assignment[w] == i else i
                used = {assignment[w] for w in g.neighbors(v) if w in assignment}
                if i not in used:
                    assignment[v] = i
                    return True
                for w in component:  # revert
                    assignment[w] = j if assignment[w] == i else i
    return False


def _two_color_component(g, assignment, start, i, j) -> set[int]:
    comp = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in comp and assignment.get(y) in (i, j):
                comp.add(y)
                stack.append(y)
    return comp


# -- exact oracles ---------------------------------------------------------------------------


def is_colorable(g: SimplicialGraph, k: int) -> bool:
    """Exact k-colorability by backtracking, seeded with a greedily found
    clique to break color symmetry."""
    if k < 0:
        raise ValueError("color count must be nonnegative")
    verts = g.vertices
    n = len(verts)
    if n == 0:
        return True
    if k == 0:
        return False
    pos = {v: i for i, v in enumerate(verts)}
    nbrs = [sorted(pos[w] for w in g.neighbors(v)) for v in verts]
    clique = _greedy_clique(g)
    if len(clique) > k:
        return False
    colors = [-1] * n
    for c, v in enumerate(clique):
        colors[pos[v]] = c
    order = sorted((i for i in range(n) if colors[i] < 0), key=lambda i: -len(nbrs[i]))

    def backtrack(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        i = order[idx]
        forbidden = {colors[j] for j in nbrs[i] if colors[j] >= 0}
        for c in range(min(used + 1, k)):
            if c not in forbidden:
                colors[i] = c
                if backtrack(idx + 1, max(used, c + 1)):
                    return True
                colors[i] = -1
        return False

    return backtrack(0, len(clique))


def find_coloring(g: SimplicialGraph, k: int) -> Coloring | None:
    """A proper k-coloring when one exists (same search as is_colorable)."""
    verts = g.vertices
    n = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    nbrs = [sorted(pos[w] for w in g.neighbors(v)) for v in verts]
    clique = _greedy_clique(g)
    if len(clique) > k or k == 0 and n:
        return None
    colors = [-1] * n
    for c, v in enumerate(clique):
        colors[pos[v]] = c
    order = sorted((i for i in range(n) if colors[i] < 0), key=lambda i: -len(nbrs[i]))

    def backtrack(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        i = order[idx]
        forbidden = {colors[j] for j in nbrs[i] if colors[j] >= 0}
        for c in range(min(used + 1, k)):
            if c not in forbidden:
                colors[i] = c
                if backtrack(idx + 1, max(used, c + 1)):
                    return True
                colors[i] = -1
        return False

    if not backtrack(0, len(clique)):
        return None
    return _proper_coloring(g, {verts[i]: colors[i] for i in range(n)})


def _greedy_clique(g: SimplicialGraph) -> list[int]:
    best: list[int] = []
    for v in g.vertices:
        clique = [v]
        for w in sorted(g.neighbors(v)):
            if all(g.has_edge(w, u) for u in clique):
                clique.append(w)
        if len(clique) > len(best):
            best = clique
    return best


def chromatic_number(g: SimplicialGraph, limit: int = 64) -> int:
    """Exact chromatic number by incremental k-colorability tests starting
    from the greedy clique lower bound."""
    if len(g) > limit:
        raise ValueError(f"graph exceeds the {limit}-vertex oracle budget")
    if len(g) == 0:
        return 0
    k = max(1, len(_greedy_clique(g)))
    while not is_colorable(g, k):
        k += 1
    return k


def chromatic_polynomial(g: SimplicialGraph) -> list[int]:
    """Integer coefficients of the chromatic polynomial, constant term first.

    Counts partitions of the vertices into j independent blocks by
    backtracking (colorings folded by color symmetry), then assembles
    sum_j a_j x(x-1)...(x-j+1) exactly."""
    n = len(g)
    if n > 24:
        raise ValueError("chromatic polynomial budget is 24 vertices")
    verts = g.vertices
    pos = {v: i for i, v in enumerate(verts)}
    nbrs = [set(pos[w] for w in g.neighbors(v)) for v in verts]
    counts = [0] * (n + 1)
    blocks: list[set[int]] = []

    def place(i: int):
        if i == n:
            counts[len(blocks)] += 1
            return
        for block in blocks:
            if not (block & nbrs[i]):
                block.add(i)
                place(i + 1)
                block.remove(i)
        blocks.append({i})
        place(i + 1)
        blocks.pop()

    place(0)
    poly = [0] * (n + 2)
    falling = [1]  # coefficients of x(x-1)...(x-j+1), built incrementally
    for j in range(1, n + 1):
        # multiply by (x - (j-1))
        nxt = [0] * (len(falling) + 1)
        for d, c in enumerate(falling):
            nxt[d + 1] += c
            nxt[d] -= (j - 1) * c
        falling = nxt
        if counts[j]:
            for d, c in enumerate(falling):
                poly[d] += counts[j] * c
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def evaluate_polynomial(coeffs: Sequence[int], x: int) -> int:
    total = 0
    for c in reversed(coeffs):
        total = total * x + c
    return total


def count_colorings_brute(g: SimplicialGraph, k: int) -> int:
    """Independent double-count oracle: plain backtracking over vertices in id
    order, no symmetry folding."""
    verts = g.vertices
    n = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    nbrs = [[pos[w] for w in g.neighbors(v) if pos[w] < i] for i, v in enumerate(verts)]
    total = 0

    def walk(i: int):
        nonlocal total
        if i == n:
            total += 1
            return
        taken = {assignment[j] for j in nbrs[i]}
        for c in range(k):
            if c not in taken:
                assignment[i] = c
                walk(i + 1)
        assignment[i] = -1

    assignment = [-1] * n
    walk(0)
    return total


# -- Eulerian coloring and level curves ---------------------------------------------------------


def is_eulerian(g: SimplicialGraph) -> bool:
    return all(g.degree(v) % 2 == 0 for v in g.vertices)


def eulerian_three_color(g: SimplicialGraph) -> Coloring:
    """3-coloring of an Eulerian 2-sphere by minimal propagation."""
    from .topology import is_s2_fast

    if not is_s2_fast(g):
        raise ValueError("graph is not a 2-sphere")
    if not is_eulerian(g):
        raise ValueError("graph is not Eulerian; 3 colors cannot suffice")
    coloring = propagate_minimal(g, 2)
    if not coloring.proper:
        raise AssertionError("propagation failed on an Eulerian sphere")
    return coloring


def level_curve(g: SimplicialGraph, coloring: Coloring, c: float) -> SimplicialGraph:
    """The graph of color-crossing edges: vertices are edges of g whose
    endpoint colors straddle c, adjacent when they share a triangle of g.
    On a closed surface every component is a cycle of length >= 4."""
    if not coloring.proper:
        raise ValueError("level curves need a proper coloring")
    values = coloring.assignment
    if any(values[v] == c for v in g.vertices):
        raise ValueError(f"threshold {c} equals a color value")
    edges = g.simplices(1)
    straddle = [i for i, (a, b) in enumerate(edges)
                if min(values[a], values[b]) < c < max(values[a], values[b])]
    chosen = set(straddle)
    curve = SimplicialGraph(straddle)
    eidx = {e: i for i, e in enumerate(edges)}
    for a, b, d in g.simplices(2):
        in_tri = [eidx[e] for e in ((a, b), (a, d), (b, d)) if eidx[e] in chosen]
        if len(in_tri) == 2:
            curve.add_edge(*in_tri)
    return curve


def variety_three_color(g: SimplicialGraph) -> Coloring:
    """Coloring of a 1-dimensional variety: singular vertices take color 0,
    the geometric rest alternates; two colors exactly when no odd cycles."""
    from .topology import is_variety, singular_set

    if not is_variety(g, 1):
        raise ValueError("graph is not a 1-dimensional variety")
    if _is_bipartite(g):
        assignment = _two_color(g)
        return _proper_coloring(g, assignment)
    singular = singular_set(g, 1)
    assignment = {v: 0 for v in singular}
    rest = g.induced(set(g.vertices) - singular)
    for comp in rest.connected_components():
        sub = rest.induced(comp)
        if sub.is_cycle_graph(min_len=3):
            cyc = _trace_cycle(sub)
            for i, v in enumerate(cyc):
                assignment[v] = 0 if (i == len(cyc) - 1 and len(cyc) % 2 == 1) else 1 + i % 2
        else:  # path between singular attachments
            path = _trace_path(sub)
            for i, v in enumerate(path):
                assignment[v] = 1 + i % 2
    return _proper_coloring(g, assignment)


def _is_bipartite(g: SimplicialGraph) -> bool:
    return _two_color(g) is not None


def _two_color(g: SimplicialGraph) -> dict[int, int] | None:
    side: dict[int, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in side:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return side


def _trace_cycle(g: SimplicialGraph) -> list[int]:
    start = g.vertices[0]
    out = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in g.neighbors(cur) if w != prev) if prev is None else \
            next(w for w in g.neighbors(cur) if w != prev)
        if nxt == start:
            return out
        out.append(nxt)
        prev, cur = cur, nxt


def _trace_path(g: SimplicialGraph) -> list[int]:
    if len(g) == 1:
        return [g.vertices[0]]
    ends = [v for v in g.vertices if g.degree(v) == 1]
    start = min(ends)
    out = [start]
    prev, cur = None, start
    while True:
        candidates = [w for w in g.neighbors(cur) if w != prev]
        if not candidates:
            return out
        nxt = candidates[0]
        out.append(nxt)
        prev, cur = cur, nxt
