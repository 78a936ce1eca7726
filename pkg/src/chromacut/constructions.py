"""Deterministic generators for every named graph in the workbench corpus.

Every generator is pure and byte-stable: identical calls produce identical
vertex ids, edges, and serializations.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .graphs import Edge, SimplicialGraph, glue, normalize_edge, subdivide_edge
from .topology import boundary_vertices


@dataclass(frozen=True)
class HostComplex:
    """A 3-dimensional host graph with its designated boundary surface."""

    graph: SimplicialGraph
    designated_boundary: frozenset[int]
    provenance: str


def cross_polytope(n: int) -> SimplicialGraph:
    """2n vertices, all edges except the n antipodal pairs (2i, 2i+1)."""
    if n < 2:
        raise ValueError("cross polytope needs at least 2 antipodal pairs")
    g = SimplicialGraph(range(2 * n))
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            if b != a + 1 or a % 2 == 1:
                g.add_edge(a, b)
    return g


def octahedron() -> SimplicialGraph:
    return cross_polytope(3)


def icosahedron() -> SimplicialGraph:
    """Poles 0 and 11, upper pentagon 1..5, lower pentagon 6..10."""
    g = SimplicialGraph(range(12))
    for i in range(5):
        g.add_edge(0, 1 + i)
        g.add_edge(11, 6 + i)
        g.add_edge(1 + i, 1 + (i + 1) % 5)
        g.add_edge(6 + i, 6 + (i + 1) % 5)
        g.add_edge(1 + i, 6 + i)
        g.add_edge(1 + i, 6 + (i + 4) % 5)
    return g


def wheel(n: int) -> SimplicialGraph:
    """Cycle 0..n-1 plus hub n."""
    if n < 4:
        raise ValueError("wheel rim needs length at least 4")
    g = cycle_graph(n)
    for v in range(n):
        g.add_edge(v, n)
    return g


def cycle_graph(n: int) -> SimplicialGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    g = SimplicialGraph(range(n))
    for v in range(n):
        g.add_edge(v, (v + 1) % n)
    return g


def complete_graph(n: int) -> SimplicialGraph:
    g = SimplicialGraph(range(n))
    for a in range(n):
        for b in range(a + 1, n):
            g.add_edge(a, b)
    return g


def flat_torus(m: int, n: int) -> SimplicialGraph:
    """Z_m x Z_n with edges to (x+1,y), (x,y+1), (x+1,y+1); id = x*n + y.
    Every unit sphere is C_6."""
    if m < 4 or n < 4:
        raise ValueError("flat torus needs m, n >= 4 for cyclic unit spheres")
    g = SimplicialGraph(range(m * n))
    for x in range(m):
        for y in range(n):
            v = x * n + y
            g.add_edge(v, ((x + 1) % m) * n + y)
            g.add_edge(v, x * n + (y + 1) % n)
            g.add_edge(v, ((x + 1) % m) * n + (y + 1) % n)
    return g


def moebius() -> SimplicialGraph:
    """C_7 = Z_7 plus the chords (x, x+3): 7 vertices, 14 edges, 7 triangles,
    every vertex on the boundary."""
    g = cycle_graph(7)
    for x in range(7):
        g.add_edge(x, (x + 3) % 7)
    return g


def projective_plane() -> SimplicialGraph:
    """Wheel over C_7 glued to the Moebius strip along the rim: 8 vertices,
    Euler characteristic 1, closed 2-dimensional geometric."""
    return glue(wheel(7), moebius(), {v: v for v in range(7)})


def capped_cube() -> SimplicialGraph:
    """The 2-dimensional cube with all 6 faces capped; Eulerian 2-sphere."""
    corners = {
        0: (0, 0, 0), 1: (1, 0, 0), 2: (1, 1, 0), 3: (0, 1, 0),
        4: (0, 0, 1), 5: (1, 0, 1), 6: (1, 1, 1), 7: (0, 1, 1),
    }
    g = SimplicialGraph(range(8))
    for a in range(8):
        for b in range(a + 1, 8):
            if sum(x != y for x, y in zip(corners[a], corners[b])) == 1:
                g.add_edge(a, b)
    faces = [(0, 1, 2, 3), (4, 5, 6, 7), (0, 1, 5, 4), (2, 3, 7, 6), (1, 2, 6, 5), (0, 3, 7, 4)]
    for i, face in enumerate(faces):
        cap = 8 + i
        g.add_vertex(cap)
        for v in face:
            g.add_edge(cap, v)
    return g


# -- diagonal flips and the Fisk torus ---------------------------------------------------

# Fissure script on flat_torus(4, 4), ids x*4+y: subdividing these two edges
# flips the tip parities so that only vertices 3 = (0,3) and 14 = (3,2)
# stay odd; they are diagonal neighbors.  The script is the construction.
_FISK_CUTS: tuple[Edge, ...] = ((0, 4), (9, 10))


def diagonal_flip(g: SimplicialGraph, e: Edge) -> Edge:
    """Flip the diagonal of the rhombus around edge e: remove e, insert the
    edge between the two opposite triangle tips.  Returns the new edge."""
    a, b = e
    if not g.has_edge(a, b):
        raise KeyError(f"no edge ({a},{b})")
    tips = sorted(g.neighbors(a) & g.neighbors(b))
    if len(tips) != 2:
        raise ValueError(f"edge ({a},{b}) does not bound exactly two triangles")
    c, d = tips
    if g.has_edge(c, d):
        raise ValueError(f"flip of ({a},{b}) would duplicate edge ({c},{d})")
    g.remove_edge(a, b)
    g.add_edge(c, d)
    return normalize_edge(c, d)


def fisk_torus() -> SimplicialGraph:
    """Triangulated torus with exactly two adjacent odd-degree vertices.

    Built from the flat 4x4 torus by the recorded fissure script; color
    transport along the surrounding even-degree chain cannot reconcile the
    two odd vertices, so five colors are needed.
    """
    g = flat_torus(4, 4)
    for e in _FISK_CUTS:
        subdivide_edge(g, e)
    return g


def fisk_construction() -> tuple[SimplicialGraph, tuple[Edge, ...]]:
    """The flat base torus together with the fissure script producing the
    Fisk torus; undoing the script restores the all-even-degree torus."""
    return flat_torus(4, 4), _FISK_CUTS


def projective_plane_geometric() -> SimplicialGraph:
    """A closed geometric projective plane: the Moebius strip glued to a
    two-ring disc (inner cycle 7..13 plus hub 14) along its boundary C_7.

    Unlike the plain wheel gluing, no vertex sees the whole rim, so the
    clique complex is a genuine surface: f = (15, 42, 28), chi = 1, every
    unit sphere a cycle.  Chromatic number 5."""
    g = moebius()
    for i in range(7):
        g.add_vertex(7 + i)
    g.add_vertex(14)
    for i in range(7):
        g.add_edge(7 + i, 7 + (i + 1) % 7)
        g.add_edge(7 + i, 14)
        g.add_edge(i, 7 + i)
        g.add_edge(i, 7 + (i + 1) % 7)
    return g


# -- hosts -------------------------------------------------------------------------------


def _require_closed_surface(g: SimplicialGraph) -> None:
    for x in g.vertices:
        if not g.unit_sphere(x).is_cycle_graph(min_len=4):
            raise ValueError("generator needs a closed 2-dimensional geometric graph")


def cone(g: SimplicialGraph) -> HostComplex:
    """One apex joined to every vertex; the boundary is g itself.  For a
    2-sphere the result is a 3-ball; for a torus it is contractible but not
    geometric (the apex link has Euler characteristic 0)."""
    _require_closed_surface(g)
    host = g.copy()
    apex = host.fresh_vertex_id()
    host.add_vertex(apex)
    for v in g.vertices:
        host.add_edge(apex, v)
    return HostComplex(host, frozenset(g.vertices), "cone")


def self_cobordism(g: SimplicialGraph) -> HostComplex:
    """Triangulated prism over g: boundary copies at layers 0 and 2, one
    interior copy between them, verticals, and staircase diagonals fixed by
    the global vertex order (each triangle prism splits into three
    tetrahedra).  The boundary is two disjoint copies of g."""
    _require_closed_surface(g)
    offset = max(g.vertices) + 1
    host = SimplicialGraph(v + layer * offset for layer in range(3) for v in g.vertices)
    for layer in range(3):
        for a, b in g.edges():
            host.add_edge(a + layer * offset, b + layer * offset)
    for layer in range(2):
        lo, hi = layer * offset, (layer + 1) * offset
        for v in g.vertices:
            host.add_edge(v + lo, v + hi)
        for a, b in g.edges():  # a < b by convention
            host.add_edge(a + lo, b + hi)
    boundary = frozenset(v for v in g.vertices) | frozenset(v + 2 * offset for v in g.vertices)
    return HostComplex(host, boundary, "prism")


def chi_parity_check(h: HostComplex) -> bool:
    """Euler characteristic of the designated boundary is even; a surface
    with odd Euler characteristic never bounds."""
    if not h.graph.simplices(3):
        raise ValueError("host is not 3-dimensional")
    if not h.designated_boundary:
        raise ValueError("host has no boundary")
    return h.graph.induced(h.designated_boundary).euler_characteristic() % 2 == 0


def recompute_boundary(g: SimplicialGraph) -> frozenset[int]:
    """Boundary vertices of a 3-dimensional host read off the unit spheres."""
    return frozenset(boundary_vertices(g, 3))


# -- covers ------------------------------------------------------------------------------


def nontrivial_cocycle(g: SimplicialGraph) -> set[Edge] | None:
    """A GF(2) edge labeling summing to zero on every triangle but not of the
    form h(u)+h(v); None when H^1(G, Z_2) is trivial."""
    edges = g.simplices(1)
    triangles = g.simplices(2)
    eidx = {e: i for i, e in enumerate(edges)}
    rows = []
    for a, b, c in triangles:
        row = [0] * len(edges)
        for f in ((a, b), (a, c), (b, c)):
            row[eidx[f]] = 1
        rows.append(row)
    # kernel of the triangle-edge incidence over GF(2), via column masks
    cols = []
    for j in range(len(edges)):
        mask = 0
        for i, row in enumerate(rows):
            if row[j]:
                mask |= 1 << i
        cols.append(mask)
    verts = g.vertices
    vidx = {v: i for i, v in enumerate(verts)}
    cob_cols = []
    for v in verts:
        mask = 0
        for i, (a, b) in enumerate(edges):
            if a == v or b == v:
                mask |= 1 << i
        cob_cols.append(mask)
    # search kernel basis vectors and their pairwise sums for a non-coboundary
    basis = _gf2_kernel_masks(cols, len(edges))
    candidates = list(basis) + [x ^ y for i, x in enumerate(basis) for y in basis[i + 1:]]
    for cand in candidates:
        if cand and linalg.gf2_solve(cob_cols, cand) is None:
            return {edges[i] for i in range(len(edges)) if cand >> i & 1}
    return None


def _gf2_kernel_masks(cols: list[int], ncols: int) -> list[int]:
    """Kernel of the column-matrix over GF(2), as masks over column indices."""
    basis: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, v in enumerate(cols):
        combo = 1 << j
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                break
            bv, bc = basis[lead]
            v ^= bv
            combo ^= bc
        if v:
            basis[v.bit_length() - 1] = (v, combo)
        else:
            kernel.append(combo)
    return kernel


def double_cover(g: SimplicialGraph, twist: set[Edge] | None = None) -> SimplicialGraph:
    """Two-sheeted cover determined by a GF(2) cocycle: sheets swap across
    twist edges.  With no cocycle given, a nontrivial one is computed (the
    orientation cover when H^1(G, Z_2) = Z_2)."""
    if twist is None:
        twist = nontrivial_cocycle(g)
        if twist is None:
            raise ValueError("graph has trivial GF(2) cohomology; no twisted cover")
    twist = {normalize_edge(*e) for e in twist}
    offset = max(g.vertices) + 1
    cover = SimplicialGraph(list(g.vertices) + [v + offset for v in g.vertices])
    for a, b in g.edges():
        s = 1 if (a, b) in twist else 0
        cover.add_edge(a, b + s * offset)
        cover.add_edge(a + offset, b + (1 - s) * offset)
    return cover


# -- registry ----------------------------------------------------------------------------


def build(name: str):
    """Resolve a CLI registry name to a graph or host complex.

    Plain names: octahedron, icosahedron, cross4, fisk, moebius, projective,
    capped_cube.  Parameterized: wheel:n, torus:m,n, cycle:n, cross:n.
    Hosts: cone:<name>, prism:<name>.
    """
    name = name.strip()
    if ":" in name:
        head, arg = name.split(":", 1)
        if head == "wheel":
            return wheel(int(arg))
        if head == "cycle":
            return cycle_graph(int(arg))
        if head == "cross":
            return cross_polytope(int(arg))
        if head == "torus":
            m, n = (int(p) for p in arg.split(","))
            return flat_torus(m, n)
        if head == "cone":
            base = build(arg)
            if isinstance(base, HostComplex):
                raise ValueError("cone of a host is not supported")
            return cone(base)
        if head == "prism":
            base = build(arg)
            if isinstance(base, HostComplex):
                raise ValueError("prism of a host is not supported")
            return self_cobordism(base)
        raise KeyError(f"unknown construction {name!r}")
    plain = {
        "octahedron": octahedron,
        "icosahedron": icosahedron,
        "cross4": lambda: cross_polytope(4),
        "fisk": fisk_torus,
        "moebius": moebius,
        "projective": projective_plane,
        "projective_geometric": projective_plane_geometric,
        "capped_cube": capped_cube,
    }
    if name not in plain:
        raise KeyError(f"unknown construction {name!r}")
    return plain[name]()


REGISTRY_NAMES = (
    "octahedron", "icosahedron", "cross4", "fisk", "moebius", "projective",
    "capped_cube", "wheel:n", "cycle:n", "cross:n", "torus:m,n",
    "cone:<name>", "prism:<name>",
)
