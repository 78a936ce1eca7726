"""Finite simple graphs with cached clique tables per dimension.

The k-simplices of a graph are its (k+1)-cliques, listed as strictly
ascending vertex tuples in lexicographic order.  The ascending tuple is the
positively oriented representative used by the calculus layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple[int, int]
Simplex = tuple[int, ...]


def normalize_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class FVector:
    """Simplex counts (v_0, v_1, ..., v_d); no zero padding past the top dimension."""

    counts: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def __len__(self) -> int:
        return len(self.counts)

    def euler_characteristic(self) -> int:
        return sum(c if k % 2 == 0 else -c for k, c in enumerate(self.counts))


class SimplicialGraph:
    """A finite simple graph viewed through its complex of complete subgraphs.

    Vertex ids are arbitrary nonnegative integers and are preserved across
    subgraph operations; mutation invalidates the simplex cache.  Instances
    are cheap to copy and safe to share read-only; mutation requires
    exclusive access.
    """

    __slots__ = ("_adj", "_cache")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()) -> None:
        self._adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        self._cache: dict[int, list[Simplex]] = {}
        for a, b in edges:
            self.add_edge(a, b)

    # -- construction and mutation -------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> "SimplicialGraph":
        g = cls()
        for a, b in edges:
            g.add_edge(a, b)
        return g

    def add_vertex(self, v: int) -> None:
        if v not in self._adj:
            self._adj[int(v)] = set()
            self._cache.clear()

    def add_edge(self, a: int, b: int) -> None:
        a, b = int(a), int(b)
        if a == b:
            raise ValueError(f"self-loop at vertex {a}")
        self._adj.setdefault(a, set())
        self._adj.setdefault(b, set())
        if b not in self._adj[a]:
            self._adj[a].add(b)
            self._adj[b].add(a)
            self._cache.clear()

    def remove_edge(self, a: int, b: int) -> None:
        if b not in self._adj.get(a, ()):
            raise KeyError(f"no edge ({a},{b})")
        self._adj[a].discard(b)
        self._adj[b].discard(a)
        self._cache.clear()

    def remove_vertex(self, v: int) -> None:
        if v not in self._adj:
            raise KeyError(f"no vertex {v}")
        for w in self._adj[v]:
            self._adj[w].discard(v)
        del self._adj[v]
        self._cache.clear()

    def copy(self) -> "SimplicialGraph":
        g = SimplicialGraph.__new__(SimplicialGraph)
        g._adj = {v: set(nb) for v, nb in self._adj.items()}
        g._cache = {}
        return g

    def fresh_vertex_id(self) -> int:
        return max(self._adj, default=-1) + 1

    # -- basic queries ---------------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def neighbors(self, x: int) -> set[int]:
        """The neighbor set of x; treat as read-only."""
        if x not in self._adj:
            raise KeyError(f"no vertex {x}")
        return self._adj[x]

    def degree(self, x: int) -> int:
        return len(self.neighbors(x))

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adj.get(a, ())

    def edges(self) -> list[Edge]:
        return [(a, b) for a in sorted(self._adj) for b in sorted(self._adj[a]) if a < b]

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialGraph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):  # mutable container
        raise TypeError("SimplicialGraph is not hashable; use key()")

    def key(self) -> tuple[frozenset[int], frozenset[Edge]]:
        """Exact identity key (vertex set, edge set) for memo tables."""
        return (frozenset(self._adj), frozenset(self.edges()))

    # -- simplices -------------------------------------------------------------------

    def simplices(self, k: int) -> list[Simplex]:
        """All (k+1)-cliques as ascending tuples, lexicographically sorted."""
        if k < 0:
            raise ValueError("dimension must be nonnegative")
        if k not in self._cache:
            self._cache[k] = self._enumerate_simplices(k)
        return self._cache[k]

    def _enumerate_simplices(self, k: int) -> list[Simplex]:
        if k == 0:
            return [(v,) for v in sorted(self._adj)]
        out: list[Simplex] = []
        for s in self.simplices(k - 1):
            common = set(self._adj[s[0]])
            for v in s[1:]:
                common &= self._adj[v]
            last = s[-1]
            out.extend(s + (w,) for w in sorted(common) if w > last)
        return out

    def top_dimension(self) -> int:
        """Dimension of the largest clique; -1 for the empty graph."""
        if not self._adj:
            return -1
        d = 0
        while self.simplices(d + 1):
            d += 1
        return d

    def f_vector(self) -> FVector:
        counts = []
        k = 0
        while True:
            n = len(self.simplices(k))
            if n == 0:
                break
            counts.append(n)
            k += 1
        return FVector(tuple(counts))

    def euler_characteristic(self) -> int:
        return self.f_vector().euler_characteristic()

    # -- derived graphs ----------------------------------------------------------------

    def induced(self, vs: Iterable[int]) -> "SimplicialGraph":
        keep = set(vs)
        missing = keep - set(self._adj)
        if missing:
            raise KeyError(f"unknown vertices {sorted(missing)}")
        g = SimplicialGraph.__new__(SimplicialGraph)
        g._adj = {v: self._adj[v] & keep for v in keep}
        g._cache = {}
        return g

    def unit_sphere(self, x: int) -> "SimplicialGraph":
        """Induced subgraph on the neighbors of x (the link of x)."""
        return self.induced(self.neighbors(x))

    def removed(self, x: int) -> "SimplicialGraph":
        return self.induced(set(self._adj) - {x})

    def connected_components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for start in sorted(self._adj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self._adj[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def is_cycle_graph(self, min_len: int = 3) -> bool:
        n = len(self._adj)
        if n < min_len:
            return False
        return all(len(nb) == 2 for nb in self._adj.values()) and self.is_connected()

    def is_path_graph(self) -> bool:
        """Connected, at most two ends, no branching; a single vertex counts."""
        n = len(self._adj)
        if n == 0:
            return False
        if n == 1:
            return True
        degs = sorted(len(nb) for nb in self._adj.values())
        return degs[-1] <= 2 and degs.count(1) == 2 and self.is_connected() and self.edge_count() == n - 1

    # -- serialization ------------------------------------------------------------------

    def to_doc(self) -> dict:
        return {"vertices": self.vertices, "edges": [list(e) for e in self.edges()]}

    def canonical_json(self) -> str:
        """Canonical text form: ascending vertices, lexicographic a<b edges."""
        return json.dumps(self.to_doc(), separators=(",", ":"))

    @classmethod
    def from_doc(cls, doc: dict) -> "SimplicialGraph":
        g = cls(doc.get("vertices", ()))
        for a, b in doc.get("edges", ()):
            g.add_edge(a, b)
        return g

    @classmethod
    def from_json(cls, text: str) -> "SimplicialGraph":
        doc = json.loads(text)
        if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
            raise ValueError("graph document must carry 'vertices' and 'edges'")
        return cls.from_doc(doc)


def dual_graph(g: SimplicialGraph) -> tuple[SimplicialGraph, list[Simplex]]:
    """Dual of the top-dimensional cells: one vertex per maximal-dimension
    simplex, edges across shared codimension-1 faces.  The returned index
    table maps dual vertex id i back to its source simplex."""
    if len(g) == 0:
        raise ValueError("dual graph of the empty graph is undefined")
    d = g.top_dimension()
    cells = g.simplices(d)
    dual = SimplicialGraph(range(len(cells)))
    if d == 0:
        return dual, cells
    by_face: dict[Simplex, list[int]] = {}
    for i, cell in enumerate(cells):
        for face in combinations(cell, d):
            by_face.setdefault(face, []).append(i)
    for members in by_face.values():
        for i, j in combinations(members, 2):
            dual.add_edge(i, j)
    return dual, cells


def glue(g1: SimplicialGraph, g2: SimplicialGraph, mapping: dict[int, int]) -> SimplicialGraph:
    """Disjoint union of g1 and g2 with g2-vertex v identified to g1-vertex
    mapping[v]; duplicate edges merge.  The mapping must be a bijection
    between the designated vertex sets; edges of the two sides are unioned."""
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("identification map must be a bijection")
    for v in mapping:
        if v not in g2:
            raise KeyError(f"map key {v} is not a vertex of the second graph")
    for v in mapping.values():
        if v not in g1:
            raise KeyError(f"map value {v} is not a vertex of the first graph")
    out = g1.copy()
    fresh = max(max(g1.vertices, default=-1), max(mapping.values(), default=-1)) + 1
    rename = dict(mapping)
    for v in g2.vertices:
        if v not in rename:
            rename[v] = fresh
            fresh += 1
            out.add_vertex(rename[v])
    for a, b in g2.edges():
        out.add_edge(rename[a], rename[b])
    return out


def subdivide_edge(g: SimplicialGraph, e: Edge) -> int:
    """Divide edge e = (a,b) with a fresh vertex joined to a, b, and every
    common neighbor of a and b; the edge itself is removed.  Returns the new
    vertex id.  This is the cut move in every dimension."""
    a, b = e
    if not g.has_edge(a, b):
        raise KeyError(f"no edge ({a},{b})")
    link = sorted(g.neighbors(a) & g.neighbors(b))
    v = g.fresh_vertex_id()
    g.remove_edge(a, b)
    g.add_vertex(v)
    for w in (a, b, *link):
        g.add_edge(v, w)
    return v


def iter_edges(g: SimplicialGraph) -> Iterator[Edge]:
    yield from g.edges()
