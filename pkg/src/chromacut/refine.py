"""Refinement sessions: cut moves and the parity objective drivers.

A session owns a host graph with a designated boundary that no move may
change.  Cuts subdivide interior edges; the objective is the distance-
weighted count of odd codimension-2 simplices (odd interior edges of a
3-dimensional host, odd interior vertices of a 2-dimensional one).

The cross-polytope fill moves are realized as parity-neutral double cuts:
subdividing an interior edge and then one of its halves flips the link
parities twice, so the odd set is untouched while the interior is refined.
A literal one-shot gluing of a cross polytope into a closed cell cannot
keep a clique complex geometric (the old cell's clique survives and pinches
the links), so the double cut is the move that delivers the advertised
contract: unchanged parity vector, even new edges, fixed boundary.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum

from .constructions import HostComplex
from .curvature import boundary_distances, edge_link, odd_edge_set
from .graphs import Edge, SimplicialGraph, normalize_edge, subdivide_edge


class Outcome(str, Enum):
    SOLVED = "Solved"
    STALLED = "Stalled"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class MoveRecord:
    kind: str  # "cut" | "t16" | "oct"
    target: tuple[int, ...]
    created: tuple[int, ...]

    def format(self) -> str:
        return " ".join([self.kind, *map(str, self.target)])


def parse_move(line: str) -> tuple[str, tuple[int, ...]]:
    parts = line.split()
    if not parts:
        raise ValueError("empty move line")
    kind, args = parts[0], tuple(int(p) for p in parts[1:])
    expected = {"cut": 2, "t16": 4, "oct": 3}
    if kind not in expected:
        raise ValueError(f"unknown move kind {kind!r}")
    if len(args) != expected[kind]:
        raise ValueError(f"move {kind} needs {expected[kind]} vertex ids")
    return kind, args


@dataclass
class Objective:
    phi: int
    odd: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.phi, self.odd)


class RefinementSession:
    """Mutable host plus an undoable move log with boundary preservation."""

    def __init__(self, host: HostComplex | SimplicialGraph,
                 boundary: frozenset[int] | None = None,
                 dimension: int | None = None) -> None:
        if isinstance(host, HostComplex):
            graph, boundary = host.graph, host.designated_boundary
        else:
            graph = host
            if boundary is None:
                raise ValueError("a raw graph host needs an explicit boundary set")
        self.graph = graph.copy()
        self.boundary = frozenset(boundary)
        if dimension is None:
            dimension = 3 if graph.simplices(3) else 2
        if dimension not in (2, 3):
            raise ValueError("sessions refine 2- or 3-dimensional hosts")
        self.dimension = dimension
        self.log: list[MoveRecord] = []
        self.snapshots: list[str] = []
        self.objective_trace: list[tuple[int, int, int]] = []
        self._trace_step = 0
        self._odd: set | None = None
        self._dist: dict[int, int] | None = None
        self._record_trace()

    # -- objective -------------------------------------------------------------------

    def _invalidate(self) -> None:
        self._odd = None
        self._dist = None

    def odd_set(self) -> set:
        """Odd interior edges (3d) or odd interior vertex ids (2d)."""
        if self._odd is None:
            if self.dimension == 3:
                self._odd = odd_edge_set(self.graph, check_dimension=False)
            else:
                self._odd = {v for v in self.graph.vertices
                             if v not in self.boundary and self.graph.degree(v) % 2 == 1}
        return self._odd

    def _distances(self) -> dict[int, int]:
        if self._dist is None:
            self._dist = boundary_distances(self.graph, self.boundary)
        return self._dist

    def _weight(self, item) -> int:
        """Contribution of one odd item to phi: its boundary distance, or 1
        per item when the host is closed (phi falls back to |O|)."""
        if not self.boundary:
            return 1
        dist = self._distances()
        if self.dimension == 3:
            a, b = item
            return max(dist.get(a, 0), dist.get(b, 0))
        return dist.get(item, 0)

    def objective(self) -> Objective:
        odd = self.odd_set()
        return Objective(sum(self._weight(x) for x in odd), len(odd))

    def _record_trace(self) -> None:
        obj = self.objective()
        self.objective_trace.append((self._trace_step, obj.phi, obj.odd))
        self._trace_step += 1

    def trace_csv(self) -> str:
        lines = ["step,phi,oddcount"]
        lines += [f"{s},{p},{o}" for s, p, o in self.objective_trace]
        return "\n".join(lines) + "\n"

    # -- cut legality -------------------------------------------------------------------

    def is_interior_edge(self, e: Edge) -> bool:
        a, b = e
        if not self.graph.has_edge(a, b):
            return False
        link = edge_link(self.graph, e)
        if self.dimension == 3:
            return link.is_cycle_graph(min_len=3)
        return len(link) == 2 and link.edge_count() == 0

    def legal_cuts(self) -> list[Edge]:
        return [e for e in self.graph.edges() if self.is_interior_edge(e)]

    # -- moves ----------------------------------------------------------------------------

    def _push_snapshot(self) -> None:
        self.snapshots.append(self.graph.canonical_json())

    def edge_cut(self, e: Edge) -> MoveRecord:
        """Subdivide interior edge e; the new vertex joins both ends and the
        whole link, flipping the parity of every interior edge of that link."""
        e = normalize_edge(*e)
        if not self.graph.has_edge(*e):
            raise KeyError(f"no edge {e}")
        if not self.is_interior_edge(e):
            raise ValueError(f"edge {e} is not interior; boundary edges cannot be cut")
        self._push_snapshot()
        v = subdivide_edge(self.graph, e)
        self._invalidate()
        record = MoveRecord("cut", e, (v,))
        self.log.append(record)
        self._record_trace()
        return record

    def _double_cut(self, e: Edge, kind: str, target: tuple[int, ...]) -> MoveRecord:
        a, b = normalize_edge(*e)
        self._push_snapshot()
        v = subdivide_edge(self.graph, (a, b))
        w = subdivide_edge(self.graph, (a, v))
        self._invalidate()
        record = MoveRecord(kind, target, (v, w))
        self.log.append(record)
        self._record_trace()
        return record

    def triangle_to_octahedron(self, t: tuple[int, int, int]) -> MoveRecord:
        """Refine inside a triangle of a 2-dimensional host without changing
        any interior vertex parity: double cut on its first interior edge."""
        if self.dimension != 2:
            raise ValueError("octahedron fill applies to 2-dimensional hosts")
        t = tuple(sorted(t))
        if t not in set(self.graph.simplices(2)):
            raise KeyError(f"no triangle {t}")
        for e in _simplex_edges(t):
            if self.is_interior_edge(e):
                return self._double_cut(e, "oct", t)
        raise ValueError(f"triangle {t} has no interior edge to refine")

    def tetra_to_16cell(self, t: tuple[int, int, int, int]) -> MoveRecord:
        """Refine inside a tetrahedron without changing any interior edge
        parity: double cut on its first even-degree interior edge.  New
        edges come out even, so the odd set is exactly preserved."""
        if self.dimension != 3:
            raise ValueError("cross-polytope fill applies to 3-dimensional hosts")
        t = tuple(sorted(t))
        if t not in set(self.graph.simplices(3)):
            raise KeyError(f"no tetrahedron {t}")
        for e in _simplex_edges(t):
            if self.is_interior_edge(e) and edge_link(self.graph, e).edge_count() % 2 == 0:
                return self._double_cut(e, "t16", t)
        raise ValueError(f"tetrahedron {t} has no even interior edge; the fill would touch the odd set")

    def undo(self) -> None:
        if not self.snapshots:
            raise ValueError("nothing to undo")
        self.graph = SimplicialGraph.from_json(self.snapshots.pop())
        self.log.pop()
        self._invalidate()
        self._record_trace()

    def apply_script(self, moves) -> Outcome:
        """Apply parsed moves transactionally: a failing move rolls the whole
        script back and re-raises with the failing step index."""
        start_log = len(self.log)
        for i, (kind, args) in enumerate(moves):
            try:
                if kind == "cut":
                    self.edge_cut(args)
                elif kind == "oct":
                    self.triangle_to_octahedron(args)
                elif kind == "t16":
                    self.tetra_to_16cell(args)
                else:
                    raise ValueError(f"unknown move kind {kind!r}")
            except Exception as exc:
                while len(self.log) > start_log:
                    self.undo()
                raise ValueError(f"script failed at step {i}: {exc}") from exc
        return Outcome.SOLVED if not self.odd_set() else Outcome.STALLED

    def move_log_text(self) -> str:
        return "\n".join(r.format() for r in self.log) + ("\n" if self.log else "")

    # -- drivers ----------------------------------------------------------------------------

    def _cut_odd_delta(self, e: Edge) -> set:
        """Exact odd set after cutting e, from the current one: the cut edge
        leaves, its two halves enter when e's degree is odd (the spokes to
        the link are always even), and every interior edge of the link flips."""
        g = self.graph
        odd = set(self.odd_set())
        a, b = e
        if self.dimension == 2:
            for t in g.neighbors(a) & g.neighbors(b):
                if t not in self.boundary:
                    odd.symmetric_difference_update({t})
            return odd
        link = edge_link(g, e)
        odd.discard(e)
        if link.edge_count() % 2 == 1:
            v = self.graph.fresh_vertex_id()
            odd.add(normalize_edge(a, v))
            odd.add(normalize_edge(b, v))
        for f in link.edges():
            if self.is_interior_edge(f):
                odd.symmetric_difference_update({f})
        return odd

    def _evaluate_cut(self, e: Edge) -> Objective:
        """Objective after cutting e: exact local parity delta plus a fresh
        distance sweep (removing e can lengthen boundary paths)."""
        odd = self._cut_odd_delta(e)
        if not self.boundary:
            return Objective(len(odd), len(odd))
        scratch = self.graph.copy()
        subdivide_edge(scratch, e)
        dist = boundary_distances(scratch, self.boundary)
        if self.dimension == 3:
            phi = sum(max(dist.get(x, 0), dist.get(y, 0)) for x, y in odd)
        else:
            phi = sum(dist.get(v, 0) for v in odd)
        return Objective(phi, len(odd))

    def greedy_reduce(self, budget: int) -> Outcome:
        """Repeatedly apply the single cut that lexicographically minimizes
        (phi, |O|, edge) as long as it strictly lowers (phi, |O|)."""
        if budget <= 0:
            raise ValueError("budget must be positive")
        applied = 0
        while True:
            current = self.objective()
            if current.odd == 0:
                return Outcome.SOLVED
            if applied == budget:
                return Outcome.BUDGET_EXHAUSTED
            best: tuple | None = None
            for e in self.legal_cuts():
                cand = self._evaluate_cut(e)
                key = (cand.phi, cand.odd, e)
                if best is None or key < best:
                    best = key
            if best is None or best[:2] >= current.as_tuple():
                return Outcome.STALLED
            self.edge_cut(best[2])
            applied += 1

    def _propose_cut(self, rng: random.Random, interior_bias: bool):
        """Uniform random interior edge by rejection sampling over all edges
        (with the optional 1 + boundary-distance weighting)."""
        edges = self.graph.edges()
        if interior_bias and self.boundary:
            dist = self._distances()
            weights = [1 + max(dist.get(a, 0), dist.get(b, 0)) for a, b in edges]
        else:
            weights = None
        for _ in range(8 * len(edges)):
            e = rng.choices(edges, weights=weights, k=1)[0] if weights else rng.choice(edges)
            if self.is_interior_edge(e):
                return e
        cuts = self.legal_cuts()
        return rng.choice(cuts) if cuts else None

    def anneal(self, t0: float = 2.0, cooling: float = 0.995, steps: int = 5000,
               seed: int = 0, interior_bias: bool = False) -> Outcome:
        """Metropolis over single edge cuts with energy phi; proposals are
        uniform over interior edges (optionally biased toward the interior).
        Deterministic given the seed; returns the moment the odd set empties."""
        if steps <= 0:
            raise ValueError("steps must be positive")
        if not 0 < cooling < 1:
            raise ValueError("cooling must lie in (0,1)")
        rng = random.Random(seed)
        temperature = t0
        for _ in range(steps):
            current = self.objective()
            if current.odd == 0:
                return Outcome.SOLVED
            e = self._propose_cut(rng, interior_bias)
            if e is None:
                return Outcome.STALLED
            cand = self._evaluate_cut(e)
            delta = cand.phi - current.phi
            if delta == 0:  # tie-break plateaus by the odd count
                delta = cand.odd - current.odd
            if delta <= 0 or rng.random() < math.exp(-delta / max(temperature, 1e-12)):
                self.edge_cut(e)
            else:
                self._record_trace()
            temperature *= cooling
        return Outcome.SOLVED if not self.odd_set() else Outcome.BUDGET_EXHAUSTED


def _simplex_edges(s: tuple[int, ...]) -> list[Edge]:
    from itertools import combinations

    return [normalize_edge(a, b) for a, b in combinations(sorted(s), 2)]
