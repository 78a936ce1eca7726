"""Inductive contractibility, dimension, and the sphere/ball/variety taxonomy.

Everything here follows the recursive definitions: a graph is contractible
when some vertex has a contractible unit sphere and a contractible rest; a
d-sphere is non-contractible and becomes a d-ball after deleting any vertex;
a d-ball is contractible with a (d-1)-sphere boundary.  The recursions are
exponential in the worst case, which is accepted at the corpus sizes this
workbench targets.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .graphs import SimplicialGraph

_MEMO_LOCK = threading.Lock()
_CONTRACTIBLE: dict = {}
_DIMENSION: dict = {}


class Kind(str, Enum):
    NOT_UNIFORM = "NotUniformDimensional"
    UNIFORM = "UniformDimensional"
    GEOMETRIC = "Geometric"
    BALL = "Ball"
    SPHERE = "Sphere"
    VARIETY = "Variety"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    dim: int
    boundary: frozenset[int]
    interior: frozenset[int]
    singular: frozenset[int]
    contractible: bool

    def to_doc(self, g: SimplicialGraph) -> dict:
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "boundary": sorted(self.boundary),
            "singular": sorted(self.singular),
            "euler": g.euler_characteristic(),
        }


def _memo_get(table: dict, key):
    with _MEMO_LOCK:
        return table.get(key)


def _memo_put(table: dict, key, value):
    with _MEMO_LOCK:
        table[key] = value
    return value


def is_contractible(g: SimplicialGraph) -> bool:
    """Whether g reduces to a single vertex by the recursive definition.

    Sound shortcuts before the exponential search: disconnected graphs and
    graphs with Euler characteristic != 1 are never contractible, and a
    successful greedy peeling sequence is a contractibility witness.
    """
    n = len(g)
    if n == 0:
        return False
    if n == 1:
        return True
    key = g.key()
    hit = _memo_get(_CONTRACTIBLE, key)
    if hit is not None:
        return hit
    if not g.is_connected() or g.euler_characteristic() != 1:
        return _memo_put(_CONTRACTIBLE, key, False)
    if _greedy_peel(g):
        return _memo_put(_CONTRACTIBLE, key, True)
    result = any(
        is_contractible(g.unit_sphere(x)) and is_contractible(g.removed(x))
        for x in g.vertices
    )
    return _memo_put(_CONTRACTIBLE, key, result)


def _greedy_peel(g: SimplicialGraph) -> bool:
    cur = g
    while len(cur) > 1:
        for x in cur.vertices:
            if is_contractible(cur.unit_sphere(x)):
                cur = cur.removed(x)
                break
        else:
            return False
    return len(cur) == 1


def homotopy_reduce(g: SimplicialGraph) -> SimplicialGraph:
    """Remove vertices with contractible unit spheres (lowest id first)
    until none remains removable.  Each step preserves Euler characteristic."""
    cur = g.copy()
    changed = True
    while changed and len(cur) > 1:
        changed = False
        for x in cur.vertices:
            if is_contractible(cur.unit_sphere(x)):
                cur.remove_vertex(x)
                changed = True
                break
    return cur


def inductive_dimension(g: SimplicialGraph) -> Fraction:
    """dim(empty) = -1; dim(G) = 1 + average over vertices of dim(S(v))."""
    if len(g) == 0:
        return Fraction(-1)
    key = g.key()
    hit = _memo_get(_DIMENSION, key)
    if hit is not None:
        return hit
    total = sum(inductive_dimension(g.unit_sphere(v)) for v in g.vertices)
    value = 1 + Fraction(total, len(g))
    return _memo_put(_DIMENSION, key, value)


def _uniform_dimension(g: SimplicialGraph, max_dim: int) -> int | None:
    """The d with g uniformly d-dimensional (every unit sphere uniformly
    (d-1)-dimensional), or None."""
    if len(g) == 0:
        return None
    for d in range(max_dim + 1):
        if _is_uniform(g, d):
            return d
    return None


def _is_uniform(g: SimplicialGraph, d: int) -> bool:
    if len(g) == 0:
        return False
    if d == 0:
        return g.edge_count() == 0
    return all(_is_uniform(g.unit_sphere(x), d - 1) for x in g.vertices)


def is_sphere(g: SimplicialGraph, d: int) -> bool:
    if d < 0:
        return False
    if d == 0:
        return len(g) == 2 and g.edge_count() == 0
    if len(g) == 0 or not g.is_connected():
        return False
    if not all(is_sphere(g.unit_sphere(x), d - 1) for x in g.vertices):
        return False
    if is_contractible(g):
        return False
    return all(is_ball(g.removed(x), d) for x in g.vertices)


def is_ball(g: SimplicialGraph, d: int) -> bool:
    if d < 0:
        return False
    if d == 0:
        return len(g) == 1
    if len(g) == 0:
        return False
    boundary = set()
    for x in g.vertices:
        s = g.unit_sphere(x)
        if is_ball(s, d - 1):
            boundary.add(x)
        elif not is_sphere(s, d - 1):
            return False
    if not boundary or len(boundary) == len(g):
        return False
    if not is_sphere(g.induced(boundary), d - 1):
        return False
    return is_contractible(g)


def boundary_vertices(g: SimplicialGraph, d: int) -> set[int]:
    """Vertices whose unit sphere is a (d-1)-ball."""
    return {x for x in g.vertices if is_ball(g.unit_sphere(x), d - 1)}


def singular_set(g: SimplicialGraph, d: int) -> set[int]:
    """Vertices whose unit sphere is neither a (d-1)-sphere nor a (d-1)-ball."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    out = set()
    for x in g.vertices:
        s = g.unit_sphere(x)
        if not is_sphere(s, d - 1) and not is_ball(s, d - 1):
            out.add(x)
    return out


def is_variety(g: SimplicialGraph, d: int) -> bool:
    """Membership in the inductive class of d-dimensional varieties: uniformly
    d-dimensional, unit spheres are (d-1)-varieties, and both the singular set
    and the boundary induce lower-dimensional varieties."""
    if len(g) == 0:
        return False
    if d == 0:
        return g.edge_count() == 0
    if not _is_uniform(g, d):
        return False
    if not all(is_variety(g.unit_sphere(x), d - 1) for x in g.vertices):
        return False
    for part in (singular_set(g, d), boundary_vertices(g, d)):
        if part and not _is_lower_variety(g.induced(part), d):
            return False
    return True


def _is_lower_variety(sub: SimplicialGraph, d: int) -> bool:
    return any(is_variety(sub, j) for j in range(d))


def classify(g: SimplicialGraph, max_dim: int = 4) -> Classification:
    """Run the inductive taxonomy and collect boundary/interior/singular sets.

    A uniformly dimensional graph with all unit spheres spheres-or-balls but
    an empty interior is reported UniformDimensional, not Geometric: the
    definitions require a nonempty interior.
    """
    if max_dim > 4:
        raise ValueError("classification is capped at dimension 4")
    verts = frozenset(g.vertices)
    if len(g) == 0:
        return Classification(Kind.NOT_UNIFORM, -1, frozenset(), frozenset(), frozenset(), False)
    contractible = is_contractible(g)
    d = _uniform_dimension(g, max_dim)
    if d is None:
        top = g.top_dimension()
        if top > max_dim:
            raise ValueError(f"graph exceeds the max_dim={max_dim} recursion guard")
        return Classification(Kind.NOT_UNIFORM, top, frozenset(), frozenset(), frozenset(), contractible)
    if d == 0:
        if len(g) == 2:
            return Classification(Kind.SPHERE, 0, frozenset(), verts, frozenset(), False)
        if len(g) == 1:
            return Classification(Kind.BALL, 0, frozenset(), verts, frozenset(), True)
        return Classification(Kind.GEOMETRIC, 0, frozenset(), verts, frozenset(), False)
    boundary, interior, singular = set(), set(), set()
    for x in g.vertices:
        s = g.unit_sphere(x)
        if is_sphere(s, d - 1):
            interior.add(x)
        elif is_ball(s, d - 1):
            boundary.add(x)
        else:
            singular.add(x)
    boundary, interior, singular = frozenset(boundary), frozenset(interior), frozenset(singular)
    if not singular:
        if not boundary:
            if is_sphere(g, d):
                return Classification(Kind.SPHERE, d, boundary, interior, singular, False)
            return Classification(Kind.GEOMETRIC, d, boundary, interior, singular, contractible)
        if interior:
            if contractible and is_sphere(g.induced(boundary), d - 1):
                return Classification(Kind.BALL, d, boundary, interior, singular, True)
            return Classification(Kind.GEOMETRIC, d, boundary, interior, singular, contractible)
        return Classification(Kind.UNIFORM, d, boundary, interior, singular, contractible)
    if is_variety(g, d):
        return Classification(Kind.VARIETY, d, boundary, interior, singular, contractible)
    return Classification(Kind.UNIFORM, d, boundary, interior, singular, contractible)


def is_s2_fast(g: SimplicialGraph) -> bool:
    """Quick 2-sphere test: connected, every unit sphere a cycle C_n with
    n >= 4, and the degree curvatures 1 - n(x)/6 summing to exactly 2."""
    if len(g) == 0 or not g.is_connected():
        return False
    total = Fraction(0)
    for x in g.vertices:
        s = g.unit_sphere(x)
        if not s.is_cycle_graph(min_len=4):
            return False
        total += 1 - Fraction(len(s), 6)
    return total == 2


def is_4_connected(g: SimplicialGraph) -> bool:
    """Brute-force all deletions of at most 3 vertices."""
    from itertools import combinations

    if len(g) <= 4:
        return False
    for r in range(1, 4):
        for cut in combinations(g.vertices, r):
            if not g.induced(set(g.vertices) - set(cut)).is_connected():
                return False
    return True
