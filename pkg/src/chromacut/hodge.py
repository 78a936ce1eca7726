"""Exterior derivatives, form Laplacians, exact Betti numbers, and GF(2) chains.

Rank and kernel decisions are made with exact rational elimination; floating
eigensolves are advisory reporting only.  Adjoints are plain transposes: the
inner product is the unweighted one on simplex bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .graphs import SimplicialGraph, Simplex, normalize_edge


@dataclass
class BoundaryOperator:
    """Matrix of d_k: Omega_k -> Omega_{k+1}; rows indexed by (k+1)-simplices,
    columns by k-simplices, both in lexicographic order."""

    k: int
    entries: list[list[int]]  # dense, entries in {-1, 0, 1}

    @property
    def shape(self) -> tuple[int, int]:
        rows = len(self.entries)
        return rows, len(self.entries[0]) if rows else 0

    def as_array(self) -> np.ndarray:
        rows, cols = self.shape
        return np.array(self.entries, dtype=np.int64).reshape(rows, cols)


@dataclass
class ChainVector:
    """Coefficients per k-simplex in the lexicographic order of the graph.

    ring is "GF2" (coefficients 0/1) or "Q" (Fractions or ints).
    """

    k: int
    ring: str
    coeffs: list

    def __post_init__(self):
        if self.ring not in ("GF2", "Q"):
            raise ValueError("ring must be GF2 or Q")
        if self.ring == "GF2" and any(c not in (0, 1) for c in self.coeffs):
            raise ValueError("GF2 coefficients must be 0 or 1")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]


@dataclass
class SpectralReport:
    k: int
    eigenvalues: list[float]  # descending
    betti: int


def exterior_derivative(g: SimplicialGraph, k: int) -> BoundaryOperator:
    """Entry for ((k+1)-simplex s, k-simplex t) is (-1)^i when t is s with
    its i-th vertex dropped; ascending tuples are the oriented basis."""
    if k < 0:
        raise ValueError("form degree must be nonnegative")
    lower = g.simplices(k)
    upper = g.simplices(k + 1)
    index = {s: i for i, s in enumerate(lower)}
    entries = []
    for s in upper:
        row = [0] * len(lower)
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            row[index[face]] = (-1) ** i
        entries.append(row)
    return BoundaryOperator(k, entries)


def laplacian(g: SimplicialGraph, k: int) -> list[list[int]]:
    """L_k = d_{k-1} d_{k-1}^T + d_k^T d_k on k-forms, exact integer matrix."""
    n = len(g.simplices(k))
    out = [[0] * n for _ in range(n)]
    if k > 0:
        dprev = exterior_derivative(g, k - 1).entries  # rows are the k-simplices
        by_col: dict[int, list[tuple[int, int]]] = {}
        for r, row in enumerate(dprev):
            for c, v in enumerate(row):
                if v:
                    by_col.setdefault(c, []).append((r, v))
        for pairs in by_col.values():
            for r1, v1 in pairs:
                for r2, v2 in pairs:
                    out[r1][r2] += v1 * v2
    dk = exterior_derivative(g, k).entries
    for row in dk:
        sup = [(j, v) for j, v in enumerate(row) if v]
        for j, v in sup:
            for j2, v2 in sup:
                out[j][j2] += v * v2
    return out


def _derivative_rank(g: SimplicialGraph, k: int) -> int:
    op = exterior_derivative(g, k)
    rows = ({j: v for j, v in enumerate(row) if v} for row in op.entries)
    return linalg.sparse_rank(rows)


def betti_numbers(g: SimplicialGraph) -> list[int]:
    """b_k = nullity of L_k, via exact ranks of the derivative matrices:
    b_k = n_k - rank(d_k) - rank(d_{k-1})."""
    top = g.top_dimension()
    if top < 0:
        return []
    ranks = [_derivative_rank(g, k) for k in range(top + 1)]  # rank(d_top) = 0
    out = []
    for k in range(top + 1):
        nk = len(g.simplices(k))
        rk = ranks[k] if k < top else 0
        rprev = ranks[k - 1] if k > 0 else 0
        out.append(nk - rk - rprev)
    return out


def spectrum(g: SimplicialGraph, k: int, tol: float = 1e-9) -> SpectralReport:
    """Floating eigenvalues of L_k (descending), cross-checked against the
    exact nullity."""
    mat = laplacian(g, k)
    n = len(mat)
    if n == 0:
        return SpectralReport(k, [], 0)
    if n > 2000:
        raise ValueError("spectral solves are capped at order 2000")
    vals = np.linalg.eigvalsh(np.array(mat, dtype=float))
    if vals.size and vals.min() < -max(tol, 1e-9) * max(1.0, abs(vals).max()):
        raise ArithmeticError(f"Laplacian produced a negative eigenvalue {vals.min()}")
    betti = betti_numbers(g)
    bk = betti[k] if k < len(betti) else 0
    zero_count = int(np.sum(np.abs(vals) <= max(tol, 1e-9) * max(1.0, abs(vals).max())))
    if zero_count != bk:
        raise ArithmeticError(
            f"floating nullity {zero_count} disagrees with exact Betti number {bk} in degree {k}"
        )
    return SpectralReport(k, sorted((float(v) for v in vals), reverse=True), bk)


def mckean_singer(g: SimplicialGraph, t: float) -> float:
    """Supertrace of the heat kernel: sum_k (-1)^k tr(exp(-t L_k))."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    total = 0.0
    for k in range(g.top_dimension() + 1):
        mat = laplacian(g, k)
        if not mat:
            continue
        vals = np.linalg.eigvalsh(np.array(mat, dtype=float))
        total += (-1) ** k * float(np.exp(-t * np.clip(vals, 0, None)).sum())
    return total


def harmonic_projection(g: SimplicialGraph, form: ChainVector) -> ChainVector:
    """Exact orthogonal projection of a rational 1-form onto ker(L_1); this is
    the t -> infinity limit of the heat flow."""
    if form.ring != "Q":
        raise ValueError("harmonic projection needs rational coefficients")
    if form.k != 1:
        raise ValueError("harmonic projection is implemented for 1-forms")
    mat = laplacian(g, 1)
    basis = linalg.kernel_basis(mat, len(mat))
    target = [Fraction(c) for c in form.coeffs]
    proj = linalg.gram_project(basis, target)
    return ChainVector(1, "Q", proj)


def hurewicz(g: SimplicialGraph, loop: Sequence[int]) -> ChainVector:
    """Harmonic representative of a closed edge path: build its indicator
    1-form (signs follow traversal against the ascending-edge orientation)
    and project onto ker(L_1).  Zero when b_1 = 0."""
    if len(loop) < 2 or loop[0] != loop[-1]:
        raise ValueError("loop must be a closed vertex path")
    edges = g.simplices(1)
    index = {e: i for i, e in enumerate(edges)}
    coeffs = [Fraction(0)] * len(edges)
    for u, v in zip(loop, loop[1:]):
        if not g.has_edge(u, v):
            raise ValueError(f"loop step ({u},{v}) is not an edge")
        e = normalize_edge(u, v)
        coeffs[index[e]] += 1 if u < v else -1
    return harmonic_projection(g, ChainVector(1, "Q", coeffs))


# -- GF(2) chain calculus ---------------------------------------------------------------


def chain_from_simplices(g: SimplicialGraph, k: int, members) -> ChainVector:
    simp = g.simplices(k)
    index = {s: i for i, s in enumerate(simp)}
    coeffs = [0] * len(simp)
    for m in members:
        m = tuple(sorted(m))
        if m not in index:
            raise KeyError(f"{m} is not a {k}-simplex of the graph")
        coeffs[index[m]] ^= 1
    return ChainVector(k, "GF2", coeffs)


def z2_boundary(g: SimplicialGraph, chain: ChainVector) -> ChainVector:
    """GF(2) boundary of a k-chain (signs vanish mod 2)."""
    if chain.ring != "GF2":
        raise ValueError("z2_boundary expects a GF(2) chain")
    if chain.k == 0:
        return ChainVector(0, "GF2", [0] * 0)
    op = exterior_derivative(g, chain.k - 1)
    lower = g.simplices(chain.k - 1)
    out = [0] * len(lower)
    for i, c in enumerate(chain.coeffs):
        if c:
            for j, v in enumerate(op.entries[i]):
                if v:
                    out[j] ^= 1
    return ChainVector(chain.k - 1, "GF2", out)


def is_cycle(g: SimplicialGraph, chain: ChainVector) -> bool:
    return z2_boundary(g, chain).is_zero()


def is_relative_cycle(g: SimplicialGraph, chain: ChainVector, boundary: set[int]) -> bool:
    """GF(2) boundary vanishes at every interior vertex; a chain may end on
    the designated boundary."""
    if chain.k != 1:
        raise ValueError("relative cycles are implemented for 1-chains")
    b = z2_boundary(g, chain)
    verts = g.simplices(0)
    return all(verts[i][0] in boundary for i in b.support())


def solve_surface(g: SimplicialGraph, odd: ChainVector,
                  relax_edges=None) -> ChainVector | None:
    """A GF(2) 2-chain S with boundary odd, by elimination on the degree-2
    boundary operator; None signals a nontrivial homology class.

    relax_edges, when given, lists edges (pairs) on which the boundary
    equation is not enforced: a surface may run into the host boundary, so
    callers relax exactly the boundary-kind edges.  Without it the chain
    must be an absolute cycle.
    """
    if odd.ring != "GF2" or odd.k != 1:
        raise ValueError("solve_surface expects a GF(2) 1-chain")
    edges = g.simplices(1)
    triangles = g.simplices(2)
    if relax_edges is None:
        if not is_cycle(g, odd):
            raise ValueError("the odd chain is not a GF(2) cycle")
        relaxed = set()
    else:
        relaxed = {_edge_index(edges, e) for e in relax_edges}
    row_of = {idx: r for r, idx in enumerate(i for i in range(len(edges)) if i not in relaxed)}
    cols = []
    for a, b, c in triangles:
        mask = 0
        for face in ((a, b), (a, c), (b, c)):
            i = _edge_index(edges, face)
            if i in row_of:
                mask |= 1 << row_of[i]
        cols.append(mask)
    rhs = 0
    for i in odd.support():
        if i in row_of:
            rhs |= 1 << row_of[i]
    chosen = linalg.gf2_solve(cols, rhs)
    if chosen is None:
        return None
    coeffs = [0] * len(triangles)
    for j in chosen:
        coeffs[j] = 1
    return ChainVector(2, "GF2", coeffs)


def _edge_index(edges: list[Simplex], e) -> int:
    from bisect import bisect_left

    e = tuple(sorted(e))
    i = bisect_left(edges, e)
    if i == len(edges) or edges[i] != e:
        raise KeyError(f"{e} is not an edge")
    return i


def orientation_2chain_exists(g: SimplicialGraph) -> bool:
    """Orientability proxy for closed 2-dimensional graphs: can the triangles
    be signed so adjacent boundary contributions cancel on every shared edge?
    Solved by BFS 2-coloring of the triangle adjacency with sign constraints."""
    triangles = g.simplices(2)
    d1 = exterior_derivative(g, 1).entries
    by_edge: dict[int, list[int]] = {}
    for t, row in enumerate(d1):
        for j, v in enumerate(row):
            if v:
                by_edge.setdefault(j, []).append(t)
    sign: dict[int, int] = {}
    for start in range(len(triangles)):
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for j, v in enumerate(d1[t]):
                if not v:
                    continue
                for u in by_edge[j]:
                    if u == t:
                        continue
                    want = -sign[t] * d1[t][j] * d1[u][j]
                    if u not in sign:
                        sign[u] = want
                        stack.append(u)
                    elif sign[u] != want:
                        return False
    return True


def format_matrix(entries: Sequence[Sequence[int | Fraction]]) -> str:
    """Canonical dense text form, row-major, exact fractions 'p/q'."""
    lines = []
    for row in entries:
        lines.append(" ".join(str(Fraction(v)) for v in row))
    return "\n".join(lines) + ("\n" if lines else "")
