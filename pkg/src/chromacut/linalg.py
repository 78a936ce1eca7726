"""Exact linear algebra over the rationals and over GF(2).

All rank and kernel decisions that feed topological invariants are made
here with exact arithmetic; floating point never enters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = dict[int, Fraction]


def sparse_rank(rows: Iterable[dict[int, int | Fraction]]) -> int:
    """Rank over Q of a matrix given as sparse rows {column: value}."""
    work: list[Row] = []
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        if r:
            work.append(r)
    rank = 0
    while work:
        work.sort(key=len)
        piv = work.pop(0)
        rank += 1
        pcol = min(piv)
        pinv = 1 / piv[pcol]
        piv = {c: v * pinv for c, v in piv.items() if c != pcol}
        nxt: list[Row] = []
        for r in work:
            f = r.pop(pcol, None)
            if f:
                for c, v in piv.items():
                    w = r.get(c, 0) - f * v
                    if w:
                        r[c] = w
                    elif c in r:
                        del r[c]
            if r:
                nxt.append(r)
        work = nxt
    return rank


def dense_rank(matrix: Sequence[Sequence[int | Fraction]]) -> int:
    return sparse_rank(
        {j: v for j, v in enumerate(row) if v} for row in matrix
    )


def rref(matrix: Sequence[Sequence[int | Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def kernel_basis(matrix: Sequence[Sequence[int | Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact basis of the null space of the matrix (acting on column vectors)."""
    if ncols == 0:
        return []
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def solve(matrix: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if inconsistent."""
    if not matrix:
        return None if any(rhs) else []
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][ncols]
    return x


def gram_project(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> list[Fraction]:
    """Exact orthogonal projection of target onto span(basis) (standard inner product)."""
    n = len(target)
    if not basis:
        return [Fraction(0)] * n
    k = len(basis)
    gram = [[sum(basis[i][t] * basis[j][t] for t in range(n)) for j in range(k)] for i in range(k)]
    rhs = [sum(basis[i][t] * target[t] for t in range(n)) for i in range(k)]
    coeff = solve(gram, rhs)
    assert coeff is not None  # Gram matrix of independent vectors is invertible
    return [sum(coeff[j] * basis[j][t] for j in range(k)) for t in range(n)]


def gf2_rank(columns: Iterable[int]) -> int:
    """Rank over GF(2); each column is an integer bitmask of its rows."""
    basis: dict[int, int] = {}
    rank = 0
    for v in columns:
        v = _gf2_reduce(v, basis)
        if v:
            basis[v.bit_length() - 1] = v
            rank += 1
    return rank


def _gf2_reduce(v: int, basis: dict[int, int]) -> int:
    while v:
        lead = v.bit_length() - 1
        if lead not in basis:
            return v
        v ^= basis[lead]
    return 0


def gf2_solve(columns: Sequence[int], rhs: int) -> list[int] | None:
    """Indices of columns xoring to rhs, or None when rhs is outside the span."""
    basis: dict[int, tuple[int, int]] = {}  # lead bit -> (vector, combination mask)
    for j, v in enumerate(columns):
        combo = 1 << j
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = (v, combo)
                break
            bv, bc = basis[lead]
            v ^= bv
            combo ^= bc
    combo = 0
    v = rhs
    while v:
        lead = v.bit_length() - 1
        if lead not in basis:
            return None
        bv, bc = basis[lead]
        v ^= bv
        combo ^= bc
    return [j for j in range(len(columns)) if combo >> j & 1]
