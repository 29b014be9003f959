"""Exact linear algebra over Z and Q.

Dense rank uses Bareiss fraction-free elimination on integer matrices
(rational input is cleared of denominators row by row first).  RREF and
null spaces work in :class:`fractions.Fraction`.  :class:`SparseEchelon`
grows a row-reduced basis of sparse integer vectors one vector at a time.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = lcm(1, *(x.denominator for x in fr))
        out.append([int(x * den) for x in fr])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    A = _integer_rows(rows)
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(A)) if A[r][col]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, len(A)):
            a = A[r][col]
            # exact by Sylvester's identity
            A[r] = [(p * x - a * y) // prev for x, y in zip(A[r], A[rank])]
        prev = p
        rank += 1
        if rank == len(A):
            break
    return rank


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    A = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(A)) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return bareiss_rank(rows)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


class SparseEchelon:
    """Incremental integer row echelon form over sparse vectors.

    Each stored row avoids the leading keys of all rows stored before it, so
    eliminating against the earliest row first never revisits a key.
    Reduction is fraction-free: ``v <- p * v - v[k] * row`` followed by
    division by the content.
    """

    def __init__(self):
        # lead key -> row; dict order is insertion order
        self.rows: dict[Hashable, dict[Hashable, int]] = {}
        self._rank: dict[Hashable, int] = {}
        self._order: dict[Hashable, int] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _key(self, k) -> int:
        if k not in self._order:
            self._order[k] = len(self._order)
        return self._order[k]

    def reduce(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if c}
        for k in v:
            self._key(k)
        while v:
            hit = min((k for k in v if k in self.rows), key=self._rank.__getitem__, default=None)
            if hit is None:
                break
            row = self.rows[hit]
            p, a = row[hit], v[hit]
            new = {k: p * c for k, c in v.items()}
            for k, c in row.items():
                self._key(k)
                x = new.get(k, 0) - a * c
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = 0
            for c in new.values():
                g = gcd(g, c)
            v = {k: c // g for k, c in new.items()} if g > 1 else new
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; True if it was independent of the current rows."""
        v = self.reduce(vec)
        if not v:
            return False
        lead = min(v, key=self._order.__getitem__)
        self._rank[lead] = len(self.rows)
        self.rows[lead] = v
        return True
