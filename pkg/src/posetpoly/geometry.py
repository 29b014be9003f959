"""Schubert strata of Gr(d, n) and the fibres of the graph closure over them.

``L = L- (+) L+`` with ``L-`` spanned by the first ``d`` basis vectors.  The
stratum ``X_k`` collects the subspaces ``U`` with ``dim(U & L+) = k``; over
such a ``U`` the fibre is the projectivised space of maps ``f: L- -> L+`` with
``Im f`` inside ``U & L+`` and ``pr-(U)`` inside ``ker f``, of dimension ``k^2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import BadParams, GeometryCheckFailed, MalformedInput, RankDeficient
from .exact import nullspace, rank, rref, transpose


@dataclass(frozen=True)
class QPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "QPolynomial":
        return cls((0,) * k + (c,))

    @classmethod
    def q_integer(cls, k: int) -> "QPolynomial":
        """``1 + q + ... + q^(k-1)``."""
        return cls((1,) * k)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return QPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self.coeffs or not other.coeffs:
            return QPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return QPolynomial(tuple(out))

    def __call__(self, q):
        return sum(c * q ** k for k, c in enumerate(self.coeffs))

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


ZERO = QPolynomial(())
ONE = QPolynomial((1,))


def _check_dn(d: int, n: int) -> None:
    if not 1 <= d < n:
        raise BadParams(f"need 1 <= d < n, got d={d}, n={n}")


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, d: int) -> QPolynomial:
    """``[n choose d]_q`` via ``[n, d] = [n-1, d-1] + q^d [n-1, d]``."""
    if not 0 <= d <= n:
        raise BadParams(f"need 0 <= d <= n, got n={n}, d={d}")
    if d == 0 or d == n:
        return ONE
    return gaussian_binomial(n - 1, d - 1) + QPolynomial.monomial(d) * gaussian_binomial(n - 1, d)


def cell_dim(I: Sequence[int], d: int, n: int) -> int:
    """Dimension of the Schubert cell ``C_I``, normalised so ``I = {1..d}`` is open."""
    return d * (n - d) - sum(i - t for t, i in enumerate(sorted(I), start=1))


def strata_poincare(d: int, n: int) -> list[QPolynomial]:
    """Cell generating function of each stratum ``X_k``, ``k = 0..min(d, n-d)``."""
    _check_dn(d, n)
    strata = [ZERO] * (min(d, n - d) + 1)
    for I in combinations(range(1, n + 1), d):
        k = sum(1 for i in I if i > d)
        strata[k] = strata[k] + QPolynomial.monomial(cell_dim(I, d, n))
    return strata


def graph_poincare(d: int, n: int) -> QPolynomial:
    """Sum over strata of ``Poinc(X_k) * Poinc(P^(k^2 - 1))``."""
    total = ZERO
    for k, poly in enumerate(strata_poincare(d, n)):
        total = total + poly * QPolynomial.q_integer(max(k * k, 1))
    return total


# ------------------------------------------------------------------ subspaces


@dataclass(frozen=True)
class Subspace:
    """Row span of a ``d x n`` rational matrix, stored in reduced row echelon form."""

    d: int
    n: int
    matrix: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Subspace":
        try:
            mat = [[Fraction(x) for x in row] for row in rows]
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad matrix entry: {exc}") from None
        if not mat or len({len(r) for r in mat}) != 1:
            raise MalformedInput("subspace needs a nonempty rectangular matrix")
        d, n = len(mat), len(mat[0])
        if not 1 <= d < n:
            raise BadParams(f"need 1 <= d < n, got a {d} x {n} matrix")
        R, _ = rref(mat)
        if len(R) != d:
            raise RankDeficient(f"rows span only {len(R)} dimensions, expected {d}")
        return cls(d, n, tuple(tuple(r) for r in R))

    def minus_part(self) -> list[list[Fraction]]:
        return [list(r[: self.d]) for r in self.matrix]

    def plus_part(self) -> list[list[Fraction]]:
        return [list(r[self.d:]) for r in self.matrix]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.matrix]


@dataclass(frozen=True)
class FiberDescription:
    k: int
    basis: tuple[tuple[tuple[Fraction, ...], ...], ...]  # each: d x (n-d), row a = f(l_a)
    proj_dim: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "proj_dim": self.proj_dim,
            "basis": [[[str(x) for x in row] for row in F] for F in self.basis],
        }


def _as_subspace(U) -> Subspace:
    return U if isinstance(U, Subspace) else Subspace.from_rows(U)


def stratum_of(U) -> int:
    U = _as_subspace(U)
    return U.d - rank(U.minus_part())


def intersection_with_plus(U) -> list[list[Fraction]]:
    """Basis of ``U & L+``, written in the ``n - d`` coordinates of ``L+``.

    ``y U`` lies in ``L+`` iff ``y`` kills the ``L-`` block, so this is the
    image of the left null space of that block.
    """
    U = _as_subspace(U)
    ys = nullspace(transpose(U.minus_part()), U.d)
    plus = U.plus_part()
    return [[sum(y[t] * plus[t][c] for t in range(U.d)) for c in range(U.n - U.d)] for y in ys]


def fiber_of(U) -> FiberDescription:
    """Maps ``f: L- -> L+`` with ``Im f`` in ``U & L+`` and ``pr-(U)`` in ``ker f``."""
    U = _as_subspace(U)
    d, e = U.d, U.n - U.d
    k = stratum_of(U)
    W = intersection_with_plus(U)
    annihilator = nullspace(W, e) if W else [[Fraction(int(a == b)) for a in range(e)] for b in range(e)]

    # unknown F[a][b] at position a * e + b
    eqs = []
    for u in U.minus_part():
        for b in range(e):
            row = [Fraction(0)] * (d * e)
            for a in range(d):
                row[a * e + b] = u[a]
            eqs.append(row)
    for a in range(d):
        for c in annihilator:
            row = [Fraction(0)] * (d * e)
            for b in range(e):
                row[a * e + b] = c[b]
            eqs.append(row)
    sols = nullspace(eqs, d * e)
    basis = tuple(tuple(tuple(x[a * e:(a + 1) * e]) for a in range(d)) for x in sols)
    if len(basis) != k * k:
        raise GeometryCheckFailed(f"fibre has dimension {len(basis)}, expected k^2 = {k * k}")
    return FiberDescription(k, basis, k * k - 1 if k >= 1 else 0)


def satisfies_fiber_conditions(U, F: Sequence[Sequence]) -> bool:
    """Independent check of both containments through rank identities."""
    U = _as_subspace(U)
    W = intersection_with_plus(U)
    rows = [list(r) for r in F]
    if any(any(x for x in r) for r in rows):
        if rank(W + rows) != rank(W):
            return False
    # pr-(U) inside ker f: (U's L- block) @ F == 0
    minus = U.minus_part()
    e = U.n - U.d
    return all(
        sum(u[a] * rows[a][b] for a in range(U.d)) == 0 for u in minus for b in range(e)
    )


def preimage_dim_table(d: int, n: int) -> list[dict]:
    """``dim X_k + (k^2 - 1)`` for each ``k >= 1``; must equal ``d(n-d) - 1``."""
    strata = strata_poincare(d, n)
    table = []
    for k in range(1, len(strata)):
        dim_x = strata[k].degree
        total = dim_x + k * k - 1
        table.append({"k": k, "dim_stratum": dim_x, "fiber_dim": k * k - 1, "preimage_dim": total})
        if total != d * (n - d) - 1:
            raise GeometryCheckFailed(f"preimage of X_{k} has dimension {total}, expected {d * (n - d) - 1}")
    return table


def random_subspace(d: int, n: int, k: int, rng: random.Random, spread: int = 5) -> Subspace:
    """A random point of ``X_k`` with small integer coordinates, mixed by row operations."""
    _check_dn(d, n)
    if not 0 <= k <= min(d, n - d):
        raise BadParams(f"X_{k} is empty for d={d}, n={n}")
    while True:
        rows = [[0] * d + [rng.randint(-spread, spread) for _ in range(n - d)] for _ in range(k)]
        rows += [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(d - k)]
        mix = [[rng.randint(-spread, spread) for _ in range(d)] for _ in range(d)]
        if rank(mix) < d or rank(rows) < d:
            continue
        mixed = [[sum(mix[r][t] * rows[t][c] for t in range(d)) for c in range(n)] for r in range(d)]
        U = Subspace.from_rows(mixed)
        if stratum_of(U) == k:
            return U
