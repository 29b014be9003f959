"""Exact model of the cyclic modules L_{m,M} inside Lambda^d(L)^{(x)m} (x) V_M.

A basis label is ``(wedges, mono)``: ``m`` sorted ``d``-subsets of ``1..n``
(the wedge monomials ``l_I``) and an exponent vector over the ``d(n-d)``
roots of total degree ``<= M`` (a monomial of the truncated polynomial ring
V_M).  Vectors are sparse ``{label: int}`` dicts with no zero entries.

The root vector ``f_{i,j}`` acts as the matrix unit sending ``l_i`` to
``l_{j+1}`` on each wedge factor (Leibniz rule over the tensor factors) and
by multiplication on V_M.  All these operators commute.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import comb

from .errors import BadParams, CapExceeded, MalformedVector, RelationViolated
from .exact import SparseEchelon, bareiss_rank
from .grassmann import root_poset
from .polytope import enumerate_points, membership

Wedge = tuple[int, ...]
Label = tuple[tuple[Wedge, ...], tuple[int, ...]]
Vector = dict

DEFAULT_CAP = 20_000


@lru_cache(maxsize=None)
def _roots(d: int, n: int) -> tuple[tuple[int, int], ...]:
    return root_poset(d, n).roots


@lru_cache(maxsize=None)
def _root_pos(d: int, n: int) -> dict[tuple[int, int], int]:
    return {r: k for k, r in enumerate(_roots(d, n))}


def cyclic_vector(d: int, n: int, m: int, M: int) -> Vector:
    return {(tuple(tuple(range(1, d + 1)) for _ in range(m)), (0,) * (d * (n - d))): 1}


def grade(label: Label, d: int) -> int:
    """PBW degree: wedge indices outside ``1..d`` plus the degree of the monomial."""
    wedges, mono = label
    return sum(sum(1 for x in I if x > d) for I in wedges) + sum(mono)


def check_vector(v: Vector, d: int, n: int, m: int, M: int) -> None:
    N = d * (n - d)
    for label, c in v.items():
        try:
            wedges, mono = label
        except (TypeError, ValueError):
            raise MalformedVector(f"label {label!r} is not (wedges, mono)") from None
        if not c:
            raise MalformedVector(f"zero coefficient stored at {label!r}")
        if len(wedges) != m or len(mono) != N:
            raise MalformedVector(f"label {label!r} has the wrong shape")
        for I in wedges:
            if len(I) != d or list(I) != sorted(set(I)) or not all(1 <= x <= n for x in I):
                raise MalformedVector(f"wedge {I!r} is not a sorted {d}-subset of 1..{n}")
        if any(e < 0 for e in mono) or sum(mono) > M:
            raise MalformedVector(f"monomial {mono!r} has degree above {M}")


def _substitute(I: Wedge, i: int, k: int) -> tuple[int, Wedge] | None:
    """``l_i -> l_k`` inside ``l_I``; sign and new sorted label, or None for zero."""
    if i not in I or k in I:
        return None
    between = sum(1 for x in I if min(i, k) < x < max(i, k))
    new = tuple(sorted([x for x in I if x != i] + [k]))
    return (-1 if between % 2 else 1), new


def apply_root(op: tuple[int, int], v: Vector, m: int, M: int, d: int, n: int, check: bool = True) -> Vector:
    i, j = op
    if not (1 <= i <= d <= j <= n - 1):
        raise BadParams(f"f_({i},{j}) is not a root vector for d={d}, n={n}")
    if check:
        check_vector(v, d, n, m, M)
    k = _root_pos(d, n)[(i, j)]
    out: dict = {}
    for (wedges, mono), c in v.items():
        for t, I in enumerate(wedges):
            hit = _substitute(I, i, j + 1)
            if hit is None:
                continue
            sign, J = hit
            key = (wedges[:t] + (J,) + wedges[t + 1:], mono)
            out[key] = out.get(key, 0) + sign * c
        if sum(mono) < M:
            key = (wedges, mono[:k] + (mono[k] + 1,) + mono[k + 1:])
            out[key] = out.get(key, 0) + c
    return {key: c for key, c in out.items() if c}


def apply_monomial(exps, v: Vector, m: int, M: int, d: int, n: int) -> Vector:
    """``f^exps v`` with ``exps`` indexed like the roots of R(d)."""
    for (i, j), e in zip(_roots(d, n), exps):
        for _ in range(e):
            if not v:
                return v
            v = apply_root((i, j), v, m, M, d, n, check=False)
    return v


def cyclic_span_dim(d: int, n: int, m: int, M: int, cap: int = DEFAULT_CAP) -> int:
    """Dimension of ``U(a_d)`` applied to the cyclic vector, by breadth-first closure."""
    echelon = SparseEchelon()
    start = cyclic_vector(d, n, m, M)
    echelon.add(start)
    queue = [start]
    roots = _roots(d, n)
    while queue:
        nxt = []
        for v in queue:
            for op in roots:
                w = apply_root(op, v, m, M, d, n, check=False)
                if w and echelon.add(w):
                    if len(echelon) > cap:
                        raise CapExceeded(f"span exceeds {cap} vectors")
                    nxt.append(w)
        queue = nxt
    return len(echelon)


def monomial_vectors(d: int, n: int, m: int, M: int) -> dict[tuple[int, ...], Vector]:
    """``f^s l_{m,M}`` for every ``s`` in S(m, M) of R(d)."""
    points = enumerate_points(root_poset(d, n).poset, m, M)
    cache: dict[tuple[int, ...], Vector] = {(0,) * (d * (n - d)): cyclic_vector(d, n, m, M)}
    roots = _roots(d, n)

    def vec(s):
        if s in cache:
            return cache[s]
        k = max(a for a, e in enumerate(s) if e)
        prev = s[:k] + (s[k] - 1,) + s[k + 1:]
        cache[s] = apply_root(roots[k], vec(prev), m, M, d, n, check=False)
        return cache[s]

    # S(m, M) is a down-set, so every prefix lookup stays inside it
    return {s: vec(s) for s in points}


def basis_check(d: int, n: int, m: int, M: int, cap: int = DEFAULT_CAP) -> dict:
    vectors = monomial_vectors(d, n, m, M)
    if len(vectors) > cap:
        raise CapExceeded(f"{len(vectors)} monomials exceed cap {cap}")
    labels = sorted({lab for v in vectors.values() for lab in v})
    col = {lab: c for c, lab in enumerate(labels)}
    rows = []
    for v in vectors.values():
        row = [0] * len(labels)
        for lab, c in v.items():
            row[col[lab]] = c
        rows.append(row)
    r = bareiss_rank(rows)
    span = cyclic_span_dim(d, n, m, M, cap)
    return {
        "d": d, "n": n, "m": m, "M": M,
        "points": len(vectors),
        "rank": r,
        "span_dim": span,
        "independent": r == len(vectors),
        "full_span": r == span,
        "ok": r == len(vectors) == span,
    }


def _random_composition(total: int, parts: int, rng: random.Random) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def relation_check(d: int, n: int, m: int, M: int, samples: int = 100, seed: int = 0) -> dict:
    """Sample monomials of degree ``r*m + M + 1`` over ``r`` distinct roots; all must kill
    the cyclic vector.  Boundary monomials (degree ``r*m + M``) lying in S(m, M)
    must not."""
    if samples < 1:
        raise BadParams("samples must be positive")
    rng = random.Random(seed)
    roots = _roots(d, n)
    N = len(roots)
    P = root_poset(d, n).poset
    ell = cyclic_vector(d, n, m, M)
    vanishing = []
    # r positive exponents need r <= r*m + M + 1, which caps r at M + 1 when m = 0
    r_top = N if m > 0 else min(N, M + 1)
    for _ in range(samples):
        r = rng.randint(1, r_top)
        chosen = rng.sample(range(N), r)
        b = _random_composition(r * m + M + 1, r, rng)
        exps = [0] * N
        for a, e in zip(chosen, b):
            exps[a] = e
        if apply_monomial(exps, ell, m, M, d, n):
            raise RelationViolated(f"f^{exps} l_(m,M) != 0 although degree {sum(exps)} > {r}*{m}+{M}")
        vanishing.append(exps)

    probes = []
    if m + M > 0:
        # a single root to the power m + M always lies in S(m, M)
        probes.append([m + M if a == 0 else 0 for a in range(N)])
        for _ in range(samples):
            r = rng.randint(1, N)
            total = r * m + M
            if total < r:
                continue
            chosen = rng.sample(range(N), r)
            exps = [0] * N
            for a, e in zip(chosen, _random_composition(total, r, rng)):
                exps[a] = e
            if membership(P, exps, m, M):
                probes.append(exps)
    nonzero = [bool(apply_monomial(e, ell, m, M, d, n)) for e in probes]
    return {
        "d": d, "n": n, "m": m, "M": M,
        "seed": seed,
        "samples": samples,
        "vanishing_checked": len(vanishing),
        "boundary_probes": len(probes),
        "boundary_nonzero": sum(nonzero),
        "ok": all(nonzero),
    }


def pbw_grading_check(d: int, n: int, m: int, M: int) -> dict:
    """Every root operator raises the PBW grade of each reachable label by one."""
    roots = _roots(d, n)
    start = cyclic_vector(d, n, m, M)
    seen = set(start)
    frontier = list(start)
    checked = bad = 0
    while frontier:
        nxt = []
        for label in frontier:
            g = grade(label, d)
            for op in roots:
                for out in apply_root(op, {label: 1}, m, M, d, n, check=False):
                    checked += 1
                    if grade(out, d) != g + 1:
                        bad += 1
                    if out not in seen:
                        seen.add(out)
                        nxt.append(out)
        frontier = nxt
    return {
        "d": d, "n": n, "m": m, "M": M,
        "labels": len(seen),
        "transitions": checked,
        "violations": bad,
        "cyclic_grade": grade(next(iter(start)), d),
        "ok": bad == 0,
    }


def ambient_dim(d: int, n: int, m: int, M: int) -> int:
    N = d * (n - d)
    return comb(n, d) ** m * comb(N + M, M)
