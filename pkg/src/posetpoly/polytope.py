"""The point sets S(m, M) of a poset and the violation-excess oracle.

``S(m, M)`` is the set of ``z >= 0`` with ``sum(z[P']) <= m * w(P') + M`` for
every subposet ``P'``.  Everything here is driven by the excess

    M(z) = max(0, max_{P'} sum(z[P']) - m * w(P'))

so that ``z`` lies in ``S(m, M)`` iff ``z >= 0`` and ``M(z) <= M``.  Two
independent evaluations are provided: ``brute`` (a subset DP over all
``2^|P|`` subposets with widths from an antichain recursion) and ``flow`` (a
min-cost chain packing, solved by successive shortest paths).
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import (
    BadParams,
    BruteSizeExceeded,
    HypothesisFails,
    NoExcess,
    NotInSm0,
    NotMember,
    SearchExhausted,
)
from .poset import Antichain, Poset

IntPoint = tuple[int, ...]

DEFAULT_BRUTE_CAP = 20
# largest poset for which enumeration filters through the dense subset table
TABLE_CAP = 16


def default_brute_cap() -> int:
    return int(os.environ.get("POSETPOLY_BRUTE_CAP", DEFAULT_BRUTE_CAP))


@dataclass(frozen=True)
class Params:
    m: int
    M: int

    def __post_init__(self):
        if self.m < 0 or self.M < 0:
            raise BadParams(f"m and M must be nonnegative, got m={self.m}, M={self.M}")

    def __add__(self, other: "Params") -> "Params":
        return Params(self.m + other.m, self.M + other.M)


@dataclass(frozen=True)
class DecompositionCert:
    """``z = sum(indicator(A) for A in antichains) + remainder``."""

    antichains: tuple[Antichain, ...]
    remainder: IntPoint

    def reconstruct(self) -> IntPoint:
        z = list(self.remainder)
        for A in self.antichains:
            for a in A:
                z[a] += 1
        return tuple(z)

    def to_dict(self, P: Poset) -> dict:
        return {
            "antichains": [[P.labels[a] for a in A] for A in self.antichains],
            "remainder": {P.labels[a]: v for a, v in enumerate(self.remainder) if v},
            "remainder_total": sum(self.remainder),
        }


def _check_vector(P: Poset, z: Sequence) -> list:
    if len(z) != P.size:
        raise BadParams(f"vector has length {len(z)}, poset has {P.size} elements")
    out = []
    for x in z:
        if isinstance(x, (int, np.integer)):
            out.append(int(x))
        elif isinstance(x, Rational):
            out.append(Fraction(x))
        else:
            raise BadParams(f"coordinate {x!r} is not an exact rational")
    return out


# ---------------------------------------------------------------- brute route


@lru_cache(maxsize=64)
def width_table(P: Poset) -> tuple[int, ...]:
    """Width of every induced subposet, indexed by bitmask.

    Maximum-antichain recursion on the lowest element ``v`` of ``S``: either
    skip ``v`` or take it and keep only elements incomparable to it.  Shares
    nothing with the matching code in :mod:`poset`.
    """
    n = P.size
    inc = [P.incomparable_mask(a) for a in range(n)]
    w = [0] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        v = low.bit_length() - 1
        skip = w[S ^ low]
        take = 1 + w[S & inc[v]]
        w[S] = take if take > skip else skip
    return tuple(w)


def excess_brute(P: Poset, z: Sequence, m: int, brute_cap: int | None = None):
    cap = default_brute_cap() if brute_cap is None else brute_cap
    if P.size > cap:
        raise BruteSizeExceeded(f"subset enumeration over {P.size} elements exceeds cap {cap}")
    z = _check_vector(P, z)
    w = width_table(P)
    sums = [0] * (1 << P.size)
    best = 0
    for S in range(1, 1 << P.size):
        low = S & -S
        s = sums[S ^ low] + z[low.bit_length() - 1]
        sums[S] = s
        val = s - m * w[S]
        if val > best:
            best = val
    return best


# ----------------------------------------------------------------- flow route


def excess_flow(P: Poset, z: Sequence, m: int) -> tuple:
    """Solve the chain-packing program as a min-cost flow.

    Returns ``(M(z), chains)`` where ``chains`` are the disjoint chains carried
    by an optimal flow; their union ``P'`` attains the maximum.
    """
    z = _check_vector(P, z)
    n = P.size
    src, snk = 0, 1
    N = 2 + 2 * n
    # residual graph: edge = [to, cap, cost, index of reverse edge, is_forward]
    graph: list[list[list]] = [[] for _ in range(N)]

    def add_edge(u, v, cost):
        graph[u].append([v, 1, cost, len(graph[v]), True])
        graph[v].append([u, 0, -cost, len(graph[u]) - 1, False])

    for b in range(n):
        add_edge(src, 2 + 2 * b, 0)
        add_edge(2 + 2 * b, 3 + 2 * b, -z[b])
        add_edge(3 + 2 * b, snk, m)
    for b in range(n):
        for g in range(n):
            if P.less[b][g]:
                add_edge(3 + 2 * b, 2 + 2 * g, 0)

    # negative arcs only sit on the initial DAG, so one relaxation sweep in
    # topological order gives exact shortest distances as starting potentials
    order = [src]
    for b in P.linear_extension():
        order += [2 + 2 * b, 3 + 2 * b]
    order.append(snk)
    pot: list = [None] * N
    pot[src] = 0
    for u in order:
        if pot[u] is None:
            continue
        for v, cap, cost, _, _ in graph[u]:
            if cap and (pot[v] is None or pot[u] + cost < pot[v]):
                pot[v] = pot[u] + cost

    total = 0
    while True:
        dist: list = [None] * N
        prev: list = [None] * N
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d != dist[u]:
                continue
            for i, (v, cap, cost, _, _) in enumerate(graph[u]):
                if not cap:
                    continue
                nd = d + cost + pot[u] - pot[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    prev[v] = (u, i)
                    heapq.heappush(heap, (nd, v))
        if dist[snk] is None:
            break
        path_cost = dist[snk] + pot[snk] - pot[src]
        if path_cost >= 0:
            break
        for v in range(N):
            if dist[v] is not None:
                pot[v] += dist[v]
        v = snk
        while v != src:
            u, i = prev[v]
            edge = graph[u][i]
            edge[1] -= 1
            graph[v][edge[3]][1] += 1
            v = u
        total += path_cost

    def used(u):
        return [v for v, cap, _, _, fwd in graph[u] if fwd and cap == 0]

    chains = []
    for v in used(src):
        chain = [(v - 2) // 2]
        nxt = used(3 + 2 * chain[-1])
        while nxt[0] != snk:
            chain.append((nxt[0] - 2) // 2)
            nxt = used(3 + 2 * chain[-1])
        chains.append(tuple(chain))
    return -total, chains


# --------------------------------------------------------------- public oracle


def violation_excess(P: Poset, z: Sequence, m: int, method: str = "flow", brute_cap: int | None = None):
    if m < 0:
        raise BadParams("m must be nonnegative")
    if method == "flow":
        return excess_flow(P, z, m)[0]
    if method == "brute":
        return excess_brute(P, z, m, brute_cap)
    raise BadParams(f"unknown method {method!r}")


def membership(P: Poset, z: Sequence, m: int, M: int, method: str = "flow", brute_cap: int | None = None) -> bool:
    """Whether ``z`` lies in X(m, M); integer ``z`` then lies in S(m, M).

    Rational coordinates are accepted and handled exactly.
    """
    zz = _check_vector(P, z)
    if any(x < 0 for x in zz):
        return False
    return violation_excess(P, zz, m, method, brute_cap) <= M


def max_chain_sum(P: Poset, z: Sequence):
    """Largest sum of ``z`` along a chain (0 for the empty chain)."""
    best_end = [0] * P.size
    for a in P.linear_extension():
        below = [best_end[b] for b in range(P.size) if P.less[b][a]]
        best_end[a] = z[a] + max([0, *below])
    return max([0, *best_end])


# ---------------------------------------------------------------- enumeration


class _BatchOracle:
    """Vectorised M(z) for nonnegative integer rows, via the subset table.

    For ``z >= 0`` only subsets that cannot grow without raising their width
    matter (any other subset extends to one of those at the same width).
    """

    def __init__(self, P: Poset, m: int):
        w = width_table(P)
        n = P.size
        dominant = [
            S for S in range(1 << n)
            if all(w[S | (1 << x)] > w[S] for x in range(n) if not S >> x & 1)
        ]
        self.masks = np.array(
            [[S >> a & 1 for S in dominant] for a in range(n)], dtype=np.int64
        ).reshape(n, len(dominant))
        self.penalty = m * np.array([w[S] for S in dominant], dtype=np.int64)
        self.chunk = max(1, (1 << 22) // max(1, len(dominant)))

    def __call__(self, Z: np.ndarray) -> np.ndarray:
        out = np.empty(len(Z), dtype=np.int64)
        for start in range(0, len(Z), self.chunk):
            block = Z[start:start + self.chunk] @ self.masks - self.penalty
            out[start:start + self.chunk] = np.maximum(block.max(axis=1), 0)
        return out


def _enumerate_array(P: Poset, m: int, M: int) -> np.ndarray:
    Params(m, M)
    n = P.size
    bound = m + M
    ext = P.linear_extension()
    pts = np.zeros((1, n), dtype=np.int64)
    if n == 0:
        return pts
    if n <= TABLE_CAP:
        oracle = _BatchOracle(P, m)
        keep_fn = lambda cand: oracle(cand) <= M  # noqa: E731
    else:
        def keep_fn(cand):
            ok = np.zeros(len(cand), dtype=bool)
            for r, row in enumerate(cand.tolist()):
                if max_chain_sum(P, row) <= bound:
                    ok[r] = excess_flow(P, row, m)[0] <= M
            return ok

    # S(m, M) is a down-set, so a partial point (unset coordinates = 0) that
    # fails membership has no completion: the frontier is exact at every step
    for a in ext:
        blocks = []
        for v in range(bound + 1):
            blk = pts.copy()
            blk[:, a] = v
            blocks.append(blk)
        cand = np.concatenate(blocks)
        pts = cand[keep_fn(cand)]
    order = np.lexsort(tuple(pts[:, a] for a in reversed(ext)))
    return pts[order]


@lru_cache(maxsize=256)
def _enumerate_cached(P: Poset, m: int, M: int) -> np.ndarray:
    pts = _enumerate_array(P, m, M)
    pts.setflags(write=False)
    return pts


def enumerate_points(P: Poset, m: int, M: int) -> list[IntPoint]:
    """All of S(m, M), lexicographic in the poset's linear extension."""
    return [tuple(row) for row in _enumerate_array(P, m, M).tolist()]


# -------------------------------------------------------------- decomposition


def strip_unit(P: Poset, z: Sequence[int], m: int) -> int:
    """Element ``d`` in the support of ``z`` with ``M(z - e_d) <= M(z) - 1``.

    Lowest index first.
    """
    z = _check_vector(P, z)
    if any(x < 0 for x in z):
        raise BadParams("strip_unit needs a nonnegative vector")
    current = violation_excess(P, z, m)
    if current <= 0:
        raise NoExcess("M(z) = 0, nothing to strip")
    for d in range(P.size):
        if z[d] < 1:
            continue
        z[d] -= 1
        after = violation_excess(P, z, m)
        z[d] += 1
        if after <= current - 1:
            return d
    raise SearchExhausted(f"no unit of z={z} lowers M(z)={current}")


def strip_antichain(P: Poset, z: Sequence[int], m: int) -> Antichain:
    """Minimal elements of the support of ``z`` for ``z`` in S(m, 0), ``m >= 1``.

    Every chain of z-sum ``m`` starts in this antichain, so removing it lands
    in S(m - 1, 0).
    """
    z = _check_vector(P, z)
    if m < 1:
        raise BadParams("strip_antichain needs m >= 1")
    if any(x < 0 for x in z) or max_chain_sum(P, z) > m:
        raise NotInSm0(f"point is not in S({m}, 0)")
    support = [a for a in range(P.size) if z[a] > 0]
    return tuple(a for a in support if not any(P.less[b][a] for b in support))


def decompose(P: Poset, z: Sequence[int], m: int, M: int) -> DecompositionCert:
    z = _check_vector(P, z)
    Params(m, M)
    if not membership(P, z, m, M):
        raise NotMember(f"point is not in S({m}, {M})")
    remainder = [0] * P.size
    while violation_excess(P, z, m) > 0:
        d = strip_unit(P, z, m)
        z[d] -= 1
        remainder[d] += 1
    antichains = []
    for k in range(m, 0, -1):
        A = strip_antichain(P, z, k)
        for a in A:
            z[a] -= 1
        antichains.append(A)
    if any(z):
        raise SearchExhausted(f"residue {z} left after {m} antichain strips")
    return DecompositionCert(tuple(antichains), tuple(remainder))


def partition_poset(P: Poset, m: int, M: int) -> DecompositionCert:
    """Split P into ``m`` antichains and a set of at most ``M`` elements."""
    ones = [1] * P.size
    excess = violation_excess(P, ones, m)
    if excess > M:
        raise HypothesisFails(f"|P'| <= {m} w(P') + {M} fails (M(1) = {excess})")
    return decompose(P, ones, m, M)


# ------------------------------------------------------------------ Minkowski


def minkowski_sum(S1: Sequence[IntPoint], S2: Sequence[IntPoint]) -> set[IntPoint]:
    """All pairwise sums, as a set."""
    return {tuple(a + b for a, b in zip(x, y)) for x in S1 for y in S2}


def _maximal_rows(pts: np.ndarray, codes: np.ndarray, radix: int) -> np.ndarray:
    """Rows of a down-set with no coordinate that can be raised inside the set."""
    n = pts.shape[1]
    is_max = np.ones(len(pts), dtype=bool)
    for a in range(n):
        # a coordinate at radix - 1 cannot rise without a carry
        raisable = pts[:, a] < radix - 1
        is_max &= ~(raisable & np.isin(codes + radix ** a, codes))
    return is_max


def minkowski_check(P: Poset, p1: Params, p2: Params, brute_cap: int | None = None) -> bool:
    """Compare S(p1) + S(p2) with S(p1 + p2) as sets.

    All three sets are down-sets in Z_{>=0}^P, and a sum of down-sets is the
    down-closure of the sums of their maximal elements.  Equality therefore
    holds iff every sum of maximal pairs lies in S(p1 + p2) and every maximal
    point of S(p1 + p2) is such a sum.
    """
    cap = default_brute_cap() if brute_cap is None else brute_cap
    if P.size > cap:
        raise BruteSizeExceeded(f"enumeration over {P.size} elements exceeds cap {cap}")
    total = p1 + p2
    A = _enumerate_cached(P, p1.m, p1.M)
    B = _enumerate_cached(P, p2.m, p2.M)
    T = _enumerate_cached(P, total.m, total.M)
    radix = total.m + total.M + 1
    if radix ** P.size >= 2 ** 62:
        return minkowski_sum(map(tuple, A.tolist()), map(tuple, B.tolist())) == set(map(tuple, T.tolist()))
    weights = radix ** np.arange(P.size, dtype=np.int64)
    ca, cb, ct = A @ weights, B @ weights, T @ weights
    ga = ca[_maximal_rows(A, ca, radix)]
    gb = cb[_maximal_rows(B, cb, radix)]
    sums = np.unique((ga[:, None] + gb[None, :]).ravel())
    if not np.isin(sums, ct).all():
        return False
    return bool(np.isin(ct[_maximal_rows(T, ct, radix)], sums).all())
