"""The root poset R(d) of the abelian radical and FFLV-type data on it.

The roots are ``a_{i,j}`` for ``1 <= i <= d <= j <= n - 1`` ordered as a grid:
``a_{i1,j1} <= a_{i2,j2}`` iff ``i1 <= i2`` and ``j1 <= j2``.  Maximal chains
are the Dyck paths from ``a_{1,d}`` to ``a_{d,n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import BadParams, NonIntegerResult, TooLarge
from .polytope import IntPoint, enumerate_points, membership
from .poset import Chain, Poset, build_poset, maximal_chains

INEQUALITY_CAP = 200_000


@dataclass(frozen=True)
class RootPoset:
    d: int
    n: int
    poset: Poset
    roots: tuple[tuple[int, int], ...]  # element index -> (i, j)

    @property
    def index_map(self) -> dict[tuple[int, int], int]:
        return {r: k for k, r in enumerate(self.roots)}

    def index(self, i: int, j: int) -> int:
        try:
            return self.roots.index((i, j))
        except ValueError:
            raise BadParams(f"(i, j) = ({i}, {j}) is not a root for d={self.d}, n={self.n}") from None


def _check_dn(d: int, n: int) -> None:
    if not 1 <= d < n:
        raise BadParams(f"need 1 <= d < n, got d={d}, n={n}")


def root_label(i: int, j: int) -> str:
    return f"a_{i}_{j}"


def root_poset(d: int, n: int) -> RootPoset:
    _check_dn(d, n)
    roots = tuple((i, j) for i in range(1, d + 1) for j in range(d, n))
    labels = [root_label(i, j) for i, j in roots]
    covers = []
    for i, j in roots:
        if i + 1 <= d:
            covers.append((root_label(i, j), root_label(i + 1, j)))
        if j + 1 <= n - 1:
            covers.append((root_label(i, j), root_label(i, j + 1)))
    return RootPoset(d, n, build_poset(labels, covers), roots)


def dyck_paths(rp: RootPoset) -> list[Chain]:
    return list(maximal_chains(rp.poset))


def fflv_points(d: int, n: int, m: int) -> list[IntPoint]:
    if m < 0:
        raise BadParams("m must be nonnegative")
    return enumerate_points(root_poset(d, n).poset, m, 0)


def weyl_dim(d: int, n: int, m: int) -> int:
    """Dimension of the irreducible sl_n module of highest weight m * omega_d."""
    _check_dn(d, n)
    if m < 0:
        raise BadParams("m must be nonnegative")
    prod = Fraction(1)
    for i in range(1, d + 1):
        for j in range(d + 1, n + 1):
            prod *= Fraction(m + j - i, j - i)
    if prod.denominator != 1:
        raise NonIntegerResult(f"dimension product {prod} is not an integer")
    return int(prod)


def inequality_system(
    d: int, n: int, m: int, M: int, r_max: int, cap: int = INEQUALITY_CAP
) -> list[tuple[frozenset[int], int]]:
    """Path-union inequalities ``sum(s[p_1 | ... | p_r]) <= r*m + M`` for ``r <= r_max``.

    ``r_max`` is clamped to ``min(d, n - d)``.  Deduplicated by support,
    keeping the smallest bound; sorted by
    (bound, sorted support) for stable output.
    """
    rp = root_poset(d, n)
    if r_max < 1:
        raise BadParams(f"r_max must be at least 1, got {r_max}")
    # unions of more than min(d, n - d) paths add nothing new
    r_max = min(r_max, d, n - d)
    paths = [frozenset(p) for p in dyck_paths(rp)]
    count = sum(comb(len(paths), r) for r in range(1, r_max + 1))
    if count > cap:
        raise TooLarge(f"{count} path subsets exceed cap {cap}")
    best: dict[frozenset[int], int] = {}
    for r in range(1, r_max + 1):
        bound = r * m + M
        for combo in combinations(paths, r):
            support = frozenset().union(*combo)
            if support not in best or bound < best[support]:
                best[support] = bound
    return sorted(best.items(), key=lambda kv: (kv[1], sorted(kv[0])))


def member_by_paths(system: list[tuple[frozenset[int], int]], s) -> bool:
    if any(x < 0 for x in s):
        return False
    return all(sum(s[a] for a in support) <= bound for support, bound in system)


def member_by_excess(rp: RootPoset, s, m: int, M: int) -> bool:
    return membership(rp.poset, s, m, M)
