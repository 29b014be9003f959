"""Finite posets and the Dilworth machinery (widths, antichains, chain covers).

A :class:`Poset` stores its strict order as a dense, transitively closed
boolean matrix; comparability is an O(1) lookup.  Widths are computed by
bipartite matching on the comparability graph (split every element into a
left and a right copy, join ``a -> b`` whenever ``a < b``): a maximum matching
of size ``k`` glues the ``|S|`` singletons into ``|S| - k`` chains, and König's
vertex cover yields an antichain of the same size.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import CycleDetected, IndexOutOfRange, MalformedInput, UnknownLabel

Chain = tuple[int, ...]
Antichain = tuple[int, ...]


@dataclass(frozen=True)
class Poset:
    labels: tuple[str, ...]
    less: tuple[tuple[bool, ...], ...]
    # bitmasks of strictly larger / strictly smaller elements, derived from `less`
    up: tuple[int, ...] = field(init=False, repr=False, compare=False)
    down: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.labels)
        up = []
        down = [0] * n
        for a in range(n):
            mask = 0
            for b in range(n):
                if self.less[a][b]:
                    mask |= 1 << b
                    down[b] |= 1 << a
            up.append(mask)
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "down", tuple(down))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def lt(self, a: int, b: int) -> bool:
        return self.less[a][b]

    def comparable(self, a: int, b: int) -> bool:
        return self.less[a][b] or self.less[b][a]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown label {label!r}") from None

    def incomparable_mask(self, a: int) -> int:
        """Elements other than ``a`` that are incomparable to ``a``."""
        full = (1 << self.size) - 1
        return full & ~(self.up[a] | self.down[a] | (1 << a))

    def cover_relations(self) -> list[tuple[int, int]]:
        """Transitive reduction: pairs ``a < b`` with nothing strictly between."""
        covers = []
        for a in range(self.size):
            for b in range(self.size):
                if self.less[a][b] and not (self.up[a] & self.down[b]):
                    covers.append((a, b))
        return covers

    def linear_extension(self) -> list[int]:
        """Topological order, smallest available index first."""
        indeg = [bin(self.down[b]).count("1") for b in range(self.size)]
        heap = [b for b in range(self.size) if indeg[b] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            a = heapq.heappop(heap)
            order.append(a)
            for b in range(self.size):
                if self.less[a][b]:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        heapq.heappush(heap, b)
        return order

    def is_chain(self, elements: Sequence[int]) -> bool:
        return all(self.less[a][b] for a, b in zip(elements, elements[1:]))

    def is_antichain(self, elements: Iterable[int]) -> bool:
        elems = list(elements)
        if len(set(elems)) != len(elems):
            return False
        return not any(
            self.comparable(a, b) for i, a in enumerate(elems) for b in elems[i + 1:]
        )

    def to_dict(self) -> dict:
        return {
            "elements": list(self.labels),
            "relations": [[self.labels[a], self.labels[b]] for a, b in self.cover_relations()],
        }


def build_poset(labels: Sequence[str], cover_relations: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from generating relations ``a < b``; the closure is computed here."""
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise MalformedInput("duplicate element labels")
    pos = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    succ: list[set[int]] = [set() for _ in range(n)]
    for pair in cover_relations:
        a, b = pair
        if a not in pos:
            raise UnknownLabel(f"unknown label {a!r}")
        if b not in pos:
            raise UnknownLabel(f"unknown label {b!r}")
        if a == b:
            raise CycleDetected(f"relation {a!r} < {a!r} is reflexive")
        succ[pos[a]].add(pos[b])

    # iterative DFS; colour 1 = on stack, 2 = finished
    colour = [0] * n
    reach = [0] * n
    for root in range(n):
        if colour[root]:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        colour[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                colour[v] = 2
                for w in succ[v]:
                    reach[v] |= reach[w] | (1 << w)
                continue
            if colour[nxt] == 1:
                raise CycleDetected(f"cycle through {labels[nxt]!r}")
            if colour[nxt] == 0:
                colour[nxt] = 1
                stack.append((nxt, iter(sorted(succ[nxt]))))
    less = tuple(tuple(bool(reach[a] >> b & 1) for b in range(n)) for a in range(n))
    return Poset(labels, less)


def poset_from_json(data: dict | str) -> Poset:
    """Parse ``{"elements": [...], "relations": [[a, b], ...]}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "elements" not in data:
        raise MalformedInput("poset JSON needs an 'elements' list")
    rels = data.get("relations", [])
    if not all(isinstance(r, (list, tuple)) and len(r) == 2 for r in rels):
        raise MalformedInput("relations must be [a, b] pairs")
    return build_poset(data["elements"], [(str(a), str(b)) for a, b in rels])


def chain_poset(n: int) -> Poset:
    labels = [f"x{i}" for i in range(n)]
    return build_poset(labels, list(zip(labels, labels[1:])))


def antichain_poset(n: int) -> Poset:
    return build_poset([f"x{i}" for i in range(n)], [])


def random_poset(n: int, p: float, rng) -> Poset:
    """Random order: relate ``i < j`` (for ``i < j``) with probability ``p``, then close."""
    labels = [f"x{i}" for i in range(n)]
    rels = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_poset(labels, rels)


def _check_subset(P: Poset, subset: Iterable[int] | None) -> list[int]:
    if subset is None:
        return list(range(P.size))
    elems = sorted(set(subset))
    for a in elems:
        if not 0 <= a < P.size:
            raise IndexOutOfRange(f"element index {a} outside 0..{P.size - 1}")
    return elems


def _hopcroft_karp(P: Poset, elems: list[int]) -> tuple[dict[int, int], dict[int, int]]:
    """Maximum matching between left copies and right copies, edge a -> b iff a < b."""
    adj = {a: [b for b in elems if P.less[a][b]] for a in elems}
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    inf = len(elems) + 1

    while True:
        dist: dict[int, int] = {}
        queue = deque()
        for a in elems:
            if a not in match_l:
                dist[a] = 0
                queue.append(a)
        found = False
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                a2 = match_r.get(b)
                if a2 is None:
                    found = True
                elif a2 not in dist:
                    dist[a2] = dist[a] + 1
                    queue.append(a2)
        if not found:
            return match_l, match_r

        def augment(a: int) -> bool:
            for b in adj[a]:
                a2 = match_r.get(b)
                if a2 is None or (dist.get(a2) == dist[a] + 1 and augment(a2)):
                    match_l[a] = b
                    match_r[b] = a
                    return True
            dist[a] = inf
            return False

        for a in elems:
            if a not in match_l:
                augment(a)


def width(P: Poset, subset: Iterable[int] | None = None) -> int:
    """Size of a maximum antichain of the induced subposet (0 for the empty set)."""
    elems = _check_subset(P, subset)
    match_l, _ = _hopcroft_karp(P, elems)
    return len(elems) - len(match_l)


def min_chain_cover(P: Poset, subset: Iterable[int] | None = None) -> list[Chain]:
    elems = _check_subset(P, subset)
    match_l, match_r = _hopcroft_karp(P, elems)
    chains = []
    for a in elems:
        if a in match_r:
            continue
        chain = [a]
        while chain[-1] in match_l:
            chain.append(match_l[chain[-1]])
        chains.append(tuple(chain))
    return chains


def max_antichain(P: Poset, subset: Iterable[int] | None = None) -> Antichain:
    """König construction: alternating search from unmatched left vertices.

    With ``Z`` the reachable set, the minimum vertex cover is
    ``(L \\ Z) | (R & Z)``; elements with neither copy in the cover form a
    maximum antichain.
    """
    elems = _check_subset(P, subset)
    match_l, match_r = _hopcroft_karp(P, elems)
    seen_l = {a for a in elems if a not in match_l}
    seen_r: set[int] = set()
    queue = deque(sorted(seen_l))
    while queue:
        a = queue.popleft()
        for b in elems:
            if P.less[a][b] and b not in seen_r:
                seen_r.add(b)
                a2 = match_r.get(b)
                if a2 is not None and a2 not in seen_l:
                    seen_l.add(a2)
                    queue.append(a2)
    return tuple(a for a in elems if a in seen_l and a not in seen_r)


def maximal_chains(P: Poset) -> Iterator[Chain]:
    """Every inclusion-maximal chain, as a walk along cover edges from a minimal element."""
    succ: list[list[int]] = [[] for _ in range(P.size)]
    for a, b in P.cover_relations():
        succ[a].append(b)
    minimal = [a for a in range(P.size) if not P.down[a]]
    for root in minimal:
        stack = [(root,)]
        while stack:
            path = stack.pop()
            nxt = succ[path[-1]]
            if not nxt:
                yield path
            for b in reversed(nxt):
                stack.append(path + (b,))
