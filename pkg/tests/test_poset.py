import random

import pytest
from hypothesis import given, settings, strategies as st

from posetpoly import (
    antichain_poset, build_poset, chain_poset, max_antichain, maximal_chains,
    min_chain_cover, poset_from_json, random_poset, width,
)
from posetpoly.errors import CycleDetected, IndexOutOfRange, MalformedInput, UnknownLabel

from conftest import naive_width


def test_grid_examples(grid):
    assert width(grid) == 2
    assert max_antichain(grid) == (1, 2)
    assert sorted(min_chain_cover(grid)) == [(0, 1, 3), (2,)]
    assert sorted(maximal_chains(grid)) == [(0, 1, 3), (0, 2, 3)]


def test_transitive_closure(chain3):
    assert chain3.lt(0, 2)
    assert not chain3.lt(2, 0)
    assert width(chain3) == 1


def test_trivial_shapes():
    assert width(chain_poset(5)) == 1
    assert width(antichain_poset(5)) == 5
    assert width(chain_poset(0)) == 0


def test_errors():
    with pytest.raises(CycleDetected):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(UnknownLabel):
        build_poset(["a"], [("a", "z")])
    with pytest.raises(MalformedInput):
        build_poset(["a", "a"], [])
    with pytest.raises(IndexOutOfRange):
        width(chain_poset(3), [5])


def test_json_round_trip(grid):
    again = poset_from_json(grid.to_dict())
    assert again.labels == grid.labels and again.up == grid.up


def test_linear_extension(grid):
    ext = grid.linear_extension()
    pos = {a: k for k, a in enumerate(ext)}
    assert all(pos[a] < pos[b] for a, b in grid.cover_relations())


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 9), st.floats(0, 1), st.integers(0, 2**32))
def test_dilworth_against_exhaustive(n, p, seed):
    P = random_poset(n, p, random.Random(seed))
    w = width(P)
    assert w == naive_width(P, range(n))
    anti = max_antichain(P)
    cover = min_chain_cover(P)
    assert len(anti) == w == len(cover)
    assert P.is_antichain(anti)
    assert all(P.is_chain(c) for c in cover)
    assert sorted(a for c in cover for a in c) == list(range(n))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.floats(0, 1), st.integers(0, 2**32), st.data())
def test_subset_width(n, p, seed, data):
    P = random_poset(n, p, random.Random(seed))
    sub = data.draw(st.lists(st.integers(0, n - 1), unique=True))
    assert width(P, sub) == naive_width(P, sub)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.floats(0, 1), st.integers(0, 2**32))
def test_maximal_chains_are_saturated(n, p, seed):
    P = random_poset(n, p, random.Random(seed))
    covers = set(P.cover_relations())
    for c in maximal_chains(P):
        assert all((a, b) in covers for a, b in zip(c, c[1:]))
        assert not P.down[c[0]] & ~(1 << c[0]) and not P.up[c[-1]] & ~(1 << c[-1])
