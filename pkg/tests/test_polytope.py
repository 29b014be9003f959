import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from posetpoly import (
    Params, antichain_poset, chain_poset, decompose, enumerate_points, membership,
    minkowski_check, partition_poset, random_poset, strip_antichain, strip_unit,
    violation_excess,
)
from posetpoly.errors import (
    BadParams, BruteSizeExceeded, HypothesisFails, NoExcess, NotInSm0, NotMember,
)
from posetpoly.polytope import excess_flow, max_chain_sum, minkowski_sum

from conftest import naive_excess, naive_points


def test_excess_examples(grid, chain3):
    assert violation_excess(chain3, [1, 1, 1], 1) == 2
    assert violation_excess(grid, [1, 1, 1, 1], 1) == 2
    assert violation_excess(grid, [0, 0, 0, 0], 1) == 0


def test_point_counts(grid):
    assert len(enumerate_points(grid, 1, 0)) == 6
    assert len(enumerate_points(grid, 0, 1)) == 5
    assert len(enumerate_points(grid, 1, 1)) == 19


@pytest.mark.parametrize("m,M", [(0, 0), (0, 2), (1, 0), (1, 1), (2, 0), (2, 1)])
def test_enumeration_matches_box_search(grid, m, M):
    assert enumerate_points(grid, m, M) == naive_points(grid, m, M)


def test_enumeration_random_posets():
    rng = random.Random(3)
    for _ in range(15):
        P = random_poset(rng.randint(1, 5), rng.random(), rng)
        m, M = rng.randint(0, 2), rng.randint(0, 2)
        assert enumerate_points(P, m, M) == naive_points(P, m, M)


def test_trivial_polytopes():
    # a chain with M = 0: all chain sums <= m
    assert len(enumerate_points(chain_poset(3), 2, 0)) == 10
    # an antichain: every coordinate independently <= m when M = 0
    assert len(enumerate_points(antichain_poset(3), 2, 0)) == 27


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7), st.floats(0, 1), st.integers(0, 2**32), st.integers(0, 3), st.data())
def test_flow_and_brute_agree_with_exhaustive(n, p, seed, m, data):
    P = random_poset(n, p, random.Random(seed))
    z = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    expected = naive_excess(P, z, m)
    assert violation_excess(P, z, m, "flow") == expected
    assert violation_excess(P, z, m, "brute") == expected


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.floats(0, 1), st.integers(0, 2**32), st.integers(0, 3), st.data())
def test_flow_witness_chains(n, p, seed, m, data):
    P = random_poset(n, p, random.Random(seed))
    z = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    value, chains = excess_flow(P, z, m)
    assert all(P.is_chain(c) for c in chains)
    used = [a for c in chains for a in c]
    assert len(used) == len(set(used))
    assert max(0, sum(z[a] for a in used) - m * len(chains)) == value


def test_rational_membership(grid):
    third, half = Fraction(1, 3), Fraction(1, 2)
    # chain a < b < d sums to 3/2 at one half each
    assert naive_excess(grid, [half] * 4, 1) == half
    assert membership(grid, [third] * 4, 1, 0)
    assert not membership(grid, [half] * 4, 1, 0)
    assert membership(grid, [half] * 4, 1, 1)
    assert violation_excess(grid, [half] * 4, 1) == half
    assert not membership(grid, [-1, 0, 0, 0], 1, 5)


def test_brute_cap_enforced():
    with pytest.raises(BruteSizeExceeded):
        violation_excess(chain_poset(6), [1] * 6, 1, "brute", brute_cap=5)
    with pytest.raises(BruteSizeExceeded):
        minkowski_check(chain_poset(6), Params(1, 0), Params(0, 1), brute_cap=5)


def test_params_validation():
    with pytest.raises(BadParams):
        Params(-1, 0)
    assert Params(1, 2) + Params(2, 0) == Params(3, 2)


def test_strip_unit(chain3):
    z = [1, 1, 1]
    d = strip_unit(chain3, z, 1)
    z2 = list(z)
    z2[d] -= 1
    assert violation_excess(chain3, z2, 1) <= violation_excess(chain3, z, 1) - 1
    with pytest.raises(NoExcess):
        strip_unit(chain3, [1, 0, 0], 1)
    with pytest.raises(BadParams):
        strip_unit(chain3, [-1, 2, 2], 1)


def test_strip_antichain(grid):
    A = strip_antichain(grid, [0, 1, 1, 1], 2)
    assert A == (1, 2)
    with pytest.raises(NotInSm0):
        strip_antichain(grid, [1, 1, 1, 1], 2)
    with pytest.raises(BadParams):
        strip_antichain(grid, [0, 0, 0, 0], 0)


def test_decompose_examples(grid, chain3):
    cert = decompose(grid, [1, 1, 1, 0], 2, 0)
    assert cert.antichains == ((0,), (1, 2))
    assert cert.reconstruct() == (1, 1, 1, 0)
    with pytest.raises(NotMember):
        decompose(grid, [1, 1, 1, 1], 1, 0)
    cert = partition_poset(chain3, 1, 2)
    assert cert.antichains == ((2,),)
    assert cert.remainder == (1, 1, 0)


def test_partition_hypothesis_failure(grid):
    # the chain a < b < d has 3 > 2 * 1 elements, so M(1) = 1 > 0
    with pytest.raises(HypothesisFails):
        partition_poset(grid, 2, 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.floats(0, 1), st.integers(0, 2**32), st.integers(0, 2), st.integers(0, 2))
def test_decompose_any_point(n, p, seed, m, M):
    P = random_poset(n, p, random.Random(seed))
    pts = enumerate_points(P, m, M)
    rng = random.Random(seed)
    for z in rng.sample(pts, min(5, len(pts))):
        cert = decompose(P, z, m, M)
        assert cert.reconstruct() == tuple(z)
        assert len(cert.antichains) == m
        assert all(P.is_antichain(A) for A in cert.antichains)
        assert sum(cert.remainder) <= M


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.floats(0, 1), st.integers(0, 2**32),
       st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_minkowski_against_literal_sums(n, p, seed, m1, M1, m2, M2):
    P = random_poset(n, p, random.Random(seed))
    literal = minkowski_sum(enumerate_points(P, m1, M1), enumerate_points(P, m2, M2))
    direct = set(enumerate_points(P, m1 + m2, M1 + M2))
    assert literal == direct
    assert minkowski_check(P, Params(m1, M1), Params(m2, M2))


def test_max_chain_sum(grid):
    assert max_chain_sum(grid, [1, 2, 3, 4]) == 8
