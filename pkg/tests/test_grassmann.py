import itertools
from fractions import Fraction
from math import comb

import pytest

from posetpoly import dyck_paths, enumerate_points, fflv_points, inequality_system, root_poset, weyl_dim
from posetpoly.errors import BadParams, TooLarge
from posetpoly.grassmann import member_by_excess, member_by_paths


def hook_content_dim(d, n, m):
    """GL_n dimension of the d x m rectangle by the hook-content formula."""
    out = Fraction(1)
    for r in range(d):
        for c in range(m):
            hook = (m - c - 1) + (d - r - 1) + 1
            out *= Fraction(n + c - r, hook)
    return int(out)


def test_root_poset_shape():
    rp = root_poset(2, 4)
    assert rp.roots == ((1, 2), (1, 3), (2, 2), (2, 3))
    assert rp.poset.labels[0] == "a_1_2"
    assert rp.poset.lt(rp.index(1, 2), rp.index(2, 3))
    assert not rp.poset.comparable(rp.index(1, 3), rp.index(2, 2))
    with pytest.raises(BadParams):
        root_poset(3, 3)


@pytest.mark.parametrize("d,n", [(1, 4), (2, 4), (2, 5), (3, 6), (2, 7), (4, 8)])
def test_dyck_path_count(d, n):
    paths = dyck_paths(root_poset(d, n))
    assert len(paths) == comb(n - 2, d - 1)
    assert all(len(p) == n - 1 for p in paths)


@pytest.mark.parametrize("d,n", [(1, 4), (2, 4), (2, 5), (3, 6), (2, 6)])
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_weyl_dim_matches_hook_content(d, n, m):
    assert weyl_dim(d, n, m) == hook_content_dim(d, n, m)


def test_fflv_examples():
    assert len(fflv_points(2, 4, 1)) == 6
    assert len(fflv_points(2, 4, 2)) == 20
    assert weyl_dim(2, 4, 1) == 6


@pytest.mark.parametrize("d,n,m", [(2, 4, 1), (2, 4, 2), (2, 5, 1), (1, 3, 3)])
def test_fflv_is_dyck_path_polytope(d, n, m):
    rp = root_poset(d, n)
    paths = dyck_paths(rp)
    N = len(rp.roots)
    expected = sorted(
        s for s in itertools.product(range(m + 1), repeat=N)
        if all(sum(s[a] for a in p) <= m for p in paths)
    )
    assert fflv_points(d, n, m) == expected


@pytest.mark.parametrize("d,n,m,M", [(2, 4, 1, 1), (2, 4, 2, 1), (2, 4, 0, 2), (2, 5, 1, 1)])
def test_path_unions_cut_out_the_polytope(d, n, m, M):
    rp = root_poset(d, n)
    system = inequality_system(d, n, m, M, r_max=d)
    N = len(rp.roots)
    box = itertools.product(range(m + M + 1), repeat=N)
    by_paths = sorted(s for s in box if member_by_paths(system, s))
    assert by_paths == enumerate_points(rp.poset, m, M)
    assert all(member_by_excess(rp, s, m, M) for s in by_paths)


def test_inequality_system_clamps_and_caps():
    assert inequality_system(1, 5, 1, 0, r_max=3) == inequality_system(1, 5, 1, 0, r_max=1)
    with pytest.raises(BadParams):
        inequality_system(2, 4, 1, 0, r_max=0)
    with pytest.raises(TooLarge):
        inequality_system(3, 8, 1, 0, r_max=3, cap=10)
