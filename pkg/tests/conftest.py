import itertools

import pytest

from posetpoly import build_poset


def naive_width(P, elems):
    """Largest pairwise-incomparable subset, by exhaustive search."""
    elems = list(elems)
    for k in range(len(elems), 0, -1):
        for combo in itertools.combinations(elems, k):
            if all(not P.comparable(a, b) for a, b in itertools.combinations(combo, 2)):
                return k
    return 0


def naive_excess(P, z, m):
    """max(0, max over nonempty subsets of sum(z) - m * width), every subset visited."""
    best = 0
    for k in range(1, P.size + 1):
        for combo in itertools.combinations(range(P.size), k):
            best = max(best, sum(z[a] for a in combo) - m * naive_width(P, combo))
    return best


def naive_points(P, m, M):
    """Integer points of the box [0, m + M]^P passing the naive excess test."""
    return sorted(
        z for z in itertools.product(range(m + M + 1), repeat=P.size)
        if naive_excess(P, z, m) <= M
    )


@pytest.fixture
def grid():
    # 0 < 1, 0 < 2, 1 < 3, 2 < 3
    return build_poset(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


@pytest.fixture
def chain3():
    return build_poset(["x", "y", "w"], [("x", "y"), ("y", "w")])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
