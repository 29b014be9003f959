"""Randomised and exhaustive cross-checks at desk scale.

Each check returns a :class:`CheckResult`.  ``ACCEPTANCE`` lists the exit
criteria with their time budgets (seconds); ``PROPERTIES`` the remaining
module invariants.  Both are driven by a seed so reruns are identical.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from math import comb
from typing import Callable

from . import geometry, grassmann, polytope, rep
from .exact import rank
from .poset import (
    max_antichain,
    min_chain_cover,
    random_poset,
    width,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget: float | None = None

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds <= self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        budget = f" (budget {self.budget:g}s)" if self.budget is not None else ""
        return f"[{status}] {self.name}: {self.detail} [{self.seconds:.2f}s{budget}]"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
        }


def _run(name: str, budget: float | None, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(name, passed, detail, time.perf_counter() - t0, budget)


def _random_instance_poset(rng: random.Random, max_size: int, min_size: int = 1):
    return random_poset(rng.randint(min_size, max_size), rng.random(), rng)


# ---------------------------------------------------------------- acceptance

KNOWN_G36 = (1, 2, 4, 7, 10, 11, 10, 6, 3, 1)
REP_CASES = [(2, 4, 1, 1), (2, 4, 1, 0), (2, 4, 0, 1), (2, 5, 1, 1), (3, 6, 1, 0)]


def check_g36_poincare(seed: int = 0) -> CheckResult:
    def body():
        got = geometry.graph_poincare(3, 6)
        return got.coeffs == KNOWN_G36, f"graph_poincare(3,6) = {got}"
    return _run("1 Poincare polynomial of G(3,6)", 1.0, body)


def check_strata_sum(seed: int = 0) -> CheckResult:
    def body():
        bad = []
        cases = 0
        for n in range(2, 9):
            for d in range(1, n):
                total = geometry.ZERO
                for p in geometry.strata_poincare(d, n):
                    total = total + p
                cases += 1
                if total != geometry.gaussian_binomial(n, d):
                    bad.append((d, n))
        return not bad, f"{cases} (d,n) pairs, mismatches {bad}"
    return _run("2 strata sum = Gaussian binomial, n <= 8", 5.0, body)


def check_fflv_weyl(seed: int = 0) -> CheckResult:
    def body():
        rows = []
        ok = True
        for d, n in [(1, 4), (2, 4), (2, 5), (3, 6)]:
            for m in (1, 2, 3):
                got, want = len(grassmann.fflv_points(d, n, m)), grassmann.weyl_dim(d, n, m)
                ok &= got == want
                rows.append(f"({d},{n},{m}):{got}/{want}")
        return ok, " ".join(rows)
    return _run("3 |FFLV points| = Weyl dimension", 30.0, body)


def check_minkowski(seed: int = 0, posets: int = 200) -> CheckResult:
    def body():
        rng = random.Random(seed)
        failures = []
        combos = list(itertools.product(range(3), repeat=4))
        for t in range(posets):
            P = _random_instance_poset(rng, 6)
            for m1, M1, m2, M2 in combos:
                if not polytope.minkowski_check(P, polytope.Params(m1, M1), polytope.Params(m2, M2)):
                    failures.append((t, m1, M1, m2, M2))
        return not failures, f"{posets} posets x {len(combos)} parameter sets, seed {seed}, failures {failures[:5]}"
    return _run("4 Minkowski sums S(m1,M1)+S(m2,M2)", 120.0, body)


def check_unit_strip(seed: int = 0, trials: int = 1000) -> CheckResult:
    def body():
        rng = random.Random(seed)
        done = failures = 0
        while done < trials:
            P = _random_instance_poset(rng, 8)
            m = rng.randint(0, 2)
            z = [rng.randint(0, 4) for _ in range(P.size)]
            before = polytope.excess_brute(P, z, m)
            if before == 0:
                continue
            d = polytope.strip_unit(P, z, m)
            z[d] -= 1
            if z[d] < 0 or polytope.excess_brute(P, z, m) > before - 1:
                failures += 1
            done += 1
        return failures == 0, f"{done} instances with M(z) > 0, seed {seed}, failures {failures}"
    return _run("5 unit strip lowers the excess", 60.0, body)


def check_flow_vs_brute(seed: int = 0, trials: int = 1000) -> CheckResult:
    def body():
        rng = random.Random(seed)
        mismatches = []
        for t in range(trials):
            P = _random_instance_poset(rng, 12)
            m = rng.randint(0, 3)
            z = [rng.randint(-3, 3) for _ in range(P.size)]
            a = polytope.violation_excess(P, z, m, "flow")
            b = polytope.violation_excess(P, z, m, "brute")
            if a != b:
                mismatches.append((t, a, b))
        return not mismatches, f"{trials} instances, seed {seed}, mismatches {mismatches[:5]}"
    return _run("6 flow oracle = brute oracle", 60.0, body)


def check_rep_dims(seed: int = 0) -> CheckResult:
    def body():
        rows, ok = [], True
        for d, n, m, M in REP_CASES:
            span = rep.cyclic_span_dim(d, n, m, M)
            pts = len(polytope.enumerate_points(grassmann.root_poset(d, n).poset, m, M))
            ok &= span == pts
            rows.append(f"({d},{n},{m},{M}):{span}/{pts}")
        ok &= rep.cyclic_span_dim(2, 4, 1, 1) == 19
        return ok, " ".join(rows)
    return _run("7 cyclic span dim = |S(m,M)|", 120.0, body)


def check_basis(seed: int = 0) -> CheckResult:
    def body():
        reports = [rep.basis_check(*c) for c in REP_CASES]
        rows = [f"({r['d']},{r['n']},{r['m']},{r['M']}):rank {r['rank']}/{r['points']}" for r in reports]
        return all(r["ok"] for r in reports), " ".join(rows)
    return _run("8 monomial vectors form a basis", None, body)


def check_relations(seed: int = 0, samples: int = 100) -> CheckResult:
    def body():
        reports = [rep.relation_check(*c, samples=samples, seed=seed) for c in REP_CASES]
        ok = all(r["ok"] and r["vanishing_checked"] == samples and r["boundary_probes"] >= 1 for r in reports)
        rows = [f"({r['d']},{r['n']},{r['m']},{r['M']}):{r['boundary_nonzero']}/{r['boundary_probes']}" for r in reports]
        return ok, f"{samples} vanishing samples per case, seed {seed}; boundary non-vanishing " + " ".join(rows)
    return _run("9 defining relations vanish", None, body)


def check_fibers(seed: int = 0, points: int = 20) -> CheckResult:
    def body():
        rng = random.Random(seed)
        top = geometry.fiber_of([[0, 0, 1, 0], [0, 0, 0, 1]])
        ok = top.proj_dim == 3 and top.k == 2
        for k in (0, 1):
            for _ in range(points):
                U = geometry.random_subspace(2, 4, k, rng)
                F = geometry.fiber_of(U)
                ok &= F.proj_dim == 0 and len(F.basis) == k * k
                ok &= all(geometry.satisfies_fiber_conditions(U, B) for B in F.basis)
        tables = {}
        for d, n in [(2, 4), (2, 5), (3, 6)]:
            tab = geometry.preimage_dim_table(d, n)
            tables[(d, n)] = [row["preimage_dim"] for row in tab]
            ok &= all(v == d * (n - d) - 1 for v in tables[(d, n)])
        return ok, f"span(l3,l4): proj_dim {top.proj_dim}; {points} points each of X_0, X_1; preimage dims {tables}"
    return _run("10 fibres of G(d,n) -> Gr(d,n)", 10.0, body)


def check_partition(seed: int = 0, trials: int = 100) -> CheckResult:
    def body():
        rng = random.Random(seed)
        failures = 0
        for _ in range(trials):
            P = _random_instance_poset(rng, 8)
            m = rng.randint(0, 3)
            M = polytope.violation_excess(P, [1] * P.size, m) + rng.randint(0, 2)
            cert = polytope.partition_poset(P, m, M)
            good = (
                cert.reconstruct() == (1,) * P.size
                and len(cert.antichains) == m
                and all(P.is_antichain(A) for A in cert.antichains)
                and sum(cert.remainder) <= M
            )
            failures += not good
        return failures == 0, f"{trials} instances, seed {seed}, failures {failures}"
    return _run("11 antichain partition", 30.0, body)


ACCEPTANCE = [
    check_g36_poincare,
    check_strata_sum,
    check_fflv_weyl,
    check_minkowski,
    check_unit_strip,
    check_flow_vs_brute,
    check_rep_dims,
    check_basis,
    check_relations,
    check_fibers,
    check_partition,
]


# ---------------------------------------------------------------- properties


def prop_dilworth(seed: int = 0, posets: int = 30) -> CheckResult:
    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(posets):
            P = _random_instance_poset(rng, 8)
            table = polytope.width_table(P)
            for mask in range(1 << P.size):
                S = [a for a in range(P.size) if mask >> a & 1]
                A, C = max_antichain(P, S), min_chain_cover(P, S)
                w = width(P, S)
                covered = sorted(a for c in C for a in c)
                bad += not (
                    len(A) == len(C) == w == table[mask]
                    and P.is_antichain(A) and set(A) <= set(S)
                    and covered == S and all(P.is_chain(c) for c in C)
                )
        return bad == 0, f"every subset of {posets} random posets (<= 8 elements), failures {bad}"
    return _run("Dilworth consistency", None, body)


def prop_excess_monotone(seed: int = 0, trials: int = 300) -> CheckResult:
    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(trials):
            P = _random_instance_poset(rng, 8)
            m = rng.randint(0, 3)
            z = [rng.randint(-3, 3) for _ in range(P.size)]
            z2 = [x + rng.randint(0, 2) for x in z]
            a, b = polytope.violation_excess(P, z, m), polytope.violation_excess(P, z2, m)
            bad += not (0 <= a <= b)
        return bad == 0, f"{trials} pairs z <= z', failures {bad}"
    return _run("excess nonnegative and monotone", None, body)


def prop_down_set(seed: int = 0, posets: int = 30) -> CheckResult:
    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(posets):
            P = _random_instance_poset(rng, 6)
            m, M = rng.randint(0, 2), rng.randint(0, 2)
            pts = set(polytope.enumerate_points(P, m, M))
            for z in pts:
                for a in range(P.size):
                    if z[a] and z[:a] + (z[a] - 1,) + z[a + 1:] not in pts:
                        bad += 1
        return bad == 0, f"{posets} enumerations closed under decrease, failures {bad}"
    return _run("S(m,M) is a down-set", None, body)


def prop_decompose(seed: int = 0, trials: int = 200) -> CheckResult:
    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(trials):
            P = _random_instance_poset(rng, 7)
            m, M = rng.randint(0, 3), rng.randint(0, 3)
            pts = polytope.enumerate_points(P, m, M)
            z = pts[rng.randrange(len(pts))]
            cert = polytope.decompose(P, z, m, M)
            bad += not (
                cert.reconstruct() == z
                and len(cert.antichains) == m
                and all(P.is_antichain(A) for A in cert.antichains)
                and min(cert.remainder, default=0) >= 0
                and sum(cert.remainder) <= M
            )
        return bad == 0, f"{trials} certificates, failures {bad}"
    return _run("decomposition certificates", None, body)


def prop_dyck_count(seed: int = 0) -> CheckResult:
    def body():
        bad = [
            (d, n) for n in range(2, 9) for d in range(1, n)
            if len(grassmann.dyck_paths(grassmann.root_poset(d, n))) != comb(n - 2, d - 1)
        ]
        return not bad, f"Dyck path counts for n <= 8, mismatches {bad}"
    return _run("Dyck paths = binomial(n-2, d-1)", None, body)


def prop_path_union_reduction(seed: int = 0) -> CheckResult:
    def body():
        bad = []
        cases = 0
        for n in range(2, 6):
            for d in range(1, n):
                rp = grassmann.root_poset(d, n)
                for m in range(3):
                    for M in range(3):
                        system = grassmann.inequality_system(d, n, m, M, min(d, n - d))
                        box = itertools.product(range(m + M + 2), repeat=len(rp.roots))
                        by_paths = set()
                        for s in box:
                            cases += 1
                            if grassmann.member_by_paths(system, s):
                                by_paths.add(s)
                        if by_paths != set(polytope.enumerate_points(rp.poset, m, M)):
                            bad.append((d, n, m, M))
        return not bad, f"{cases} box points, d < n <= 5, m, M <= 2, mismatches {bad[:3]}"
    return _run("path-union inequalities = subposet inequalities", None, body)


def prop_operators_commute(seed: int = 0) -> CheckResult:
    def body():
        bad = 0
        for d, n, m, M in REP_CASES:
            vecs = list(rep.monomial_vectors(d, n, m, M).values())
            roots = grassmann.root_poset(d, n).roots
            for v in vecs:
                for a, b in itertools.combinations(roots, 2):
                    x = rep.apply_root(a, rep.apply_root(b, v, m, M, d, n), m, M, d, n)
                    y = rep.apply_root(b, rep.apply_root(a, v, m, M, d, n), m, M, d, n)
                    bad += x != y
        return bad == 0, f"root operators commute on monomial vectors, failures {bad}"
    return _run("root operators commute", None, body)


def prop_pbw_grading(seed: int = 0) -> CheckResult:
    def body():
        reports = [rep.pbw_grading_check(*c) for c in REP_CASES]
        return all(r["ok"] and r["cyclic_grade"] == 0 for r in reports), \
            f"{sum(r['transitions'] for r in reports)} transitions raise the grade by one"
    return _run("PBW grading", None, body)


def prop_geometry(seed: int = 0) -> CheckResult:
    def body():
        ok = True
        for n in range(2, 9):
            for d in range(1, n):
                strata = geometry.strata_poincare(d, n)
                ok &= all(p.degree == d * (n - d) - k * k for k, p in enumerate(strata))
        for n in range(2, 11):
            ok &= geometry.graph_poincare(1, n) == geometry.QPolynomial.q_integer(n)
        ok &= not geometry.graph_poincare(3, 6).is_palindromic()
        rng = random.Random(seed)
        for _ in range(30):
            d = rng.randint(1, 3)
            n = rng.randint(d + 1, 6)
            k = rng.randint(0, min(d, n - d))
            U = geometry.random_subspace(d, n, k, rng)
            mix = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
            if rank(mix) < d:
                continue
            rows = [[sum(mix[r][t] * U.matrix[t][c] for t in range(d)) for c in range(n)] for r in range(d)]
            V = geometry.Subspace.from_rows(rows)
            F = geometry.fiber_of(V)
            ok &= geometry.stratum_of(V) == k == F.k and len(F.basis) == k * k and V == U
        return ok, "strata degrees, G(1,n) = P^(n-1), G(3,6) not palindromic, stratum/fibre invariance"
    return _run("geometry invariants", None, body)


def prop_antichains_are_fflv(seed: int = 0) -> CheckResult:
    def body():
        bad = []
        for n in range(2, 7):
            for d in range(1, n):
                P = grassmann.root_poset(d, n).poset
                pts = set(grassmann.fflv_points(d, n, 1))
                antichains = set()
                for mask in range(1 << P.size):
                    S = [a for a in range(P.size) if mask >> a & 1]
                    if P.is_antichain(S):
                        antichains.add(tuple(int(a in S) for a in range(P.size)))
                if pts != antichains:
                    bad.append((d, n))
        return not bad, f"S(1,0) = antichain indicators of R(d), n <= 6, mismatches {bad}"
    return _run("antichains of R(d) = FFLV points for m = 1", None, body)


def prop_small_minkowski_full(seed: int = 0) -> CheckResult:
    """The generator shortcut in minkowski_check against literal pairwise sums."""
    def body():
        rng = random.Random(seed)
        bad = 0
        for _ in range(15):
            P = _random_instance_poset(rng, 4)
            for m1, M1, m2, M2 in itertools.product(range(2), repeat=4):
                S1 = polytope.enumerate_points(P, m1, M1)
                S2 = polytope.enumerate_points(P, m2, M2)
                T = set(polytope.enumerate_points(P, m1 + m2, M1 + M2))
                literal = polytope.minkowski_sum(S1, S2) == T
                bad += literal != polytope.minkowski_check(P, polytope.Params(m1, M1), polytope.Params(m2, M2))
                bad += not literal
        return bad == 0, f"literal pairwise sums agree with minkowski_check, failures {bad}"
    return _run("Minkowski check vs literal sums", None, body)


PROPERTIES = [
    prop_dilworth,
    prop_excess_monotone,
    prop_down_set,
    prop_decompose,
    prop_dyck_count,
    prop_path_union_reduction,
    prop_operators_commute,
    prop_pbw_grading,
    prop_geometry,
    prop_antichains_are_fflv,
    prop_small_minkowski_full,
]


def run_all(seed: int = 0, include_properties: bool = True) -> list[CheckResult]:
    checks = ACCEPTANCE + (PROPERTIES if include_properties else [])
    return [check(seed=seed) for check in checks]

