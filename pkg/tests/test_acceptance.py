"""The ten acceptance criteria, one test each.

Every test records a one-line verdict that the terminal summary prints after
the run, and asserts its own runtime budget.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from elliptope import corpus
from elliptope.certificates import (
    Uniqueness,
    cert_from_cut,
    cert_join_balanced,
    cert_join_unbalanced,
    cert_nondominating,
    delta_identity_check,
    lift_lex,
    lift_split,
    nondominating_frame,
    rank_identity_check,
    replay_counterexample,
    uniqueness_join_balanced,
    verify_certificate,
)
from elliptope.graph import Graph, laplacian
from elliptope.linalg import (
    SymMatrix,
    inner,
    kron,
    lambda_max,
    lambda_min,
    matrix_rank,
    psd_check_exact,
    rank_exact,
)
from elliptope.ops import (
    complete,
    complete_kpartite,
    cycle,
    edgeless,
    join,
    lex_laplacian_identity,
    lex_product,
    path,
    split,
)
from elliptope.oracle import brute_force_maxcut
from elliptope.recognizer import (
    KPartiteKind,
    build_hardness_instance,
    kpartite_exactness,
    recognize_complement_core,
    verify_split_decomposable,
)
from elliptope.sdp import ExactnessKind, exactness_numeric, solve_phi

from conftest import ACCEPTANCE_LINES

F = Fraction


class Criterion:
    """Collects named checks, then records and asserts one verdict line."""

    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.failures: list[str] = []
        self.start = time.perf_counter()

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def finish(self) -> None:
        elapsed = time.perf_counter() - self.start
        self.check(elapsed < self.budget, f"runtime {elapsed:.1f}s over {self.budget}s")
        status = "PASS" if not self.failures else "FAIL"
        detail = f"{elapsed:.2f}s" if not self.failures else "; ".join(self.failures[:3])
        line = f"criterion {self.number}: {status}  {self.title}  ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert not self.failures, line


def _optimal_exact(c) -> bool:
    rep = verify_certificate(c)
    return rep.optimal and rep.duality_gap == 0


def test_criterion_01_counterexample_one():
    cr = Criterion(1, "counterexample 1 replay", 1.0)
    r = replay_counterexample(1)
    cr.check(r.oracle_value == 64, "maxcut is not 64")
    cr.check(len(r.oracle_cuts) == 1 and r.oracle_cuts[0].side_a == [0, 1], "cut {1,2}|{3,4} not unique")
    Z = r.matrix
    cr.check(all(x == 1 for x in Z.diagonal()) and psd_check_exact(Z).psd, "Z* infeasible")
    cr.check(r.objective == 64, "objective of Z* is not 64")
    cr.check(rank_exact(Z) == 3, "rank of Z* is not 3")
    X_star = SymMatrix.outer([1, 1, -1, -1])
    X_g = cert_nondominating((5, 3, 4, 4)).X
    cr.check(X_star.scale(F(1, 48)) + X_g.scale(F(47, 48)) == Z, "1/48, 47/48 decomposition")
    cr.check(r.d == (F(125, 752), F(27, 752), F(15, 188), F(15, 188)), "d' mismatch")
    cr.check(r.passed, f"replay checks {r.checks}")
    cr.finish()


def test_criterion_02_counterexample_two():
    cr = Criterion(2, "counterexample 2 replay", 1.0)
    r = replay_counterexample(2)
    cr.check(r.oracle_value == 36 and len(r.oracle_cuts) == 2, "maxcut 36 with two cuts")
    Z = r.matrix
    cr.check(all(x == 1 for x in Z.diagonal()) and psd_check_exact(Z).psd, "Z-hat infeasible")
    cr.check(r.objective == 36, "objective is not 36")
    X1, X2 = SymMatrix.outer([1, -1, -1, 1]), SymMatrix.outer([1, -1, 1, -1])
    X_g = cert_nondominating((2, 2, 4, 4)).X
    cr.check(X1.scale(F(3, 20)) + X2.scale(F(3, 20)) + X_g.scale(F(7, 10)) == Z, "3/20, 3/20, 7/10 decomposition")
    cr.check(Z[0, 1] == F(-1, 5) and X1[0, 1] == X2[0, 1] == -1, "Z-hat_12 hull argument")
    cr.check(r.d == (F(1, 42), F(1, 42), F(4, 21), F(4, 21)), "d' mismatch")
    cr.check(r.passed, f"replay checks {r.checks}")
    cr.finish()


def _random_nondominating(rng, n):
    while True:
        m = [F(rng.randint(1, 20), rng.randint(1, 6)) for _ in range(n)]
        if all(2 * x < sum(m) for x in m):
            return m


def test_criterion_03_nondominating_battery():
    cr = Criterion(3, "non-dominating battery (200 draws)", 30.0)
    rng = random.Random(2024)
    for t in range(200):
        n = rng.randint(3, 8)
        m = _random_nondominating(rng, n)
        c = cert_nondominating(m)
        rep = verify_certificate(c)
        tag = f"draw {t} m={[str(x) for x in m]}"
        cr.check(rep.optimal and rep.duality_gap == 0, f"{tag}: not optimal")
        cr.check(c.objective == sum(m) ** 2 / 4, f"{tag}: objective")
        cr.check(rep.rank_X == n - 1, f"{tag}: rank {rep.rank_X}")
        cr.check(all(x == 0 for x in c.X.matvec(m)), f"{tag}: X m != 0")
        S = SymMatrix.outer(m).scale(F(1, 4))
        w = psd_check_exact(S)
        cr.check(c.S == S and w.psd and w.reproduces(S), f"{tag}: slack")
    cr.finish()


def _factors():
    out = []
    for k in range(2, 6):
        out += [edgeless(k), path(k), complete(k)]
        if k >= 3:
            out.append(cycle(k))
    return out


def test_criterion_04_join_battery():
    cr = Criterion(4, "join battery (balanced and unbalanced)", 60.0)
    fs = _factors()
    balanced = unbalanced = unique_checked = 0
    for ga in fs:
        for gb in fs:
            if ga.n == gb.n:
                c = cert_join_balanced(ga, gb)
                mc = brute_force_maxcut(c.source_graph)
                cr.check(_optimal_exact(c) and c.objective == mc.value, f"balanced {ga}+{gb}")
                if uniqueness_join_balanced(ga, gb) is Uniqueness.GuaranteedUnique and c.n <= 12:
                    unique_checked += 1
                    cr.check(mc.count == 1, f"balanced {ga}+{gb}: {mc.count} optimal cuts")
                balanced += 1
            elif ga.n < gb.n and all(2 * len(gb.neighbors(v)) <= ga.n for v in range(gb.n)):
                c = cert_join_unbalanced(ga, gb)
                mc = brute_force_maxcut(c.source_graph, keep=1).value
                cr.check(_optimal_exact(c) and c.objective == mc, f"unbalanced {ga}+{gb}")
                cr.check(c.extra["schur"].psd, f"unbalanced {ga}+{gb}: Schur route")
                unbalanced += 1
    cr.check(balanced > 0 and unbalanced > 0 and unique_checked > 0, "empty battery")
    cr.finish()


def test_criterion_05_complement_core_recognizer():
    cr = Criterion(5, "complement-core recognizer on cones and fans", 10.0)
    cases = []
    for m in range(4, 7):
        for n in range(max(4, m), max(4, m) + 3):
            cases.append((f"C{m}+E{n}", join(cycle(m), edgeless(n)), m * n))
    for m in range(2, 6):
        for n in range(max(4, m), max(4, m) + 3):
            cases.append((f"P{m}+E{n}", join(path(m), edgeless(n)), m * n))
    for name, g, value in cases:
        r = recognize_complement_core(g)
        mc = brute_force_maxcut(g)
        cr.check(r.matched and r.value == value == mc.value, f"{name}: value")
        cr.check(mc.unique and mc.optimal_cuts[0] == r.cut, f"{name}: oracle partition")
    for name in ("k3", "c5"):
        cr.check(not recognize_complement_core(corpus.load(name)).matched, f"{name} accepted")
    cr.finish()


def test_criterion_06_lex_product():
    cr = Criterion(6, "lexicographic product", 60.0)
    g = lex_product(complete(3), path(3))
    cr.check(g == corpus.load("k3_lex_p3"), "shipped K3.P3 differs")
    phi = solve_phi(g).phi
    cr.check(abs(phi - 20.25) <= 1e-4, f"phi {phi}")
    mc = brute_force_maxcut(g, keep=1).value
    # sides of sizes 4/5 with every blob's lone vertex in the P3 middle cut all 20 pairs
    cr.check(mc == 20, f"maxcut {mc}")
    cr.check(exactness_numeric(g).kind is ExactnessKind.GapAtLeast, "verdict is not GapAtLeast")
    for g1 in (path(2), complete_kpartite([2, 2]), cycle(4)):
        mc1 = brute_force_maxcut(g1, keep=1)
        base = cert_from_cut(g1, mc1.optimal_cuts[0])
        cr.check(_optimal_exact(base), f"{g1}: base pair")
        for g2 in (edgeless(2), complete(3)):
            c = lift_lex(base.X, base.Y, g1, g2)
            want = g2.n ** 2 * mc1.value
            got = brute_force_maxcut(c.source_graph, keep=1).value
            cr.check(c.objective == want == got and _optimal_exact(c), f"{g1}.{g2}: {c.objective} {want} {got}")
    cr.finish()


def _random_graph(rng, n):
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.6:
                edges[(u, v)] = F(rng.randint(1, 5), rng.randint(1, 3))
    return Graph(n, edges)


def test_criterion_07_split_machinery():
    cr = Criterion(7, "split machinery (50 random graphs)", 120.0)
    rng = random.Random(7)
    for t in range(50):
        n = rng.randint(2, 6)
        g = _random_graph(rng, n)
        while True:
            p = [rng.randint(1, 3) for _ in range(n)]
            if sum(p) <= 10:
                break
        gs, _ = split(g, p)
        mc = brute_force_maxcut(g, keep=1)
        cr.check(brute_force_maxcut(gs, keep=1).value == mc.value, f"graph {t}: oracle maxcut changed")
        X = cert_from_cut(g, mc.optimal_cuts[0]).X
        Xs = lift_split(X, p, g)
        cr.check(rank_exact(Xs) == rank_exact(X), f"graph {t}: rank")
        cr.check(inner(laplacian(gs), Xs) == inner(laplacian(g), X), f"graph {t}: objective")
        d = abs(solve_phi(gs).phi - solve_phi(g).phi)
        cr.check(d <= 2e-5, f"graph {t}: phi differs by {d:.2e}")
    cr.finish()


def test_criterion_08_example_graph():
    cr = Criterion(8, "split-decomposable example graph", 5.0)
    g = corpus.load("example1")
    w = corpus.witness()
    cr.check(g.n == 13 and set(g.edges.values()) == {1, 2, 6}, "shipped graph shape")
    cr.check(w.skeleton == complete_kpartite([1, 1, 3]) and w.uniform_weight == 18 and w.copies == 3, "witness")
    gs, _ = split(g, w.multiplicities)
    cr.check(max(gs.edges.values()) == 2 == w.uniform_weight / w.copies ** 2, "residual bound")
    r = verify_split_decomposable(g, w)
    mc = brute_force_maxcut(g, keep=1).value
    cr.check(r.accepted and r.maxcut == mc, f"verifier {r.maxcut} vs oracle {mc}")
    cr.finish()


def test_criterion_09_hardness_reduction():
    cr = Criterion(9, "hardness reduction sanity", 30.0)
    yes = build_hardness_instance((2, 3, 5))
    cr.check(exactness_numeric(yes).kind is ExactnessKind.ExactWithin, "(2,3,5) not ExactWithin")
    cr.check(kpartite_exactness((2, 3, 5)).kind is KPartiteKind.ExactNonUnique, "(2,3,5) kpartite verdict")
    no = build_hardness_instance((2, 3, 4))
    cr.check(exactness_numeric(no).kind is ExactnessKind.GapAtLeast, "(2,3,4) not GapAtLeast")
    cr.check(kpartite_exactness((2, 3, 4)).kind is KPartiteKind.NotExact, "(2,3,4) kpartite verdict")
    cr.finish()


def _verified_pairs():
    fs = _factors()
    certs = [cert_join_balanced(a, b) for a in fs for b in fs if a.n == b.n]
    certs += [
        cert_join_unbalanced(a, b)
        for a in fs
        for b in fs
        if a.n < b.n and all(2 * len(b.neighbors(v)) <= a.n for v in range(b.n))
    ]
    certs += [cert_nondominating(m) for m in ((5, 3, 4, 4), (2, 2, 4, 4), (1, 1, 1), (2, 3, 3, 5, 6))]
    for g1 in (path(2), cycle(4)):
        base = cert_from_cut(g1, brute_force_maxcut(g1, keep=1).optimal_cuts[0])
        certs.append(lift_lex(base.X, base.Y, g1, complete(3)))
    return certs


def test_criterion_10_property_suites():
    cr = Criterion(10, "property suites", 60.0)
    rng = random.Random(10)
    for t in range(50):
        m = _random_nondominating(rng, rng.randint(3, 8))
        fr = nondominating_frame(m)
        n = len(m)
        cr.check(all(sum(fr.d[i] * fr.u[i][j] ** 2 for i in range(n)) == 1 for j in range(n)), f"sum d'u = 1 ({t})")
        U = [[fr.u[i][j] for i in range(n)] for j in range(n)]
        cr.check(matrix_rank(U) == n - 1, f"rank U ({t})")
        cr.check(all(sum(m[j] * U[j][i] for j in range(n)) == 0 for i in range(n)), f"m^T U ({t})")
    for c in _verified_pairs():
        rep = verify_certificate(c)
        cr.check(rep.optimal and rank_identity_check(c.X, c.S), f"rank identity on {c.provenance.value}")
        if rep.rank_X == 1 and c.source_graph.is_unweighted():
            cr.check(delta_identity_check(c.source_graph, c), f"delta identity on {c.provenance.value}")
    pairs = [(path(2), path(2)), (complete(3), path(3)), (cycle(4), edgeless(2)), (path(3), cycle(4)), (complete(2), complete(3))]
    cr.check(all(lex_laplacian_identity(a, b) for a, b in pairs), "Laplacian identity")
    for t in range(20):
        a = SymMatrix.from_function(3, lambda i, j: F(rng.randint(-3, 3)))
        b = SymMatrix.from_function(2, lambda i, j: F(rng.randint(-3, 3)))
        cr.check(rank_exact(kron(a, b)) == rank_exact(a) * rank_exact(b), "Kronecker rank")
        A = SymMatrix.from_function(3, lambda i, j: sum(x * y for x, y in zip(_col(rng, 3, i), _col(rng, 3, j))))
        pa = SymMatrix.outer([1, rng.randint(-2, 2), 1]) + SymMatrix.identity(3)
        pb = SymMatrix.outer([rng.randint(1, 3), 1]) + SymMatrix.identity(2)
        lhs = lambda_max(kron(pa, pb).to_float())
        rhs = lambda_max(pa.to_float()) * lambda_max(pb.to_float())
        cr.check(abs(lhs - rhs) <= 1e-9 * max(1.0, rhs), "Kronecker lambda_max")
    for t in range(100):
        k = rng.randint(1, 8)
        rows = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(k)] for _ in range(k)]
        if t % 2:
            M = SymMatrix.from_function(k, lambda i, j: sum(rows[r][i] * rows[r][j] for r in range(k)))
        else:
            M = SymMatrix.from_function(k, lambda i, j: rows[i][j] + rows[j][i])
        exact = psd_check_exact(M).psd
        cr.check(exact == (lambda_min(M.to_float()) >= -1e-9), f"PSD backends disagree ({t})")
    cr.finish()


def _col(rng, n, i):
    rng.seed(i)
    return [rng.randint(-2, 2) for _ in range(n)]
