"""Batteries of invariant checks over the built-in corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import corpus, oracle
from .certificates import (
    cert_from_cut,
    cert_join_balanced,
    cert_join_unbalanced,
    cert_nondominating,
    delta_identity_check,
    lift_lex,
    lift_split_certificate,
    rank_identity_check,
    replay_counterexample,
    verify_certificate,
)
from .errors import ElliptopeError
from .ops import SplitSpec, complete, complete_kpartite, cycle, edgeless, path
from .recognizer import kpartite_exactness, recognize_complement_core, verify_split_decomposable
from .sdp import DEFAULT_TOL, phi_property_suite

SUITES = ("phi-properties", "certificates", "counterexamples", "recognizers")


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    detail: str = ""


def _run(name: str, fn: Callable[[], tuple[bool, str] | bool]) -> CaseResult:
    try:
        out = fn()
    except ElliptopeError as exc:
        return CaseResult(name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, tuple):
        return CaseResult(name, *out)
    return CaseResult(name, bool(out))


def _cert_ok(c, exact: bool = True) -> tuple[bool, str]:
    """Verified optimal; the objective equals Max-Cut when the graph is exact, else bounds it."""
    rep = verify_certificate(c)
    mc = oracle.brute_force_maxcut(c.source_graph, keep=1).value
    ok = (
        rep.optimal
        and rep.duality_gap == 0
        and (c.objective == mc if exact else c.objective >= mc)
        and rank_identity_check(c.X, c.S)
    )
    return ok, f"objective {c.objective}, maxcut {mc}, ranks {rep.rank_X}+{rep.rank_S}"


def _nondominating_ok(m) -> tuple[bool, str]:
    c = cert_nondominating(m)
    ok, detail = _cert_ok(c, exact=False)
    n = len(m)
    return ok and c.objective == sum(m) ** 2 / 4 and verify_certificate(c).rank_X == n - 1, detail


def _families():
    out = []
    for k in range(2, 6):
        out += [(f"E{k}", edgeless(k)), (f"P{k}", path(k)), (f"K{k}", complete(k))]
        if k >= 3:
            out.append((f"C{k}", cycle(k)))
    return out


def certificates_suite(seed: int = 0) -> list[CaseResult]:
    res = []
    fam = _families()
    for na, ga in fam:
        for nb, gb in fam:
            if ga.n == gb.n and na <= nb:
                res.append(_run(f"balanced {na}+{nb}", lambda ga=ga, gb=gb: _cert_ok(cert_join_balanced(ga, gb))))
            elif ga.n < gb.n and all(2 * len(gb.neighbors(v)) <= ga.n for v in range(gb.n)):
                res.append(_run(f"unbalanced {na}+{nb}", lambda ga=ga, gb=gb: _cert_ok(cert_join_unbalanced(ga, gb))))
    rng = random.Random(seed)
    for t in range(10):
        n = rng.randint(3, 6)
        while True:
            m = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(n)]
            if all(2 * x < sum(m) for x in m):
                break
        res.append(_run(f"nondominating #{t}", lambda m=m: _nondominating_ok(m)))
    for name, g in (("P2", path(2)), ("K(2,2)", complete_kpartite([2, 2])), ("C4", cycle(4))):
        base = cert_from_cut(g, oracle.brute_force_maxcut(g, keep=1).optimal_cuts[0])
        for n2, g2 in (("E2", edgeless(2)), ("K3", complete(3))):
            res.append(_run(f"lex {name}.{n2}", lambda b=base, g=g, g2=g2: _cert_ok(lift_lex(b.X, b.Y, g, g2))))
    nd = cert_nondominating((2, 2, 4, 4))
    res.append(_run("split-lift (1,2,1,1)", lambda: _cert_ok(lift_split_certificate(nd, (1, 2, 1, 1)))))
    fig = corpus.load("fig3b")
    c = cert_join_balanced(*_halves(fig))
    res.append(_run("delta identity fig3b", lambda: delta_identity_check(c.source_graph, c)))
    return res


def _halves(g):
    from .graph import induced_subgraph

    h = g.n // 2
    return induced_subgraph(g, range(h))[0], induced_subgraph(g, range(h, g.n))[0]


def counterexamples_suite(seed: int = 0) -> list[CaseResult]:
    out = []
    for k in (1, 2):
        rep = replay_counterexample(k)
        failed = [n for n, v in rep.checks.items() if not v]
        out.append(CaseResult(f"counterexample {k}", rep.passed, ", ".join(failed) or f"objective {rep.objective}"))
    return out


def recognizers_suite(seed: int = 0) -> list[CaseResult]:
    res = []
    for name in corpus.cones() + corpus.fans():
        def case(name=name):
            g = corpus.load(name)
            r = recognize_complement_core(g)
            mc = oracle.brute_force_maxcut(g)
            ok = r.matched and r.value == mc.value
            if r.unique_cut:
                ok = ok and mc.unique and mc.optimal_cuts[0] == r.cut
            return ok, f"{r.reason.value}, value {r.value}, maxcut {mc.value}"
        res.append(_run(f"recognize {name}", case))
    for name in ("k3", "c5"):
        res.append(_run(f"decline {name}", lambda name=name: not recognize_complement_core(corpus.load(name)).matched))

    def decomp():
        g = corpus.load("example1")
        r = verify_split_decomposable(g, corpus.witness())
        mc = oracle.brute_force_maxcut(g, keep=1).value
        return r.accepted and r.maxcut == mc, f"maxcut {r.maxcut}, oracle {mc}"
    res.append(_run("split-decomposable example1", decomp))
    for a, kind in (((1, 2, 3, 4), "ExactNonUnique"), ((1, 1, 3), "ExactUnique"), ((2, 3, 4), "NotExact")):
        res.append(_run(f"kpartite {a}", lambda a=a, kind=kind: kpartite_exactness(a).kind.value == kind))
    return res


def phi_properties_suite(seed: int = 0, tol: float = DEFAULT_TOL) -> list[CaseResult]:
    res = []
    for name in ("c5", "k3", "fig3a", "fig3c", "counter1", "k3_3"):
        g = corpus.load(name)
        spec = SplitSpec((2,) + (1,) * (g.n - 1))

        def case(g=g, spec=spec):
            rep = phi_property_suite(g, 3, spec, tol, seed)
            bad = [k for k, v in rep.checks.items() if not v]
            return rep.passed, ", ".join(bad) or f"phi {rep.values['phi']:.6f}"
        res.append(_run(f"phi {name}", case))
    return res


def run_suite(name: str, seed: int = 0, tol: float = DEFAULT_TOL) -> list[CaseResult]:
    if name == "phi-properties":
        return phi_properties_suite(seed, tol)
    if name == "certificates":
        return certificates_suite(seed)
    if name == "counterexamples":
        return counterexamples_suite(seed)
    if name == "recognizers":
        return recognizers_suite(seed)
    raise ValueError(f"unknown suite {name!r}")
