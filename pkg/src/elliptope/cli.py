"""Command-line entry point.

Exit status: 0 on success, 2 on a negative verdict (not exact, rejected,
declined, gap found), 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import oracle
from .certificates import (
    cert_from_cut,
    cert_join_balanced,
    cert_join_unbalanced,
    cert_nondominating,
    certificate_dump,
    lift_lex,
    lift_split_certificate,
    replay_counterexample,
    uniqueness_join_balanced,
    verify_certificate,
)
from .errors import ElliptopeError, WitnessInvalid
from .graph import Graph, Partition, format_graph, induced_subgraph, read_graph
from .ops import (
    SplitSpec,
    complete,
    complete_kpartite,
    complete_weighted,
    cycle,
    edgeless,
    join,
    path,
)
from .recognizer import (
    KPartiteKind,
    SplitDecompWitness,
    build_hardness_instance,
    kpartite_exactness,
    recognize_complement_core,
    verify_split_decomposable,
)
from .sdp import DEFAULT_TOL, ExactnessKind, exactness_numeric, solve_phi
from .suites import SUITES, run_suite

OK, ERROR, NEGATIVE = 0, 1, 2


def _default_tol() -> float:
    return float(os.environ.get("ELLIPTOPE_TOL", DEFAULT_TOL))


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _emit(args, doc: dict) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for k, v in doc.items():
            print(f"{k}: {v}")


# -- gen ----------------------------------------------------------------------


def _gen(args) -> Graph:
    p = _ints(" ".join(args.params))
    fam = args.family
    if fam == "complete":
        return complete(p[0])
    if fam == "edgeless":
        return edgeless(p[0])
    if fam == "path":
        return path(p[0])
    if fam == "cycle":
        return cycle(p[0])
    if fam == "kpartite":
        return complete_kpartite(p)
    if fam == "weighted":
        return complete_weighted(p)
    if fam == "cone":
        return join(cycle(p[0]), edgeless(p[1]))
    if fam == "fan":
        return join(path(p[0]), edgeless(p[1]))
    raise ValueError(f"unknown family {fam}")


def cmd_gen(args) -> int:
    text = format_graph(_gen(args))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


# -- oracle and numerics ------------------------------------------------------


def cmd_maxcut(args) -> int:
    g = read_graph(args.graph)
    r = oracle.brute_force_maxcut(g, keep=args.keep)
    _emit(args, {"maxcut": str(r.value), "count": r.count, "optimal_cuts": [p.side_a for p in r.optimal_cuts]})
    return OK


def cmd_phi(args) -> int:
    r = solve_phi(read_graph(args.graph), args.tol, seed=args.seed)
    _emit(args, r.as_dict())
    return OK


def cmd_exactness(args) -> int:
    v = exactness_numeric(read_graph(args.graph), args.tol)
    _emit(args, v.as_dict())
    return OK if v.kind is ExactnessKind.ExactWithin else NEGATIVE


# -- certificates -------------------------------------------------------------


def _side_a(args, n: int, default) -> list[int]:
    if args.side_a:
        return _ints(args.side_a)
    if args.witness:
        with open(args.witness) as fh:
            return [int(v) for v in json.load(fh)["side_a"]]
    return list(default)


def _as_join(g: Graph, side_a: list[int]) -> tuple[Graph, Graph, list[int]]:
    side_b = [v for v in range(g.n) if v not in set(side_a)]
    if any(not g.has_edge(u, v) for u in side_a for v in side_b):
        raise WitnessInvalid("the chosen sides are not fully joined")
    return induced_subgraph(g, side_a)[0], induced_subgraph(g, side_b)[0], side_a + side_b


def masses_from_complete(g: Graph) -> list[Fraction]:
    """Recover m from K_n with w_ij = m_i m_j (m_i² = w_ij w_ik / w_jk)."""
    n = g.n
    if n < 3 or g.m != n * (n - 1) // 2:
        raise WitnessInvalid("graph is not a complete graph on at least 3 vertices")
    m = []
    for i in range(n):
        j, k = [v for v in range(n) if v != i][:2]
        sq = g.weight(i, j) * g.weight(i, k) / g.weight(j, k)
        num, den = _isqrt(sq.numerator), _isqrt(sq.denominator)
        if num is None or den is None or sq <= 0:
            raise WitnessInvalid("weights are not of the form m_i m_j")
        m.append(Fraction(num, den))
    if any(g.weight(i, j) != m[i] * m[j] for i in range(n) for j in range(i + 1, n)):
        raise WitnessInvalid("weights are not of the form m_i m_j")
    return m


def _isqrt(x: int) -> int | None:
    import math

    if x < 0:
        return None
    r = math.isqrt(x)
    return r if r * r == x else None


def _optimal_cut_cert(g: Graph):
    return cert_from_cut(g, oracle.brute_force_maxcut(g, keep=1).optimal_cuts[0])


def cmd_certify(args) -> int:
    g = read_graph(args.graph)
    extra = {}
    if args.method in ("join-balanced", "join-unbalanced"):
        if args.method == "join-balanced":
            default = range(g.n // 2)
        else:
            core = recognize_complement_core(g).core
            default = [v for v in range(g.n) if v not in set(core)]
        ga, gb, order = _as_join(g, _side_a(args, g.n, default))
        if args.method == "join-balanced":
            c = cert_join_balanced(ga, gb)
            extra["uniqueness"] = uniqueness_join_balanced(ga, gb).value
        else:
            c = cert_join_unbalanced(ga, gb)
            extra["schur_rank_lower_bound"] = c.extra["schur"].rank_lower_bound
        extra["vertex_order"] = order
    elif args.method == "nondominating":
        c = cert_nondominating(masses_from_complete(g))
    elif args.method == "lex":
        if not args.factor:
            raise WitnessInvalid("lex needs --factor <graph-file>")
        base = _optimal_cut_cert(g)
        c = lift_lex(base.X, base.Y, g, read_graph(args.factor))
        extra["route"] = c.extra["route"]
    elif args.method == "split-lift":
        if not args.spec:
            raise WitnessInvalid("split-lift needs --spec p1,p2,...")
        c = lift_split_certificate(_optimal_cut_cert(g), SplitSpec(tuple(_ints(args.spec))))
    else:
        raise ValueError(args.method)
    rep = verify_certificate(c)
    if args.dump:
        doc = certificate_dump(c, rep)
    else:
        doc = {"provenance": c.provenance.value, "objective": str(c.objective), **rep.as_dict()}
    doc.update(extra)
    _emit(args, doc)
    return OK if rep.optimal else NEGATIVE


def cmd_counterexample(args) -> int:
    rep = replay_counterexample(args.which)
    _emit(args, rep.as_dict())
    return OK if rep.passed else NEGATIVE


# -- recognition --------------------------------------------------------------


def cmd_recognize(args) -> int:
    r = recognize_complement_core(read_graph(args.graph))
    _emit(args, r.as_dict())
    return OK if r.matched else NEGATIVE


def cmd_kpartite(args) -> int:
    v = kpartite_exactness(_ints(args.parts))
    _emit(args, {"verdict": v.kind.value, "witness": list(v.witness) if v.witness else None})
    return NEGATIVE if v.kind is KPartiteKind.NotExact else OK


def cmd_hardness(args) -> int:
    g = build_hardness_instance(_ints(args.parts))
    if args.emit == "graph":
        sys.stdout.write(format_graph(g))
    else:
        _emit(args, {"n": g.n, "m": g.m, "graph": format_graph(g)})
    return OK


def cmd_verify_decomp(args) -> int:
    r = verify_split_decomposable(read_graph(args.graph), SplitDecompWitness.load(args.witness))
    _emit(args, r.as_dict())
    return OK if r.accepted else NEGATIVE


def cmd_suite(args) -> int:
    results = run_suite(args.name, seed=args.seed, tol=args.tol)
    passed = sum(r.passed for r in results)
    if args.json:
        _emit(args, {
            "suite": args.name,
            "passed": passed,
            "total": len(results),
            "cases": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        })
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  {r.detail}")
        print(f"{args.name}: {passed}/{len(results)} pass")
    return OK if passed == len(results) else NEGATIVE


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=_default_tol())

    ap = argparse.ArgumentParser(prog="elliptope", description="Max-Cut SDP exactness toolkit")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a named graph family")
    p.add_argument("family", choices=["complete", "edgeless", "path", "cycle", "kpartite", "weighted", "cone", "fan"])
    p.add_argument("params", nargs="+")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("maxcut", parents=[common], help="brute-force Max-Cut")
    p.add_argument("graph")
    p.add_argument("--keep", type=int, default=16)
    p.set_defaults(func=cmd_maxcut)

    p = sub.add_parser("phi", parents=[common], help="numeric SDP value")
    p.add_argument("graph")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("exactness", parents=[common], help="compare the SDP value with Max-Cut")
    p.add_argument("graph")
    p.set_defaults(func=cmd_exactness)

    p = sub.add_parser("certify", parents=[common], help="build and verify an exact certificate")
    p.add_argument("graph")
    p.add_argument("--method", required=True,
                   choices=["join-balanced", "join-unbalanced", "nondominating", "lex", "split-lift"])
    p.add_argument("--witness", help="JSON file with a side_a vertex list")
    p.add_argument("--side-a", help="comma-separated vertices of the first join side")
    p.add_argument("--factor", help="second factor for --method lex")
    p.add_argument("--spec", help="multiplicities for --method split-lift")
    p.add_argument("--dump", action="store_true", help="include Y and the lower triangle of X")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("recognize", parents=[common], help="complement-core recognizer")
    p.add_argument("graph")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("kpartite", parents=[common], help="exactness of a complete multipartite graph")
    p.add_argument("parts")
    p.set_defaults(func=cmd_kpartite)

    p = sub.add_parser("hardness", parents=[common], help="complete multipartite instance for part sizes")
    p.add_argument("parts")
    p.add_argument("--emit", choices=["graph", "json"], default="graph")
    p.set_defaults(func=cmd_hardness)

    p = sub.add_parser("verify-decomp", parents=[common], help="check a split-decomposition witness")
    p.add_argument("graph")
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_verify_decomp)

    p = sub.add_parser("counterexample", parents=[common], help="replay a K4 counterexample")
    p.add_argument("which", type=int, choices=[1, 2])
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("suite", parents=[common], help="run an invariant battery")
    p.add_argument("name", choices=SUITES)
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ElliptopeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
