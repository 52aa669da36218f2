from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from elliptope import corpus
from elliptope.certificates import cert_join_balanced, cert_join_unbalanced, cert_nondominating
from elliptope.errors import BadSize, NoConvergence, TooLarge
from elliptope.graph import Graph, laplacian
from elliptope.linalg import lambda_min
from elliptope.ops import (
    SplitSpec,
    complete,
    complete_kpartite,
    complete_weighted,
    cycle,
    edgeless,
    join,
    lex_product,
    path,
)
from elliptope.oracle import brute_force_maxcut
from elliptope.sdp import ExactnessKind, exactness_numeric, phi_property_suite, solve_phi

from strategies import graphs

TOL = 1e-7


def test_phi_examples():
    assert abs(solve_phi(lex_product(complete(3), path(3))).phi - 20.25) <= 1e-5
    assert abs(solve_phi(complete_kpartite([3, 3])).phi - 9) <= 1e-5
    assert solve_phi(cycle(5)).phi >= 4 + 0.1


def test_phi_c5_closed_form():
    # vertex-transitive: φ = (n/4)·λ_max(L) = (5/2)(1 + cos(π/5))
    assert abs(solve_phi(cycle(5)).phi - 2.5 * (1 + np.cos(np.pi / 5))) <= 1e-6


def test_result_contract():
    r = solve_phi(corpus.load("fig3c"))
    assert r.gap >= -r.tol
    S = np.diag(r.dual_diag) - laplacian(corpus.load("fig3c")).to_array() / 4
    assert lambda_min(S) >= -r.tol
    assert r.primal_value <= r.phi + r.tol


def test_edge_cases():
    assert solve_phi(edgeless(3)).phi == 0
    assert abs(solve_phi(complete(2)).phi - 1) <= 1e-6
    with pytest.raises(BadSize):
        solve_phi(edgeless(0))
    with pytest.raises(TooLarge):
        solve_phi(edgeless(257))
    with pytest.raises(NoConvergence):
        solve_phi(cycle(7), max_iter=1)


def test_determinism():
    g = corpus.load("fig3c")
    assert solve_phi(g, seed=3) == solve_phi(g, seed=3)


def test_exactness_examples():
    v = exactness_numeric(complete_weighted((5, 3, 4, 4)))
    assert v.kind is ExactnessKind.ExactWithin and v.maxcut == 64
    v = exactness_numeric(lex_product(complete(3), path(3)))
    assert v.kind is ExactnessKind.GapAtLeast and abs(v.delta - 0.25) < 1e-5
    v = exactness_numeric(join(path(2), path(3)))
    assert v.kind is ExactnessKind.GapAtLeast and v.delta > 0


def test_property_suite_examples():
    r = phi_property_suite(cycle(5), 3, SplitSpec((2, 1, 1, 1, 1)))
    assert r.passed, r.checks
    assert abs(r.values["phi_scaled"] - 3 * r.values["phi"]) <= 1e-5
    chord = Graph(4, {**cycle(4).edges, (0, 2): Fraction(1)})
    assert solve_phi(cycle(4)).phi <= solve_phi(chord).phi + TOL


@pytest.mark.parametrize(
    "cert",
    [
        cert_join_balanced(edgeless(3), edgeless(3)),
        cert_join_balanced(complete(3), path(3)),
        cert_join_unbalanced(cycle(4), edgeless(5)),
        cert_nondominating((5, 3, 4, 4)),
        cert_nondominating((1, 2, 2, Fraction(5, 2))),
    ],
    ids=lambda c: c.provenance.value,
)
def test_agrees_with_exact_certificates(cert):
    assert abs(solve_phi(cert.source_graph, TOL).phi - float(cert.objective)) <= TOL * max(1, float(cert.objective))


@settings(max_examples=100)
@given(graphs(max_n=10))
def test_dual_bound_is_valid(g):
    r = solve_phi(g)
    mc = brute_force_maxcut(g, keep=1).value
    assert r.phi >= float(mc) - TOL * max(1.0, float(mc))
