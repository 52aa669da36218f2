from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from elliptope.errors import MixedBackings, NotSymmetric, NotSymmetricBacking
from elliptope.graph import laplacian
from elliptope.linalg import (
    SymMatrix,
    dump_lower,
    eigen_sym,
    kron,
    lambda_max,
    lambda_min,
    nullspace_basis,
    parse_lower,
    penrose_identities,
    psd_check_exact,
    pseudo_inverse,
    rank_exact,
    schur_psd_check,
)
from elliptope.ops import complete_kpartite, cycle, edgeless, join

from helpers import sympy_psd, sympy_rank
from strategies import rational_matrices, rationals

F = Fraction


def sym_from(rows):
    n = len(rows)
    return SymMatrix.from_function(n, lambda i, j: rows[i][j] + rows[j][i])


def gram(rows):
    """AᵀA, always PSD."""
    n = len(rows)
    return SymMatrix.from_function(n, lambda i, j: sum(rows[k][i] * rows[k][j] for k in range(n)))


def test_symmetry_is_structural():
    m = SymMatrix.from_rows([[1, 2], [2, 3]])
    assert m[0, 1] == m[1, 0] == 2
    with pytest.raises(NotSymmetric):
        SymMatrix.from_rows([[1, 2], [3, 1]])
    with pytest.raises(MixedBackings):
        m + m.to_float()
    with pytest.raises(NotSymmetricBacking):
        psd_check_exact(m.to_float())


def test_psd_examples():
    m = [5, 3, 4, 4]
    w = psd_check_exact(SymMatrix.outer(m).scale(F(1, 4)))
    assert w.psd and w.reproduces(SymMatrix.outer(m).scale(F(1, 4)))
    w = psd_check_exact(SymMatrix.from_rows([[1, 2], [2, 1]]))
    assert not w.psd and w.vector in ((1, -1), (-1, 1)) and w.value == -2
    assert psd_check_exact(SymMatrix.zeros(3)).psd


def test_rank_examples():
    assert rank_exact(SymMatrix.outer([1, 1, -1, -1])) == 1
    x_g2 = SymMatrix.from_rows([
        [1, F(1, 7), F(-2, 7), F(-2, 7)],
        [F(1, 7), 1, F(-2, 7), F(-2, 7)],
        [F(-2, 7), F(-2, 7), 1, F(-5, 7)],
        [F(-2, 7), F(-2, 7), F(-5, 7), 1],
    ])
    assert rank_exact(x_g2) == 3
    assert nullspace_basis(x_g2) == [[1, 1, 2, 2]]
    assert rank_exact(SymMatrix.identity(5)) == 5 and nullspace_basis(SymMatrix.identity(5)) == []


def test_eigen_examples():
    vals, _ = eigen_sym(laplacian(complete_kpartite([3, 3])).to_float())
    assert abs(vals[-1] - 6) < 1e-9
    assert np.allclose(eigen_sym(laplacian(edgeless(4)))[0], 0)
    assert np.allclose(eigen_sym(laplacian(cycle(4)))[0], [0, 2, 2, 4], atol=1e-9)


def test_pseudo_inverse_examples():
    m = SymMatrix.from_rows([[2, 1], [1, 1]])
    p = pseudo_inverse(m)
    assert p == SymMatrix.from_rows([[1, -1], [-1, 2]])
    proj = SymMatrix.ones(3).scale(F(1, 3))
    assert pseudo_inverse(proj) == proj
    # B = (m1 I − L_B)/4 for G_B = C4 and m1 = 3: B⁺·1 = (4/m1)·1
    m1, LB = 3, laplacian(cycle(4))
    B = (SymMatrix.identity(4).scale(m1) - LB).scale(F(1, 4))
    bp = pseudo_inverse(B)
    assert bp.matvec([1] * 4) == [F(4, m1)] * 4
    assert bp.quad([1] * 4) == F(4 * 4, m1)


def test_schur_examples():
    n = 2
    g = join(edgeless(2), edgeless(2))
    S = SymMatrix.identity(4).scale(F(n, 2)) - laplacian(g).scale(F(1, 4))
    r = schur_psd_check(S, 2)
    assert r.psd and psd_check_exact(S).psd
    r = schur_psd_check(SymMatrix.from_rows([[0, 1], [1, 0]]), 1)
    assert not r.psd and r.failed == "range"
    m = SymMatrix.from_rows([[1, 0, 0], [0, 2, 2], [0, 2, 2]])
    r = schur_psd_check(m, 1)
    assert r.psd and r.rank_lower_bound == 2 == rank_exact(m)


def test_kron_examples():
    assert kron(SymMatrix.identity(2), SymMatrix.identity(3)) == SymMatrix.identity(6)
    k = kron(SymMatrix.outer([1, -1]), SymMatrix.ones(2))
    assert k.n == 4 and rank_exact(k) == 1


def test_dump_round_trip():
    m = SymMatrix.from_rows([[1, F(1, 3)], [F(1, 3), F(-2, 5)]])
    assert parse_lower(dump_lower(m)) == m


@given(rational_matrices(max_n=5))
def test_psd_witness_reproduces(rows):
    m = sym_from(rows)
    w = psd_check_exact(m)
    assert w.reproduces(m)
    assert w.psd == sympy_psd(m)


@given(rational_matrices(max_n=6))
def test_gram_is_psd(rows):
    m = gram(rows)
    w = psd_check_exact(m)
    assert w.psd and w.reproduces(m)


@given(rational_matrices(max_n=12), st.booleans())
def test_cross_backend_agreement(rows, make_psd):
    m = gram(rows) if make_psd else sym_from(rows)
    exact = psd_check_exact(m).psd
    lam = lambda_min(m.to_float())
    assert exact == (lam >= -1e-9)


@given(rational_matrices(max_n=6))
def test_rank_matches_sympy(rows):
    m = sym_from(rows)
    assert rank_exact(m) == sympy_rank(m)
    for v in nullspace_basis(m):
        assert all(x == 0 for x in m.matvec(v))


@given(rational_matrices(max_n=4), rational_matrices(max_n=3))
def test_kron_rank_is_product(a, b):
    A, B = sym_from(a), sym_from(b)
    assert rank_exact(kron(A, B)) == rank_exact(A) * rank_exact(B)


@given(rational_matrices(max_n=4), rational_matrices(max_n=4))
def test_kron_lambda_max_is_product(a, b):
    A, B = gram(a).to_float(), gram(b).to_float()
    lhs = lambda_max(kron(A, B))
    rhs = lambda_max(A) * lambda_max(B)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


@given(rational_matrices(max_n=5))
def test_penrose(rows):
    m = sym_from(rows)
    assert penrose_identities(m, pseudo_inverse(m))


@given(rational_matrices(min_n=2, max_n=6), st.booleans(), st.data())
def test_schur_agrees_with_direct(rows, make_psd, data):
    m = gram(rows) if make_psd else sym_from(rows)
    k = data.draw(st.integers(0, m.n))
    r = schur_psd_check(m, k)
    assert r.psd == psd_check_exact(m).psd
    if r.psd:
        assert r.rank_lower_bound <= rank_exact(m)
    elif r.vector is not None:
        assert m.quad(r.vector) < 0


@given(rational_matrices(max_n=8))
def test_eigen_residuals(rows):
    m = sym_from(rows).to_float()
    vals, vecs = eigen_sym(m)
    a = m.to_array()
    assert np.all(np.diff(vals) >= -1e-12)
    assert np.allclose(vecs.T @ vecs, np.eye(m.n), atol=1e-9)
    assert np.allclose(np.sort(vals), np.linalg.eigvalsh(a), atol=1e-8 * max(1, np.abs(a).max()))
