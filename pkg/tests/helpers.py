"""Independent reference computations used only by the tests."""

from fractions import Fraction
from itertools import product

import sympy

from elliptope.graph import Graph
from elliptope.linalg import SymMatrix


def naive_maxcut(g: Graph):
    """Max-Cut and the set of optimal side-A sets (vertex 0 on side A) by plain enumeration."""
    best, arg = Fraction(-1), []
    for bits in product((0, 1), repeat=max(g.n - 1, 0)):
        sides = (0,) + bits
        val = sum((w for (u, v), w in g.edges.items() if sides[u] != sides[v]), Fraction(0))
        a = tuple(v for v in range(g.n) if sides[v] == 0)
        if val > best:
            best, arg = val, [a]
        elif val == best:
            arg.append(a)
    return best, arg


def sym(m: SymMatrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows())


def sympy_rank(m: SymMatrix) -> int:
    return sym(m).rank()


def sympy_psd(m: SymMatrix) -> bool:
    """PSD through exact principal minors of every order."""
    M = sym(m)
    n = M.shape[0]
    from itertools import combinations

    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if M.extract(list(idx), list(idx)).det() < 0:
                return False
    return True
