"""Graph constructions: join, split, lexicographic product and named families.

Vertex order conventions:

* ``join(G1, G2)``: vertices of G1 first, then G2 shifted by ``G1.n``.
* ``split(G, p)``: the copies of vertex ``i`` are contiguous, in vertex order.
* ``lex_product(G1, G2)``: vertex ``(u, v)`` gets index ``u * G2.n + v``.
* ``complete_kpartite(a)``: parts in list order, each contiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadSize, EmptyPartList, NonpositiveMass, NotUnweighted, SizeMismatch, ZeroMultiplicity
from .graph import Graph, _key, laplacian
from .linalg import SymMatrix, kron


@dataclass(frozen=True)
class SplitSpec:
    """Per-vertex copy counts for :func:`split`."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", tuple(int(p) for p in self.multiplicities))
        if any(p < 1 for p in self.multiplicities):
            raise ZeroMultiplicity("every multiplicity must be at least 1")

    @classmethod
    def uniform(cls, n: int, p: int) -> "SplitSpec":
        return cls((p,) * n)

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    def clone_map(self) -> list[int]:
        return [i for i, p in enumerate(self.multiplicities) for _ in range(p)]


def join(g1: Graph, g2: Graph, cross_weight=1) -> Graph:
    """G1 ∨ G2: disjoint union plus every cross pair at ``cross_weight``."""
    off = g1.n
    edges = dict(g1.edges)
    edges.update({(u + off, v + off): w for (u, v), w in g2.edges.items()})
    cw = Fraction(cross_weight)
    for u in range(g1.n):
        for v in range(g2.n):
            edges[(u, v + off)] = cw
    return Graph(g1.n + g2.n, edges)


def split(g: Graph, spec: SplitSpec | Sequence[int]) -> tuple[Graph, list[int]]:
    """Replace vertex ``i`` by ``p_i`` copies; copy–copy edges get ``w_ij/(p_i p_j)``."""
    if not isinstance(spec, SplitSpec):
        spec = SplitSpec(tuple(spec))
    p = spec.multiplicities
    if len(p) != g.n:
        raise SizeMismatch(f"{len(p)} multiplicities for {g.n} vertices")
    start = [0] * g.n
    for i in range(1, g.n):
        start[i] = start[i - 1] + p[i - 1]
    edges = {}
    for (i, j), w in g.edges.items():
        cw = w / (p[i] * p[j])
        for a in range(start[i], start[i] + p[i]):
            for b in range(start[j], start[j] + p[j]):
                edges[_key(a, b)] = cw
    return Graph(spec.total, edges), spec.clone_map()


def lex_product(g1: Graph, g2: Graph) -> Graph:
    """Lexicographic product G1 • G2 of unweighted graphs."""
    if not (g1.is_unweighted() and g2.is_unweighted()):
        raise NotUnweighted("lex_product takes unweighted factors; scale afterwards")
    n2 = g2.n
    edges = {}
    for (u, up) in g1.edges:
        for v in range(n2):
            for vp in range(n2):
                edges[_key(u * n2 + v, up * n2 + vp)] = Fraction(1)
    for u in range(g1.n):
        for (v, vp) in g2.edges:
            edges[(u * n2 + v, u * n2 + vp)] = Fraction(1)
    return Graph(g1.n * n2, edges)


def degree_matrix(g: Graph) -> SymMatrix:
    L = laplacian(g)
    return SymMatrix.diag(L.diagonal())


def lex_laplacian_identity(g1: Graph, g2: Graph) -> bool:
    """Check L(G1•G2) = I⊗D2 + D1⊗nI + I⊗(L2−D2) + (L1−D1)⊗J entrywise."""
    m, n = g1.n, g2.n
    L1, L2 = laplacian(g1), laplacian(g2)
    D1, D2 = degree_matrix(g1), degree_matrix(g2)
    Im, In, Jn = SymMatrix.identity(m), SymMatrix.identity(n), SymMatrix.ones(n)
    rhs = kron(Im, D2) + kron(D1, In.scale(n)) + kron(Im, L2 - D2) + kron(L1 - D1, Jn)
    return laplacian(lex_product(g1, g2)) == rhs


def complete_kpartite(parts: Sequence[int]) -> Graph:
    if not parts:
        raise EmptyPartList("need at least one part")
    if any(int(a) < 1 for a in parts):
        raise BadSize("part sizes must be positive")
    label = [k for k, a in enumerate(parts) for _ in range(int(a))]
    n = len(label)
    return Graph(
        n,
        {(u, v): Fraction(1) for u in range(n) for v in range(u + 1, n) if label[u] != label[v]},
    )


def complete_weighted(masses: Sequence) -> Graph:
    """K_n with w_ij = m_i m_j."""
    m = [Fraction(x) for x in masses]
    if any(x <= 0 for x in m):
        raise NonpositiveMass("masses must be positive")
    n = len(m)
    return Graph(n, {(i, j): m[i] * m[j] for i in range(n) for j in range(i + 1, n)})


def complete(n: int) -> Graph:
    if n < 1:
        raise BadSize("complete graph needs n >= 1")
    return Graph(n, {(i, j): Fraction(1) for i in range(n) for j in range(i + 1, n)})


def edgeless(n: int) -> Graph:
    if n < 0:
        raise BadSize("negative size")
    return Graph(n, {})


def path(n: int) -> Graph:
    if n < 1:
        raise BadSize("path needs n >= 1")
    return Graph(n, {(i, i + 1): Fraction(1) for i in range(n - 1)})


def cycle(n: int) -> Graph:
    if n < 3:
        raise BadSize("cycle needs n >= 3")
    return Graph(n, {_key(i, (i + 1) % n): Fraction(1) for i in range(n)})


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    edges = dict(g1.edges)
    edges.update({(u + off, v + off): w for (u, v), w in g2.edges.items()})
    return Graph(g1.n + g2.n, edges)
