"""Weighted simple graphs with exact rational weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    NotUnweighted,
    ParseError,
    SelfLoop,
    SizeMismatch,
)
from .linalg import SymMatrix

Edge = tuple[int, int]


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` maps each pair ``(i, j)`` with ``i < j`` to a nonzero
    :class:`~fractions.Fraction`. Zero weights never appear.
    """

    n: int
    edges: Mapping[Edge, Fraction]
    _adj: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        edges = {}
        for (u, v), w in self.edges.items():
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise IndexOutOfRange(f"edge ({u},{v}) outside 0..{self.n - 1}")
            w = Fraction(w)
            if w != 0:
                edges[_key(u, v)] = w
        adj = [dict() for _ in range(self.n)]
        for (u, v), w in edges.items():
            adj[u][v] = w
            adj[v][u] = w
        object.__setattr__(self, "edges", MappingProxyType(dict(sorted(edges.items()))))
        object.__setattr__(self, "_adj", tuple(MappingProxyType(a) for a in adj))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and dict(self.edges) == dict(other.edges)

    def __hash__(self):
        return hash((self.n, tuple(self.edges.items())))

    def weight(self, u: int, v: int) -> Fraction:
        return self._adj[u].get(v, Fraction(0))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> Mapping[int, Fraction]:
        return self._adj[v]

    @property
    def m(self) -> int:
        return len(self.edges)

    def total_weight(self) -> Fraction:
        return sum(self.edges.values(), Fraction(0))

    def is_unweighted(self) -> bool:
        return all(w == 1 for w in self.edges.values())

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, entries: Iterable[Sequence]) -> Graph:
    """Build a graph from ``(u, v, w)`` triples; ``w`` defaults to 1."""
    if n < 0:
        raise IndexOutOfRange("negative vertex count")
    edges: dict[Edge, Fraction] = {}
    for e in entries:
        u, v = int(e[0]), int(e[1])
        w = Fraction(e[2]) if len(e) > 2 else Fraction(1)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        k = _key(u, v)
        if k in edges:
            raise DuplicateEdge(f"edge {k} listed twice")
        edges[k] = w
    return Graph(n, {k: w for k, w in edges.items() if w != 0})


def _unweighted(n: int, pairs: Iterable[Edge]) -> Graph:
    return Graph(n, {_key(u, v): Fraction(1) for u, v in pairs})


def laplacian(g: Graph) -> SymMatrix:
    """L with L_ij = −w_ij off the diagonal and weighted degrees on it."""
    return SymMatrix.from_function(
        g.n, lambda i, j: degree(g, i) if i == j else -g.weight(i, j)
    )


def complement(g: Graph) -> Graph:
    if not g.is_unweighted():
        raise NotUnweighted("complement is defined for unweighted graphs")
    return _unweighted(
        g.n, ((u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v))
    )


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in g.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")


def degree(g: Graph, v: int) -> Fraction:
    _check_vertex(g, v)
    return sum(g.neighbors(v).values(), Fraction(0))


def induced_degree(g: Graph, U: Iterable[int], v: int) -> Fraction:
    U = set(U)
    _check_vertex(g, v)
    if v not in U:
        raise IndexOutOfRange(f"vertex {v} not in the induced set")
    return sum((w for u, w in g.neighbors(v).items() if u in U), Fraction(0))


def induced_subgraph(g: Graph, U: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``U`` relabelled ``0..|U|-1`` in the given order."""
    U = list(U)
    pos = {u: i for i, u in enumerate(U)}
    return (
        Graph(len(U), {_key(pos[u], pos[v]): w for (u, v), w in g.edges.items() if u in pos and v in pos}),
        U,
    )


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Send vertex ``v`` to ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise SizeMismatch("perm is not a permutation of the vertices")
    return Graph(g.n, {_key(perm[u], perm[v]): w for (u, v), w in g.edges.items()})


def scale_weights(g: Graph, k) -> Graph:
    k = Fraction(k)
    return Graph(g.n, {e: w * k for e, w in g.edges.items() if w * k != 0})


# -- partitions ---------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Two-sided vertex partition; ``sides[v]`` is 0 for side A, 1 for side B."""

    sides: tuple[int, ...]

    @classmethod
    def from_sets(cls, n: int, side_a: Iterable[int]) -> "Partition":
        a = set(side_a)
        if any(not 0 <= v < n for v in a):
            raise IndexOutOfRange("partition vertex out of range")
        return cls(tuple(0 if v in a else 1 for v in range(n)))

    @classmethod
    def from_signs(cls, x: Sequence) -> "Partition":
        return cls(tuple(0 if s > 0 else 1 for s in x))

    @property
    def n(self) -> int:
        return len(self.sides)

    @property
    def side_a(self) -> list[int]:
        return [v for v, s in enumerate(self.sides) if s == 0]

    @property
    def side_b(self) -> list[int]:
        return [v for v, s in enumerate(self.sides) if s == 1]

    def signs(self) -> list[int]:
        """±1 encoding, +1 on side A."""
        return [1 if s == 0 else -1 for s in self.sides]

    def canonical(self) -> "Partition":
        """Flip so that vertex 0 lies on side A."""
        if self.sides and self.sides[0] == 1:
            return Partition(tuple(1 - s for s in self.sides))
        return self

    def flipped(self) -> "Partition":
        return Partition(tuple(1 - s for s in self.sides))


# -- edge-list text format ----------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{u} {v} {w}" for (u, v), w in g.edges.items()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(f"line {lineno}: expected header 'n <count>'")
            n = int(parts[1])
            continue
        if len(parts) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'u v [p/q]'")
        try:
            w = Fraction(parts[2]) if len(parts) == 3 else Fraction(1)
            entries.append((int(parts[0]), int(parts[1]), w))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ParseError("missing header 'n <count>'")
    return from_edge_list(n, entries)


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))
