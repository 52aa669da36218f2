"""Brute-force ground truth for Max-Cut and the Exact Sum subset problem."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SizeMismatch, TooLarge
from .graph import Graph, Partition, laplacian

MAX_ORACLE_N = 28


@dataclass(frozen=True)
class MaxCutResult:
    """Optimal value and every optimal partition, with vertex 0 on side A."""

    value: Fraction
    optimal_cuts: tuple[Partition, ...]
    count: int

    @property
    def unique(self) -> bool:
        return self.count == 1


def _lcm_denominator(values) -> int:
    d = 1
    for x in values:
        d = d * x.denominator // math.gcd(d, x.denominator)
    return d


def brute_force_maxcut(g: Graph, keep: int | None = None) -> MaxCutResult:
    """Exhaustive Max-Cut over the 2^(n-1) partitions with vertex 0 pinned.

    Walks the partitions in Gray-code order so each step flips one vertex and
    updates the cut value from that vertex's neighbourhood. Weights are
    scaled to integers for the walk and scaled back at the end. ``keep``
    bounds how many optimal partitions are stored; ``count`` is always exact.
    """
    n = g.n
    if n > MAX_ORACLE_N:
        raise TooLarge(f"brute force capped at n = {MAX_ORACLE_N}, got {n}")
    if n <= 1:
        return MaxCutResult(Fraction(0), (Partition((0,) * n),), 1)
    den = _lcm_denominator(g.edges.values())
    adj = [[(u, int(w * den)) for u, w in g.neighbors(v).items()] for v in range(n)]
    side = [0] * n
    cut = 0
    best = 0
    best_masks = [0]
    mask = 0
    for k in range(1, 1 << (n - 1)):
        v = (k & -k).bit_length()  # lowest set bit of k, shifted past vertex 0
        sv = side[v]
        d = 0
        for u, w in adj[v]:
            d += w if side[u] == sv else -w
        cut += d
        side[v] ^= 1
        mask ^= 1 << v
        if cut > best:
            best = cut
            best_masks = [mask]
        elif cut == best:
            best_masks.append(mask)
    best_masks.sort()
    count = len(best_masks)
    if keep is not None:
        best_masks = best_masks[:keep]
    cuts = tuple(Partition(tuple((mk >> v) & 1 for v in range(n))) for mk in best_masks)
    cuts = tuple(sorted(cuts, key=lambda p: p.sides))
    return MaxCutResult(Fraction(best, den), cuts, count)


def cut_value(g: Graph, p: Partition) -> Fraction:
    if p.n != g.n:
        raise SizeMismatch(f"partition of {p.n} vertices for a graph on {g.n}")
    return sum((w for (u, v), w in g.edges.items() if p.sides[u] != p.sides[v]), Fraction(0))


def cut_value_quadratic(g: Graph, p: Partition) -> Fraction:
    """(1/4)·xᵀLx for the ±1 vector of ``p``."""
    if p.n != g.n:
        raise SizeMismatch(f"partition of {p.n} vertices for a graph on {g.n}")
    return laplacian(g).quad(p.signs()) / 4


def _integerize(a: Sequence) -> list[int]:
    vals = [Fraction(x) for x in a]
    den = _lcm_denominator(vals)
    return [int(x * den) for x in vals]


def exact_sum_decision(a: Sequence) -> tuple[int, ...] | None:
    """Indices S with Σ_S a = Σ_{not S} a, or None.

    Subset-sum DP over the half total with parent pointers for
    reconstruction. The returned subset always contains index 0.
    """
    ints = _integerize(a)
    total = sum(ints)
    if total % 2:
        return None
    target = total // 2
    parent: dict[int, tuple[int, int] | None] = {0: None}
    for i, x in enumerate(ints):
        for s in list(parent):
            t = s + x
            if t <= target and t not in parent:
                parent[t] = (i, s)
        if target in parent:
            break
    if target not in parent:
        return None
    chosen = []
    s = target
    while parent[s] is not None:
        i, s = parent[s]
        chosen.append(i)
    S = set(chosen)
    if 0 not in S:
        S = set(range(len(ints))) - S
    return tuple(sorted(S))


def count_balanced_partitions(m: Sequence, cap: int = 1 << 30) -> int:
    """Number of balanced splits (S, Sᶜ) of ``m``, up to complement, saturating at cap."""
    vals = _integerize(m)
    n = len(vals)
    total = sum(vals)
    if n < 2 or total % 2:
        return 0
    half = total // 2
    count = 0
    rest = vals[1:]
    for mask in range(1 << (n - 1)):
        s = vals[0] + sum(x for k, x in enumerate(rest) if mask >> k & 1)
        if s == half and mask != (1 << (n - 1)) - 1:
            count += 1
            if count >= cap:
                return cap
    return count
