"""Polynomial-time recognition of exact graph classes.

* :func:`recognize_complement_core` tests whether G is a join of a large
  sparse side with a small arbitrary side, found from the complement.
* :func:`kpartite_exactness` decides complete multipartite graphs.
* :func:`verify_split_decomposable` checks a caller-supplied witness that G
  splits onto an exact uniform-weight skeleton.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .certificates import Certificate, verify_certificate
from .errors import DegenerateInstance, NotUnweighted, Unsorted, BadSize
from .graph import (
    Graph,
    Partition,
    _unweighted,
    complement,
    connected_components,
    induced_degree,
)
from .oracle import exact_sum_decision
from .ops import SplitSpec, complete_kpartite, split


class Reason(str, Enum):
    AdjacencyFailed = "AdjacencyFailed"
    DegreeBoundFailed = "DegreeBoundFailed"
    Matched = "Matched"
    MatchedBalanced = "MatchedBalanced"


@dataclass(frozen=True)
class RecognitionReport:
    matched: bool
    reason: Reason
    core: tuple[int, ...]
    cut: Partition | None = None
    value: Fraction | None = None
    unique_cut: bool | None = None
    failing_vertex: int | None = None

    def as_dict(self) -> dict:
        return {
            "matched": self.matched,
            "reason": self.reason.value,
            "core": list(self.core),
            "side_a": self.cut.side_a if self.cut else None,
            "value": str(self.value) if self.value is not None else None,
            "unique_cut": self.unique_cut,
            "failing_vertex": self.failing_vertex,
        }


def recognize_complement_core(g: Graph) -> RecognitionReport:
    """Take the largest component V′ of Gᶜ and test the join conditions.

    Every vertex of V′ is adjacent in G to all of V∖V′, so G = G[V∖V′] ∨ G[V′].
    The cut (V′, V∖V′) is optimal when |V′| > |V∖V′| and each v ∈ V′ satisfies
    2·deg_{G[V′]}(v) ≤ |V∖V′|, and also whenever |V′| = |V∖V′|.
    """
    if not g.is_unweighted():
        raise NotUnweighted("recognizer takes unweighted graphs")
    comps = connected_components(complement(g))
    # ties go to the component with the smallest vertex; components are ordered that way
    core = max(comps, key=len) if comps else []
    k = g.n - len(core)
    if len(core) < k or k == 0:
        return RecognitionReport(False, Reason.AdjacencyFailed, tuple(core))
    cut = Partition.from_sets(g.n, core).canonical()
    value = Fraction(len(core) * k)
    if len(core) == k:
        return RecognitionReport(True, Reason.MatchedBalanced, tuple(core), cut, value, None)
    for v in core:
        if 2 * induced_degree(g, core, v) > k:
            return RecognitionReport(False, Reason.DegreeBoundFailed, tuple(core), failing_vertex=v)
    return RecognitionReport(True, Reason.Matched, tuple(core), cut, value, True)


# -- complete multipartite graphs ---------------------------------------------


class KPartiteKind(str, Enum):
    ExactUnique = "ExactUnique"
    ExactNonUnique = "ExactNonUnique"
    NotExact = "NotExact"


@dataclass(frozen=True)
class KPartiteVerdict:
    kind: KPartiteKind
    witness: tuple[int, ...] | None = None

    @property
    def exact(self) -> bool:
        return self.kind is not KPartiteKind.NotExact

    def maxcut(self, parts: Sequence[int]) -> Fraction:
        """Max-Cut of K(parts) when the verdict is exact."""
        total = sum(parts)
        if self.kind is KPartiteKind.ExactUnique:
            return Fraction(parts[-1] * (total - parts[-1]))
        if self.kind is KPartiteKind.ExactNonUnique:
            return Fraction(total * total, 4)
        raise ValueError("Max-Cut is not read off a non-exact verdict")


def _check_parts(a: Sequence[int]) -> list[int]:
    a = [int(x) for x in a]
    if not a:
        raise BadSize("need at least one part")
    if any(x < 1 for x in a):
        raise BadSize("part sizes must be positive")
    if a != sorted(a):
        raise Unsorted("part sizes must be sorted ascending")
    return a


def kpartite_exactness(a: Sequence[int]) -> KPartiteVerdict:
    """Exactness of K(a₁ ≤ … ≤ aₙ).

    Strictly dominant last part: exact with a unique optimum. Otherwise exact
    iff the sizes split into two halves of equal sum, which is returned as the
    witness. The tie aₙ = Σ_{i<n} aᵢ takes the balanced-subset branch.
    """
    a = _check_parts(a)
    if len(a) == 1:
        return KPartiteVerdict(KPartiteKind.ExactNonUnique, None)
    rest = sum(a[:-1])
    if a[-1] > rest:
        return KPartiteVerdict(KPartiteKind.ExactUnique, None)
    s = exact_sum_decision(a)
    if s is None:
        return KPartiteVerdict(KPartiteKind.NotExact, None)
    return KPartiteVerdict(KPartiteKind.ExactNonUnique, s)


def build_hardness_instance(a: Sequence[int]) -> Graph:
    """K(a₁, …, aₙ): exact iff the sizes admit an equal-sum split."""
    a = _check_parts(a)
    if len(a) < 2 or a[-1] > sum(a[:-1]):
        raise DegenerateInstance(f"largest part {a[-1]} exceeds the sum of the others")
    return complete_kpartite(a)


def kpartite_parts(g: Graph) -> list[int] | None:
    """Sorted part sizes if ``g`` is complete multipartite, else None."""
    if not g.is_unweighted():
        return None
    comps = connected_components(complement(g))
    for c in comps:
        if any(g.has_edge(u, v) for i, u in enumerate(c) for v in c[i + 1:]):
            return None
    return sorted(len(c) for c in comps)


# -- split-decomposable graphs ------------------------------------------------


class RejectReason(str, Enum):
    BadWitness = "BadWitness"
    SkeletonEdgeMissing = "SkeletonEdgeMissing"
    SkeletonWeightMismatch = "SkeletonWeightMismatch"
    ResidualPlacement = "ResidualPlacement"
    ResidualNegative = "ResidualNegative"
    ResidualTooHeavy = "ResidualTooHeavy"
    SkeletonNotExact = "SkeletonNotExact"


@dataclass(frozen=True)
class SplitDecompWitness:
    multiplicities: tuple[int, ...]
    skeleton: Graph
    uniform_weight: Fraction
    copies: int
    mapping: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "multiplicities": list(self.multiplicities),
                "skeleton": {"n": self.skeleton.n, "edges": [list(e) for e in self.skeleton.edges]},
                "w": str(self.uniform_weight),
                "p": self.copies,
                "mapping": list(self.mapping),
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "SplitDecompWitness":
        d = json.loads(text)
        sk = d["skeleton"]
        return cls(
            tuple(int(x) for x in d["multiplicities"]),
            _unweighted(int(sk["n"]), (tuple(e) for e in sk["edges"])),
            Fraction(d["w"]),
            int(d["p"]),
            tuple(int(x) for x in d["mapping"]),
        )

    @classmethod
    def load(cls, path) -> "SplitDecompWitness":
        with open(path) as fh:
            return cls.from_json(fh.read())

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")


@dataclass(frozen=True)
class DecompResult:
    accepted: bool
    maxcut: Fraction | None = None
    reason: RejectReason | None = None
    detail: str = ""
    route: str | None = None

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "maxcut": str(self.maxcut) if self.maxcut is not None else None,
            "reason": self.reason.value if self.reason else None,
            "detail": self.detail,
            "route": self.route,
        }


def _reject(reason: RejectReason, detail: str) -> DecompResult:
    return DecompResult(False, reason=reason, detail=detail)


def skeleton_maxcut(sk: Graph, cert: Certificate | None = None) -> tuple[Fraction, str] | None:
    """Max-Cut of an exact unweighted skeleton, or None if exactness is not established."""
    rep = recognize_complement_core(sk)
    if rep.matched:
        return rep.value, "complement-core"
    parts = kpartite_parts(sk)
    if parts is not None:
        v = kpartite_exactness(parts)
        if v.exact:
            return v.maxcut(parts), "kpartite"
    if cert is not None and cert.source_graph == sk:
        r = verify_certificate(cert)
        if r.optimal and r.rank_X == 1:
            return r.primal_value, "certificate"
    return None


def verify_split_decomposable(
    g: Graph, wit: SplitDecompWitness, skeleton_cert: Certificate | None = None
) -> DecompResult:
    """Check that split(G) is split(𝒮, p) at weight w/p² plus light residual edges inside clone classes."""
    sk, w, p = wit.skeleton, wit.uniform_weight, wit.copies
    total = sum(wit.multiplicities)
    if len(wit.multiplicities) != g.n or any(x < 1 for x in wit.multiplicities):
        return _reject(RejectReason.BadWitness, "multiplicities do not fit the graph")
    if p < 2 or w <= 0 or not sk.is_unweighted():
        return _reject(RejectReason.BadWitness, "need p >= 2, w > 0 and an unweighted skeleton")
    if sorted(wit.mapping) != list(range(total)) or sk.n * p != total:
        return _reject(RejectReason.BadWitness, "mapping is not a bijection onto the split skeleton")
    gs, _ = split(g, SplitSpec(wit.multiplicities))
    inv = [0] * total
    for a, s in enumerate(wit.mapping):
        inv[s] = a
    unit = w / (p * p)
    image = set()
    for u, v in sk.edges:
        for i in range(p):
            for j in range(p):
                a, b = inv[u * p + i], inv[v * p + j]
                if not gs.has_edge(a, b):
                    return _reject(RejectReason.SkeletonEdgeMissing, f"no edge ({a},{b})")
                if gs.weight(a, b) != unit:
                    return _reject(RejectReason.SkeletonWeightMismatch, f"edge ({a},{b}) has weight {gs.weight(a, b)}")
                image.add((min(a, b), max(a, b)))
    for (a, b), wt in gs.edges.items():
        if (a, b) in image:
            continue
        if wit.mapping[a] // p != wit.mapping[b] // p:
            return _reject(RejectReason.ResidualPlacement, f"residual ({a},{b}) joins two clone classes")
        if wt < 0:
            return _reject(RejectReason.ResidualNegative, f"residual ({a},{b}) has weight {wt}")
        if wt > unit:
            return _reject(RejectReason.ResidualTooHeavy, f"residual ({a},{b}) weight {wt} > {unit}")
    found = skeleton_maxcut(sk, skeleton_cert)
    if found is None:
        return _reject(RejectReason.SkeletonNotExact, "skeleton exactness not established")
    mc, route = found
    return DecompResult(True, maxcut=w * mc, route=route)
