"""Exact primal/dual certificates for the Max-Cut SDP.

Primal:  maximize ⟨L, X⟩/4  s.t. diag(X) = 1, X ⪰ 0
Dual:    minimize tr(Y)     s.t. S = Y − L/4 ⪰ 0, Y diagonal

A pair (X, Y) with both sides feasible and tr(Y) = ⟨L, X⟩/4 is optimal; every
check here runs in rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Sequence

from . import oracle
from .errors import (
    DimensionMismatch,
    Dominating,
    InfeasibleInput,
    LiftInfeasible,
    NotComplementary,
    NotRankOne,
    NotUnweighted,
    OddOrder,
    PairNotOptimal,
    SizeMismatch,
    SizesNotStrict,
    SpecMismatch,
    TooSmall,
    UnequalSizes,
    WitnessInvalid,
    DegreeBoundViolated,
)
from .graph import Graph, Partition, complement, degree, is_connected, laplacian
from .linalg import (
    PsdWitness,
    SchurReport,
    SymMatrix,
    inner,
    kron,
    matmul,
    matrix_rank,
    psd_check_exact,
    rank_exact,
    schur_psd_check,
)
from .ops import SplitSpec, complete, degree_matrix, join, lex_product, split

QUARTER = Fraction(1, 4)


class Provenance(str, Enum):
    JoinBalanced = "JoinBalanced"
    JoinUnbalanced = "JoinUnbalanced"
    NonDominating = "NonDominating"
    SplitLift = "SplitLift"
    LexLift = "LexLift"
    Manual = "Manual"


@dataclass(frozen=True)
class Certificate:
    """Primal candidate X, diagonal dual Y and slack S = Y − L/4."""

    X: SymMatrix
    Y: SymMatrix
    S: SymMatrix
    objective: Fraction
    provenance: Provenance
    source_graph: Graph
    extra: Mapping[str, Any] = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.X.n


def make_certificate(g: Graph, X: SymMatrix, y: Sequence, provenance=Provenance.Manual, **extra) -> Certificate:
    """Assemble a certificate from a primal matrix and the dual diagonal."""
    if X.n != g.n or len(y) != g.n:
        raise DimensionMismatch(f"graph on {g.n} vertices, X of size {X.n}, y of length {len(y)}")
    L = laplacian(g)
    Y = SymMatrix.diag([Fraction(v) for v in y])
    return Certificate(X, Y, Y - L.scale(QUARTER), inner(L, X) / 4, Provenance(provenance), g, extra)


@dataclass(frozen=True)
class VerificationReport:
    feasible_primal: bool
    feasible_dual: bool
    dual_witness: PsdWitness
    primal_witness: PsdWitness
    duality_gap: Fraction
    complementary_slackness: bool
    rank_X: int
    rank_S: int
    shared_nullity: int
    primal_value: Fraction
    dual_value: Fraction
    slack_consistent: bool
    unit_diagonal: bool

    @property
    def optimal(self) -> bool:
        return self.feasible_primal and self.feasible_dual and self.duality_gap == 0

    def as_dict(self) -> dict:
        return {
            "feasible_primal": self.feasible_primal,
            "feasible_dual": self.feasible_dual,
            "dual_verdict": self.dual_witness.verdict,
            "duality_gap": str(self.duality_gap),
            "complementary_slackness": self.complementary_slackness,
            "rank_X": self.rank_X,
            "rank_S": self.rank_S,
            "shared_nullity": self.shared_nullity,
            "primal_value": str(self.primal_value),
            "dual_value": str(self.dual_value),
            "optimal": self.optimal,
        }


def _is_zero(rows) -> bool:
    return all(x == 0 for r in rows for x in r)


def shared_nullity(X: SymMatrix, S: SymMatrix) -> int:
    """dim(N(X) ∩ N(S)), via the rank of the stacked matrix [X; S]."""
    return X.n - matrix_rank(X.rows() + S.rows())


def verify_certificate(c: Certificate) -> VerificationReport:
    """Re-derive every optimality condition of ``c`` from its graph, X and Y."""
    g = c.source_graph
    n = g.n
    if c.X.n != n or c.Y.n != n or c.S.n != n:
        raise DimensionMismatch("certificate matrices do not match the graph")
    L = laplacian(g)
    S = c.Y - L.scale(QUARTER)
    unit = all(x == 1 for x in c.X.diagonal())
    pw = psd_check_exact(c.X)
    dw = psd_check_exact(S)
    primal = inner(L, c.X) / 4
    dual = c.Y.trace()
    xs = matmul(c.X.rows(), S.rows())
    return VerificationReport(
        feasible_primal=unit and pw.psd,
        feasible_dual=dw.psd and c.Y.is_diagonal(),
        dual_witness=dw,
        primal_witness=pw,
        duality_gap=dual - primal,
        complementary_slackness=_is_zero(xs),
        rank_X=rank_exact(c.X),
        rank_S=rank_exact(S),
        shared_nullity=shared_nullity(c.X, S),
        primal_value=primal,
        dual_value=dual,
        slack_consistent=S == c.S,
        unit_diagonal=unit,
    )


def rank_identity_check(X: SymMatrix, S: SymMatrix) -> bool:
    """rank X + rank S = n − dim(N(X) ∩ N(S)) for a complementary pair."""
    if X.n != S.n:
        raise DimensionMismatch("X and S differ in size")
    if not _is_zero(matmul(X.rows(), S.rows())):
        raise NotComplementary("X·S is not zero")
    return rank_exact(X) + rank_exact(S) == X.n - shared_nullity(X, S)


def primal_from_cut(g: Graph, p: Partition) -> SymMatrix:
    if p.n != g.n:
        raise SizeMismatch(f"partition of {p.n} vertices for a graph on {g.n}")
    return SymMatrix.outer(p.signs())


def cert_from_cut(g: Graph, p: Partition) -> Certificate:
    """Rank-1 certificate whose dual is forced by S·x = 0: Y_ii = x_i(Lx)_i/4.

    The result is only optimal when the cut is; verify it.
    """
    x = p.signs()
    Lx = laplacian(g).matvec(x)
    return make_certificate(g, primal_from_cut(g, p), [xi * v / 4 for xi, v in zip(x, Lx)])


# -- graph joins --------------------------------------------------------------


def _require_unweighted(*gs: Graph) -> None:
    if not all(g.is_unweighted() for g in gs):
        raise NotUnweighted("construction needs unweighted graphs")


def _join_cut(m1: int, m2: int) -> list[int]:
    return [1] * m1 + [-1] * m2


def cert_join_balanced(ga: Graph, gb: Graph) -> Certificate:
    """Cut (V_A, V_B) of G_A ∨ G_B with dual Y = (n/2)·I, objective n²."""
    if ga.n != gb.n:
        raise UnequalSizes(f"|V_A| = {ga.n} but |V_B| = {gb.n}")
    _require_unweighted(ga, gb)
    n = ga.n
    g = join(ga, gb)
    X = SymMatrix.outer(_join_cut(n, n))
    return make_certificate(g, X, [Fraction(n, 2)] * (2 * n), Provenance.JoinBalanced)


class Uniqueness(str, Enum):
    GuaranteedUnique = "GuaranteedUnique"
    Inconclusive = "Inconclusive"


def uniqueness_join_balanced(ga: Graph, gb: Graph) -> Uniqueness:
    """Sufficient condition only: one of the two complements is connected."""
    if ga.n != gb.n:
        raise UnequalSizes(f"|V_A| = {ga.n} but |V_B| = {gb.n}")
    _require_unweighted(ga, gb)
    if is_connected(complement(ga)) or is_connected(complement(gb)):
        return Uniqueness.GuaranteedUnique
    return Uniqueness.Inconclusive


def cert_join_unbalanced(ga: Graph, gb: Graph) -> Certificate:
    """Cut (V_A, V_B) of G_A ∨ G_B when |V_A| < |V_B| and G_B has max degree ≤ |V_A|/2.

    Dual feasibility goes through the Schur complement of the V_B block so a
    failure names the violated condition (``extra["schur"]``).
    """
    m1, m2 = ga.n, gb.n
    if not m1 < m2:
        raise SizesNotStrict(f"need |V_A| < |V_B|, got {m1} and {m2}")
    _require_unweighted(ga, gb)
    for v in range(m2):
        d = degree(gb, v)
        if 2 * d > m1:
            raise DegreeBoundViolated(v, d, Fraction(m1, 2))
    g = join(ga, gb)
    X = SymMatrix.outer(_join_cut(m1, m2))
    y = [Fraction(m2, 2)] * m1 + [Fraction(m1, 2)] * m2
    cert = make_certificate(g, X, y, Provenance.JoinUnbalanced)
    schur = schur_psd_check(cert.S, m1)
    if not schur.psd:
        raise AssertionError(f"Schur route rejected the unbalanced dual at {schur.failed}")
    return Certificate(cert.X, cert.Y, cert.S, cert.objective, cert.provenance, g, {"schur": schur})


def verify_spanning_biclique_witness(g: Graph, p: Partition) -> bool:
    """Does ``p`` exhibit K(n/2, n/2) as a spanning subgraph of ``g``?"""
    _require_unweighted(g)
    if g.n % 2:
        raise OddOrder(f"graph has odd order {g.n}")
    if p.n != g.n:
        raise SizeMismatch("partition size differs from graph order")
    a, b = p.side_a, p.side_b
    if len(a) != len(b):
        return False
    return all(g.has_edge(u, v) for u in a for v in b)


@dataclass(frozen=True)
class HigherRankJoin:
    first: Certificate
    second: Certificate
    midpoint: Certificate


def higher_rank_join(ga: Graph, gb: Graph, part_a: Partition, part_b: Partition) -> HigherRankJoin:
    """Two rank-1 optima (x_A, x_B), (−x_A, x_B) of G_A ∨ G_B and their rank-2 midpoint.

    ``part_a``/``part_b`` must exhibit balanced complete bipartite spanning
    subgraphs of G_A and G_B; all three primals share Y = ((m₁+m₂)/4)·I.
    """
    _require_unweighted(ga, gb)
    for g, p in ((ga, part_a), (gb, part_b)):
        try:
            ok = verify_spanning_biclique_witness(g, p)
        except (OddOrder, SizeMismatch) as exc:
            raise WitnessInvalid(str(exc)) from None
        if not ok:
            raise WitnessInvalid("witness is not a balanced complete bipartite spanning subgraph")
    g = join(ga, gb)
    N = g.n
    xa, xb = part_a.signs(), part_b.signs()
    X1 = SymMatrix.outer(xa + xb)
    X2 = SymMatrix.outer([-s for s in xa] + xb)
    Xm = (X1 + X2).scale(Fraction(1, 2))
    y = [Fraction(N, 4)] * N
    prov = Provenance.JoinBalanced if ga.n == gb.n else Provenance.Manual
    return HigherRankJoin(*(make_certificate(g, X, y, prov) for X in (X1, X2, Xm)))


# -- complete graphs weighted by a non-dominating vector ----------------------


def is_nondominating(m: Sequence) -> bool:
    m = [Fraction(x) for x in m]
    M = sum(m)
    return len(m) >= 3 and all(x > 0 and 2 * x < M for x in m)


@dataclass(frozen=True)
class NondominatingFrame:
    """The vectors uⁱ ⊥ m and the positive weights d′ with Σ d′ᵢ (uⁱ)∘² = 1."""

    masses: tuple[Fraction, ...]
    u: tuple[tuple[Fraction, ...], ...]
    eps: tuple[Fraction, ...]
    t: Fraction
    d: tuple[Fraction, ...]


def nondominating_frame(masses: Sequence) -> NondominatingFrame:
    m = tuple(Fraction(x) for x in masses)
    n = len(m)
    if n < 3:
        raise TooSmall(f"need at least 3 masses, got {n}")
    M = sum(m)
    for j, x in enumerate(m):
        if x <= 0:
            raise ValueError("masses must be positive")
        if not 2 * x < M:
            raise Dominating(j)
    u = tuple(
        tuple(-(M - m[i]) / m[i] if j == i else Fraction(1) for j in range(n)) for i in range(n)
    )
    eps = tuple(((M - x) / x) ** 2 - 1 for x in m)
    inv = sum(1 / e for e in eps)
    t = inv / (1 + inv)
    d = tuple((1 - t) / e for e in eps)
    return NondominatingFrame(m, u, eps, t, d)


def cert_nondominating(masses: Sequence) -> Certificate:
    """Rank-(n−1) optimum X = Σ d′ᵢ uⁱ(uⁱ)ᵀ of K_n weighted by m, dual (M/4)·Diag(m)."""
    fr = nondominating_frame(masses)
    m = fr.masses
    n = len(m)
    M = sum(m)
    X = SymMatrix.zeros(n)
    for di, ui in zip(fr.d, fr.u):
        X = X + SymMatrix.outer(ui).scale(di)
    from .ops import complete_weighted

    g = complete_weighted(m)
    return make_certificate(g, X, [M / 4 * x for x in m], Provenance.NonDominating, frame=fr)


# -- the two counterexamples --------------------------------------------------

_Z_STAR = [
    [1, Fraction(-1, 3), Fraction(-1, 2), Fraction(-1, 2)],
    [Fraction(-1, 3), 1, Fraction(-1, 6), Fraction(-1, 6)],
    [Fraction(-1, 2), Fraction(-1, 6), 1, Fraction(-1, 4)],
    [Fraction(-1, 2), Fraction(-1, 6), Fraction(-1, 4), 1],
]

_X_G1 = [
    [1, Fraction(-17, 47), Fraction(-23, 47), Fraction(-23, 47)],
    [Fraction(-17, 47), 1, Fraction(-7, 47), Fraction(-7, 47)],
    [Fraction(-23, 47), Fraction(-7, 47), 1, Fraction(-13, 47)],
    [Fraction(-23, 47), Fraction(-7, 47), Fraction(-13, 47), 1],
]

_Z_HAT = [
    [1, Fraction(-1, 5), Fraction(-1, 5), Fraction(-1, 5)],
    [Fraction(-1, 5), 1, Fraction(-1, 5), Fraction(-1, 5)],
    [Fraction(-1, 5), Fraction(-1, 5), 1, Fraction(-4, 5)],
    [Fraction(-1, 5), Fraction(-1, 5), Fraction(-4, 5), 1],
]

_X_G2 = [
    [1, Fraction(1, 7), Fraction(-2, 7), Fraction(-2, 7)],
    [Fraction(1, 7), 1, Fraction(-2, 7), Fraction(-2, 7)],
    [Fraction(-2, 7), Fraction(-2, 7), 1, Fraction(-5, 7)],
    [Fraction(-2, 7), Fraction(-2, 7), Fraction(-5, 7), 1],
]

COUNTEREXAMPLE_MASSES = {1: (5, 3, 4, 4), 2: (2, 2, 4, 4)}


@dataclass(frozen=True)
class CounterexampleReport:
    which: int
    masses: tuple[int, ...]
    objective: Fraction
    oracle_value: Fraction
    oracle_cuts: tuple[Partition, ...]
    rank: int
    d: tuple[Fraction, ...]
    coefficients: tuple[Fraction, ...]
    matrix: SymMatrix
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "counterexample": self.which,
            "masses": list(self.masses),
            "objective": str(self.objective),
            "maxcut": str(self.oracle_value),
            "optimal_cuts": [p.side_a for p in self.oracle_cuts],
            "rank": self.rank,
            "d": [str(x) for x in self.d],
            "decomposition": [str(x) for x in self.coefficients],
            "matrix": [[str(x) for x in row] for row in self.matrix.rows()],
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def _optimal_against(cert_like: Certificate, X: SymMatrix) -> bool:
    c = make_certificate(cert_like.source_graph, X, cert_like.Y.diagonal())
    return verify_certificate(c).optimal


def replay_counterexample(which: int) -> CounterexampleReport:
    """Rebuild the two K₄ counterexamples and check every stated identity exactly."""
    if which not in (1, 2):
        raise ValueError("counterexample is 1 or 2")
    m = COUNTEREXAMPLE_MASSES[which]
    cert = cert_nondominating(m)
    g = cert.source_graph
    L = laplacian(g)
    mc = oracle.brute_force_maxcut(g)
    checks: dict[str, bool] = {}
    if which == 1:
        Z = SymMatrix.from_rows(_Z_STAR)
        Xs = SymMatrix.outer([1, 1, -1, -1])
        coeffs = (Fraction(1, 48), Fraction(47, 48))
        recomposed = Xs.scale(coeffs[0]) + cert.X.scale(coeffs[1])
        checks["maxcut_64"] = mc.value == 64
        checks["unique_cut_12_34"] = mc.count == 1 and mc.optimal_cuts[0].side_a == [0, 1]
        checks["d_matches"] = cert.extra["frame"].d == (
            Fraction(125, 752), Fraction(27, 752), Fraction(15, 188), Fraction(15, 188))
        checks["X_G_matches"] = cert.X == SymMatrix.from_rows(_X_G1)
        checks["decomposition"] = recomposed == Z
        checks["rank_3"] = rank_exact(Z) == 3
    else:
        Z = SymMatrix.from_rows(_Z_HAT)
        X1 = SymMatrix.outer([1, -1, -1, 1])
        X2 = SymMatrix.outer([1, -1, 1, -1])
        coeffs = (Fraction(3, 20), Fraction(3, 20), Fraction(7, 10))
        recomposed = X1.scale(coeffs[0]) + X2.scale(coeffs[1]) + cert.X.scale(coeffs[2])
        sides = sorted(p.side_a for p in mc.optimal_cuts)
        checks["maxcut_36"] = mc.value == 36
        checks["two_cuts"] = mc.count == 2 and sides == [[0, 2], [0, 3]]
        checks["d_matches"] = cert.extra["frame"].d == (
            Fraction(1, 42), Fraction(1, 42), Fraction(4, 21), Fraction(4, 21))
        checks["X_G_matches"] = cert.X == SymMatrix.from_rows(_X_G2)
        checks["decomposition"] = recomposed == Z
        # every convex combination of the two rank-1 optima has (1,2) entry −1
        checks["rank1_entry_minus_one"] = X1[0, 1] == -1 and X2[0, 1] == -1
        checks["outside_hull"] = Z[0, 1] == Fraction(-1, 5)
        checks["X_G_outside_hull"] = cert.X[0, 1] != -1
        checks["X_G_optimal"] = verify_certificate(cert).optimal
    objective = inner(L, Z) / 4
    checks["feasible"] = all(x == 1 for x in Z.diagonal()) and psd_check_exact(Z).psd
    checks["objective"] = objective == mc.value
    checks["optimal_against_dual"] = _optimal_against(cert, Z)
    return CounterexampleReport(
        which, tuple(m), objective, mc.value, mc.optimal_cuts, rank_exact(Z),
        cert.extra["frame"].d, coeffs, Z, checks,
    )


# -- lifting through split and lexicographic product --------------------------


def _check_feasible(X: SymMatrix) -> None:
    if not all(x == 1 for x in X.diagonal()):
        raise InfeasibleInput("diag(X) is not all ones")
    if not psd_check_exact(X).psd:
        raise InfeasibleInput("X is not PSD")


def lift_split(X: SymMatrix, spec: SplitSpec | Sequence[int], g: Graph) -> SymMatrix:
    """Copy row/column of vertex i to each of its clones: X̃_ab = X_{orig a, orig b}."""
    if not isinstance(spec, SplitSpec):
        spec = SplitSpec(tuple(spec))
    if len(spec.multiplicities) != g.n or X.n != g.n:
        raise SpecMismatch("spec, graph and X disagree on the vertex count")
    _check_feasible(X)
    orig = spec.clone_map()
    return SymMatrix.from_function(len(orig), lambda a, b: X[orig[a], orig[b]])


def lift_split_certificate(c: Certificate, spec: SplitSpec | Sequence[int]) -> Certificate:
    """Lift both sides: X as in :func:`lift_split`, Y_a = Y_i / p_i on clones of i."""
    if not isinstance(spec, SplitSpec):
        spec = SplitSpec(tuple(spec))
    g = c.source_graph
    X = lift_split(c.X, spec, g)
    gs, orig = split(g, spec)
    p = spec.multiplicities
    y = [c.Y[i, i] / p[i] for i in orig]
    return make_certificate(gs, X, y, Provenance.SplitLift, clone_map=orig)


def lift_lex(X: SymMatrix, Ybar: SymMatrix, g1: Graph, g2: Graph) -> Certificate:
    """Lift an optimal pair of G1 to G1 • G2: X̂ = X ⊗ J, Ŷ = Ȳ ⊗ nI.

    The slack splits as Y1 + Y2 + Y3 with
    Y1 = (Ȳ − D₁/4 − I/4) ⊗ L(K_n), Y2 = S̄ ⊗ J, Y3 = (I/4) ⊗ L(G2ᶜ);
    each term is certified PSD separately when Ȳ − D₁/4 − I/4 ≥ 0, otherwise
    the lifted slack is checked directly.
    """
    _require_unweighted(g1, g2)
    if X.n != g1.n or Ybar.n != g1.n:
        raise DimensionMismatch("X, Ybar and G1 disagree on the vertex count")
    base = make_certificate(g1, X, Ybar.diagonal())
    rep = verify_certificate(base)
    if not (rep.optimal and Ybar.is_diagonal()):
        raise PairNotOptimal("(X, Ybar) is not a verified optimal pair for G1")
    m, n = g1.n, g2.n
    gp = lex_product(g1, g2)
    Xh = kron(X, SymMatrix.ones(n))
    Yh = kron(Ybar, SymMatrix.identity(n).scale(n))
    cert = make_certificate(gp, Xh, Yh.diagonal(), Provenance.LexLift)

    coeff = Ybar - degree_matrix(g1).scale(QUARTER) - SymMatrix.identity(m).scale(QUARTER)
    Y1 = kron(coeff, laplacian(complete(n)) if n else SymMatrix.zeros(0))
    Y2 = kron(base.S, SymMatrix.ones(n))
    Y3 = kron(SymMatrix.identity(m).scale(QUARTER), laplacian(complement(g2)))
    if Y1 + Y2 + Y3 != cert.S:
        raise AssertionError("three-term slack decomposition does not add up")
    if all(c >= 0 for c in coeff.diagonal()):
        route = "three-term"
    elif psd_check_exact(cert.S).psd:
        route = "direct"
    else:
        raise LiftInfeasible("lifted slack is not PSD; some vertex has Ȳ_ii − deg/4 < 1/4")
    return Certificate(cert.X, cert.Y, cert.S, cert.objective, cert.provenance, gp,
                       {"route": route, "terms": (Y1, Y2, Y3)})


def delta_identity_check(g: Graph, c: Certificate) -> bool:
    """Y_ii = δ_i/2 and δ_i ≥ deg(i)/2 for the cut of a rank-1 certificate."""
    if rank_exact(c.X) != 1:
        raise NotRankOne("certificate primal is not rank 1")
    x = [c.X[0, j] * c.X[0, 0] for j in range(g.n)]
    for i in range(g.n):
        delta = sum((w for j, w in g.neighbors(i).items() if x[j] != x[i]), Fraction(0))
        if c.Y[i, i] != delta / 2 or 2 * delta < degree(g, i):
            return False
    return True


def certificate_dump(c: Certificate, report: VerificationReport | None = None) -> dict:
    from .linalg import dump_lower

    report = report or verify_certificate(c)
    return {
        "provenance": c.provenance.value,
        "n": c.n,
        "objective": str(c.objective),
        "Y_diagonal": [str(v) for v in c.Y.diagonal()],
        "X_lower": dump_lower(c.X),
        "report": report.as_dict(),
    }
