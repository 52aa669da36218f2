"""Numeric value φ(G) of the Max-Cut SDP.

A primal-dual interior-point method (HRVW search direction with a
Mehrotra-style centring parameter) on

    max ⟨C, X⟩ s.t. diag(X) = 1, X ⪰ 0,       C = L/4
    min Σ y    s.t. Z = Diag(y) − C ⪰ 0.

Iterates stay strictly feasible on both sides, so the duality gap is ⟨X, Z⟩
and the returned φ is a dual bound whose slack is re-checked with the Jacobi
eigensolver before it is reported.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from . import oracle
from .errors import BadSize, NoConvergence, TooLarge
from .graph import Graph, laplacian, scale_weights, _key
from .linalg import eigen_sym
from .ops import SplitSpec, split

DEFAULT_TOL = 1e-7
SDP_DIM_CAP = 256


@dataclass(frozen=True)
class PhiResult:
    phi: float
    dual_diag: tuple[float, ...]
    primal_value: float
    gap: float
    iterations: int
    tol: float
    lambda_min: float

    def as_dict(self) -> dict:
        return {
            "phi": self.phi,
            "dual_diag": list(self.dual_diag),
            "primal_value": self.primal_value,
            "gap": self.gap,
            "iterations": self.iterations,
            "tol": self.tol,
            "lambda_min": self.lambda_min,
        }


def _max_step(M: np.ndarray, dM: np.ndarray) -> float:
    """Largest α with M + α·dM ⪰ 0, for M ≻ 0."""
    R = np.linalg.cholesky(M)
    T = np.linalg.solve(R, np.linalg.solve(R, dM).T)
    lam = np.linalg.eigvalsh((T + T.T) / 2)[0]
    return np.inf if lam >= 0 else -1.0 / lam


def _direction(X, Zi, mu):
    n = X.shape[0]
    A = Zi * X
    rhs = mu * np.diag(Zi) - 1.0
    dy = np.linalg.solve(A, rhs)
    dX = mu * Zi - X - (Zi * dy) @ X
    dX = (dX + dX.T) / 2
    dX[np.diag_indices(n)] = 0.0
    return dX, dy


def solve_phi(g: Graph, tol: float = DEFAULT_TOL, seed: int = 0, max_iter: int | None = None) -> PhiResult:
    """φ(G) to relative accuracy ``tol``; raises NoConvergence past the budget.

    ``seed`` is accepted for interface stability; the method is deterministic.
    """
    n = g.n
    if n < 1:
        raise BadSize("solve_phi needs at least one vertex")
    if n > SDP_DIM_CAP:
        raise TooLarge(f"numeric path capped at n = {SDP_DIM_CAP}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    budget = max_iter if max_iter is not None else 50 * n * n
    C = laplacian(g).to_array().astype(float) / 4.0
    if not np.any(C):
        return PhiResult(0.0, (0.0,) * n, 0.0, 0.0, 0, tol, 0.0)

    X = np.eye(n)
    y = 1.1 * np.abs(C).sum(axis=1) + 1.0
    Z = np.diag(y) - C
    it = 0
    while True:
        gap = float(np.sum(X * Z))
        dual = float(y.sum())
        if gap <= 0.1 * tol * max(1.0, abs(dual)):
            break
        if it >= budget:
            raise NoConvergence(f"gap {gap:.3e} after {it} iterations")
        it += 1
        Zi = np.linalg.inv(Z)
        Zi = (Zi + Zi.T) / 2
        # predictor
        dX, dy = _direction(X, Zi, 0.0)
        dZ = np.diag(dy)
        ap = min(1.0, _max_step(X, dX))
        ad = min(1.0, _max_step(Z, dZ))
        aff = float(np.sum((X + ap * dX) * (Z + ad * dZ)))
        sigma = min(1.0, (aff / gap) ** 3)
        # corrector
        dX, dy = _direction(X, Zi, sigma * gap / n)
        dZ = np.diag(dy)
        ap = min(1.0, 0.95 * _max_step(X, dX))
        ad = min(1.0, 0.95 * _max_step(Z, dZ))
        X = X + ap * dX
        X = (X + X.T) / 2
        np.fill_diagonal(X, 1.0)
        y = y + ad * dy
        Z = np.diag(y) - C

    lam = float(eigen_sym(Z)[0][0])
    if lam < -tol:
        raise NoConvergence(f"dual slack has λ_min = {lam:.3e}")
    primal = float(np.sum(C * X))
    return PhiResult(dual, tuple(float(v) for v in y), primal, dual - primal, it, tol, lam)


# -- exactness by comparison with the oracle ---------------------------------


class ExactnessKind(str, Enum):
    ExactWithin = "ExactWithin"
    GapAtLeast = "GapAtLeast"
    Undecided = "Undecided"


@dataclass(frozen=True)
class ExactnessVerdict:
    kind: ExactnessKind
    phi: float
    maxcut: Fraction
    delta: float
    band: float

    def as_dict(self) -> dict:
        return {
            "verdict": self.kind.value,
            "phi": self.phi,
            "maxcut": str(self.maxcut),
            "delta": self.delta,
            "band": self.band,
        }


def exactness_numeric(g: Graph, tol: float = DEFAULT_TOL) -> ExactnessVerdict:
    """Compare φ(G) with the brute-force Max-Cut.

    The band is 3·tol relative to max(1, mc): within it the graph is reported
    exact, beyond twice it a gap is reported, in between it is undecided.
    """
    mc = oracle.brute_force_maxcut(g, keep=1).value
    res = solve_phi(g, tol)
    delta = res.phi - float(mc)
    band = 3 * tol * max(1.0, abs(float(mc)))
    if abs(delta) <= band:
        kind = ExactnessKind.ExactWithin
    elif delta >= 2 * band:
        kind = ExactnessKind.GapAtLeast
    else:
        kind = ExactnessKind.Undecided
    return ExactnessVerdict(kind, res.phi, mc, delta, band)


@dataclass(frozen=True)
class PropertyReport:
    checks: dict[str, bool]
    values: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def phi_property_suite(g: Graph, k, spec: SplitSpec, tol: float = DEFAULT_TOL, seed: int = 0) -> PropertyReport:
    """Scaling, monotonicity under a random weight increase, and split invariance of φ."""
    k = Fraction(k)
    rng = random.Random(seed)
    base = solve_phi(g, tol).phi
    scaled = solve_phi(scale_weights(g, k), tol).phi
    pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    values = {"phi": base, "phi_scaled": scaled}
    checks = {"scaling": abs(scaled - float(k) * base) <= tol * max(1.0, abs(scaled))}
    if pairs:
        u, v = rng.choice(pairs)
        edges = dict(g.edges)
        edges[_key(u, v)] = edges.get(_key(u, v), Fraction(0)) + Fraction(rng.randint(1, 4), rng.randint(1, 3))
        bigger = solve_phi(Graph(g.n, edges), tol).phi
        values["phi_increased"] = bigger
        checks["monotone"] = base <= bigger + tol * max(1.0, abs(bigger))
    gs, _ = split(g, spec)
    sp = solve_phi(gs, tol).phi
    values["phi_split"] = sp
    checks["split_invariant"] = abs(sp - base) <= 2 * tol * max(1.0, abs(base))
    return PropertyReport(checks, values)
