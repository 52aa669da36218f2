"""Dense symmetric linear algebra with an exact (Fraction) and a float backing.

Exact matrices are used for every certificate check; floats only feed the
eigensolver and the numeric SDP path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadBlockSizes,
    MixedBackings,
    NoConvergence,
    NotSymmetric,
    NotSymmetricBacking,
)

DEFAULT_TOL = 1e-9
EIGEN_DIM_CAP = 4096

Rows = list[list]


def _coerce(x, exact: bool):
    if exact:
        if isinstance(x, float):
            return Fraction(x)  # binary expansion, exact
        return Fraction(x)
    return float(x)


@dataclass(frozen=True)
class SymMatrix:
    """Symmetric matrix storing only its lower triangle.

    ``tril[i]`` holds entries ``(i, 0) .. (i, i)``; reads of ``(i, j)`` and
    ``(j, i)`` hit the same slot.
    """

    n: int
    tril: tuple[tuple, ...]
    exact: bool = True

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], exact: bool = True) -> "SymMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise NotSymmetric("matrix is not square")
        tril = []
        for i in range(n):
            row = []
            for j in range(i + 1):
                a = _coerce(rows[i][j], exact)
                b = _coerce(rows[j][i], exact)
                if a != b:
                    raise NotSymmetric(f"entry ({i},{j}) = {a} but ({j},{i}) = {b}")
                row.append(a)
            tril.append(tuple(row))
        return cls(n, tuple(tril), exact)

    @classmethod
    def from_function(cls, n: int, f, exact: bool = True) -> "SymMatrix":
        return cls(
            n,
            tuple(tuple(_coerce(f(i, j), exact) for j in range(i + 1)) for i in range(n)),
            exact,
        )

    @classmethod
    def from_array(cls, a: np.ndarray) -> "SymMatrix":
        a = np.asarray(a, dtype=float)
        return cls.from_function(a.shape[0], lambda i, j: 0.5 * (a[i, j] + a[j, i]), exact=False)

    @classmethod
    def zeros(cls, n: int, exact: bool = True) -> "SymMatrix":
        return cls.from_function(n, lambda i, j: 0, exact)

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "SymMatrix":
        return cls.from_function(n, lambda i, j: 1 if i == j else 0, exact)

    @classmethod
    def ones(cls, n: int, exact: bool = True) -> "SymMatrix":
        return cls.from_function(n, lambda i, j: 1, exact)

    @classmethod
    def diag(cls, values: Sequence, exact: bool = True) -> "SymMatrix":
        return cls.from_function(len(values), lambda i, j: values[i] if i == j else 0, exact)

    @classmethod
    def outer(cls, x: Sequence, exact: bool = True) -> "SymMatrix":
        return cls.from_function(len(x), lambda i, j: x[i] * x[j], exact)

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.tril[i][j] if j <= i else self.tril[j][i]

    def rows(self) -> Rows:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def diagonal(self) -> list:
        return [self.tril[i][i] for i in range(self.n)]

    def trace(self):
        return sum(self.diagonal(), Fraction(0) if self.exact else 0.0)

    def is_diagonal(self) -> bool:
        return all(self.tril[i][j] == 0 for i in range(self.n) for j in range(i))

    def principal(self, idx: Sequence[int]) -> "SymMatrix":
        idx = list(idx)
        return SymMatrix.from_function(len(idx), lambda a, b: self[idx[a], idx[b]], self.exact)

    def to_array(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i in range(self.n):
            for j in range(i + 1):
                a[i, j] = a[j, i] = float(self.tril[i][j])
        return a

    def to_float(self) -> "SymMatrix":
        return SymMatrix(self.n, tuple(tuple(float(x) for x in r) for r in self.tril), False)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "SymMatrix") -> None:
        if self.exact != other.exact:
            raise MixedBackings("cannot combine exact and float matrices")
        if self.n != other.n:
            raise BadBlockSizes(f"dimension {self.n} vs {other.n}")

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check(other)
        return SymMatrix(
            self.n,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.tril, other.tril)),
            self.exact,
        )

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        self._check(other)
        return SymMatrix(
            self.n,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.tril, other.tril)),
            self.exact,
        )

    def __neg__(self) -> "SymMatrix":
        return self.scale(-1)

    def scale(self, c) -> "SymMatrix":
        c = _coerce(c, self.exact)
        return SymMatrix(self.n, tuple(tuple(c * a for a in r) for r in self.tril), self.exact)

    def __mul__(self, c) -> "SymMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def matvec(self, v: Sequence) -> list:
        return [sum((self[i, j] * v[j] for j in range(self.n)), Fraction(0)) for i in range(self.n)]

    def quad(self, v: Sequence):
        """Quadratic form vᵀMv."""
        return sum((a * b for a, b in zip(v, self.matvec(v))), Fraction(0))


def inner(a: SymMatrix, b: SymMatrix):
    """Frobenius inner product ⟨A, B⟩ = tr(AB)."""
    a._check(b)
    total = Fraction(0) if a.exact else 0.0
    for i in range(a.n):
        ra, rb = a.tril[i], b.tril[i]
        for j in range(i):
            total += 2 * ra[j] * rb[j]
        total += ra[i] * rb[i]
    return total


def matmul(a: Rows, b: Rows) -> Rows:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def kron(a: SymMatrix, b: SymMatrix) -> SymMatrix:
    """Kronecker product, index ``(i*nb + k, j*nb + l)`` holds ``a[i,j]*b[k,l]``."""
    if a.exact != b.exact:
        raise MixedBackings("kron of exact and float matrices")
    nb = b.n
    return SymMatrix.from_function(
        a.n * nb,
        lambda r, c: a[r // nb, c // nb] * b[r % nb, c % nb],
        a.exact,
    )


# -- exact elimination on general (rectangular) matrices --------------------


def _as_fraction_rows(rows) -> Rows:
    if isinstance(rows, SymMatrix):
        if not rows.exact:
            raise NotSymmetricBacking("exact backing required")
        return rows.rows()
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows) -> tuple[Rows, list[int]]:
    """Reduced row echelon form and pivot columns, in exact arithmetic."""
    a = _as_fraction_rows(rows)
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def matrix_rank(rows) -> int:
    return len(rref(rows)[1])


def primitive(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def nullspace(rows) -> list[list[Fraction]]:
    """Basis of {v : Av = 0} as primitive integer vectors."""
    a = _as_fraction_rows(rows)
    if not a:
        return []
    n = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(primitive(v))
    return basis


def inverse(rows) -> Rows:
    a = _as_fraction_rows(rows)
    n = len(a)
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red]


def solve(rows, b: Sequence) -> list[Fraction]:
    a = _as_fraction_rows(rows)
    inv = inverse(a)
    return [sum((x * Fraction(y) for x, y in zip(r, b)), Fraction(0)) for r in inv]


def rank_exact(m: SymMatrix) -> int:
    if not m.exact:
        raise NotSymmetricBacking("rank_exact needs an exact matrix")
    return matrix_rank(m.rows())


def nullspace_basis(m: SymMatrix) -> list[list[Fraction]]:
    if not m.exact:
        raise NotSymmetricBacking("nullspace_basis needs an exact matrix")
    return nullspace(m.rows())


# -- exact PSD certification ------------------------------------------------


@dataclass(frozen=True)
class PsdWitness:
    """Outcome of an exact PSD test.

    On PSD: ``perm``, ``lower`` and ``pivots`` satisfy PᵀMP = L·Diag(pivots)·Lᵀ
    with L unit lower triangular and every pivot nonnegative. On NotPSD:
    ``vector`` is a rational v with vᵀMv = ``value`` < 0.
    """

    psd: bool
    perm: tuple[int, ...] | None = None
    lower: tuple[tuple[Fraction, ...], ...] | None = None
    pivots: tuple[Fraction, ...] | None = None
    vector: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def verdict(self) -> str:
        return "PSD" if self.psd else "NotPSD"

    def reproduces(self, m: SymMatrix) -> bool:
        """Re-check the witness against ``m`` from scratch."""
        if not self.psd:
            return self.value is not None and self.value < 0 and m.quad(self.vector) == self.value
        n = m.n
        if any(d < 0 for d in self.pivots):
            return False
        for i in range(n):
            if self.lower[i][i] != 1 or any(self.lower[i][j] != 0 for j in range(i + 1, n)):
                return False
        for i in range(n):
            for j in range(i + 1):
                s = sum(
                    (self.lower[i][k] * self.pivots[k] * self.lower[j][k] for k in range(j + 1)),
                    Fraction(0),
                )
                if s != m[self.perm[i], self.perm[j]]:
                    return False
        return True


def _short_witness(m: SymMatrix) -> tuple[Fraction, ...] | None:
    """Look for a violating vector among e_i and e_i ± e_j."""
    n = m.n
    for i in range(n):
        if m[i, i] < 0:
            return tuple(Fraction(int(k == i)) for k in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            for sgn in (1, -1):
                if m[i, i] + m[j, j] + 2 * sgn * m[i, j] < 0:
                    v = [Fraction(0)] * n
                    v[i], v[j] = Fraction(1), Fraction(sgn)
                    return tuple(v)
    return None


def _negative_witness(m: SymMatrix, perm: list[int], k: int, w: list[Fraction]) -> PsdWitness:
    # w lives on permuted positions k..n-1; lift it through the eliminated block
    # so that vᵀMv equals the Schur-complement form wᵀSw.
    v = _short_witness(m)
    if v is None:
        n = m.n
        elim, rest = perm[:k], perm[k:]
        z = [Fraction(0)] * n
        for p, idx in enumerate(rest):
            z[idx] = w[p]
        if elim:
            rhs = [-sum((m[e, r] * w[p] for p, r in enumerate(rest)), Fraction(0)) for e in elim]
            ze = solve([[m[a, b] for b in elim] for a in elim], rhs)
            for e, val in zip(elim, ze):
                z[e] = val
        v = tuple(primitive(z))
    value = m.quad(v)
    assert value < 0, "internal error: witness does not violate PSD"
    return PsdWitness(False, vector=v, value=value)


def psd_check_exact(m: SymMatrix) -> PsdWitness:
    """Decide M ⪰ 0 exactly by diagonally pivoted LDLᵀ elimination."""
    if not m.exact:
        raise NotSymmetricBacking("psd_check_exact needs an exact matrix")
    n = m.n
    a = m.rows()
    perm = list(range(n))
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    piv = [Fraction(0)] * n
    for k in range(n):
        diag = [a[i][i] for i in range(k, n)]
        lo = min(diag)
        if lo < 0:
            j = k + diag.index(lo)
            w = [Fraction(int(i == j)) for i in range(k, n)]
            return _negative_witness(m, perm, k, w)
        hi = max(diag)
        j = k + diag.index(hi)
        if hi == 0:
            for p in range(k, n):
                for q in range(p + 1, n):
                    if a[p][q] != 0:
                        w = [Fraction(0)] * (n - k)
                        w[p - k] = Fraction(1)
                        w[q - k] = Fraction(-1 if a[p][q] > 0 else 1)
                        return _negative_witness(m, perm, k, w)
            break  # trailing block is identically zero
        if j != k:
            a[k], a[j] = a[j], a[k]
            for row in a:
                row[k], row[j] = row[j], row[k]
            perm[k], perm[j] = perm[j], perm[k]
            for c in range(k):
                lower[k][c], lower[j][c] = lower[j][c], lower[k][c]
        d = a[k][k]
        piv[k] = d
        for i in range(k + 1, n):
            lower[i][k] = a[i][k] / d
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f == 0:
                continue
            for c in range(k + 1, n):
                a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[i][k] = a[k][i] = Fraction(0)
    return PsdWitness(
        True,
        perm=tuple(perm),
        lower=tuple(tuple(r) for r in lower),
        pivots=tuple(piv),
    )


def pseudo_inverse(m: SymMatrix) -> SymMatrix:
    """Moore–Penrose inverse through an exact full-rank factorization M = F·R."""
    if not m.exact:
        raise NotSymmetricBacking("pseudo_inverse needs an exact matrix")
    n = m.n
    full = m.rows()
    red, pivots = rref(full)
    r = len(pivots)
    if r == 0:
        return SymMatrix.zeros(n)
    R = red[:r]
    F = [[full[i][c] for c in pivots] for i in range(n)]
    Ft = [list(col) for col in zip(*F)]
    Rt = [list(col) for col in zip(*R)]
    rrt_inv = inverse(matmul(R, Rt))
    ftf_inv = inverse(matmul(Ft, F))
    pinv = matmul(matmul(Rt, rrt_inv), matmul(ftf_inv, Ft))
    return SymMatrix.from_rows(pinv)


def penrose_identities(m: SymMatrix, p: SymMatrix) -> bool:
    """All four Moore–Penrose conditions, exactly."""
    a, b = m.rows(), p.rows()
    ab, ba = matmul(a, b), matmul(b, a)
    sym = lambda x: all(x[i][j] == x[j][i] for i in range(len(x)) for j in range(len(x)))
    return matmul(ab, a) == a and matmul(ba, b) == b and sym(ab) and sym(ba)


@dataclass(frozen=True)
class SchurReport:
    """Block PSD test through the pseudo-Schur complement of the B block.

    ``failed`` names the first violated condition: "B", "range" or
    "complement". ``rank_lower_bound`` is rank(B) + rank(A − C B⁺ Cᵀ) when both
    are defined.
    """

    psd: bool
    failed: str | None
    rank_lower_bound: int | None
    vector: tuple[Fraction, ...] | None
    b_witness: PsdWitness
    complement_witness: PsdWitness | None

    @property
    def verdict(self) -> str:
        return "PSD" if self.psd else "NotPSD"


def schur_psd_check(m: SymMatrix, k: int) -> SchurReport:
    """PSD test for [[A, C], [Cᵀ, B]] with A of size k."""
    if not m.exact:
        raise NotSymmetricBacking("schur_psd_check needs an exact matrix")
    n = m.n
    if not 0 <= k <= n:
        raise BadBlockSizes(f"leading block size {k} outside 0..{n}")
    rows = m.rows()
    A = m.principal(range(k))
    B = m.principal(range(k, n))
    C = [row[k:] for row in rows[:k]]
    bw = psd_check_exact(B)
    if not bw.psd:
        v = (Fraction(0),) * k + bw.vector
        return SchurReport(False, "B", None, v, bw, None)
    Bp = pseudo_inverse(B)
    Bpr = Bp.rows()
    # range(Cᵀ) ⊆ range(B)  ⟺  B B⁺ Cᵀ = Cᵀ
    Ct = [list(col) for col in zip(*C)] if k else [[] for _ in range(n - k)]
    if k:
        proj = matmul(matmul(B.rows(), Bpr), Ct)
        if proj != Ct:
            # u = (I − B⁺B)Cᵀe_i lies in N(B) with Cu ≠ 0
            resid = [[Ct[r][c] - proj[r][c] for c in range(k)] for r in range(n - k)]
            col = next(c for c in range(k) if any(resid[r][c] != 0 for r in range(n - k)))
            u = [resid[r][col] for r in range(n - k)]
            cu = [sum((C[i][r] * u[r] for r in range(n - k)), Fraction(0)) for i in range(k)]
            q = A.quad(cu)
            nrm = sum((x * x for x in cu), Fraction(0))
            t = Fraction(1) if q <= 0 else nrm / q
            v = tuple(primitive([-t * x for x in cu] + u))
            return SchurReport(False, "range", None, v, bw, None)
    if k and n > k:
        cbc = matmul(matmul(C, Bpr), Ct)
    else:
        cbc = [[Fraction(0)] * k for _ in range(k)]
    comp = SymMatrix.from_function(k, lambda i, j: A[i, j] - cbc[i][j])
    cw = psd_check_exact(comp)
    bound = rank_exact(B) + rank_exact(comp)
    if not cw.psd:
        a = list(cw.vector)
        cta = [sum((Ct[r][i] * a[i] for i in range(k)), Fraction(0)) for r in range(n - k)]
        tail = [-x for x in Bp.matvec(cta)]
        v = tuple(primitive(a + tail))
        return SchurReport(False, "complement", bound, v, bw, cw)
    return SchurReport(True, None, bound, None, bw, cw)


# -- float eigensolver --------------------------------------------------------


def eigen_sym(m: SymMatrix | np.ndarray, tol: float = DEFAULT_TOL, max_sweeps: int = 100):
    """Cyclic Jacobi eigensolver.

    Returns ``(values, vectors)`` with eigenvalues ascending and eigenvectors
    as columns. Each pair satisfies ‖Mv − λv‖∞ ≤ tol·‖M‖∞.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = m.to_array() if isinstance(m, SymMatrix) else np.array(m, dtype=float)
    n = a.shape[0]
    if n > EIGEN_DIM_CAP:
        raise BadBlockSizes(f"dimension {n} exceeds cap {EIGEN_DIM_CAP}")
    a = 0.5 * (a + a.T)
    orig = a.copy()
    v = np.eye(n)
    scale = float(np.max(np.sum(np.abs(a), axis=1))) if n else 0.0
    if scale == 0.0:
        return np.zeros(n), np.eye(n)
    target = 1e-15 * scale
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - s * aq, s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    vals, v = vals[order], v[:, order]
    resid = np.max(np.abs(orig @ v - v * vals), axis=0)
    if np.any(resid > tol * scale):
        raise NoConvergence(f"Jacobi residual {resid.max():.3e} after {max_sweeps} sweeps")
    return vals, v


def lambda_min(m: SymMatrix | np.ndarray, tol: float = DEFAULT_TOL) -> float:
    return float(eigen_sym(m, tol)[0][0]) if (m.n if isinstance(m, SymMatrix) else len(m)) else 0.0


def lambda_max(m: SymMatrix | np.ndarray, tol: float = DEFAULT_TOL) -> float:
    return float(eigen_sym(m, tol)[0][-1]) if (m.n if isinstance(m, SymMatrix) else len(m)) else 0.0


# -- text dump ----------------------------------------------------------------


def dump_lower(m: SymMatrix) -> str:
    """Row-major lower triangle, one row per line, entries as ``p/q``."""
    return "\n".join(" ".join(str(x) for x in row) for row in m.tril)


def parse_lower(text: str) -> SymMatrix:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    n = len(rows)
    tril = tuple(tuple(Fraction(x) for x in r) for r in rows)
    if any(len(r) != i + 1 for i, r in enumerate(tril)):
        raise ValueError("malformed lower-triangle dump")
    return SymMatrix(n, tril, True)


def vec(x: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in x)
