"""Local reduction of a representation at a point.

Over the local ring at a point every square matrix is equivalent to
``identity ⊕ N`` with N vanishing at the point; the size of N is the corank
there.  The reduction is plain Gaussian elimination whose pivots are units of
the local ring, carried out on ``LocalRational`` entries.

Points: a ``ProjectivePoint`` is used through its canonical representative
as a point of affine (n+1)-space (entries stay homogeneous); a plain
sequence is an affine point for dehomogenized input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import LocalRational, ProjectivePoint
from .errors import InternalAssertionFailure, ZeroDeterminant
from .matrix import Matrix, Minors, PolyMatrix, determinant


def center_of(pt, nvars) -> tuple:
    if isinstance(pt, ProjectivePoint):
        coords = pt.canonical
    else:
        coords = tuple(Fraction(c) for c in pt)
    if len(coords) < nvars:
        coords = coords + (Fraction(0),) * (nvars - len(coords))
    return coords


class LocalMatrix(Matrix):
    """Square matrix of LocalRational entries sharing one center."""

    __slots__ = ("center",)

    def __init__(self, rows, center):
        self.center = tuple(center)
        super().__init__([[_as_local(e, self.center) for e in r] for r in rows])

    def _new(self, rows):
        return LocalMatrix(rows, self.center)

    @classmethod
    def from_poly(cls, M: PolyMatrix, pt):
        return cls(M.rows, center_of(pt, M.nvars))

    @classmethod
    def identity(cls, d, center):
        return cls([[int(i == j) for j in range(d)] for i in range(d)], center)

    def value_at_center(self):
        return [[Fraction(e.value_at_center()) for e in r] for r in self.rows]

    def is_invertible_at_center(self):
        from . import linalg

        d = self.shape[0]
        return linalg.rank(self.value_at_center()) == d


def _as_local(e, center):
    if isinstance(e, LocalRational):
        return e
    return LocalRational(e, None, center)


@dataclass
class LocalReduction:
    """left · M · right == identity(d - p) ⊕ N, with N(center) == 0."""

    p: int
    N: LocalMatrix
    left: LocalMatrix
    right: LocalMatrix
    original: LocalMatrix

    @property
    def d(self):
        return self.original.shape[0]

    def block(self) -> LocalMatrix:
        d, p = self.d, self.p
        c = self.original.center
        rows = [[0] * d for _ in range(d)]
        for i in range(d - p):
            rows[i][i] = 1
        for i in range(p):
            for j in range(p):
                rows[d - p + i][d - p + j] = self.N.rows[i][j]
        return LocalMatrix(rows, c)


def _magnitude(v):
    v = Fraction(v)
    return abs(v)


def local_reduce(M, pt=None, check=True) -> LocalReduction:
    """Chip the identity block off M at ``pt``.

    ``M`` is a PolyMatrix (then ``pt`` is required) or a LocalMatrix (its own
    center is used).
    """
    if not isinstance(M, LocalMatrix):
        if determinant(M).is_zero():
            raise ZeroDeterminant("det(M) vanishes identically")
        M = LocalMatrix.from_poly(M, pt)
    elif check and not determinant(M):
        raise ZeroDeterminant("det(M) vanishes identically")
    W0 = M
    center = W0.center
    d = W0.size
    W = [list(r) for r in W0.rows]
    L = [list(r) for r in LocalMatrix.identity(d, center).rows]
    R = [list(r) for r in LocalMatrix.identity(d, center).rows]
    vals = [[e.value_at_center() for e in r] for r in W]

    k = 0
    while k < d:
        best = None
        for i in range(k, d):
            for j in range(k, d):
                v = vals[i][j]
                if v and (best is None or _magnitude(v) > _magnitude(vals[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        W[k], W[i] = W[i], W[k]
        L[k], L[i] = L[i], L[k]
        for row in W:
            row[k], row[j] = row[j], row[k]
        for row in R:
            row[k], row[j] = row[j], row[k]
        inv = W[k][k].inverse()
        # clear column k below the pivot
        for i in range(k + 1, d):
            if W[i][k]:
                f = W[i][k] * inv
                W[i] = [a - f * b for a, b in zip(W[i], W[k])]
                L[i] = [a - f * b for a, b in zip(L[i], L[k])]
        # clear row k right of the pivot
        for j in range(k + 1, d):
            if W[k][j]:
                f = W[k][j] * inv
                for row in W:
                    row[j] = row[j] - f * row[k]
                for row in R:
                    row[j] = row[j] - f * row[k]
        W[k] = [a * inv for a in W[k]]
        L[k] = [a * inv for a in L[k]]
        vals = [[e.value_at_center() for e in r] for r in W]
        k += 1

    p = d - k
    N = LocalMatrix([r[k:] for r in W[k:]], center)
    left = LocalMatrix(L, center)
    right = LocalMatrix(R, center)
    red = LocalReduction(p, N, left, right, W0)
    if check and not verify_local_equivalence(left, W0, red.block(), right):
        raise InternalAssertionFailure("local reduction identity failed")
    return red


def verify_local_equivalence(A, M1, M2, B) -> bool:
    """True iff A·M1·B == M2 exactly and A, B are invertible at the center."""
    center = _center(A, M1, M2, B)
    A, M1, M2, B = (x if isinstance(x, LocalMatrix) else LocalMatrix(x.rows, center) for x in (A, M1, M2, B))
    if not (A.is_invertible_at_center() and B.is_invertible_at_center()):
        return False
    if A.shape[1] != M1.shape[0] or M1.shape[1] != B.shape[0]:
        return False
    return (A @ M1 @ B) == M2


def _center(*ms):
    for m in ms:
        if isinstance(m, LocalMatrix):
            return m.center
    n = max(getattr(m, "nvars", 1) for m in ms)
    return (Fraction(0),) * n


def local_determinant(M: LocalMatrix) -> LocalRational:
    return determinant(M, Minors(M))
