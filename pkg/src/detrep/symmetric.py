"""Symmetric representations: checks, symmetric local reduction, verification.

The reduction is congruence elimination A·M·Aᵀ over the local ring.  Over
the rationals a unit pivot u(x) cannot be scaled to 1 (nor to its constant
value u(center)) without square roots, so the chipped-off block is a
diagonal of local units U with constant part D = U(center).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InternalAssertionFailure, NotSymmetric, ZeroDeterminant
from .localred import LocalMatrix
from .matrix import Matrix, PolyMatrix, block_diag, determinant


def is_symmetric(M: Matrix) -> bool:
    r, c = M.shape
    return r == c and M.is_symmetric()


@dataclass
class SymmetricReduction:
    """A·M·Aᵀ == diag(units) ⊕ N, N symmetric with N(center) == 0."""

    units: list
    N: LocalMatrix
    A: LocalMatrix
    original: LocalMatrix

    @property
    def D(self):
        """Constant diagonal: the units evaluated at the center."""
        return [Fraction(u.value_at_center()) for u in self.units]

    @property
    def rank(self):
        return len(self.units)

    def block(self) -> LocalMatrix:
        k = len(self.units)
        d = k + self.N.shape[0]
        rows = [[0] * d for _ in range(d)]
        for i, u in enumerate(self.units):
            rows[i][i] = u
        for i, r in enumerate(self.N.rows):
            for j, e in enumerate(r):
                rows[k + i][k + j] = e
        return LocalMatrix(rows, self.original.center)


def _swap(W, A, i, k):
    W[i], W[k] = W[k], W[i]
    for row in W:
        row[i], row[k] = row[k], row[i]
    A[i], A[k] = A[k], A[i]


def _check_sym(W):
    d = len(W)
    for i in range(d):
        for j in range(i + 1, d):
            if W[i][j] != W[j][i]:
                raise InternalAssertionFailure("congruence step broke symmetry")


def sym_reduce(M, pt=None, check=True) -> SymmetricReduction:
    """Congruence reduction of a symmetric matrix at ``pt`` over the local ring."""
    if not is_symmetric(M):
        raise NotSymmetric("matrix is not symmetric")
    if isinstance(M, PolyMatrix):
        if determinant(M).is_zero():
            raise ZeroDeterminant("det(M) vanishes identically")
        M = LocalMatrix.from_poly(M, pt)
    center = M.center
    d = M.size
    W = [list(r) for r in M.rows]
    A = [list(r) for r in LocalMatrix.identity(d, center).rows]

    k = 0
    while k < d:
        vals = [[e.value_at_center() for e in r] for r in W]
        diag = [i for i in range(k, d) if vals[i][i]]
        if diag:
            i = max(diag, key=lambda t: (abs(Fraction(vals[t][t])), -t))
            if i != k:
                _swap(W, A, i, k)
            inv = W[k][k].inverse()
            for j in range(k + 1, d):
                if not W[j][k]:
                    continue
                f = W[j][k] * inv
                W[j] = [a - f * b for a, b in zip(W[j], W[k])]
                for row in W:
                    row[j] = row[j] - f * row[k]
                A[j] = [a - f * b for a, b in zip(A[j], A[k])]
            if check:
                _check_sym(W)
            k += 1
            continue
        off = [(i, j) for i in range(k, d) for j in range(i + 1, d) if vals[i][j]]
        if not off:
            break
        # hyperbolic pair: row_i += row_j, col_i += col_j puts 2·M_ij on the diagonal
        i, j = off[0]
        W[i] = [a + b for a, b in zip(W[i], W[j])]
        for row in W:
            row[i] = row[i] + row[j]
        A[i] = [a + b for a, b in zip(A[i], A[j])]
        if check:
            _check_sym(W)

    units = [W[i][i] for i in range(k)]
    N = LocalMatrix([r[k:] for r in W[k:]], center)
    red = SymmetricReduction(units, N, LocalMatrix(A, center), M)
    if check:
        Aloc = red.A
        if Aloc @ M @ Aloc.T != red.block():
            raise InternalAssertionFailure("A·M·Aᵀ != U ⊕ N")
        if determinant(red.block()) != determinant(Aloc) * determinant(Aloc) * determinant(M):
            raise InternalAssertionFailure("det(U ⊕ N) != det(A)^2·det(M)")
    return red


def _local_block_diag(blocks, center):
    d = sum(b.shape[0] for b in blocks)
    rows = [[0] * d for _ in range(d)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            for j, e in enumerate(r):
                rows[off + i][off + j] = e
        off += b.shape[0]
    return LocalMatrix(rows, center)


def verify_symmetric_decomposition(M, A, blocks) -> bool:
    """True iff A is invertible and A·M·Aᵀ equals the block diagonal of ``blocks``.

    ``A`` may be a constant rational matrix (list of rows), a PolyMatrix
    (invertible means constant nonzero determinant) or a LocalMatrix
    (invertible at its center).
    """
    if not all(is_symmetric(b) for b in blocks) or not is_symmetric(M):
        return False
    if isinstance(A, LocalMatrix):
        if not A.is_invertible_at_center():
            return False
        Ml = M if isinstance(M, LocalMatrix) else LocalMatrix(M.rows, A.center)
        if A.shape[1] != Ml.shape[0]:
            return False
        return A @ Ml @ A.T == _local_block_diag(blocks, A.center)
    if not isinstance(A, PolyMatrix):
        if linalg.det(A) == 0:
            return False
        A = PolyMatrix.from_constant(A, M.nvars)
    else:
        dA = determinant(A)
        if not dA.is_constant() or dA.is_zero():
            return False
    if A.shape[1] != M.shape[0]:
        return False
    return A @ M @ A.T == block_diag(blocks, M.nvars)
