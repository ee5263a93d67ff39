"""Exact linear algebra over Q on plain list-of-lists matrices of Fractions."""

from __future__ import annotations

from fractions import Fraction


def to_fractions(A):
    return [[Fraction(x) for x in row] for row in A]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(A, B):
    if not A:
        return []
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def is_zero(A):
    return all(x == 0 for row in A for x in row)


def _pivot_weight(x):
    # largest |numerator| * denominator first
    return abs(x.numerator) * x.denominator


def rank(A):
    M = to_fractions(A)
    rows = len(M)
    cols = len(M[0]) if M else 0
    r = 0
    for c in range(cols):
        best = None
        for i in range(r, rows):
            if M[i][c] != 0 and (best is None or _pivot_weight(M[i][c]) > _pivot_weight(M[best][c])):
                best = i
        if best is None:
            continue
        M[r], M[best] = M[best], M[r]
        piv = M[r][c]
        for i in range(r + 1, rows):
            if M[i][c] != 0:
                f = M[i][c] / piv
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def rref(A):
    """Reduced row echelon form and pivot columns; canonical for the row space."""
    M = to_fractions(A)
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def row_basis(A):
    R, piv = rref(A)
    return R[: len(piv)]


def column_basis(A):
    """Basis of the column space, as columns of the column echelon form."""
    return row_basis(transpose(A))


def det(A):
    M = to_fractions(A)
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def inverse(A):
    n = len(A)
    aug = [list(row) + e for row, e in zip(to_fractions(A), identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


def solve(A, b, column_order=None):
    """One solution x of A x = b, or None if inconsistent.

    ``column_order`` permutes the unknowns before elimination; with a full
    column rank system the answer does not depend on it.
    """
    rows = len(A)
    cols = len(A[0]) if A else 0
    order = list(column_order) if column_order is not None else list(range(cols))
    aug = [[Fraction(A[i][j]) for j in order] + [Fraction(b[i])] for i in range(rows)]
    R, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(piv):
        x[order[c]] = R[r][cols]
    return x


def nullity(A):
    cols = len(A[0]) if A else 0
    return cols - rank(A)


def leading_principal_minors(A):
    return [det([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def is_positive_definite(A):
    """Sylvester's criterion on a symmetric rational matrix."""
    return all(m > 0 for m in leading_principal_minors(A))
