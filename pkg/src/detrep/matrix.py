"""Matrices over the polynomial ring (and over the local ring, see localred).

Determinants use fraction-free cofactor expansion with minors memoized on
(row subset, column subset); the adjugate reuses the same cache.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .arith import Polynomial, ProjectivePoint, as_rational, divides, exact_divide
from .errors import BadFactorization, NotAComponent, NotDivisible, NotSquare, ZeroPolynomial


class Matrix:
    """Immutable matrix over any exact commutative ring element type."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("rows of unequal length")

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def size(self):
        r, c = self.shape
        if r != c:
            raise NotSquare(f"{r}x{c} matrix is not square")
        return r

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _new(self, rows):
        return type(self)(rows)

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def transpose(self):
        return self._new(zip(*self.rows)) if self.rows else self

    T = property(transpose)

    def map(self, fn):
        return self._new([[fn(x) for x in r] for r in self.rows])

    def __add__(self, other):
        return self._new([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self._new([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, scalar):
        return self.map(lambda x: x * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a and b:
                        t = a * b
                        acc = t if acc is None else acc + t
                row.append(acc if acc is not None else r[0] * 0)
            out.append(row)
        return self._new(out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def submatrix(self, rows, cols):
        return self._new([[self.rows[i][j] for j in cols] for i in rows])

    def is_symmetric(self):
        return self == self.transpose()

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class PolyMatrix(Matrix):
    """Square matrix of Polynomials sharing an ambient variable count."""

    __slots__ = ("nvars",)

    def __init__(self, rows, nvars=None):
        rows = [list(r) for r in rows]
        if nvars is None:
            nvars = max([e.nvars for r in rows for e in r if isinstance(e, Polynomial)] + [1])
        rows = [[_as_poly(e, nvars) for e in r] for r in rows]
        super().__init__(rows)
        self.nvars = nvars

    def _new(self, rows):
        return PolyMatrix(rows, self.nvars)

    @classmethod
    def identity(cls, d, nvars=1):
        return cls([[int(i == j) for j in range(d)] for i in range(d)], nvars)

    @classmethod
    def zero(cls, d, nvars=1):
        return cls([[0] * d for _ in range(d)], nvars)

    @classmethod
    def diag(cls, entries, nvars=None):
        entries = list(entries)
        d = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(d)] for i in range(d)], nvars)

    @classmethod
    def from_constant(cls, A, nvars=1):
        return cls([[as_rational(x) for x in r] for r in A], nvars)

    @classmethod
    def from_pencil(cls, coeffs: Sequence):
        """Build sum_i coeffs[i] * x_i from constant coefficient matrices."""
        n = len(coeffs)
        d = len(coeffs[0])
        rows = [[Polynomial.zero(n) for _ in range(d)] for _ in range(d)]
        for i, C in enumerate(coeffs):
            xi = Polynomial.var(i, n)
            for a in range(d):
                for b in range(d):
                    if C[a][b]:
                        rows[a][b] = rows[a][b] + xi * as_rational(C[a][b])
        return cls(rows, n)

    def widened(self, nvars):
        return PolyMatrix([[e.widened(max(nvars, e.nvars)) for e in r] for r in self.rows], max(nvars, self.nvars))

    def evaluate(self, point) -> list:
        """Constant rational matrix at a point (a sequence or a ProjectivePoint)."""
        if isinstance(point, ProjectivePoint):
            point = point.coords
        point = list(point) + [0] * max(0, self.nvars - len(point))
        return [[Fraction(e.evaluate(point)) for e in r] for r in self.rows]

    def is_constant(self):
        return all(e.is_constant() for r in self.rows for e in r)

    def constant_part(self):
        return [[Fraction(e.constant_term()) for e in r] for r in self.rows]

    def is_linear(self):
        """Every entry homogeneous of degree 1 or zero."""
        return all(e.is_zero() or (e.is_homogeneous() and e.degree == 1) for r in self.rows for e in r)

    def max_degree(self):
        return max((e.degree for r in self.rows for e in r if not e.is_zero()), default=0)

    def coefficient_matrices(self):
        """[M_0, ..., M_n] with M = sum M_i x_i; requires a linear matrix."""
        out = []
        for i in range(self.nvars):
            mon = tuple(int(k == i) for k in range(self.nvars))
            out.append([[Fraction(e.coefficient(mon)) for e in r] for r in self.rows])
        return out


def _as_poly(e, nvars):
    if isinstance(e, Polynomial):
        return e.widened(nvars) if e.nvars < nvars else e
    return Polynomial.constant(e, nvars)


def block_diag(blocks, nvars=None):
    sizes = [b.size for b in blocks]
    d = sum(sizes)
    if nvars is None:
        nvars = max([b.nvars for b in blocks] + [1])
    rows = [[0] * d for _ in range(d)]
    off = 0
    for b, s in zip(blocks, sizes):
        for i in range(s):
            for j in range(s):
                rows[off + i][off + j] = b.rows[i][j]
        off += s
    return PolyMatrix(rows, nvars)


class Minors:
    """Memoized minors of one square matrix; minors(rows, cols) with sorted tuples."""

    def __init__(self, M: Matrix):
        self.a = M.rows
        self.size = M.size
        probe = self.a[0][0] if self.size else 0
        self.zero = probe * 0
        self.one = self.zero + 1
        self.memo = {}

    def __call__(self, rows: tuple, cols: tuple):
        if not rows:
            return self.one
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        r, rest = rows[0], rows[1:]
        row = self.a[r]
        total = self.zero
        for pos, c in enumerate(cols):
            a = row[c]
            if not a:
                continue
            sub = self(rest, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            t = a * sub
            total = total - t if pos & 1 else total + t
        self.memo[key] = total
        return total

    def complement(self, i, j):
        rng = tuple(range(self.size))
        return self(rng[:i] + rng[i + 1:], rng[:j] + rng[j + 1:])


CofactorLimit = 8


def determinant(M: Matrix, minors: Minors | None = None):
    """Exact determinant.

    Cofactor expansion with memoized minors up to size ``CofactorLimit``;
    larger polynomial matrices (the output of linearization is large and
    sparse) go through ``sparse_determinant``.
    """
    if minors is None and M.size > CofactorLimit and isinstance(M, PolyMatrix):
        return sparse_determinant(M)
    minors = minors or Minors(M)
    rng = tuple(range(M.size))
    return minors(rng, rng)


def sparse_determinant(M: PolyMatrix) -> Polynomial:
    """Determinant by eliminating constant pivots, then Bareiss on the rest.

    Eliminating with a nonzero constant pivot keeps every entry polynomial,
    so the Schur complement stays exact; only rows meeting the pivot column
    are touched.  Pivots minimize the Markowitz count.
    """
    n = M.size
    zero = Polynomial.zero(M.nvars)
    rows = {i: {j: e for j, e in enumerate(r) if e} for i, r in enumerate(M.rows)}
    cols = {j: set() for j in range(n)}
    for i, r in rows.items():
        for j in r:
            cols[j].add(i)
    scale = Fraction(1)
    while rows:
        best = None
        for i, r in rows.items():
            for j, e in r.items():
                if e.is_constant():
                    cost = (len(r) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
        if best is None:
            break
        _, i, j = best
        # sign of the Laplace expansion at positions within the active lists
        pi = sum(1 for k in rows if k < i)
        pj = sum(1 for k in cols if k < j)
        prow = rows.pop(i)
        c = Fraction(prow.pop(j).constant_term())
        scale *= -c if (pi + pj) & 1 else c
        cols.pop(j)
        for k in prow:
            cols[k].discard(i)
        for k in list(_rows_meeting(rows, j)):
            r = rows[k]
            f = r.pop(j) * (1 / c)
            for jj, e in prow.items():
                v = r.get(jj, zero) - f * e
                if v:
                    if jj not in r:
                        cols[jj].add(k)
                    r[jj] = v
                elif jj in r:
                    del r[jj]
                    cols[jj].discard(k)
    if not rows:
        return Polynomial.constant(scale, M.nvars)
    ri = sorted(rows)
    ci = sorted(cols)
    rest = PolyMatrix([[rows[i].get(j, zero) for j in ci] for i in ri], M.nvars)
    if rest.size <= CofactorLimit:
        return determinant(rest, Minors(rest)) * scale
    return bareiss(rest) * scale


def _rows_meeting(rows, j):
    return [k for k, r in rows.items() if j in r]


def bareiss(M: PolyMatrix) -> Polynomial:
    """Fraction-free elimination; every division is exact in the polynomial ring."""
    n = M.size
    A = [list(r) for r in M.rows]
    sign = 1
    prev = Polynomial.constant(1, M.nvars)
    for k in range(n - 1):
        cands = [i for i in range(k, n) if A[i][k]]
        if not cands:
            return Polynomial.zero(M.nvars)
        p = min(cands, key=lambda i: len(A[i][k]))
        if p != k:
            A[k], A[p] = A[p], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_divide(A[i][j] * piv - A[i][k] * A[k][j], prev)
            A[i][k] = Polynomial.zero(M.nvars)
        prev = piv
    return A[n - 1][n - 1] * sign


def adjugate(M: Matrix, minors: Minors | None = None) -> Matrix:
    """Transposed cofactor matrix, so that M @ adj(M) == det(M) * I."""
    d = M.size
    minors = minors or Minors(M)
    if d == 1:
        return M._new([[minors.one]])
    rows = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            m = minors.complement(i, j)
            rows[j][i] = -m if (i + j) & 1 else m
    return M._new(rows)


def det_and_adjugate(M: Matrix):
    minors = Minors(M)
    return determinant(M, minors), adjugate(M, minors)


def corank_at(M: PolyMatrix, pt) -> int:
    """d minus the rank of the constant matrix M(pt)."""
    return M.size - linalg.rank(M.evaluate(pt))


def generic_corank_mod(M: PolyMatrix, f: Polynomial, minors: Minors | None = None) -> int:
    """Corank of M at the generic point of {f = 0} (f irreducible, f | det M).

    This is d - r for the largest r such that some r x r minor is not
    divisible by f.
    """
    if f.is_zero():
        raise ZeroPolynomial("component cannot be the zero polynomial")
    d = M.size
    minors = minors or Minors(M)
    if not divides(f, determinant(M, minors)):
        raise NotAComponent(f"{f} does not divide det(M)")
    rng = range(d)
    for r in range(d - 1, 0, -1):
        for rows in combinations(rng, r):
            for cols in combinations(rng, r):
                if not divides(f, minors(rows, cols)):
                    return d - r
    return d


@dataclass(frozen=True)
class HypersurfaceSpec:
    """Declared decomposition X = sum p_a X_a with f_a irreducible (not checked)."""

    factors: tuple

    def __init__(self, factors):
        fs = []
        for f, p in factors:
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"multiplicity {p!r} must be a positive integer")
            if f.is_zero() or f.is_constant():
                raise ValueError("factors must be non-constant")
            if not f.is_homogeneous():
                raise ValueError(f"factor {f} is not homogeneous")
            fs.append((f, p))
        object.__setattr__(self, "factors", tuple(fs))

    @property
    def degree(self):
        return sum(p * f.degree for f, p in self.factors)

    @property
    def nvars(self):
        return max(f.nvars for f, _ in self.factors)

    def product(self) -> Polynomial:
        out = Polynomial.constant(1, self.nvars)
        for f, p in self.factors:
            out = out * f ** p
        return out

    def reduced(self) -> Polynomial:
        out = Polynomial.constant(1, self.nvars)
        for f, _ in self.factors:
            out = out * f
        return out

    def excess(self) -> Polynomial:
        """prod f_a^(p_a - 1), the part removed when passing to the reduced locus."""
        out = Polynomial.constant(1, self.nvars)
        for f, p in self.factors:
            out = out * f ** (p - 1)
        return out

    def scalar_against(self, g: Polynomial):
        """The nonzero rational c with g == c * product(), else BadFactorization."""
        try:
            q = exact_divide(g, self.product())
        except NotDivisible:
            q = None
        if q is None or not q.is_constant() or q.is_zero():
            raise BadFactorization("declared factors do not multiply to the determinant up to a scalar")
        return q.constant_term()
