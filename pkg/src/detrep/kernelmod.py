"""Kernel generators, maximal generation, matrix factorizations, recovery.

The kernel of a representation M along its hypersurface is generated by the
columns of adj(M).  M is maximally generated at a point when its corank
there equals the multiplicity; generically along a factor f_a of
multiplicity p_a this means the generic corank is p_a, which is decided
exactly by divisibility of minors.  For such M every adjugate entry is
divisible by prod f_a^(p_a - 1), and the quotient N gives the matrix
factorization M·N = (prod f_a)·I.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Polynomial, ProjectivePoint, exact_divide, multiplicity_at
from .errors import (
    DegreeMismatch,
    DeterminantMismatch,
    InternalAssertionFailure,
    NotDivisible,
    NotGenericallyMG,
    PointOffHypersurface,
    ZeroDeterminant,
)
from .matrix import (
    HypersurfaceSpec,
    Minors,
    PolyMatrix,
    corank_at,
    det_and_adjugate,
    determinant,
    generic_corank_mod,
)


@dataclass
class KernelGenerators:
    columns: list
    det: Polynomial
    adj: PolyMatrix

    def __len__(self):
        return len(self.columns)


@dataclass(frozen=True)
class FactorRecord:
    f: Polynomial
    generic_corank: int
    multiplicity: int

    @property
    def verdict(self):
        return self.generic_corank == self.multiplicity


@dataclass(frozen=True)
class PointRecord:
    point: ProjectivePoint
    corank: int
    multiplicity: int

    @property
    def verdict(self):
        return self.corank == self.multiplicity


@dataclass
class MGReport:
    """Per-factor generic records and optional per-point records.

    Truthiness is the generic verdict when factor records are present,
    otherwise the verdict over the listed points.
    """

    factors: list = field(default_factory=list)
    points: list = field(default_factory=list)

    @property
    def verdict(self):
        recs = self.factors if self.factors else self.points
        return all(r.verdict for r in recs)

    def __bool__(self):
        return self.verdict


def kernel_generators(M: PolyMatrix) -> KernelGenerators:
    det, adj = det_and_adjugate(M)
    if det.is_zero():
        raise ZeroDeterminant("det(M) vanishes identically")
    d = M.size
    if M @ adj != PolyMatrix.identity(d, M.nvars) * det:
        raise InternalAssertionFailure("M·adj(M) != det(M)·I")
    return KernelGenerators([adj.column(j) for j in range(d)], det, adj)


def point_record(M: PolyMatrix, f: Polynomial, pt: ProjectivePoint) -> PointRecord:
    if f.evaluate(pt.coords) != 0:
        raise PointOffHypersurface(f"{pt} is not on the hypersurface")
    return PointRecord(pt, corank_at(M, pt), multiplicity_at(f, pt))


def is_mg_at(M: PolyMatrix, f: Polynomial, pt: ProjectivePoint) -> MGReport:
    """corank of M at pt equals the multiplicity of {f = 0} there."""
    return MGReport(points=[point_record(M, f, pt)])


def is_generically_mg(M: PolyMatrix, spec: HypersurfaceSpec, points=()) -> MGReport:
    det = determinant(M)
    if det.is_zero():
        raise ZeroDeterminant("det(M) vanishes identically")
    spec.scalar_against(det)
    minors = Minors(M)
    recs = [FactorRecord(f, generic_corank_mod(M, f, minors), p) for f, p in spec.factors]
    pts = [point_record(M, det, pt) for pt in points]
    return MGReport(recs, pts)


def reduced_kernel_generators(M: PolyMatrix, spec: HypersurfaceSpec) -> PolyMatrix:
    """adj(M) divided entrywise by prod f_a^(p_a - 1)."""
    if not is_generically_mg(M, spec):
        raise NotGenericallyMG("representation is not generically maximally generated")
    _, adj = det_and_adjugate(M)
    excess = spec.excess()
    return adj.map(lambda e: exact_divide(e, excess))


def matrix_factorization(M: PolyMatrix, spec: HypersurfaceSpec) -> PolyMatrix:
    """N with M·N == N·M == (prod f_a)·I.

    det M = c·prod f_a^p_a for a rational c; N is the reduced kernel divided
    by c so the product is the reduced polynomial exactly.
    """
    N = reduced_kernel_generators(M, spec)
    c = Fraction(spec.scalar_against(determinant(M)))
    N = N.map(lambda e: e * (1 / c))
    red = PolyMatrix.identity(M.size, M.nvars) * spec.reduced()
    if M @ N != red or N @ M != red:
        raise InternalAssertionFailure("M·N != f_red·I")
    return N


def _int_root(a: int, k: int):
    """Exact non-negative integer k-th root of a >= 0, or None."""
    if a < 2:
        return a
    lo, hi = 1, 1 << (a.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** k
        if p == a:
            return mid
        if p < a:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_root(q: Fraction, k: int):
    """Rational r with r**k == q, or None."""
    q = Fraction(q)
    if q < 0:
        if k % 2 == 0:
            return None
        r = rational_root(-q, k)
        return None if r is None else -r
    num, den = _int_root(q.numerator, k), _int_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def recover_from_adjoint(A: PolyMatrix, f: Polynomial) -> PolyMatrix:
    """Rebuild M from a candidate adjoint: M = adj(A) / f^(d-2).

    Checks, in order: entry degrees (DegreeMismatch), det(A) = c·f^(d-1)
    (DeterminantMismatch), divisibility of adj(A) (NotDivisible).  Then
    det M = c^(d-1)·f; M is rescaled to det M = f when c^(1-d) has a
    rational d-th root, and returned unscaled otherwise.
    """
    d = A.size
    if d < 2:
        raise DegreeMismatch("candidate adjoint must be at least 2x2")
    if f.is_zero() or not f.is_homogeneous() or f.degree != d:
        raise DegreeMismatch(f"f must be a form of degree {d}")
    for i, row in enumerate(A.rows):
        for j, e in enumerate(row):
            if e and (not e.is_homogeneous() or e.degree != d - 1):
                raise DegreeMismatch(f"entry ({i + 1},{j + 1}) is not a form of degree {d - 1}")
    det, adj = det_and_adjugate(A)
    try:
        q = exact_divide(det, f ** (d - 1))
    except NotDivisible:
        q = None
    if q is None or not q.is_constant() or q.is_zero():
        raise DeterminantMismatch("det(A) is not a nonzero multiple of f^(d-1)")
    c = Fraction(q.constant_term())
    g = f ** (d - 2)
    M = adj.map(lambda e: exact_divide(e, g))
    lam = rational_root(c ** (1 - d), d)
    if lam is not None and lam != 1:
        M = M * lam
    return M
