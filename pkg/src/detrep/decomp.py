"""Global block decomposition of a linear determinantal representation.

If det M = f1·f2 with f1, f2 coprime, M splits as M1 ⊕ M2 (with constant
transformations) exactly when adj(M) = f2·N1 + f1·N2 for polynomial
matrices N1, N2.  The split is found by graded linear algebra, one small
system per entry sharing a single coefficient matrix.  From it the constant
matrices

    A_a = M·N_a / f_a,    B_a = N_a·M / f_a

are complementary idempotents with A_a·M = M·B_a, so row bases of A_a and
column bases of B_a block-diagonalize M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .arith import Polynomial, exact_divide
from .errors import (
    BadFactorization,
    InternalAssertionFailure,
    NotDecomposable,
    NotDivisible,
    NotInIdeal,
    NotLinear,
    ZeroDeterminant,
)
from .matrix import HypersurfaceSpec, PolyMatrix, block_diag, det_and_adjugate, determinant


def monomials_of_degree(nvars, degree):
    """All exponent tuples of the given total degree, graded-lex descending."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


@dataclass
class AdjugateSplit:
    """adj(M) == f2·N1 + f1·N2 entrywise."""

    N1: PolyMatrix
    N2: PolyMatrix
    f1: Polynomial
    f2: Polynomial
    adj: PolyMatrix


@dataclass
class DecompositionResult:
    """U1·M·U2 == block_diag(blocks), det(blocks[a]) == constants[a]·factors[a]."""

    U1: list
    U2: list
    blocks: list
    factors: list
    constants: list
    idempotents: list = field(default_factory=list)
    assertions_checked: list = field(default_factory=list)

    @property
    def block_dets(self):
        return [f * c for f, c in zip(self.factors, self.constants)]

    @property
    def sizes(self):
        return [b.size for b in self.blocks]

    def transformed(self, M: PolyMatrix) -> PolyMatrix:
        return _const(self.U1, M.nvars) @ M @ _const(self.U2, M.nvars)


def _const(A, nvars):
    return PolyMatrix.from_constant(A, nvars)


def _require_linear(M):
    if not M.is_linear():
        raise NotLinear("representation must have linear form entries")


def _check_factors(det, f1, f2):
    for f in (f1, f2):
        if f.is_zero() or f.is_constant() or not f.is_homogeneous():
            raise BadFactorization("factors must be non-constant forms")
    try:
        q = exact_divide(det, f1 * f2)
    except NotDivisible:
        q = None
    if q is None or not q.is_constant():
        raise BadFactorization("f1·f2 is not det(M) up to a scalar")
    return Fraction(q.constant_term())


def adjugate_ideal_split(M: PolyMatrix, f1: Polynomial, f2: Polynomial, column_order=None, _det_adj=None) -> AdjugateSplit:
    """Solve adj(M) = f2·N1 + f1·N2; raise NotInIdeal at the first bad entry.

    ``column_order`` permutes the unknowns before elimination (the answer is
    independent of it when the factors are coprime).
    """
    _require_linear(M)
    det, adj = _det_adj or det_and_adjugate(M)
    if det.is_zero():
        raise ZeroDeterminant("det(M) vanishes identically")
    _check_factors(det, f1, f2)
    n = max(M.nvars, f1.nvars, f2.nvars)
    f1, f2 = f1.widened(n), f2.widened(n)
    d = M.size
    k1, k2 = f1.degree, f2.degree
    target = monomials_of_degree(n, d - 1)
    row_of = {m: i for i, m in enumerate(target)}
    basis1 = monomials_of_degree(n, k1 - 1)
    basis2 = monomials_of_degree(n, k2 - 1)
    unknowns = [(1, m) for m in basis1] + [(2, m) for m in basis2]

    # coefficient matrix: column for each unknown monomial times its cofactor
    A = [[Fraction(0)] * len(unknowns) for _ in target]
    for col, (which, m) in enumerate(unknowns):
        prod = (f2 if which == 1 else f1) * Polynomial.monomial(m)
        for mon, c in prod.terms.items():
            A[row_of[mon]][col] = Fraction(c)
    if linalg.rank(A) < len(unknowns):
        raise BadFactorization("f1 and f2 share a common factor")

    order = list(column_order) if column_order is not None else list(range(len(unknowns)))
    entries = [(i, j) for i in range(d) for j in range(d)]
    rhs = []
    for i, j in entries:
        col = [Fraction(0)] * len(target)
        for mon, c in adj.rows[i][j].widened(n).terms.items():
            col[row_of[mon]] = Fraction(c)
        rhs.append(col)
    aug = [[A[r][c] for c in order] + [b[r] for b in rhs] for r in range(len(target))]
    R, piv = linalg.rref(aug)
    nu = len(unknowns)
    pivot_rows = [(r, c) for r, c in enumerate(piv) if c < nu]
    N1 = [[None] * d for _ in range(d)]
    N2 = [[None] * d for _ in range(d)]
    for t, (i, j) in enumerate(entries):
        for r in range(len(pivot_rows), len(R)):
            if R[r][nu + t] != 0:
                raise NotInIdeal((i + 1, j + 1), adj.rows[i][j])
        x = [Fraction(0)] * nu
        for r, c in pivot_rows:
            x[order[c]] = R[r][nu + t]
        p1 = {m: x[k] for k, (w, m) in enumerate(unknowns) if w == 1 and x[k]}
        p2 = {m: x[k] for k, (w, m) in enumerate(unknowns) if w == 2 and x[k]}
        N1[i][j] = Polynomial(p1, n)
        N2[i][j] = Polynomial(p2, n)
    split = AdjugateSplit(PolyMatrix(N1, n), PolyMatrix(N2, n), f1, f2, adj)
    for i, j in entries:
        if f2 * split.N1.rows[i][j] + f1 * split.N2.rows[i][j] != adj.rows[i][j]:
            raise InternalAssertionFailure("adjugate split does not reproduce adj(M)")
    return split


def _constant_quotient(P: PolyMatrix, f: Polynomial, what):
    out = []
    for row in P.rows:
        r = []
        for e in row:
            q = exact_divide(e, f) if e else e
            if not q.is_constant():
                raise InternalAssertionFailure(f"{what} has a non-constant entry")
            r.append(Fraction(q.constant_term()))
        out.append(r)
    return out


def decompose(M: PolyMatrix, f1: Polynomial, f2: Polynomial) -> DecompositionResult:
    """Block-diagonalize M along det M = c·f1·f2, or raise NotDecomposable."""
    _require_linear(M)
    det, adj = det_and_adjugate(M)
    if det.is_zero():
        raise ZeroDeterminant("det(M) vanishes identically")
    c = _check_factors(det, f1, f2)
    n = max(M.nvars, f1.nvars, f2.nvars)
    M = M.widened(n)
    f1, f2 = f1.widened(n), f2.widened(n)
    # absorb the scalar so that det M = g1·g2 exactly and A_1 + A_2 = I
    g1 = f1 * c
    try:
        split = adjugate_ideal_split(M, g1, f2, _det_adj=(det, adj))
    except NotInIdeal as e:
        raise NotDecomposable(f"adj(M) entry {e.entry} is not in the ideal (f1, f2)", witness=e.entry) from e
    d = M.size
    checked = ["adj(M) = f2*N1 + f1*N2"]
    A1 = _constant_quotient(M @ split.N1, g1, "A1")
    A2 = _constant_quotient(M @ split.N2, f2, "A2")
    B1 = _constant_quotient(split.N1 @ M, g1, "B1")
    B2 = _constant_quotient(split.N2 @ M, f2, "B2")
    checked.append("A_a, B_a constant")
    I = linalg.identity(d)
    Z = linalg.zeros(d, d)
    mm = linalg.matmul
    for X, Y, name in ((A1, A2, "A"), (B1, B2, "B")):
        S = [[a + b for a, b in zip(r, s)] for r, s in zip(X, Y)]
        if S != I:
            raise InternalAssertionFailure(f"{name}1 + {name}2 != I")
        if mm(X, Y) != Z or mm(Y, X) != Z:
            raise InternalAssertionFailure(f"{name}1·{name}2 != 0")
        if mm(X, X) != X or mm(Y, Y) != Y:
            raise InternalAssertionFailure(f"{name}_a not idempotent")
    checked += ["A1 + A2 = I", "A1*A2 = A2*A1 = 0", "A_a^2 = A_a", "B1 + B2 = I", "B1*B2 = B2*B1 = 0", "B_a^2 = B_a"]

    rows1, rows2 = linalg.row_basis(A1), linalg.row_basis(A2)
    cols1, cols2 = linalg.column_basis(B1), linalg.column_basis(B2)
    s1, s2 = len(rows1), len(rows2)
    if len(cols1) != s1 or len(cols2) != s2 or s1 + s2 != d:
        raise InternalAssertionFailure("idempotent ranks do not match")
    checked.append("rank A1 + rank A2 = d")
    U1 = rows1 + rows2
    U2 = linalg.transpose(cols1 + cols2)
    if linalg.det(U1) == 0 or linalg.det(U2) == 0:
        raise InternalAssertionFailure("block transformation is singular")
    checked.append("U1, U2 invertible")

    T = _const(U1, n) @ M @ _const(U2, n)
    for i in range(d):
        for j in range(d):
            if (i < s1) != (j < s1) and T.rows[i][j]:
                raise InternalAssertionFailure("U1·M·U2 is not block diagonal")
    checked.append("U1*M*U2 block diagonal")
    blocks = [T.submatrix(range(s1), range(s1)), T.submatrix(range(s1, d), range(s1, d))]
    constants = [_proportionality(determinant(b), f) for b, f in zip(blocks, (f1, f2))]
    checked.append("det(M_a) = c_a*f_a")
    return DecompositionResult(U1, U2, blocks, [f1, f2], constants, [(A1, A2), (B1, B2)], checked)


def _proportionality(g, f):
    try:
        q = exact_divide(g, f)
    except NotDivisible:
        q = None
    if q is None or not q.is_constant() or q.is_zero():
        raise InternalAssertionFailure("block determinant is not proportional to its factor")
    return Fraction(q.constant_term())


def decompose_completely(M: PolyMatrix, spec: HypersurfaceSpec) -> DecompositionResult:
    """Split off one factor group f_a^p_a at a time."""
    _require_linear(M)
    det = determinant(M)
    if det.is_zero():
        raise ZeroDeterminant("det(M) vanishes identically")
    spec.scalar_against(det)
    n = max(M.nvars, spec.nvars)
    M = M.widened(n)
    groups = [f.widened(n) ** p for f, p in spec.factors]
    d = M.size
    I = linalg.identity(d)
    U1, U2 = I, I
    blocks, factors, constants, idem, checked = [], [], [], [], []
    rest = M
    for k in range(len(groups) - 1):
        g1 = groups[k]
        g2 = Polynomial.constant(1, n)
        for g in groups[k + 1:]:
            g2 = g2 * g
        try:
            res = decompose(rest, g1, g2)
        except NotDecomposable as e:
            partial = DecompositionResult(U1, U2, blocks + [rest], factors + [_prod(groups[k:], n)],
                                constants + [_proportionality(determinant(rest), _prod(groups[k:], n))], idem, checked)
            raise NotDecomposable(f"factor group {k + 1} does not split off: {e}", witness=e.witness, partial=partial) from e
        off = d - rest.size
        U1 = linalg.matmul(_embed(res.U1, off, d), U1)
        U2 = linalg.matmul(U2, _embed(res.U2, off, d))
        blocks.append(res.blocks[0])
        factors.append(g1)
        constants.append(res.constants[0])
        idem += res.idempotents
        checked += [c for c in res.assertions_checked if c not in checked]
        rest = res.blocks[1]
    blocks.append(rest)
    factors.append(groups[-1])
    constants.append(_proportionality(determinant(rest), groups[-1]))
    result = DecompositionResult(U1, U2, blocks, factors, constants, idem, checked)
    if result.transformed(M) != block_diag(blocks, n):
        raise InternalAssertionFailure("composed transformation is not block diagonal")
    return result


def _prod(polys, n):
    out = Polynomial.constant(1, n)
    for p in polys:
        out = out * p
    return out


def _embed(U, off, d):
    """I_off ⊕ U as a d×d constant matrix."""
    out = linalg.identity(d)
    for i, row in enumerate(U):
        for j, x in enumerate(row):
            out[off + i][off + j] = x
    return out
