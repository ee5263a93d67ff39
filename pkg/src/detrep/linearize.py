"""Linearization of polynomial matrices.

Each move borders the matrix by a new first row and column (``1 ⊕ N``) and
peels one variable off the largest remaining top-degree monomial ``a·m``
sitting at entry (r, c), with ``m = x_v·m'``::

    col_c += m'·col_0        entry (0, c)   becomes  m'
    row_r -= a·x_v·row_0     entry (r, 0)   becomes -a·x_v,
                             entry (r, c)   loses    a·m

Both moves are unimodular, so the determinant is unchanged.  The symmetric
variant borders by the hyperbolic pair [[0, 1], [1, 0]] instead and uses
congruences; each of its moves flips the determinant sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Polynomial, homogenize
from .errors import InternalAssertionFailure, NotLinear, NotSymmetric, ZeroDeterminant
from .matrix import PolyMatrix, determinant


@dataclass(frozen=True)
class Step:
    entry: tuple          # (r, c) in the matrix before the move, 0-based
    monomial: tuple
    coefficient: object
    variable: int
    measure_before: tuple  # (top degree, number of top-degree terms)
    measure_after: tuple


@dataclass
class LinearizationResult:
    L: PolyMatrix
    unit: int
    steps: list = field(default_factory=list)

    @property
    def size(self):
        return self.L.size

    @property
    def step_count(self):
        return len(self.steps)


def _measure(rows, positions):
    """(top total degree, count of top-degree terms) over the given entries."""
    top, count = 0, 0
    for r, c in positions:
        e = rows[r][c]
        if e.is_zero():
            continue
        for mon in e.terms:
            deg = sum(mon)
            if deg > top:
                top, count = deg, 1
            elif deg == top:
                count += 1
    return top, count


def _select(rows, positions):
    """Graded-lex largest top monomial; row-major first entry on ties."""
    best = None
    for r, c in positions:
        e = rows[r][c]
        if e.is_zero():
            continue
        mon, coeff = e.leading_term()
        key = (sum(mon), mon)
        if best is None or key > best[0]:
            best = (key, r, c, mon, coeff)
    if best is None:
        return None
    return best[1:]


def _split(mon):
    v = max(i for i, e in enumerate(mon) if e)
    rest = list(mon)
    rest[v] -= 1
    return v, tuple(rest)


def _all_positions(d):
    return [(r, c) for r in range(d) for c in range(d)]


def _upper_positions(d):
    return [(r, c) for r in range(d) for c in range(r, d)]


def linearize(N: PolyMatrix, check: bool = True) -> LinearizationResult:
    """Reduce every entry of N to total degree at most one; det is preserved."""
    if check and determinant(N).is_zero():
        raise ZeroDeterminant("det(N) vanishes identically")
    n = N.nvars
    zero = Polynomial.zero(n)
    rows = [list(r) for r in N.rows]
    steps = []
    while True:
        d = len(rows)
        positions = _all_positions(d)
        before = _measure(rows, positions)
        if before[0] <= 1:
            break
        r, c, mon, a = _select(rows, positions)
        v, rest = _split(mon)
        rows = [[Polynomial.constant(1, n)] + [zero] * d] + [[zero] + row for row in rows]
        rows[0][c + 1] = Polynomial.monomial(rest, 1)
        rows[r + 1][0] = Polynomial.var(v, n) * (-a)
        rows[r + 1][c + 1] = rows[r + 1][c + 1] - Polynomial.monomial(mon, a)
        after = _measure(rows, _all_positions(d + 1))
        if not after < before:
            raise InternalAssertionFailure("linearization measure did not decrease")
        steps.append(Step((r, c), mon, a, v, before, after))
    L = PolyMatrix(rows, n)
    if check and steps and determinant(L) != determinant(N):
        raise InternalAssertionFailure("linearization changed the determinant")
    return LinearizationResult(L, 1, steps)


def sym_linearize(N: PolyMatrix, check: bool = True) -> LinearizationResult:
    """Symmetric linearization; det(L) = unit·det(N) with unit = (-1)^steps."""
    if not N.is_symmetric():
        raise NotSymmetric("input matrix is not symmetric")
    if check and determinant(N).is_zero():
        raise ZeroDeterminant("det(N) vanishes identically")
    n = N.nvars
    zero = Polynomial.zero(n)
    half = Fraction(1, 2)
    rows = [list(r) for r in N.rows]
    steps = []
    while True:
        d = len(rows)
        positions = _upper_positions(d)
        before = _measure(rows, positions)
        if before[0] <= 1:
            break
        r, c, mon, a = _select(rows, positions)
        v, rest = _split(mon)
        head = [[zero, Polynomial.constant(1, n)] + [zero] * d, [Polynomial.constant(1, n), zero] + [zero] * d]
        rows = head + [[zero, zero] + row for row in rows]
        r2, c2 = r + 2, c + 2
        mp = Polynomial.monomial(rest, 1)
        xv = Polynomial.var(v, n)
        rows[0][r2] = rows[r2][0] = mp
        if r == c:
            rows[1][r2] = rows[r2][1] = xv * (-a * half)
            rows[r2][r2] = rows[r2][r2] - Polynomial.monomial(mon, a)
        else:
            rows[1][c2] = rows[c2][1] = xv * (-a)
            rows[r2][c2] = rows[r2][c2] - Polynomial.monomial(mon, a)
            rows[c2][r2] = rows[r2][c2]
        after = _measure(rows, _upper_positions(d + 2))
        if not after < before:
            raise InternalAssertionFailure("linearization measure did not decrease")
        steps.append(Step((r, c), mon, a, v, before, after))
    L = PolyMatrix(rows, n)
    unit = -1 if len(steps) & 1 else 1
    if check:
        if not L.is_symmetric():
            raise InternalAssertionFailure("symmetric linearization lost symmetry")
        if steps and determinant(L) != determinant(N) * unit:
            raise InternalAssertionFailure("symmetric linearization determinant mismatch")
    return LinearizationResult(L, unit, steps)


def homogenize_matrix(L: PolyMatrix, var_index: int = 0) -> PolyMatrix:
    """Turn constants c into c·x_var so every entry is a linear form.

    ``x_var`` must not occur in L.  det of the result is then the
    homogenization of det(L) to degree d (a power of x_var times the usual
    homogenization).
    """
    for row in L.rows:
        for e in row:
            if not e.is_zero() and e.degree > 1:
                raise NotLinear(f"entry {e} has degree above one")
            if var_index in e.used_variables():
                raise ValueError(f"x{var_index} already occurs in the matrix")
    n = max(L.nvars, var_index + 1)
    out = PolyMatrix([[homogenize(e.widened(n), var_index, 1) for e in row] for row in L.rows], n)
    return out


def homogenized_determinant(L: PolyMatrix, var_index: int = 0) -> Polynomial:
    """det(homogenize_matrix(L)) computed from det(L) without the big expansion."""
    return homogenize(determinant(L), var_index, L.size)
