"""Positive-definite pencils, PD coordinates and sampled hyperbolicity.

Hyperbolicity of f at e is tested line by line: for a random rational
direction v the univariate restriction t -> f(e + t·v) must have only real
roots, which a Sturm chain of its squarefree part decides exactly.  A
refutation is therefore certified; a pass is a claim over the sampled lines
only.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from . import linalg
from .arith import Polynomial, ProjectivePoint, as_rational
from .errors import (
    InternalAssertionFailure,
    NotHomogeneous,
    NotLinear,
    NotPDAtPoint,
    NotSymmetric,
    PointOnHypersurface,
    SearchExhausted,
    ZeroPolynomial,
)
from .matrix import PolyMatrix, determinant

HYPERBOLIC = "hyperbolic-on-samples"
REFUTED = "refuted"


def _fq(c):
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def univariate(p) -> flint.fmpq_poly:
    """Coerce a coefficient list (ascending), a one-variable Polynomial or an fmpq_poly."""
    if isinstance(p, flint.fmpq_poly):
        return p
    if isinstance(p, Polynomial):
        used = p.used_variables()
        if len(used) > 1:
            raise ValueError("polynomial is not univariate")
        v = used[0] if used else 0
        coeffs = {}
        for mon, c in p.terms.items():
            e = mon[v] if v < len(mon) else 0
            coeffs[e] = c
        top = max(coeffs, default=-1)
        return flint.fmpq_poly([_fq(coeffs.get(k, 0)) for k in range(top + 1)])
    return flint.fmpq_poly([_fq(c) for c in p])


def _sign(x):
    return (x > 0) - (x < 0)


def _lead(p):
    return p.coeffs()[-1]


@dataclass
class SturmChain:
    """p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i), down to a constant."""

    polys: list

    @classmethod
    def of(cls, p) -> "SturmChain":
        p = univariate(p)
        if p.is_zero():
            raise ZeroPolynomial("Sturm chain of the zero polynomial")
        chain = [p]
        q = p.derivative()
        while not q.is_zero():
            chain.append(q)
            _, r = divmod(chain[-2], chain[-1])
            q = -r
        return cls(chain)

    def _variations(self, signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at(self, x) -> int:
        x = _fq(x)
        return self._variations([_sign(p(x)) for p in self.polys])

    def variations_at_infinity(self, positive=True) -> int:
        signs = []
        for p in self.polys:
            s = _sign(_lead(p))
            if not positive and p.degree() % 2:
                s = -s
            signs.append(s)
        return self._variations(signs)

    def count(self, a=None, b=None) -> int:
        """Distinct real roots in (a, b]; None means the matching infinity."""
        va = self.variations_at_infinity(False) if a is None else self.variations_at(a)
        vb = self.variations_at_infinity(True) if b is None else self.variations_at(b)
        return va - vb


def squarefree_part(p) -> flint.fmpq_poly:
    p = univariate(p)
    g = p.gcd(p.derivative())
    q, r = divmod(p, g)
    if not r.is_zero():
        raise InternalAssertionFailure("gcd does not divide the polynomial")
    return q


def count_real_roots(p) -> tuple:
    """(number of distinct real roots, whether every complex root is real)."""
    p = univariate(p)
    if p.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    distinct = SturmChain.of(p).count()
    sf = squarefree_part(p)
    return distinct, SturmChain.of(sf).count() == sf.degree()


# positive definiteness


def _require_symmetric(M):
    if not M.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")


def _coords(e):
    return e.coords if isinstance(e, ProjectivePoint) else tuple(Fraction(c) for c in e)


def is_pd_at(M: PolyMatrix, e) -> bool:
    """Leading principal minors of M(e) all positive.

    The representative of ``e`` as given is used, so (1:0:0) and (-1:0:0)
    can disagree; see ``pd_verdicts``.
    """
    _require_symmetric(M)
    return linalg.is_positive_definite(M.evaluate(list(_coords(e))))


def pd_verdicts(M: PolyMatrix, e: ProjectivePoint) -> tuple:
    """(PD at the given representative, PD at its negative)."""
    return is_pd_at(M, e), is_pd_at(M, e.negated())


@dataclass
class PDCoordinates:
    """Columns of T are points p_k with M(p_k) positive definite.

    Substituting x = T·y gives the pencil sum_k y_k·M(p_k).
    """

    T: list
    coefficients: list
    radii: list

    def transformed(self) -> PolyMatrix:
        return PolyMatrix.from_pencil(self.coefficients)


def pd_coordinates(M: PolyMatrix, e, max_halvings: int = 60) -> PDCoordinates:
    """Coordinates in which every coefficient matrix of M is positive definite.

    Uses e itself and e + r·b_j for each coordinate j other than e's chart,
    halving r (per j, starting at 1) until M is positive definite there.
    """
    _require_symmetric(M)
    if not M.is_linear():
        raise NotLinear("pd_coordinates needs a linear pencil")
    e = e if isinstance(e, ProjectivePoint) else ProjectivePoint(e)
    n1 = M.nvars
    base = list(_coords(e)) + [Fraction(0)] * (n1 - len(e.coords))
    if len(base) > n1:
        M = M.widened(len(base))
        n1 = len(base)
    if not is_pd_at(M, base):
        raise NotPDAtPoint(f"M is not positive definite at {e}")
    coeffs = M.coefficient_matrices()
    Me = M.evaluate(base)
    points = [base]
    radii = [Fraction(0)]
    for j in range(n1):
        if j == e.chart:
            continue
        r = Fraction(1)
        for _ in range(max_halvings + 1):
            cand = [[a + r * b for a, b in zip(ra, rb)] for ra, rb in zip(Me, coeffs[j])]
            if linalg.is_positive_definite(cand):
                break
            r /= 2
        else:
            raise SearchExhausted(f"no positive definite point found along x{j}")
        p = list(base)
        p[j] += r
        points.append(p)
        radii.append(r)
    T = linalg.transpose(points)
    if linalg.det(T) == 0:
        raise InternalAssertionFailure("PD points are linearly dependent")
    mats = [M.evaluate(p) for p in points]
    for A in mats:
        if not linalg.is_positive_definite(A):
            raise InternalAssertionFailure("coefficient matrix is not positive definite")
    return PDCoordinates(T, mats, radii)


# hyperbolicity


@dataclass
class Trial:
    direction: tuple
    distinct_roots: int
    all_real: bool


@dataclass
class HyperbolicityReport:
    point: ProjectivePoint
    trials: int
    seed: int
    verdict: str
    witness: tuple | None = None     # (e, v): the refuting line e + t·v
    witness_poly: list | None = None  # ascending coefficients of f(e + t·v)
    per_trial: list = field(default_factory=list)
    resampled: int = 0

    @property
    def hyperbolic(self):
        return self.verdict == HYPERBOLIC


def restrict_to_line(f: Polynomial, e, v) -> flint.fmpq_poly:
    """The univariate polynomial t -> f(e + t·v)."""
    t = Polynomial.var(0, 1)
    images = [Polynomial.constant(a, 1) + t * b for a, b in zip(e, v)]
    images += [Polynomial.zero(1)] * (f.nvars - len(images))
    return univariate(f.compose(images))


def _sample_direction(rng, n, height):
    out = []
    for _ in range(n):
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        out.append(Fraction(num, den))
    return tuple(out)


def thread_count():
    try:
        return max(0, int(os.environ.get("DETREP_THREADS", "0")))
    except ValueError:
        return 0


def is_hyperbolic_at(f: Polynomial, e, trials: int = 256, seed: int = 0, height: int = 10, threads=None) -> HyperbolicityReport:
    """Sample ``trials`` lines through e; refute on the first line with a non-real root.

    Directions whose restriction drops degree (f(v) = 0) are redrawn and
    counted in ``resampled``.  Directions are drawn sequentially from
    ``random.Random(seed)``, so reports do not depend on ``threads``.
    """
    if f.is_zero():
        raise ZeroPolynomial("hyperbolicity of the zero polynomial")
    if not f.is_homogeneous():
        raise NotHomogeneous("hyperbolicity needs a homogeneous polynomial")
    e = e if isinstance(e, ProjectivePoint) else ProjectivePoint(e)
    n = max(f.nvars, len(e.coords))
    base = list(e.coords) + [Fraction(0)] * (n - len(e.coords))
    if f.evaluate(base) == 0:
        raise PointOnHypersurface(f"f vanishes at {e}")
    rng = random.Random(seed)
    dirs = []
    resampled = 0
    while len(dirs) < trials:
        v = _sample_direction(rng, n, height)
        if f.evaluate(v) == 0:
            resampled += 1
            continue
        dirs.append(v)

    def run(v):
        g = restrict_to_line(f, base, v)
        distinct, real = count_real_roots(g)
        return Trial(v, distinct, real), g

    threads = thread_count() if threads is None else threads
    report = HyperbolicityReport(e, trials, seed, HYPERBOLIC, resampled=resampled)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(run, dirs)
            _collect(report, results, base)
    else:
        _collect(report, map(run, dirs), base)
    return report


def _collect(report, results, base):
    for trial, g in results:
        report.per_trial.append(trial)
        if not trial.all_real:
            report.verdict = REFUTED
            report.witness = (tuple(base), trial.direction)
            report.witness_poly = [as_rational(Fraction(int(c.p), int(c.q))) for c in g.coeffs()]
            break


def pd_rep_hyperbolicity_check(M: PolyMatrix, e, trials: int = 256, seed: int = 0, threads=None) -> HyperbolicityReport:
    """A positive definite symmetric pencil has a hyperbolic determinant."""
    e = e if isinstance(e, ProjectivePoint) else ProjectivePoint(e)
    if not is_pd_at(M, e):
        raise NotPDAtPoint(f"M is not positive definite at {e}")
    report = is_hyperbolic_at(determinant(M), e, trials, seed, threads=threads)
    if not report.hyperbolic:
        err = InternalAssertionFailure("determinant of a positive definite pencil was refuted")
        err.report = report
        raise err
    return report
