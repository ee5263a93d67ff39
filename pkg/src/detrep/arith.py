"""Exact sparse multivariate polynomials over the rationals.

``Polynomial`` wraps FLINT's ``fmpq_mpoly`` (via python-flint) in a
context with variables ``x0..x{n-1}`` and graded lexicographic order
``x0 > x1 > ...``.  Coefficients cross the API boundary as ``int`` or
``fractions.Fraction`` (a Fraction with denominator 1 is returned as ``int``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

import flint
from flint.utils.flint_exceptions import DomainError as _FlintDomainError

from .errors import (
    DivisionByZero,
    NotDivisible,
    NotRegularAtCenter,
    ZeroPolynomial,
)

Rational = Fraction
Monomial = tuple  # tuple[int, ...], one exponent per ambient variable

_contexts: dict = {}


def _ctx(nvars):
    c = _contexts.get(nvars)
    if c is None:
        c = flint.fmpq_mpoly_ctx.get(("x", nvars), "deglex")
        _contexts[nvars] = c
    return c


def as_rational(c):
    """Coerce an exact scalar to ``int`` or ``Fraction``."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, flint.fmpq):
        num, den = int(c.p), int(c.q)
        return num if den == 1 else Fraction(num, den)
    if isinstance(c, flint.fmpz):
        return int(c)
    if isinstance(c, _RationalABC):
        return as_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_rational(Fraction(c))
    raise TypeError(f"inexact or unsupported scalar {c!r}")


def _fq(c):
    c = as_rational(c)
    if type(c) is int:
        return c
    return flint.fmpq(c.numerator, c.denominator)


def _is_scalar(x):
    return isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)) or isinstance(x, _RationalABC)


def _strip(mon):
    mon = tuple(mon)
    k = len(mon)
    while k and not mon[k - 1]:
        k -= 1
    return mon[:k]


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables ``x0..x{nvars-1}``.

    Binary operations between polynomials of different ``nvars`` widen to
    the larger count; equality ignores the ambient count.
    """

    __slots__ = ("_p", "nvars")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, nvars: int | None = None):
        width = max((len(m) for m in terms), default=0) if terms else 0
        if nvars is None:
            nvars = max(width, 1)
        elif width > nvars:
            raise ValueError("monomial longer than ambient variable count")
        acc = {}
        for mon, c in (terms or {}).items():
            if any(e < 0 for e in mon):
                raise ValueError("negative exponent")
            mon = tuple(mon) + (0,) * (nvars - len(mon))
            acc[mon] = acc.get(mon, 0) + as_rational(c)
        self._p = _ctx(nvars).from_dict({m: _fq(c) for m, c in acc.items() if c})
        self.nvars = nvars

    @classmethod
    def _wrap(cls, fp, nvars):
        p = object.__new__(cls)
        p._p = fp
        p.nvars = nvars
        return p

    # construction helpers

    @classmethod
    def zero(cls, nvars=1):
        return cls._wrap(_ctx(nvars).from_dict({}), nvars)

    @classmethod
    def constant(cls, c, nvars=1):
        return cls._wrap(_ctx(nvars).constant(_fq(c)), nvars)

    @classmethod
    def var(cls, i, nvars=None):
        if nvars is None:
            nvars = i + 1
        if i >= nvars:
            raise ValueError("variable index outside ambient count")
        return cls._wrap(_ctx(nvars).gens()[i], nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff}, len(exps))

    # inspection

    @property
    def terms(self) -> dict:
        """Terms as ``{exponent tuple: coefficient}``, graded-lex descending."""
        return {tuple(map(int, m)): as_rational(c) for m, c in zip(self._p.monoms(), self._p.coeffs())}

    def __len__(self):
        return len(self._p)

    def is_zero(self):
        return self._p.is_zero()

    def __bool__(self):
        return not self._p.is_zero()

    def is_constant(self):
        return self._p.is_constant()

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def coefficient(self, mon) -> object:
        mon = tuple(mon)
        if len(mon) > self.nvars:
            if any(mon[self.nvars:]):
                return 0
            mon = mon[: self.nvars]
        mon = mon + (0,) * (self.nvars - len(mon))
        return as_rational(self._p[mon])

    @property
    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if self._p.is_zero():
            return -math.inf
        return int(self._p.total_degree())

    @property
    def low_degree(self):
        if self._p.is_zero():
            return -math.inf
        return int(min(sum(m) for m in self._p.monoms()))

    def is_homogeneous(self):
        return len({sum(m) for m in self._p.monoms()}) <= 1

    def homogeneous_part(self, degree):
        return Polynomial({m: c for m, c in self.terms.items() if sum(m) == degree}, self.nvars)

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex largest monomial."""
        if self._p.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading term")
        return tuple(map(int, self._p.monoms()[0])), as_rational(self._p.coeffs()[0])

    def used_variables(self):
        return [i for i, e in enumerate(self._p.degrees()) if e > 0]

    def widened(self, nvars):
        if nvars == self.nvars:
            return self
        if nvars < self.nvars and any(i >= nvars for i in self.used_variables()):
            raise ValueError("cannot narrow: variable in use")
        return Polynomial._wrap(self._p.project_to_context(_ctx(nvars)), nvars)

    # arithmetic

    def _pair(self, other):
        """(a, b, nvars) as flint operands in a shared context, or None."""
        if isinstance(other, Polynomial):
            if other.nvars == self.nvars:
                return self._p, other._p, self.nvars
            n = max(self.nvars, other.nvars)
            return self.widened(n)._p, other.widened(n)._p, n
        if _is_scalar(other):
            return self._p, _fq(other), self.nvars
        return None

    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b, n = pr
        return Polynomial._wrap(a + b, n)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._wrap(-self._p, self.nvars)

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b, n = pr
        return Polynomial._wrap(a - b, n)

    def __rsub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b, n = pr
        return Polynomial._wrap(b - a, n)

    def __mul__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b, n = pr
        return Polynomial._wrap(a * b, n)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        return Polynomial._wrap(self._p ** e, self.nvars)

    def __truediv__(self, other):
        if _is_scalar(other):
            c = as_rational(other)
            if not c:
                raise DivisionByZero("division by zero scalar")
            return self * (Fraction(1) / Fraction(c))
        return NotImplemented

    def __eq__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b, _ = pr
        return a == b

    def __hash__(self):
        return hash(frozenset((_strip(m), c) for m, c in self.terms.items()))

    # calculus and substitution

    def derivative(self, i):
        if i >= self.nvars:
            return Polynomial.zero(self.nvars)
        return Polynomial._wrap(self._p.derivative(i), self.nvars)

    def evaluate(self, point: Sequence) -> object:
        """Value at a point given as a sequence of exact scalars."""
        point = list(point)
        if len(point) < self.nvars:
            used = self.used_variables()
            if used and used[-1] >= len(point):
                raise ValueError("point has too few coordinates")
            point += [0] * (self.nvars - len(point))
        return as_rational(self._p(*[_fq(v) for v in point[: self.nvars]]))

    __call__ = evaluate

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``x_i -> images[i]`` for every variable."""
        images = list(images)
        if len(images) < self.nvars:
            raise ValueError("need one image per variable")
        n = max(img.nvars for img in images)
        gens = [img.widened(n)._p for img in images[: self.nvars]]
        return Polynomial._wrap(self._p.compose(*gens, ctx=_ctx(n)), n)

    def content(self):
        """Positive rational c with self/c primitive with integer coefficients."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    # printing

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial('{self}')"


def _format_coeff(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(exps):
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: graded-lex descending, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for mon, c in p.terms.items():
        neg = c < 0
        a = -c if neg else c
        m = format_monomial(mon)
        if not m:
            body = _format_coeff(a)
        elif a == 1:
            body = m
        else:
            body = f"{_format_coeff(a)}*{m}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def var(i, nvars=None):
    return Polynomial.var(i, nvars)


def const(c, nvars=1):
    return Polynomial.constant(c, nvars)


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with q*r == p, raising NotDivisible when no such r exists."""
    if q.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    n = max(p.nvars, q.nvars)
    a, b = p.widened(n)._p, q.widened(n)._p
    try:
        return Polynomial._wrap(a / b, n)
    except _FlintDomainError:
        raise NotDivisible(f"{p} is not divisible by {q}") from None


def divides(q: Polynomial, p: Polynomial) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisible:
        return False
    return True


def homogenize(p: Polynomial, var_index: int, degree: int | None = None) -> Polynomial:
    """Homogenize with ``x_{var_index}`` to ``degree`` (default: total degree of p).

    ``x_{var_index}`` should not occur in ``p``.
    """
    n = max(p.nvars, var_index + 1)
    if p.is_zero():
        return Polynomial.zero(n)
    top = p.degree
    if degree is None:
        degree = top
    if degree < top:
        raise ValueError("target degree below total degree")
    out = {}
    for mon, c in p.terms.items():
        m = list(mon) + [0] * (n - len(mon))
        m[var_index] += degree - sum(mon)
        m = tuple(m)
        out[m] = out.get(m, 0) + c
    return Polynomial(out, n)


def dehomogenize(p: Polynomial, var_index: int) -> Polynomial:
    """Set ``x_{var_index} = 1``; the ambient variable count is unchanged."""
    if var_index >= p.nvars:
        return p
    return Polynomial._wrap(p._p.subs({f"x{var_index}": 1}), p.nvars)


def translate(p: Polynomial, center: Sequence) -> Polynomial:
    """Return p(x + center), i.e. move ``center`` to the origin."""
    n = max(p.nvars, len(center))
    images = []
    for i in range(n):
        c = as_rational(center[i]) if i < len(center) else 0
        images.append(Polynomial.var(i, n) + c if c else Polynomial.var(i, n))
    return p.widened(n).compose(images)


def order_at(p: Polynomial, center: Sequence) -> int:
    """Lowest total degree in the Taylor expansion of ``p`` at an affine point."""
    if p.is_zero():
        raise ZeroPolynomial("order of the zero polynomial")
    if p.evaluate(_pad(center, p.nvars)) != 0:
        return 0
    return translate(p, center).low_degree


def _pad(point, n):
    point = list(point)
    return point + [0] * (n - len(point))


class ProjectivePoint:
    """A point of P^n.

    Keeps the representative it was built from (``coords``); equality and
    hashing use the canonical representative, scaled so the first nonzero
    coordinate is 1.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        coords = tuple(Fraction(as_rational(c)) for c in coords)
        if not coords or all(c == 0 for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        self.coords = coords

    @property
    def n(self):
        return len(self.coords) - 1

    @property
    def chart(self):
        """Index of the first nonzero coordinate."""
        return next(i for i, c in enumerate(self.coords) if c != 0)

    @property
    def canonical(self) -> tuple:
        lead = self.coords[self.chart]
        return tuple(c / lead for c in self.coords)

    def normalized(self) -> "ProjectivePoint":
        return ProjectivePoint(self.canonical)

    def negated(self) -> "ProjectivePoint":
        return ProjectivePoint(-c for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self):
        return "(" + ":".join(_format_coeff(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjectivePoint({self})"


def multiplicity_at(f: Polynomial, pt: ProjectivePoint) -> int:
    """Multiplicity of the hypersurface {f = 0} at ``pt`` (0 when f(pt) != 0)."""
    if f.is_zero():
        raise ZeroPolynomial("multiplicity of the zero polynomial")
    if not f.is_homogeneous():
        raise ValueError("multiplicity_at expects a homogeneous form")
    return order_at(dehomogenize(f, pt.chart), pt.canonical)


class LocalRational:
    """A fraction num/den regular at ``center`` (an element of the local ring).

    No polynomial gcd is taken; the denominator is only rescaled to have
    leading coefficient 1, and folded into the numerator when constant.
    """

    __slots__ = ("num", "den", "center")

    def __init__(self, num, den=None, center=()):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num, max(len(center), 1))
        if den is None:
            den = Polynomial.constant(1, num.nvars)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den, num.nvars)
        n = max(num.nvars, den.nvars, len(center))
        center = tuple(Fraction(as_rational(c)) for c in _pad(center, n))
        if den.is_zero() or den.evaluate(center) == 0:
            raise NotRegularAtCenter(f"denominator {den} vanishes at the center")
        if den.is_constant():
            num = num * (Fraction(1) / Fraction(den.constant_term()))
            den = Polynomial.constant(1, n)
        else:
            _, lc = den.leading_term()
            if lc != 1:
                s = Fraction(1) / Fraction(lc)
                num, den = num * s, den * s
        self.num = num.widened(n)
        self.den = den.widened(n)
        self.center = center

    @classmethod
    def from_poly(cls, p: Polynomial, center):
        return cls(p, None, center)

    def _coerce(self, other):
        if isinstance(other, LocalRational):
            return other
        if isinstance(other, Polynomial) or _is_scalar(other):
            return LocalRational(other, None, self.center)
        return None

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def value_at_center(self):
        return as_rational(Fraction(self.num.evaluate(self.center)) / Fraction(self.den.evaluate(self.center)))

    def is_unit(self):
        return self.value_at_center() != 0

    def inverse(self):
        if not self.is_unit():
            raise NotRegularAtCenter("element is not a unit at the center")
        return LocalRational(self.den, self.num, self.center)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return LocalRational(self.num + o.num, self.den, self.center)
        return LocalRational(self.num * o.den + o.num * self.den, self.den * o.den, self.center)

    __radd__ = __add__

    def __neg__(self):
        return LocalRational(-self.num, self.den, self.center)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return LocalRational(Polynomial.zero(self.num.nvars), None, self.center)
        return LocalRational(self.num * o.num, self.den * o.den, self.center)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"LocalRational({self})"
