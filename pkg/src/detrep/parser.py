"""Text formats for polynomials, matrices and factor lists.

Grammar (whitespace is insignificant between tokens)::

    poly   := ['-'] term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ('^' nat)?
    coeff  := int ('/' nat)?
    var    := 'x' digit+
    matrix := '[' row (',' row)* ']'      row := '[' poly (',' poly)* ']'

A factors text is a list of entries separated by ';' or newlines, each
``poly ^ nat``, ``(poly) ^ nat``, ``(poly)`` or ``poly``.  Without
parentheses the last ``^ nat`` of an entry is the multiplicity, so
``x0^2`` is the double line; write ``(x0*x2 - x1^2)^1`` for a conic.

Files may start with comment lines (``#``); a header ``# vars: N`` raises
the variable limit from the default ten (x0..x9) to N.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import Polynomial, format_polynomial
from .errors import ParseError, ProportionalFactors, RaggedRows
from .matrix import HypersurfaceSpec, PolyMatrix

DEFAULT_MAX_VARS = 10

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<var>x\d+)|(?P<op>[-+*/^\[\],();])")
_WS = re.compile(r"[ \t\r\f\v]*")


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text, newlines=False):
    toks = []
    pos = 0
    n = len(text)
    while True:
        if newlines:
            pos = _WS.match(text, pos).end()
        else:
            while pos < n and text[pos].isspace():
                pos += 1
        if pos >= n:
            break
        if newlines and text[pos] == "\n":
            toks.append(_Tok(";", "\n", pos, pos + 1))
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1), text)
        kind = m.lastgroup
        s, e = m.start(kind), m.end(kind)
        tok_text = text[s:e]
        toks.append(_Tok(tok_text if kind == "op" else kind, tok_text, s, e))
        pos = e
    toks.append(_Tok("eof", "", n, n))
    return toks


def _span(text, start, end):
    # byte offsets into the UTF-8 encoding
    if text.isascii():
        return SourceSpan(start, end)
    return SourceSpan(len(text[:start].encode()), len(text[:end].encode()))


class _Parser:
    def __init__(self, text, max_vars=DEFAULT_MAX_VARS, newlines=False):
        self.text = text
        self.toks = _tokenize(text, newlines)
        self.i = 0
        self.max_vars = max_vars
        self.nvars = 1

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, expected, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected {expected}, found {found}", _span(self.text, tok.start, max(tok.end, tok.start + 1) if tok.kind != "eof" else tok.end), self.text)

    def take(self, kind, expected=None):
        tok = self.tok
        if tok.kind != kind:
            self.error(expected or repr(kind))
        self.i += 1
        return tok

    def nat(self):
        return int(self.take("int", "a natural number").text)

    def var(self):
        tok = self.take("var", "a variable")
        idx = int(tok.text[1:])
        if idx >= self.max_vars:
            raise ParseError(f"variable {tok.text} beyond declared count {self.max_vars}", _span(self.text, tok.start, tok.end), self.text)
        self.nvars = max(self.nvars, idx + 1)
        return idx

    def factor(self):
        idx = self.var()
        e = 1
        if self.tok.kind == "^":
            self.i += 1
            e = self.nat()
        return idx, e

    def coeff(self):
        num = self.nat()
        if self.tok.kind == "/":
            self.i += 1
            den_tok = self.tok
            den = self.nat()
            if den == 0:
                raise ParseError("zero denominator", _span(self.text, den_tok.start, den_tok.end), self.text)
            return Fraction(num, den)
        return num

    def term(self):
        """Returns (coefficient, {var: exponent})."""
        exps = {}
        if self.tok.kind == "int":
            c = self.coeff()
        elif self.tok.kind == "var":
            c = 1
            idx, e = self.factor()
            exps[idx] = exps.get(idx, 0) + e
        else:
            self.error("a term")
        while self.tok.kind == "*":
            self.i += 1
            idx, e = self.factor()
            exps[idx] = exps.get(idx, 0) + e
        return c, exps

    def poly(self):
        terms = []
        sign = 1
        if self.tok.kind == "-":
            self.i += 1
            sign = -1
        c, exps = self.term()
        terms.append((sign * c, exps))
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.tok.kind == "+" else -1
            self.i += 1
            c, exps = self.term()
            terms.append((sign * c, exps))
        return terms

    def build(self, terms, nvars):
        acc = {}
        for c, exps in terms:
            mon = tuple(exps.get(i, 0) for i in range(nvars))
            acc[mon] = acc.get(mon, 0) + c
        return Polynomial(acc, nvars)

    def expect_end(self, expected="end of input"):
        if self.tok.kind != "eof":
            self.error(expected)


def _max_vars_from_header(text, default):
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if not s.startswith("#"):
            break
        m = re.match(r"#\s*vars\s*[:=]\s*(\d+)\s*$", s)
        if m:
            return max(default, int(m.group(1)))
    return default


def _strip_comments(text):
    # blank out comment lines so byte offsets stay valid
    return "\n".join(" " * len(l) if l.lstrip().startswith("#") else l for l in text.split("\n"))


def parse_polynomial(text: str, nvars: int | None = None, max_vars: int = DEFAULT_MAX_VARS) -> Polynomial:
    p = _Parser(text, max_vars)
    terms = p.poly()
    p.expect_end("'+', '-', '*' or end of input")
    return p.build(terms, max(p.nvars, nvars or 1))


def parse_matrix(text: str, nvars: int | None = None, max_vars: int = DEFAULT_MAX_VARS) -> PolyMatrix:
    p = _Parser(text, max_vars)
    rows = []
    row_starts = []
    p.take("[", "'['")
    while True:
        row_starts.append(p.tok)
        p.take("[", "'[' starting a row")
        row = [p.poly()]
        while p.tok.kind == ",":
            p.i += 1
            row.append(p.poly())
        close = p.take("]", "',' or ']'")
        rows.append((row, row_starts[-1].start, close.end))
        if p.tok.kind == ",":
            p.i += 1
            continue
        p.take("]", "',' or ']'")
        break
    p.expect_end()
    width = len(rows[0][0])
    for row, s, e in rows:
        if len(row) != width:
            raise RaggedRows(f"row has {len(row)} entries, expected {width}", _span(text, s, e), text)
    if len(rows) != width:
        raise ParseError(f"matrix is {len(rows)}x{width}, not square", _span(text, 0, len(text)), text)
    n = max(p.nvars, nvars or 1)
    return PolyMatrix([[p.build(t, n) for t in row] for row, _, _ in rows], n)


def parse_factors(text: str, nvars: int | None = None, max_vars: int = DEFAULT_MAX_VARS) -> HypersurfaceSpec:
    max_vars = _max_vars_from_header(text, max_vars)
    text_nc = _strip_comments(text)
    p = _Parser(text_nc, max_vars, newlines=True)
    entries = []
    while True:
        while p.tok.kind == ";":
            p.i += 1
        if p.tok.kind == "eof":
            break
        entries.append(_factor_entry(p))
        if p.tok.kind not in (";", "eof"):
            p.error("';', newline or end of input")
    if not entries:
        p.error("a factor")
    n = max(p.nvars, nvars or 1)
    factors = [(p.build(t, n), m, s, e) for t, m, s, e in entries]
    for a in range(len(factors)):
        for b in range(a):
            if _proportional(factors[a][0], factors[b][0]):
                _, _, s, e = factors[a]
                raise ProportionalFactors("factor is proportional to an earlier one", _span(text, s, e), text)
    return HypersurfaceSpec([(f, m) for f, m, _, _ in factors])


def _factor_entry(p):
    start = p.tok.start
    if p.tok.kind == "(":
        p.i += 1
        terms = p.poly()
        p.take(")", "')'")
        mult = 1
        if p.tok.kind == "^":
            p.i += 1
            mult = _multiplicity(p)
        return terms, mult, start, p.toks[p.i - 1].end
    # scan to the end of the entry, then peel a trailing '^ nat'
    j = p.i
    while p.toks[j].kind not in (";", "eof"):
        j += 1
    end = j
    mult = 1
    if end - p.i >= 3 and p.toks[end - 1].kind == "int" and p.toks[end - 2].kind == "^" and p.toks[end - 3].kind == "var":
        mult = int(p.toks[end - 1].text)
        if mult == 0:
            p.i = end - 1
            p.error("a positive multiplicity")
        body_end = end - 2
    else:
        body_end = end
    saved = p.toks
    p.toks = saved[:body_end] + [_Tok("eof", "", saved[body_end].start, saved[body_end].start)]
    terms = p.poly()
    if p.tok.kind != "eof":
        tok = p.tok
        p.toks = saved
        p.error("'+', '-', '*', '^' or end of entry", tok)
    p.toks = saved
    p.i = end
    return terms, mult, start, saved[end - 1].end


def _multiplicity(p):
    tok = p.tok
    m = p.nat()
    if m == 0:
        p.error("a positive multiplicity", tok)
    return m


def _proportional(f, g):
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    mon, c = f.leading_term()
    d = g.coefficient(mon)
    if not d:
        return False
    return f * d == g * c


def format_matrix(m) -> str:
    return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in m.rows) + "]"


def format_factors(spec: HypersurfaceSpec) -> str:
    return "; ".join(f"({format_polynomial(f)})^{m}" for f, m in spec.factors)


def format_point(coords) -> str:
    out = []
    for c in coords:
        c = Fraction(c)
        out.append(str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}")
    return ",".join(out)


def parse_coordinates(text: str) -> tuple:
    """Comma-separated rationals, e.g. ``1,0,0`` or ``1/2,-3,0``."""
    coords = []
    pos = 0
    for part in text.split(","):
        s = part.strip()
        span = _span(text, pos, pos + len(part))
        if not re.fullmatch(r"-?\d+(/\d+)?", s):
            raise ParseError(f"bad coordinate {s!r}", span, text)
        try:
            coords.append(Fraction(s))
        except ZeroDivisionError:
            raise ParseError("zero denominator", span, text) from None
        pos += len(part) + 1
    return tuple(coords)


def parse_point(text: str):
    """A projective point from comma-separated rationals, not all zero."""
    from .arith import ProjectivePoint

    coords = parse_coordinates(text)
    try:
        return ProjectivePoint(coords)
    except ValueError:
        raise ParseError("all coordinates are zero", _span(text, 0, len(text)), text) from None


def load_text(arg: str) -> tuple[str, int]:
    """Resolve an inline expression or ``@path``; returns (text, max_vars)."""
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            raw = fh.read()
        return _strip_comments(raw), _max_vars_from_header(raw, DEFAULT_MAX_VARS)
    return arg, DEFAULT_MAX_VARS
