import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detrep.arith import Polynomial, format_polynomial
from detrep.errors import ParseError, ProportionalFactors, RaggedRows
from detrep.parser import (
    format_factors,
    format_matrix,
    load_text,
    parse_coordinates,
    parse_factors,
    parse_matrix,
    parse_point,
    parse_polynomial,
)

from oracles import polynomials, random_matrix


def test_conic():
    p = parse_polynomial("x0*x2 - x1^2")
    assert p.terms == {(1, 0, 1): 1, (0, 2, 0): -1}


def test_rational_coefficient():
    p = parse_polynomial("3/2*x0^2 + x1*x2")
    assert p.coefficient((2, 0, 0)) == Fraction(3, 2)


def test_syntax_error_span_points_at_second_plus():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x0 + + x1")
    assert exc.value.span.start == 5
    assert "expected" in str(exc.value)


@pytest.mark.parametrize("text", ["2x0", "x0 ^", "x", "x0 * * x1", "1/0", "x0 +", "(x0)", "x0 x1"])
def test_rejects(text):
    with pytest.raises(ParseError) as exc:
        parse_polynomial(text)
    span = exc.value.span
    assert 0 <= span.start <= span.end <= len(text.encode())


def test_variable_limit():
    with pytest.raises(ParseError):
        parse_polynomial("x10")
    assert parse_polynomial("x10", max_vars=11).nvars == 11


def test_matrix():
    M = parse_matrix("[[x0, x1], [x1, x2]]")
    assert M.shape == (2, 2)
    assert M.is_symmetric()
    assert format_matrix(M) == "[[x0, x1], [x1, x2]]"


def test_ragged_rows():
    with pytest.raises(RaggedRows):
        parse_matrix("[[x0],[x1, x2]]")


def test_factors():
    spec = parse_factors("x0^1; x2^1")
    assert [(format_polynomial(f), p) for f, p in spec.factors] == [("x0", 1), ("x2", 1)]
    spec = parse_factors("x0^2")
    assert [(format_polynomial(f), p) for f, p in spec.factors] == [("x0", 2)]
    spec = parse_factors("(x0*x2 - x1^2)^2\nx0")
    assert spec.degree == 5
    assert format_factors(spec) == "(x0*x2 - x1^2)^2; (x0)^1"
    with pytest.raises(ProportionalFactors):
        parse_factors("x0^1; 2*x0^1")


def test_factor_file_header(tmp_path):
    path = tmp_path / "spec.txt"
    path.write_text("# vars: 12\n# a comment\nx11^2; x0\n", encoding="utf-8")
    text, mv = load_text(f"@{path}")
    spec = parse_factors(text, max_vars=mv)
    assert spec.nvars == 12


def test_points():
    assert parse_point("1,0,0").coords == (1, 0, 0)
    assert parse_point("1/2, -3, 0").coords == (Fraction(1, 2), -3, 0)
    assert parse_coordinates("0,0,0") == (0, 0, 0)
    with pytest.raises(ParseError):
        parse_point("0,0,0")
    with pytest.raises(ParseError):
        parse_point("1,a,0")


@settings(max_examples=100, deadline=None)
@given(polynomials(nvars=4, max_deg=4))
def test_print_parse_roundtrip(p):
    text = format_polynomial(p)
    q = parse_polynomial(text, nvars=4)
    assert q == p
    assert format_polynomial(q) == text


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_matrix_roundtrip(seed):
    rng = random.Random(seed)
    M = random_matrix(rng, rng.randint(1, 4), 3)
    text = format_matrix(M)
    assert format_matrix(parse_matrix(text)) == text
    assert parse_matrix(text, nvars=3) == M


def test_unicode_span_is_bytes():
    with pytest.raises(ParseError) as exc:
        parse_polynomial("x0 + é")
    assert exc.value.span.start == len("x0 + ".encode())
    assert exc.value.span.end == len("x0 + é".encode())


def test_widening_equality():
    assert parse_polynomial("x0") == Polynomial.var(0, 5)
