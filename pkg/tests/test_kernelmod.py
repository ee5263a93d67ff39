import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detrep.arith import ProjectivePoint, divides
from detrep.errors import BadFactorization, DegreeMismatch, DeterminantMismatch, NotGenericallyMG, PointOffHypersurface
from detrep.kernelmod import (
    is_generically_mg,
    is_mg_at,
    kernel_generators,
    matrix_factorization,
    rational_root,
    recover_from_adjoint,
    reduced_kernel_generators,
)
from detrep.matrix import HypersurfaceSpec, PolyMatrix, adjugate, determinant
from detrep.parser import parse_factors
from detrep.parser import parse_matrix as PM
from detrep.parser import parse_polynomial as P

from oracles import conjugate, random_linear_matrix, scalar_ratio


def spec(text):
    return parse_factors(text)


def test_kernel_generators_examples():
    kg = kernel_generators(PM("[[x0, x1], [x1, x2]]"))
    assert [[str(e) for e in c] for c in kg.columns] == [["x2", "-x1"], ["-x1", "x0"]]
    kg = kernel_generators(PM("[[x0, 0], [0, x1]]"))
    assert [[str(e) for e in c] for c in kg.columns] == [["x1", "0"], ["0", "x0"]]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_kernel_columns_vanish_mod_det(seed):
    M = random_linear_matrix(random.Random(seed), 3, 3)
    if determinant(M).is_zero():
        return
    kg = kernel_generators(M)
    for col in kg.columns:
        image = [sum((a * b for a, b in zip(row, col)), start=col[0] * 0) for row in M.rows]
        assert all(divides(kg.det, e) for e in image)


def test_is_mg_at_examples():
    assert is_mg_at(PM("[[x0, 0], [0, x1]]"), P("x0*x1"), ProjectivePoint((0, 0, 1)))
    M, f = PM("[[x0, x1], [0, x0]]"), P("x0^2")
    # M vanishes at (0:0:1) so the corank there is 2
    assert is_mg_at(M, f, ProjectivePoint((0, 0, 1)))
    rep = is_mg_at(M, f, ProjectivePoint((0, 1, 0)))
    assert not rep
    assert (rep.points[0].corank, rep.points[0].multiplicity) == (1, 2)
    conic = PM("[[x0, x1], [x1, x2]]")
    assert is_mg_at(conic, determinant(conic), ProjectivePoint((1, 1, 1)))
    with pytest.raises(PointOffHypersurface):
        is_mg_at(conic, determinant(conic), ProjectivePoint((1, 2, 3)))


def test_is_generically_mg_examples():
    assert is_generically_mg(PM("[[x0, 0], [0, x0]]"), spec("x0^2"))
    assert not is_generically_mg(PM("[[x0, x1], [0, x0]]"), spec("x0^2"))
    assert is_generically_mg(PM("[[x0, 0], [0, x1]]"), spec("x0; x1"))


def test_reduced_kernel_examples():
    assert reduced_kernel_generators(PM("[[x0, 0], [0, x0]]"), spec("x0^2")) == PolyMatrix.identity(2, 1)
    I3 = PM("[[x0, 0, 0], [0, x0, 0], [0, 0, x0]]")
    assert reduced_kernel_generators(I3, spec("x0^3")) == PolyMatrix.identity(3, 1)
    with pytest.raises(NotGenericallyMG):
        reduced_kernel_generators(PM("[[x0, x1], [0, x0]]"), spec("x0^2"))


def test_reduced_kernel_two_factors():
    M = PM("[[x0, 0, 0, 0], [0, x0, 0, 0], [0, 0, x1, 0], [0, 0, 0, x1]]")
    s = spec("x0^2; x1^2")
    R = reduced_kernel_generators(M, s)
    assert M @ R == PolyMatrix.identity(4, 2) * P("x0*x1")


def test_matrix_factorization_examples():
    N = matrix_factorization(PM("[[x0, 0], [0, x0]]"), spec("x0^2"))
    assert N == PolyMatrix.identity(2, 1)
    M = PM("[[x0, 0], [0, x1]]")
    N = matrix_factorization(M, spec("x0; x1"))
    assert N == PM("[[x1, 0], [0, x0]]")
    assert M @ N == PolyMatrix.identity(2, 2) * P("x0*x1")


@pytest.mark.parametrize("seed", range(8))
def test_matrix_factorization_conjugates(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    M = conjugate(rng, PolyMatrix.identity(p, 3) * P("x0"))
    s = spec(f"x0^{p}")
    assert is_generically_mg(M, s)
    excess = P("x0") ** (p - 1)
    assert all(divides(excess, e) for row in adjugate(M).rows for e in row)
    N = matrix_factorization(M, s)
    assert M @ N == PolyMatrix.identity(p, 3) * P("x0")


def test_recover_examples():
    M = PM("[[x0, x1], [x1, x2]]")
    assert recover_from_adjoint(adjugate(M), determinant(M)) == M
    D = PM("[[x0, 0, 0], [0, x1, 0], [0, 0, x2]]")
    assert recover_from_adjoint(adjugate(D), P("x0*x1*x2")) == D


def test_recover_errors():
    with pytest.raises(DegreeMismatch):
        recover_from_adjoint(PM("[[1, 0], [0, 1]]"), P("x0*x1"))
    with pytest.raises(DegreeMismatch):
        recover_from_adjoint(PM("[[x0, 0], [0, x1]]"), P("x0"))
    with pytest.raises(DeterminantMismatch):
        recover_from_adjoint(PM("[[x0, 0], [0, x1]]"), P("x0*x2"))


@pytest.mark.parametrize("seed", range(10))
def test_recover_round_trip(seed):
    rng = random.Random(seed)
    M = random_linear_matrix(rng, rng.randint(2, 4), 3)
    f = determinant(M)
    if f.is_zero():
        return
    R = recover_from_adjoint(adjugate(M), f)
    assert scalar_ratio(R, M) is not None


def test_rational_root():
    assert rational_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert rational_root(Fraction(-8), 3) == -2
    assert rational_root(Fraction(2), 2) is None
    assert rational_root(Fraction(-4), 2) is None


def test_spec_scalar_check():
    with pytest.raises(BadFactorization):
        is_generically_mg(PM("[[x0, 0], [0, x0]]"), HypersurfaceSpec([(P("x1"), 2)]))
