import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detrep.arith import LocalRational
from detrep.decomp import decompose
from detrep.errors import NotSymmetric, ZeroDeterminant
from detrep.linearize import sym_linearize
from detrep.localred import LocalMatrix
from detrep.matrix import PolyMatrix, corank_at, determinant
from detrep.parser import parse_matrix as PM
from detrep.parser import parse_polynomial as P
from detrep.symmetric import is_symmetric, sym_reduce, verify_symmetric_decomposition

from oracles import random_poly

ORIGIN = (0, 0, 0)


def test_is_symmetric_examples():
    assert is_symmetric(PM("[[x0, x1], [x1, x2]]"))
    assert not is_symmetric(PM("[[x0, x1], [0, x2]]"))


def test_sym_linearize_outputs_are_symmetric():
    for text in ["[[x1^2]]", "[[x1^2, x2], [x2, x1*x2]]", "[[x1^3, x1^2], [x1^2, x2]]"]:
        assert is_symmetric(sym_linearize(PM(text)).L)


def test_smooth_branch_example():
    red = sym_reduce(PM("[[1 + x1, x2], [x2, x1]]"), ORIGIN)
    assert red.D == [1]
    assert red.units[0] == LocalRational(P("1 + x1"), None, ORIGIN)
    assert red.N.rows[0][0] == LocalRational(P("x1 + x1^2 - x2^2"), P("1 + x1"), ORIGIN)


def test_nothing_to_chip():
    M = PM("[[x1, 0], [0, x2]]")
    red = sym_reduce(M, ORIGIN)
    assert red.D == []
    assert red.N == LocalMatrix(M.rows, red.N.center)


def test_constant_unit_not_rescaled():
    red = sym_reduce(PM("[[2, 0], [0, x1]]"), ORIGIN)
    assert red.D == [2]
    assert red.N == LocalMatrix([[P("x1")]], red.N.center)


def test_hyperbolic_pair():
    # zero diagonal at the center, nonzero off-diagonal
    M = PM("[[x1, 1], [1, x2]]")
    red = sym_reduce(M, ORIGIN)
    assert red.rank == 2
    assert red.A @ red.original @ red.A.T == red.block()


def test_errors():
    with pytest.raises(NotSymmetric):
        sym_reduce(PM("[[x0, x1], [0, x2]]"), ORIGIN)
    with pytest.raises(ZeroDeterminant):
        sym_reduce(PM("[[x1, x1], [x1, x1]]"), ORIGIN)


def test_verify_examples():
    M = PM("[[x0, 0], [0, x2]]")
    assert verify_symmetric_decomposition(M, [[1, 0], [0, 1]], [PM("[[x0]]"), PM("[[x2]]")])
    # a decomposition found by the decomp module, checked as a congruence
    res = decompose(M, P("x0"), P("x2"))
    assert verify_symmetric_decomposition(M, res.U1, res.blocks)
    assert not verify_symmetric_decomposition(M, [[1, 1], [1, 1]], [PM("[[x0]]"), PM("[[x2]]")])


def test_verify_congruence():
    M = PM("[[x0 + x2, x0], [x0, x0]]")
    A = [[1, -1], [0, 1]]
    assert verify_symmetric_decomposition(M, A, [PM("[[x2]]"), PM("[[x0]]")])
    Ap = PolyMatrix.from_constant(A, 3)
    assert verify_symmetric_decomposition(M, Ap, [PM("[[x2]]"), PM("[[x0]]")])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(0, 0, 0), (1, 0, 0), (1, -1, 2)]))
def test_reduction_properties(seed, center):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    rows = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            e = random_poly(rng, 3, 2, rng.randint(1, 3), 4)
            if rng.random() < 0.5:
                e = e - e.evaluate(list(center))
            rows[i][j] = rows[j][i] = e
    M = PolyMatrix(rows, 3)
    if determinant(M).is_zero():
        return
    red = sym_reduce(M, center)
    assert red.N.shape[0] == corank_at(M, center)
    assert all(v == 0 for row in red.N.value_at_center() for v in row)
    assert all(u.is_unit() for u in red.units)
    assert is_symmetric(red.N)
    assert red.A.is_invertible_at_center()
    assert verify_symmetric_decomposition(red.original, red.A, [red.block()])
