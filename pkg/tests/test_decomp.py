import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detrep import linalg
from detrep.arith import exact_divide
from detrep.decomp import adjugate_ideal_split, decompose, decompose_completely, monomials_of_degree
from detrep.errors import BadFactorization, NotDecomposable, NotInIdeal, NotLinear
from detrep.matrix import HypersurfaceSpec, block_diag, determinant
from detrep.parser import parse_matrix as PM
from detrep.parser import parse_polynomial as P

from oracles import conjugate, random_block_instance


def assert_block_diagonal(T, sizes):
    edges = [sum(sizes[:k]) for k in range(len(sizes) + 1)]
    block = [next(k for k in range(len(sizes)) if i < edges[k + 1]) for i in range(T.size)]
    for i in range(T.size):
        for j in range(T.size):
            if block[i] != block[j]:
                assert T.rows[i][j].is_zero()


def test_monomials_of_degree():
    assert monomials_of_degree(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(monomials_of_degree(3, 2)) == 6
    assert monomials_of_degree(2, 0) == [(0, 0)]


def test_split_diagonal():
    split = adjugate_ideal_split(PM("[[x0, 0], [0, x2]]"), P("x0"), P("x2"))
    assert split.N1 == PM("[[1, 0], [0, 0]]")
    assert split.N2 == PM("[[0, 0], [0, 1]]")


def test_split_not_in_ideal():
    with pytest.raises(NotInIdeal) as exc:
        adjugate_ideal_split(PM("[[x0, x1], [0, x2]]"), P("x0"), P("x2"))
    assert exc.value.entry == (1, 2)


def test_split_shared_factor():
    with pytest.raises(BadFactorization):
        adjugate_ideal_split(PM("[[x0, 0], [0, x0]]"), P("x0"), P("x0"))


def test_split_is_independent_of_column_order():
    rng = random.Random(5)
    M, M1, M2 = random_block_instance(rng, sizes=(2, 1))
    f1, f2 = determinant(M1), determinant(M2)
    c = exact_divide(determinant(M), f1 * f2).constant_term()
    a = adjugate_ideal_split(M, f1 * c, f2)
    nu = len(monomials_of_degree(3, f1.degree - 1)) + len(monomials_of_degree(3, f2.degree - 1))
    b = adjugate_ideal_split(M, f1 * c, f2, column_order=list(reversed(range(nu))))
    assert a.N1 == b.N1 and a.N2 == b.N2


def test_decompose_diagonal():
    res = decompose(PM("[[x0, 0], [0, x2]]"), P("x0"), P("x2"))
    assert res.blocks == [PM("[[x0]]"), PM("[[x2]]")]
    assert res.U1 == linalg.identity(2) and res.U2 == linalg.identity(2)
    assert res.constants == [1, 1]


def test_decompose_negative_control():
    with pytest.raises(NotDecomposable) as exc:
        decompose(PM("[[x0, x1], [0, x2]]"), P("x0"), P("x2"))
    assert exc.value.witness == (1, 2)


def test_decompose_errors():
    with pytest.raises(NotLinear):
        decompose(PM("[[x0^2, 0], [0, x2]]"), P("x0^2"), P("x2"))
    with pytest.raises(BadFactorization):
        decompose(PM("[[x0, 0], [0, x2]]"), P("x0"), P("x1"))


def test_decompose_conic_and_line():
    rng = random.Random(11)
    inner = block_diag([PM("[[x0]]"), PM("[[x1, x2], [x2, x0]]")], 3)
    M = conjugate(rng, inner)
    res = decompose(M, P("x0"), P("x0*x1 - x2^2"))
    assert res.sizes == [1, 2]
    assert_block_diagonal(res.transformed(M), res.sizes)
    assert res.block_dets[0] == determinant(res.blocks[0])
    assert res.block_dets[1] == determinant(res.blocks[1])


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip(seed):
    rng = random.Random(seed)
    M, M1, M2 = random_block_instance(rng)
    f1, f2 = determinant(M1), determinant(M2)
    res = decompose(M, f1, f2)
    assert res.sizes == [M1.size, M2.size]
    T = res.transformed(M)
    assert_block_diagonal(T, res.sizes)
    assert T == block_diag(res.blocks, M.nvars)
    for b, f, c in zip(res.blocks, res.factors, res.constants):
        assert determinant(b) == f * c
    for X, Y in res.idempotents:
        d = len(X)
        assert [[a + b for a, b in zip(r, s)] for r, s in zip(X, Y)] == linalg.identity(d)
        assert linalg.matmul(X, Y) == linalg.zeros(d, d)


def test_decompose_completely_diagonal():
    M = PM("[[x0, 0, 0], [0, x1, 0], [0, 0, x2]]")
    spec = HypersurfaceSpec([(P("x0"), 1), (P("x1"), 1), (P("x2"), 1)])
    res = decompose_completely(M, spec)
    assert res.sizes == [1, 1, 1]


def test_decompose_completely_single_group():
    M = PM("[[x0, 0], [0, x0]]")
    res = decompose_completely(M, HypersurfaceSpec([(P("x0"), 2)]))
    assert res.blocks == [M]


@pytest.mark.parametrize("seed", range(5))
def test_decompose_completely_conjugated(seed):
    rng = random.Random(seed)
    M = conjugate(rng, PM("[[x0, 0, 0], [0, x1, 0], [0, 0, x2]]"))
    spec = HypersurfaceSpec([(P("x0"), 1), (P("x1"), 1), (P("x2"), 1)])
    res = decompose_completely(M, spec)
    assert res.sizes == [1, 1, 1]
    assert res.transformed(M) == block_diag(res.blocks, 3)


def test_decompose_completely_partial():
    M = block_diag([PM("[[x0, x1], [0, x2]]"), PM("[[x1]]")], 3)
    spec = HypersurfaceSpec([(P("x1"), 1), (P("x0"), 1), (P("x2"), 1)])
    with pytest.raises(NotDecomposable) as exc:
        decompose_completely(M, spec)
    partial = exc.value.partial
    assert partial is not None
    assert partial.sizes == [1, 2]
    assert partial.transformed(M) == block_diag(partial.blocks, 3)
