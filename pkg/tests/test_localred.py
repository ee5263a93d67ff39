import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detrep.arith import LocalRational, ProjectivePoint
from detrep.errors import ZeroDeterminant
from detrep.localred import LocalMatrix, local_determinant, local_reduce, verify_local_equivalence
from detrep.matrix import PolyMatrix, corank_at, determinant
from detrep.parser import parse_matrix as PM
from detrep.parser import parse_polynomial as P

from oracles import random_matrix

ORIGIN = (0, 0, 0)


def test_smooth_branch_example():
    M = PM("[[1 + x1, x2], [x2, x1]]")
    red = local_reduce(M, ORIGIN)
    assert red.p == 1
    expected = LocalRational(P("x1 + x1^2 - x2^2"), P("1 + x1"), ORIGIN)
    assert red.N.rows[0][0] == expected
    # (1 + x1)·N equals det M
    assert expected * P("1 + x1") == P("x1 + x1^2 - x2^2")
    assert verify_local_equivalence(red.left, red.original, red.block(), red.right)


def test_already_reduced():
    M = PM("[[x1, 0], [0, x2]]")
    red = local_reduce(M, ORIGIN)
    assert red.p == 2
    assert red.N == LocalMatrix(M.rows, red.N.center)
    assert red.left == LocalMatrix.identity(2, red.N.center)
    assert red.right == LocalMatrix.identity(2, red.N.center)


def test_point_off_curve():
    M = PM("[[x0, x1], [x1, x2]]")
    assert local_reduce(M, ProjectivePoint((1, 2, 3))).p == 0
    # (1:1:1) is on the conic
    assert local_reduce(M, ProjectivePoint((1, 1, 1))).p == 1


def test_zero_determinant():
    with pytest.raises(ZeroDeterminant):
        local_reduce(PM("[[x0, x1], [x0, x1]]"), ORIGIN)


def test_verify_examples():
    c = ORIGIN
    M = LocalMatrix.from_poly(PM("[[x0, x1], [x1, x2]]"), c)
    I = LocalMatrix.identity(2, c)
    assert verify_local_equivalence(I, M, M, I)
    singular = LocalMatrix.from_poly(PM("[[x1, 0], [0, 1]]"), c)
    assert not verify_local_equivalence(singular, M, singular @ M, I)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(0, 0, 0), (1, 0, 0), (0, 1, -1), (1, 2, 3)]))
def test_reduction_properties(seed, center):
    rng = random.Random(seed)
    M = random_matrix(rng, rng.randint(1, 3), 3)
    if M.size > 1:
        # force a singular value at the center now and then
        shift = M.evaluate(list(center))[0][0]
        M = PolyMatrix([[M.rows[0][0] - shift] + list(M.rows[0][1:])] + [list(r) for r in M.rows[1:]], 3)
    if determinant(M).is_zero():
        return
    red = local_reduce(M, center)
    assert red.p == corank_at(M, center)
    assert all(v == 0 for row in red.N.value_at_center() for v in row)
    assert verify_local_equivalence(red.left, red.original, red.block(), red.right)
    lhs = local_determinant(red.left) * local_determinant(red.original) * local_determinant(red.right)
    assert lhs == local_determinant(red.block())
