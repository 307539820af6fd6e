from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbik import linalg

small = st.integers(min_value=-4, max_value=4)


def mats(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    )


def test_matrix_accepts_strings_and_fractions():
    a = linalg.matrix([["1/2", Fraction(3, 4)], [2, "-5"]])
    assert linalg.to_rows(a) == [[Fraction(1, 2), Fraction(3, 4)], [2, -5]]


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        linalg.matrix([[1, 2], [3]])


@settings(max_examples=60, deadline=None)
@given(mats())
def test_rank_nullity(rows):
    a = linalg.matrix(rows)
    ker = linalg.nullspace(a)
    assert linalg.rank(a) + ker.ncols() == a.ncols()
    assert linalg.is_zero(a * ker)


@settings(max_examples=60, deadline=None)
@given(mats())
def test_column_space_spans_image(rows):
    a = linalg.matrix(rows)
    b = linalg.column_space(a)
    assert b.ncols() == linalg.rank(a)
    if b.ncols():
        # every column of a is a combination of b
        linalg.solve_left(b, a)


def test_rref_pivots():
    r, piv = linalg.rref(linalg.matrix([[0, 2, 4], [0, 1, 3]]))
    assert piv == [1, 2]
    assert linalg.to_rows(r)[0][:2] == [0, 1]


def test_solve_left_exact_and_errors():
    b = linalg.matrix([[1, 0], [0, 1], [1, 1]])
    x = linalg.solve_left(b, linalg.matrix([[2], [3], [5]]))
    assert linalg.to_rows(x) == [[2], [3]]
    with pytest.raises(ValueError, match="inconsistent"):
        linalg.solve_left(b, linalg.matrix([[1], [1], [0]]))
    with pytest.raises(ValueError, match="full column rank"):
        linalg.solve_left(linalg.matrix([[1, 2], [2, 4]]), linalg.matrix([[1], [2]]))


def test_stacking_and_block_diag():
    a = linalg.identity(2)
    b = linalg.matrix([[5]])
    d = linalg.block_diag([a, b])
    assert (d.nrows(), d.ncols()) == (3, 3)
    assert linalg.to_rows(d)[2] == [0, 0, 5]
    assert linalg.hstack([a, a]).ncols() == 4
    assert linalg.vstack([a, a]).nrows() == 4


def test_poly_eval_minpoly_annihilates():
    a = linalg.matrix([[0, -1], [1, 0]])
    assert linalg.is_zero(linalg.poly_eval(a.minpoly(), a))
