from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from sullivan.linalg import nullspace, rank, rref

entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    return [draw(st.lists(entries, min_size=c, max_size=c)) for _ in range(r)], c


@given(matrices())
def test_row_and_column_rank_agree(mc):
    M, c = mc
    assert rank(M, c, "row") == rank(M, c, "column")


@given(matrices())
def test_rank_matches_sympy(mc):
    M, c = mc
    assert rank(M, c) == sympy.Matrix(M).rank()


@given(matrices())
def test_nullspace_is_kernel_of_full_dimension(mc):
    M, c = mc
    N = nullspace(M, c)
    assert len(N) == c - rank(M, c)
    for v in N:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


def test_rref_pivots():
    R, piv = rref([[2, 4], [1, 2]], 2)
    assert piv == [0]
    assert R == [[Fraction(1), Fraction(2)]]


def test_rank_edge_cases():
    assert rank([], 3) == 0
    with pytest.raises(ValueError):
        rank([[1]], 1, "diagonal")
