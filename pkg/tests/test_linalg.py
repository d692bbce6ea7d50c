import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from clustertilt import linalg as la
from clustertilt.linalg import Field

QQ = Field()
F5 = Field(5)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_r=5, max_c=5):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert la.rank(QQ.matrix(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_null_space_is_kernel(rows):
    m = QQ.matrix(rows)
    ns = la.null_space(m)
    r, c = la.shape(m)
    assert la.shape(ns)[0] == c - la.rank(m)
    for k in range(la.shape(ns)[0]):
        v = [ns[k, j] for j in range(c)]
        for i in range(r):
            assert sum((m[i, j] * v[j] for j in range(c)), QQ(0)) == 0


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_left_kernel_kills_rows(rows):
    m = QQ.matrix(rows)
    lk = la.left_kernel(m)
    r, c = la.shape(m)
    assert la.shape(lk)[0] == r - la.rank(m)
    assert la.is_zero(lk * m) if la.shape(lk)[0] else True


def test_rank_over_fp_differs_from_q():
    rows = [[1, 2], [3, 1]]           # determinant -5
    assert la.rank(QQ.matrix(rows)) == 2
    assert la.rank(F5.matrix(rows)) == 1


def test_field_elements_exact():
    assert QQ("1/3") * 3 == 1
    assert F5("1/2") * 2 == 1
    assert F5.fmt(F5(7)) == "2"


def test_not_prime_rejected():
    with pytest.raises(ValueError):
        Field(9)


def test_solve_left_round_trip():
    rng = random.Random(1)
    a = QQ.matrix([[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)])
    x = QQ.matrix([[1, 2, -1]])
    b = x * a
    y = la.solve_left(a, b)
    assert y is not None and y * a == b
