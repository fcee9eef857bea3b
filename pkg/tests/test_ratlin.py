from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kstab.ratlin import (
    NotSymmetric,
    SingularMatrix,
    _det,
    as_fraction,
    bilinear,
    is_negative_definite,
    ldl_pivots,
    leading_minors,
    matvec,
    solve,
    solve_many,
    sym_matrix,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@st.composite
def square(draw, n=None):
    n = n or draw(st.integers(1, 5))
    return [[draw(small) for _ in range(n)] for _ in range(n)]


@st.composite
def symmetric(draw):
    n = draw(st.integers(1, 5))
    M = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = draw(small)
    return M


def test_as_fraction_refuses_floats_and_bools():
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction(7) == F(7)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_sym_matrix_rejects_asymmetry():
    with pytest.raises(NotSymmetric):
        sym_matrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        sym_matrix([[1, 2], [2]])


def test_solve_known_system():
    M = sym_matrix([["-2/3", 1], [1, -4]])
    x = solve(M, [1, 0])
    assert matvec(M, x) == (F(1), F(0))
    assert x == (F(-12, 5), F(-3, 5))


def test_solve_needs_pivoting():
    # zero in the top-left corner
    assert solve([[0, 1], [1, 0]], [2, 3]) == (F(3), F(2))


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrix):
        solve([[1, 2], [2, 4]], [1, 1])


def test_definiteness_examples():
    assert is_negative_definite([[F(-2, 3)]])
    assert is_negative_definite(sym_matrix([[-2, 1], [1, -2]]))
    assert not is_negative_definite(sym_matrix([[-1, 1], [1, -1]]))  # semidefinite
    assert not is_negative_definite(sym_matrix([[-1, 2], [2, -1]]))
    assert not is_negative_definite([[F(0)]])
    assert is_negative_definite([])


def test_minors_of_lemma_configuration():
    # three lines after the blow-up of the degree 9 surface, plus E
    M = sym_matrix([
        ["-2/3", 0, 0, 1],
        [0, "-2/3", 0, 1],
        [0, 0, "-2/3", 1],
        [1, 1, 1, -4],
    ])
    assert not is_negative_definite(M)
    assert is_negative_definite([row[:3] for row in M[:3]])
    assert leading_minors(M)[:3] == (F(-2, 3), F(4, 9), F(-8, 27))


@settings(max_examples=80, deadline=None)
@given(square(), st.data())
def test_solve_roundtrip(M, data):
    n = len(M)
    b = [data.draw(small) for _ in range(n)]
    try:
        x = solve(M, b)
    except SingularMatrix:
        assert _det(M) == 0
        return
    assert list(matvec(M, x)) == b


@settings(max_examples=60, deadline=None)
@given(square(), st.data())
def test_solve_many_matches_solve(M, data):
    n = len(M)
    rhs = [[data.draw(small) for _ in range(n)] for _ in range(3)]
    try:
        many = solve_many(M, rhs)
    except SingularMatrix:
        return
    assert many == tuple(solve(M, b) for b in rhs)


@settings(max_examples=80, deadline=None)
@given(symmetric())
def test_ldl_pivots_match_minor_ratios(M):
    pivots = ldl_pivots(M)
    minors = leading_minors(M)
    prev = F(1)
    for k, p in enumerate(pivots):
        assert p == minors[k] / prev
        prev = minors[k]


@settings(max_examples=80, deadline=None)
@given(symmetric())
def test_negative_definite_iff_alternating_minors(M):
    minors = leading_minors(M)
    expected = all((m < 0) if k % 2 == 0 else (m > 0) for k, m in enumerate(minors))
    assert is_negative_definite(M) == expected


@settings(max_examples=60, deadline=None)
@given(symmetric(), st.data())
def test_negative_definite_has_negative_quadratic_form(M, data):
    if not is_negative_definite(M):
        return
    v = [data.draw(small) for _ in range(len(M))]
    if any(v):
        assert bilinear(M, v, v) < 0
