from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qcv.rational import (
    Q,
    RationalMatrix,
    RationalPoly,
    SingularMatrix,
    determinant,
    eval_poly,
    integer_roots,
    rational_roots,
    render,
    root_bound,
    solve_linear,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)


def matrices(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n).map(RationalMatrix)


def test_Q_parses_and_refuses_floats():
    assert Q("3/4") == Fraction(3, 4)
    assert Q(5) == 5
    with pytest.raises(TypeError):
        Q(0.5)


def test_render():
    assert render(Fraction(6, 3)) == "2"
    assert render(Fraction(-7, 4)) == "-7/4"


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(matrices(3), matrices(3))
def test_determinant_is_multiplicative(a, b):
    assert determinant(a @ b) == determinant(a) * determinant(b)


@given(matrices(4), st.lists(rationals, min_size=4, max_size=4))
def test_solve_is_exact(m, rhs):
    assume(determinant(m) != 0)
    x = solve_linear(m, rhs)
    assert m.apply(x) == rhs


def test_singular_system_raises():
    m = RationalMatrix([[1, 2], [2, 4]])
    assert determinant(m) == 0
    with pytest.raises(SingularMatrix):
        solve_linear(m, [1, 1])


def test_identity_and_shape():
    eye = RationalMatrix.identity(3)
    assert determinant(eye) == 1
    assert eye.shape == (3, 3)
    with pytest.raises(ValueError):
        determinant(RationalMatrix([[1, 2, 3], [4, 5, 6]]))


def test_poly_arithmetic_and_roots():
    t = RationalPoly.var()
    p = (t - 4) * (t - 6) * (2 * t + 1)
    assert sorted(rational_roots(p)) == [Fraction(-1, 2), 4, 6]
    assert integer_roots(p) == [4, 6]
    assert eval_poly(p, 5) == -11
    assert p.derivative() == 6 * t**2 - 38 * t + 38
    assert all(abs(r) <= root_bound(p) for r in rational_roots(p))


@given(st.lists(rationals, min_size=1, max_size=5), rationals)
def test_poly_evaluation_matches_horner(coeffs, at):
    p = RationalPoly(coeffs)
    assert p(at) == sum(c * at**i for i, c in enumerate(coeffs))
