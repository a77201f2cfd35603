import pytest
from hypothesis import given, settings, strategies as st

from ellshift.curve import Curve
from ellshift.curvefunc import (CurveFunction, CurvePoly, divisor_of, dominant_coefficient,
                                evaluate, local_expansion, translate_by_point,
                                translate_pullback, valuation_at)
from ellshift.divisors import Divisor, line_function
from ellshift.exactfield import NumberField

QQ = NumberField([0, 1])
E = Curve(QQ, 0, 15)
D = E.point(1, 4)
P = E.point(109, 1138)
u = CurvePoly.u(E)
v = CurvePoly.v(E)
one = CurvePoly.constant(E, 1)


def F(p):
    return CurveFunction.from_poly(p)


FUNCS = [F(u - 1), F(v) / F(u + 2), F(v - 4 * u) / F(u * u - 3), F(u * v + 7) / F(u - 1),
         F(2 * u + v - 5)]
funcs = st.sampled_from(FUNCS)
shifts = st.integers(-2, 2)
pts = st.tuples(st.integers(-3, 3), st.integers(-2, 2)).map(lambda ab: D * ab[0] + P * ab[1])


def test_curve_relation_is_reduced():
    assert v * v == u ** 3 + 15
    assert (v * v - u ** 3).degree() == 0


def test_normal_form_cancels():
    f = F(v) / F(u)
    assert f * F(u) == F(v)
    assert (F(u - 1) * F(u + 1)) / F(u - 1) == F(u + 1)


def test_degree_is_pole_order_at_O():
    assert u.degree() == 2
    assert v.degree() == 3
    assert (u * v).degree() == 5
    assert valuation_at(u * v, E.O) == -5


def test_vertical_line_divisor():
    expect = Divisor(E, {D: 1, -D: 1, E.O: -2})
    assert divisor_of(u - 1) == expect


def test_tangent_line_divisor():
    g = line_function(D, D)
    assert divisor_of(g) == Divisor(E, {D: 2, D + D: -1, E.O: -1})
    assert valuation_at(g, D) == 2


def test_dominant_coefficients():
    # uniformizer u/v: u ~ s^-2, v ~ s^-3
    assert dominant_coefficient(u) == QQ(1)
    assert dominant_coefficient(v) == QQ(1)
    assert dominant_coefficient(3 * u * v - u) == QQ(3)


def test_evaluate_matches_coordinates():
    f = F(v - 4 * u) / F(u * u - 3)
    p = D * 3
    assert evaluate(f, p) == (p.y - 4 * p.x) / (p.x * p.x - 3)


def test_local_expansion_leading_term():
    e = local_expansion(F(u - 1), D, terms=4)
    assert e.order == 1
    e = local_expansion(F(u), E.O, terms=4)
    assert e.order == -2
    assert e.coeffs[0] == QQ(1)


@settings(max_examples=40, deadline=None)
@given(funcs, shifts, shifts)
def test_pullback_composition(f, m, n):
    lhs = translate_pullback(translate_pullback(f, n, D), m, D)
    assert lhs == translate_pullback(f, m + n, D)


@settings(max_examples=40, deadline=None)
@given(funcs, shifts, pts)
def test_pullback_evaluates_at_translate(f, n, p):
    g = translate_pullback(f, n, D)
    q = p + D * n
    assert evaluate(g, p) == evaluate(f, q)


def test_pullback_by_zero_is_identity():
    for f in FUNCS:
        assert translate_pullback(f, 0, D) == f


def test_pullback_moves_divisor():
    # u(p + D) - 1 vanishes at p = O and p = -2D, with a double pole at p = -D
    g = translate_by_point(F(u - 1), D)
    assert divisor_of(g) == Divisor(E, {E.O: 1, -(D + D): 1, -D: -2})


def test_constant_with_irrational_value():
    K = NumberField([-15, 0, 1])
    C = Curve(K, 0, 15)
    a = K.gen()
    U, V = CurvePoly.u(C), CurvePoly.v(C)
    n1 = V + a * U + 4 * U - a
    q = F(n1) / F((4 - a) * n1)
    assert q.is_constant()
    assert q == CurveFunction.constant(C, (4 - a).inverse())
