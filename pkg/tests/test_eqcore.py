import pytest
from hypothesis import given, settings, strategies as st

from ellshift.curve import Curve
from ellshift.curvefunc import CurveFunction, CurvePoly
from ellshift.divisors import Divisor, line_function, vertical
from ellshift.eqcore import (EllipticDifferenceEquation, singular_orbits, singularities,
                             transform_by_hyperexp, universal_divisor,
                             universal_divisor_bruteforce, verify_solution)
from ellshift.errors import SchemaError, TorsionShift
from ellshift.exactfield import NumberField
from ellshift.theta import HyperexpFactor, Solution, ThetaFactor

QQ = NumberField([0, 1])
E = Curve(QQ, 0, 15)
D = E.point(1, 4)
u = CurvePoly.u(E)
one = CurvePoly.constant(E, 1)


def as_curve_poly(curve, upoly):
    U = CurvePoly.u(curve)
    acc = CurvePoly.constant(curve, 0)
    for c in reversed(upoly.coeffs()):
        acc = acc * U + CurvePoly.constant(curve, c)
    return acc


def test_rational_ex1_singularities(solved):
    C, d, eq = solved.eq("rational_ex1")
    K = C.field
    s = K.gen()
    got = {(r.point, r.multiplicity) for r in singularities(eq)}
    expect = {
        (C.point((2365 * s + 2418) / 529, -(142211 * s + 238865) / 12167), -1),
        (C.point("225361/33489", "109585196/6128487"), 1),
        (C.point(1, 4), -1),
        (C.point((17684189 * s + 25350354) / 305809,
                 (126593080067 * s + 178345046065) / -169112377), -1),
        (C.point(2 - 3 * s, 5 * s - 9), 1),
        (C.point(2 - 3 * s, 9 - 5 * s), 1),
    }
    assert got == expect


def test_rational_ex1_universal_divisor(solved):
    C, d, eq = solved.eq("rational_ex1")
    s = C.field.gen()
    ud = universal_divisor(eq).divisor
    assert ud == Divisor(C, {C.point(2 - 3 * s, 9 - 5 * s): 1, C.point(2 - 3 * s, 5 * s - 9): 1})


def test_pseudo_universal_divisors(solved):
    C, d, eq = solved.eq("pseudo_ex1")
    assert C.point("1/4", "31/8") in universal_divisor(eq).divisor.support()
    assert len(universal_divisor(eq).divisor.support()) == 3
    C, d, eq = solved.eq("pseudo_ex2")
    assert universal_divisor(eq).divisor == Divisor(C, {C.point("1/4", "31/8"): 1})


def test_orbits_group_points_on_one_delta_line(solved):
    C, d, eq = solved.eq("rational_ex1")
    profs = singular_orbits(eq)
    for prof in profs:
        for p, i in prof.offsets.items():
            assert prof.point_at(i, d) == p


# constructed equations: a_l and a_0 are products of lines through small multiples
# of delta, so every singularity sits on the orbit of O
MULTS = [D * k for k in (-2, -1, 1, 2, 3)]
factor = st.one_of(
    st.sampled_from(MULTS).map(lambda p: vertical(p).num),
    st.tuples(st.sampled_from(MULTS), st.sampled_from(MULTS))
      .filter(lambda tp: not (tp[0] + tp[1]).is_zero)
      .map(lambda tp: line_function(*tp).num),
)


def product(fs):
    acc = one
    for f in fs:
        acc = acc * f
    return acc


@settings(max_examples=15, deadline=None)
@given(st.lists(factor, min_size=1, max_size=3), st.lists(factor, min_size=1, max_size=3),
       st.integers(1, 2), st.integers(-3, 3))
def test_universal_divisor_matches_orbit_walk(fl, f0, order, mid):
    coeffs = [product(f0)] + [one * mid] * (order - 1) + [product(fl)]
    eq = EllipticDifferenceEquation(E, D, coeffs, check_torsion=False)
    recs = singularities(eq)
    fast = universal_divisor(eq).divisor
    slow = universal_divisor_bruteforce(eq, [r.point for r in recs] or [E.O], radius=12)
    assert fast == slow


def test_twist_keeps_singularities(solved):
    C, d, eq = solved.eq("pseudo_ex1")
    tw = eq.twisted(C.field([3, 1]))
    assert singularities(tw) == singularities(eq)
    assert universal_divisor(tw).divisor == universal_divisor(eq).divisor


def test_bad_equations_rejected():
    with pytest.raises(SchemaError):
        EllipticDifferenceEquation(E, D, [one])
    with pytest.raises(SchemaError):
        EllipticDifferenceEquation(E, D, [one, CurvePoly.constant(E, 0)])
    K = NumberField([-15, 0, 1])
    C = Curve(K, 0, 15)
    with pytest.raises(TorsionShift):
        EllipticDifferenceEquation(C, C.point(0, K.gen()), [CurvePoly.constant(C, 1)] * 2)


def test_verify_known_rational_solution(solved):
    C, d, eq = solved.eq("rational_ex1")
    s = C.field.gen()
    U = CurvePoly.u(C)
    f = CurveFunction.from_poly(U - 1) / CurveFunction.from_poly(U - 2 + 3 * s)
    assert verify_solution(eq, Solution(f))
    assert not verify_solution(eq, Solution(CurveFunction.from_poly(U - 1)))


def test_transform_by_hyperexp_maps_solutions():
    # f(p + d) = 2 f(p) solves f(p+d) - 2 f(p) = 0; after dividing out the factor 2^n
    # the constant 1 solves the transformed equation
    eq = EllipticDifferenceEquation(E, D, [one * -2, one], check_torsion=False)
    R = CurveFunction.constant(E, 2)
    t = transform_by_hyperexp(eq, R)
    assert verify_solution(t, Solution(CurveFunction.constant(E, 1)))
    sol = Solution(CurveFunction.constant(E, 1), hyper=HyperexpFactor(R))
    assert verify_solution(eq, sol)


def test_theta_solution_of_first_order_equation():
    pole = D * 3
    th = ThetaFactor(5, pole, D)
    R = th.ratio
    eq = EllipticDifferenceEquation(E, D, [-R.num, as_curve_poly(E, R.den)], check_torsion=False)
    assert verify_solution(eq, Solution(CurveFunction.constant(E, 1), theta=th))
    assert not verify_solution(eq, Solution(CurveFunction.constant(E, 1), theta=ThetaFactor(4, pole, D)))
