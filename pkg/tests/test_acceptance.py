"""End-to-end acceptance checks, one test per criterion.

Each test records PASS or FAIL in RESULTS; conftest prints the table at the end
of the run.
"""

import contextlib
import io
import json
import random
import time

import pytest

from ellshift import solver
from ellshift.cli import main
from ellshift.curve import Curve
from ellshift.curvefunc import CurveFunction, CurvePoly, divisor_of
from ellshift.divisors import Divisor
from ellshift.eqcore import singularities, universal_divisor, verify_solution
from ellshift.errors import TorsionShift
from ellshift.exactfield import NumberField
from ellshift.serialization import parse_input, parse_solution
from ellshift.theta import Solution, ThetaFactor, solution_ratio, theta_divisor, theta_ratio

from conftest import CORPUS, load

RESULTS = {}

DESCRIPTIONS = {
    1: "rational example 1: basis, singularities, universal divisor, < 30 s",
    2: "rational example 2: span{(u-6v+23)/(u-1)}, < 60 s",
    3: "pseudo example 1: Theta pole (1/4, 31/8), lambda 1, universal divisor",
    4: "pseudo example 2: basis {1, Theta_1,(1/4,31/8)}",
    5: "hyper example 1: 12 combinations, 2 realizable, dimension 1",
    6: "hyper example 2: 45 combinations, 3 realizable, lambda +-549/32 at O",
    7: "Theta ratio closed form at 10 random points",
    8: "property suites",
    9: "negative controls",
}


@contextlib.contextmanager
def criterion(n):
    RESULTS[n] = "FAIL"
    yield
    RESULTS[n] = "PASS"


def cli_solve(name, kind):
    buf = io.StringIO()
    t0 = time.perf_counter()
    code = main(["solve", "--class", kind, "--verify", "--input", str(CORPUS / ("%s.json" % name))],
                out=buf)
    return code, json.loads(buf.getvalue()), time.perf_counter() - t0


def proportional(f, g):
    return (f / g).is_constant()


def test_criterion_1():
    with criterion(1):
        code, doc, secs = cli_solve("rational_ex1", "rational")
        assert code == 0 and secs < 30
        C, delta, eq = load("rational_ex1")
        s = C.field.gen()
        sols = [parse_solution(C, delta, d) for d in doc["solutions"]]
        assert len(sols) == 1 and all(d["verified"] for d in doc["solutions"])
        U = CurvePoly.u(C)
        f = sols[0].rational_part
        # cross-multiplication: f * (u - 2 + 3 sqrt2) = c (u - 1) for a constant c
        lhs = f * CurveFunction.from_poly(U - 2 + 3 * s)
        assert proportional(lhs, CurveFunction.from_poly(U - 1))
        expect = {
            (C.point((2365 * s + 2418) / 529, -(142211 * s + 238865) / 12167), -1),
            (C.point("225361/33489", "109585196/6128487"), 1),
            (C.point(1, 4), -1),
            (C.point((17684189 * s + 25350354) / 305809,
                     (126593080067 * s + 178345046065) / -169112377), -1),
            (C.point(2 - 3 * s, 5 * s - 9), 1),
            (C.point(2 - 3 * s, 9 - 5 * s), 1),
        }
        assert {(r.point, r.multiplicity) for r in singularities(eq)} == expect
        ud = universal_divisor(eq).divisor.affine_part()
        assert ud == Divisor(C, {C.point(2 - 3 * s, 9 - 5 * s): 1, C.point(2 - 3 * s, 5 * s - 9): 1})


def test_criterion_2():
    with criterion(2):
        code, doc, secs = cli_solve("rational_ex2", "rational")
        assert code == 0 and secs < 60
        C, delta, eq = load("rational_ex2")
        assert C.field.m.degree() == 2 and C.field.m[0] == 4553557895
        sols = [parse_solution(C, delta, d) for d in doc["solutions"]]
        assert len(sols) == 1 and doc["solutions"][0]["verified"]
        U, V = CurvePoly.u(C), CurvePoly.v(C)
        g = CurveFunction.from_poly(U - 6 * V + 23) / CurveFunction.from_poly(U - 1)
        assert proportional(sols[0].rational_part, g)


def test_criterion_3(solved):
    with criterion(3):
        C, delta, eq = solved.eq("pseudo_ex1")
        K = C.field
        s = K.gen()
        sols = solved("pseudo_ex1", "pseudo")
        assert len(sols) == 1
        sol = sols[0]
        pole = C.point("1/4", "31/8")
        assert sol.pole == pole and sol.theta.lambda_chord == K(1)
        assert verify_solution(eq, sol)
        U = CurvePoly.u(C)
        ref_f = (CurveFunction.from_poly(U - K("1/4"))
                 / CurveFunction.from_poly(U * U + 3 * s * U - K("9/4") * U - K("3/4") * s + K("1/2")))
        ref = Solution(ref_f, ThetaFactor(sol.theta.lam, pole, delta))
        assert proportional(sol.rational_part, ref_f)
        assert verify_solution(eq, ref)
        assert divisor_of(solution_ratio(sol, 1, delta)) == divisor_of(solution_ratio(ref, 1, delta))
        ud = universal_divisor(eq).divisor
        assert ud == Divisor(C, {C.point(2 - 3 * s, 9 - 5 * s): 1, C.point(2 - 3 * s, 5 * s - 9): 1,
                                 pole: 1})


def test_criterion_4(solved):
    with criterion(4):
        C, delta, eq = solved.eq("pseudo_ex2")
        assert C.field.m.degree() == 2 and C.field.m[0] == 3
        sols = solved("pseudo_ex2", "pseudo")
        assert len(sols) == 2
        const = [x for x in sols if x.theta is None and x.rational_part.is_constant()]
        theta = [x for x in sols if x.theta is not None]
        assert len(const) == 1 and len(theta) == 1
        th = theta[0]
        assert th.pole == C.point("1/4", "31/8") and th.theta.lambda_chord == C.field(1)
        assert th.rational_part.is_constant()
        assert all(verify_solution(eq, x) for x in sols)


def test_criterion_5(solved):
    with criterion(5):
        _, _, eq = solved.eq("hyper_ex1")
        rep = solved("hyper_ex1", "hyper")
        assert (rep.combinations, rep.realizable, len(rep.solutions)) == (12, 2, 1)
        assert all(verify_solution(eq, x) for x in rep.solutions)


def test_criterion_6(solved):
    with criterion(6):
        C, _, eq = solved.eq("hyper_ex2")
        rep = solved("hyper_ex2", "hyper")
        assert (rep.combinations, rep.realizable, len(rep.solutions)) == (45, 3, 2)
        lams = {x.lam for x in rep.solutions}
        assert lams == {C.field("549/32"), C.field("-549/32")}
        assert all(x.pole.is_zero for x in rep.solutions)
        assert all(verify_solution(eq, x) for x in rep.solutions)


def _closed_form(pole, lam):
    C = pole.curve
    u, v = CurvePoly.u(C), CurvePoly.v(C)
    x, y = pole.x, pole.y
    num = (u - 1) * y - (v + 4) * x + 4 * u + v
    den = (y + 4) * (-8 * y + (u - 1) * x * x - (2 * u + 1) * x + u - 30)
    return (CurveFunction.from_poly(num) / CurveFunction.from_poly(den)).scale(lam * (x - 1) ** 2)


def test_criterion_7():
    with criterion(7):
        rng = random.Random(20240607)
        QQ = NumberField([0, 1])
        E = Curve(QQ, 0, 15)
        D, P = E.point(1, 4), E.point(109, 1138)
        K = NumberField([-15, 0, 1])
        E15 = Curve(K, 0, 15)
        D15, T3 = E15.point(1, 4), E15.point(0, K.gen())
        checked = 0
        while checked < 10:
            if rng.random() < 0.5:
                delta, pole = D, D * rng.randint(-3, 3) + P * rng.randint(-1, 1)
            else:
                delta, pole = D15, D15 * rng.randint(-3, 3) + T3 * rng.randint(0, 2)
            if pole.is_zero or pole == delta or pole == -delta:
                continue
            lam = delta.curve.field(rng.randint(1, 9))
            q = theta_ratio(lam, pole, delta) / _closed_form(pole, lam)
            assert q.is_constant()
            assert divisor_of(theta_ratio(lam, pole, delta)) == theta_divisor(pole, delta)
            checked += 1


def test_criterion_8(solved):
    import test_curve
    import test_divisors
    import test_eqcore
    import test_heights
    import test_curvefunc
    import test_solver
    from conftest import CORPUS_NAMES
    with criterion(8):
        test_curve.test_group_axioms()
        test_curve.test_three_torsion_point()
        for base in (test_heights.D15, test_heights.D15 + test_heights.T3):
            for m in (2, 3, 4):
                test_heights.test_quadratic_scaling(base, m)
        test_heights.test_parallelogram_law()
        test_divisors.test_realize_roundtrip()
        test_curvefunc.test_pullback_composition()
        test_eqcore.test_universal_divisor_matches_orbit_walk()
        test_eqcore.test_twist_keeps_singularities(solved)
        for name in CORPUS_NAMES:
            test_solver.test_classes_are_nested(solved, name)


def test_criterion_9(solved):
    with criterion(9):
        C, delta, eq = solved.eq("negative_const")
        assert solved("negative_const", "rational") == []
        sols = solved("negative_const", "pseudo")
        assert len(sols) == 1
        th = sols[0].theta
        assert th is not None and th.pole.is_zero and th.lam == C.field(2)
        assert sols[0].rational_part.is_constant()
        const = lambda c: [{"du": 0, "dv": 0, "coeff": [c, "0"]}]
        doc = {"field": {"minpoly": ["-15", "0", "1"]},
               "curve": {"a": ["0", "0"], "b": ["15", "0"]},
               "delta": [["0", "0"], ["0", "1"]],
               "coeffs": [const("-2"), const("1")]}
        with pytest.raises(TorsionShift):
            parse_input(doc)
