from fractions import Fraction

import pytest
from flint import fmpq, fmpz
from hypothesis import given, settings, strategies as st

from ellshift import solver
from ellshift.curve import Curve
from ellshift.curvefunc import CurveFunction, CurvePoly, divisor_of
from ellshift.divisors import Divisor, elliptic_sum
from ellshift.errors import CombinationOverflow
from ellshift.exactfield import NumberField
from ellshift.theta import Solution, ThetaFactor, solution_ratio

from conftest import CORPUS_NAMES

K2 = NumberField([-2, 0, 1])
QQ = NumberField([0, 1])
E = Curve(QQ, 0, 15)
D = E.point(1, 4)
P = E.point(109, 1138)

entries = st.tuples(st.integers(-3, 3), st.integers(-2, 2)).map(lambda ab: K2([ab[0], ab[1]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_and_rank(nrows, ncols, data):
    rows = [[data.draw(entries) for _ in range(ncols)] for _ in range(nrows)]
    basis = solver.kernel(rows, ncols, K2)
    for vec in basis:
        for r in rows:
            assert sum((a * b for a, b in zip(r, vec)), K2.zero()).is_zero()
    assert solver.rank(rows, ncols) + len(basis) == ncols


@settings(max_examples=60, deadline=None)
@given(st.integers(-10 ** 9, 10 ** 9), st.integers(1, 10 ** 9))
def test_rational_reconstruction(num, den):
    # both parts stay under sqrt(N/2) for the default 62-bit prime
    q = Fraction(num, den)
    N = next(solver._primes())
    a = int(q.numerator) * pow(int(q.denominator), -1, N) % N
    assert solver._ratrecon(a, N) == fmpq(q.numerator, q.denominator)


def test_primes_descend():
    gen = solver._primes(100)
    assert [next(gen) for _ in range(4)] == [97, 89, 83, 79]
    assert all(fmpz(p).is_prime() for p in (next(gen) for _ in range(5)))


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3), st.integers(1, 2))
def test_principal_shift_cancels_sum(k, m):
    # the divisor m*(kD + P) - m*P has elliptic sum (m k) D
    a, b = D * k + P, P
    Dv = Divisor(E, {a: m}) + Divisor(E, {b: -m})
    N = m * k
    out = solver._principal_shift(Dv, N, D, [b, a])
    assert out.degree() == Dv.degree()
    assert elliptic_sum(out).is_zero


def test_principal_shift_without_points():
    assert solver._principal_shift(Divisor(E, {}), 0, D).mults == {}
    assert solver._principal_shift(Divisor(E, {E.O: 1}), 2, D) is None


@pytest.mark.parametrize("pts", [[D], [D, -D], [D, D * 2], [D, P, D * 3]])
def test_min_degree_vanishing_poly(pts):
    Dv = Divisor(E, {p: 1 for p in pts})
    Q = solver.min_degree_vanishing_poly(Dv)
    div = divisor_of(Q)
    assert all(div[p] >= 1 for p in pts)
    # minimality: one zero beyond the divisor unless its sum already vanishes
    extra = 0 if elliptic_sum(Dv).is_zero else 1
    assert Q.degree() == len(pts) + extra


def test_monomials_by_weight():
    assert solver._monomials(5) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]


def test_independence_filter_drops_scalar_copies():
    U = CurvePoly.u(E)
    f = CurveFunction.from_poly(U - 1)
    g = CurveFunction.from_poly(U + 2)
    th = ThetaFactor(3, D * 2, D)
    sols = [Solution(f), Solution(f.scale(QQ(5))), Solution(g), Solution(f + g),
            Solution(f, theta=th)]
    out = solver.independence_filter(sols)
    assert len(out) == 3
    assert sum(1 for s in out if s.theta is not None and not s.theta.is_trivial()) == 1


def test_combination_cap(solved):
    _, _, eq = solved.eq("hyper_ex2")
    with pytest.raises(CombinationOverflow):
        solver.hyperexponential_search(eq, max_combinations=10)


def _ratios(sols, delta):
    return [solution_ratio(s, 1, delta) for s in sols]


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_classes_are_nested(solved, name):
    _, delta, eq = solved.eq(name)
    rat = solved(name, "rational")
    pse = solved(name, "pseudo")
    hyp = solved(name, "hyper").solutions
    pr, hr = _ratios(pse, delta), _ratios(hyp, delta)
    assert all(r in pr for r in _ratios(rat, delta))
    assert all(r in hr for r in pr)
    assert len(rat) <= len(pse) <= len(hyp)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_every_solution_verifies(solved, name):
    from ellshift.eqcore import verify_solution
    _, _, eq = solved.eq(name)
    for kind in ("rational", "pseudo"):
        for s in solved(name, kind):
            assert verify_solution(eq, s)
    for s in solved(name, "hyper").solutions:
        assert verify_solution(eq, s)
