"""Rational, pseudo-rational and hyperexponential solutions.

Every solver builds an ansatz f = P/Q * Theta where Q vanishes on the universal
divisor and P runs over the monomials u^i v^j (j <= 1) of weight 2i + 3j at most
a degree bound. Substituting into the equation and clearing denominators gives a
linear system in the coefficients of P whose entries are polynomials in the Theta
parameters.

A Theta pole other than O and delta is encoded by the line through -delta of slope
M. It meets the curve again at the pole and at a third point with abscissa X, and
the Theta ratio is lambda * line / (u - X). The pair (M, X) lies on the curve
C'(M, X) = 0, so all matrix entries are polynomials in (lambda, M, X).
"""

import itertools
import random
from dataclasses import dataclass, field as dc_field

from flint import fmpq, fmpq_poly, fmpz, nmod_mpoly_ctx, nmod_poly, fmpq_mpoly_ctx

from .curvefunc import CurveFunction, CurvePoly, translation
from .divisors import Divisor, elliptic_sum, realize
from .eqcore import (rational_singularities, singular_orbits, transform_by_hyperexp,
                     universal_divisor, verify_solution)
from .errors import (CombinationOverflow, ExtensionRequired, NotPrincipal,
                     PositiveDimensionalVariety)
from .exactfield import FieldElement, UniPoly, _mpoly_to_qpoly
from .heights import HeightContext, multiple_of_delta, regulator_norm_bound
from .theta import HyperexpFactor, Solution, ThetaFactor

DEFAULT_MAX_COMBINATIONS = 10 ** 5
_PROJECTIONS = 3


# ---------------------------------------------------------------------------
# exact linear algebra over K


def _rref(rows, ncols):
    """Row echelon form in place; returns the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def kernel(rows, ncols, field):
    """Basis of the right kernel of a matrix over K."""
    rows = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero() for _ in range(ncols)]
        vec[fc] = field.one()
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def rank(rows, ncols):
    rows = [list(r) for r in rows]
    return len(_rref(rows, ncols))


# ---------------------------------------------------------------------------
# polynomials in (v, u, L, M, X, t)


class _ParamRing:
    """Q-polynomials in v, u, the parameters L (lambda), M, X, and t, reduced on the curve and mod m(t)."""

    _cache = {}

    def __init__(self, curve):
        F = curve.field
        self.curve = curve
        self.field = F
        self.ctx = fmpq_mpoly_ctx.get(("v", "u", "L", "M", "X", "t"), "lex")
        self.v, self.u, self.L, self.M, self.X, self.t = self.ctx.gens()
        self.rel = self.lift(curve.rel_mp)
        self.m = self.lift(F.m_mp)
        self.one = self.ctx.constant(1)
        self.zero = self.ctx.constant(0)

    @classmethod
    def of(cls, curve):
        key = id(curve)
        ring = cls._cache.get(key)
        if ring is None or ring.curve is not curve:
            ring = cls._cache[key] = cls(curve)
        return ring

    def lift(self, mp):
        """From the (v, u, t) ring of the field."""
        d = {(int(k[0]), int(k[1]), 0, 0, 0, int(k[2])): c for k, c in mp.to_dict().items()}
        return self.ctx.from_dict(d)

    def element(self, x):
        return self.lift(self.field(x).to_mpoly())

    def reduce(self, p):
        if p.is_zero():
            return p
        degs = p.degrees()
        if degs[0] >= 2:
            p = p % self.rel
            degs = p.degrees()
        if degs[5] >= self.field.d:
            p = p % self.m
        return p

    def mul(self, a, b):
        return self.reduce(a * b)

    def to_field(self, p):
        """A reduced polynomial in t alone as a FieldElement."""
        F = self.field
        cs = {}
        for k, c in p.to_dict().items():
            if any(int(e) for e in k[:5]):
                raise ValueError("not a constant: %s" % p)
            cs[int(k[5])] = c
        out = [0] * (max(cs) + 1 if cs else 1)
        for j, c in cs.items():
            out[j] = c
        return F.from_poly(out)

    def to_uni(self, p, var):
        """A polynomial in the single parameter ``var`` (index 2, 3 or 4) as a UniPoly."""
        F = self.field
        d = {}
        for k, c in p.to_dict().items():
            ks = [int(e) for e in k]
            if any(ks[i] for i in range(5) if i != var):
                raise ValueError("more than one variable in %s" % p)
            d[(0, ks[var], ks[5])] = c
        return UniPoly(F, F.ctx.from_dict(d))

    def specialize(self, p, lam=None, m=None, x=None):
        vals = [self.v, self.u,
                self.L if lam is None else self.element(lam),
                self.M if m is None else self.element(m),
                self.X if x is None else self.element(x),
                self.t]
        return self.reduce(p.compose(*vals))


def _det(mat, ring):
    """Determinant by expansion along rows with memoized minors."""
    n = len(mat)
    memo = {}

    def minor(cols):
        r = n - len(cols)
        if not cols:
            return ring.one
        if cols in memo:
            return memo[cols]
        acc = ring.zero
        for j, c in enumerate(cols):
            e = mat[r][c]
            if e.is_zero():
                continue
            sub = minor(cols[:j] + cols[j + 1:])
            if sub.is_zero():
                continue
            term = ring.mul(e, sub)
            acc = acc - term if j % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


# ---------------------------------------------------------------------------
# the ansatz


def _monomials(bound):
    """Exponents (i, j) of u^i v^j with j <= 1 and 2i + 3j <= bound, by weight."""
    out = []
    for w in range(bound + 1):
        if w % 2 == 0:
            out.append((w // 2, 0))
        if w >= 3 and (w - 3) % 2 == 0:
            out.append(((w - 3) // 2, 1))
    return out


def min_degree_vanishing_poly(Daff):
    """Polynomial Q with the fewest roots vanishing on an effective affine divisor.

    If the elliptic sum s of the divisor is not O, one extra root at -s makes the
    divisor of zeros principal.
    """
    curve = Daff.curve
    D = Daff.affine_part()
    if not D.mults:
        return CurvePoly.constant(curve, 1)
    if not D.is_effective():
        raise ValueError("the divisor must be effective")
    s = elliptic_sum(D)
    full = D if s.is_zero else D + Divisor(curve, {-s: 1})
    f = realize(full + Divisor(curve, {curve.O: -full.degree()}))
    if f.den.degree() != 0:
        raise AssertionError("realization of a divisor with poles only at O is not polynomial")
    return f.num * f.den.lc().inverse()


@dataclass
class AnsatzSystem:
    """Linear system M(lambda, M, X) c = 0 for the coefficients c of P."""
    eq: object
    Q: object
    bound: int
    mode: str
    basis: list
    rows: list
    ring: object = dc_field(repr=False)

    @property
    def ncols(self):
        return len(self.basis)

    def matrix_at(self, lam=None, m=None, x=None):
        r = self.ring
        out = []
        for row in self.rows:
            if lam is None and m is None and x is None:
                out.append([r.to_field(e) for e in row])
            else:
                out.append([r.to_field(r.specialize(e, lam, m, x)) for e in row])
        return out

    def numerator(self, vec):
        curve = self.eq.curve
        P = CurvePoly.constant(curve, 0)
        for (i, j), c in zip(self.basis, vec):
            if not c.is_zero():
                P = P + CurvePoly.monomial(curve, i, j) * c
        return P

    def projections(self, count=_PROJECTIONS, seed=0):
        rng = random.Random(seed)
        n = self.ncols
        out = []
        for _ in range(count):
            P = [[rng.randint(-7, 7) for _ in self.rows] for _ in range(n)]
            mat = []
            for k in range(n):
                row = []
                for c in range(n):
                    acc = self.ring.zero
                    for r, coef in enumerate(P[k]):
                        if coef and not self.rows[r][c].is_zero():
                            acc = acc + self.rows[r][c] * coef
                    row.append(acc)
                mat.append(row)
            out.append(_det(mat, self.ring))
        return out


def _shift_data(curve, delta, l):
    """(E, W, Vn) per shift j < l as lifted polynomials: u' = W/E^2, v' = Vn/E^3."""
    ring = _ParamRing.of(curve)
    out = []
    for j in range(l):
        if j == 0:
            out.append((ring.one, ring.u, ring.v))
        else:
            tr = translation(curve, delta * j)
            out.append((ring.lift(tr.E.mp), ring.lift(tr.W.mp), ring.lift(tr.Vn.mp)))
    return out


def _multipliers(eq, mode):
    """Per-term factors lambda^i prod_{j<i} R(p + j delta), with all shifted denominators cleared."""
    curve, delta, l = eq.curve, eq.delta, eq.order
    ring = _ParamRing.of(curve)
    if mode == "rational":
        return [ring.one] * (l + 1)
    if mode == "O":
        return [ring.L ** i for i in range(l + 1)]
    data = _shift_data(curve, delta, l)
    xd, yd = ring.element(delta.x), ring.element(delta.y)
    nums, dens = [], []
    for E, W, Vn in data:
        if mode == "delta":
            nums.append(ring.reduce(W - xd * E * E))
            dens.append(ring.reduce(E * E))
        else:
            nums.append(ring.reduce(Vn + (yd + ring.M * xd) * E ** 3 - ring.M * W * E))
            dens.append(ring.reduce(E * (W - ring.X * E * E)))
    out = []
    for i in range(l + 1):
        acc = ring.L ** i
        for j in range(i):
            acc = ring.mul(acc, nums[j])
        for j in range(i, l):
            acc = ring.mul(acc, dens[j])
        out.append(acc)
    return out


def _shifted_terms(eq, Q, basis, bound):
    """For each i, the polynomials L_den * a_i * (phi_k / Q)(p + i delta) over one common denominator."""
    curve, delta, l = eq.curve, eq.delta, eq.order
    F = curve.field
    Qf = CurveFunction.from_poly(Q)
    parts = []
    for i, a in enumerate(eq.coeffs):
        if not a:
            parts.append(None)
            continue
        if i == 0:
            G = CurveFunction.from_poly(a) / Qf
            nums = [CurvePoly.monomial(curve, p, q) for p, q in basis]
            den = G.den
        else:
            tr = translation(curve, delta * i)
            G = CurveFunction.from_poly(a) / tr.func(Qf)
            nums = []
            for p, q in basis:
                e = bound - 2 * p - 3 * q
                nm = tr._pow(tr._Wpow, tr.W, p) * tr._pow(tr._Epow, tr.E, e)
                if q:
                    nm = nm * tr.Vn
                nums.append(nm)
            den = G.den * UniPoly(F, F.U - (delta * i).x.to_mpoly()) ** bound
        parts.append((G.num, nums, den))
    Lden = None
    for part in parts:
        if part is not None:
            d = part[2]
            Lden = d if Lden is None else (Lden * d).exact_div(Lden.gcd(d))
    out = []
    for part in parts:
        if part is None:
            out.append(None)
            continue
        g, nums, den = part
        scale = g * Lden.exact_div(den)
        out.append([scale * nm for nm in nums])
    return out


def build_system(eq, Q, bound, mode):
    """Assemble the ansatz system for one Theta shape: rational, O, delta or generic."""
    ring = _ParamRing.of(eq.curve)
    basis = _monomials(bound)
    terms = _shifted_terms(eq, Q, basis, bound)
    mults = _multipliers(eq, mode)
    cols = []
    for k in range(len(basis)):
        acc = ring.zero
        for i, tk in enumerate(terms):
            if tk is not None:
                acc = acc + ring.lift(tk[k].mp) * mults[i]
        cols.append(ring.reduce(acc))
    rows = {}
    n = len(basis)
    for k, col in enumerate(cols):
        for key, c in col.to_dict().items():
            ks = tuple(int(e) for e in key)
            pos = (ks[0], ks[1])
            param = (0, 0, ks[2], ks[3], ks[4], ks[5])
            rows.setdefault(pos, [dict() for _ in range(n)])[k][param] = c
    ordered = [rows[p] for p in sorted(rows)]
    mats = [[ring.ctx.from_dict(e) for e in row] for row in ordered]
    return AnsatzSystem(eq, Q, bound, mode, basis, mats, ring)


# ---------------------------------------------------------------------------
# parameter elimination


def _split_roots(p):
    """(roots in K with nonzero leftover check, leftover factor without K-roots)."""
    roots = [r for r, _ in p.roots()]
    rest = p
    x = UniPoly.x(p.field)
    for r in roots:
        while not rest.is_zero() and rest.degree() > 0 and rest(r).is_zero():
            rest = rest.exact_div(x - r)
    return roots, rest


def _ugcd(polys):
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else g.gcd(p)
    return g


def _curve_parameter_relation(ring, delta):
    """C'(M, X): the line v = -y_delta + M (u - x_delta) meets the curve again at abscissa X."""
    curve = delta.curve
    xd, yd = ring.element(delta.x), ring.element(delta.y)
    X, M = ring.X, ring.M
    C = (M * (X - xd) - yd) ** 2 - (X ** 3 + ring.element(curve.a) * X + ring.element(curve.b))
    C = ring.reduce(C)
    q, r = divmod(C, ring.reduce(X - xd))
    r = ring.reduce(r)
    if not r.is_zero():
        q = ring.reduce(q)
        # the remainder vanishes in K; redo the division with reduced pieces
        raise AssertionError("curve relation is not divisible by X - x(delta)")
    return ring.reduce(-q)


def _lambda_candidates(system):
    """Nonzero lambda in K making the univariate pencil drop rank."""
    ring = system.ring
    dets = [ring.to_uni(d, 2) for d in system.projections()]
    g = _ugcd(dets)
    if g is None:
        raise PositiveDimensionalVariety("every lambda gives a solution; the equation is degenerate")
    x = UniPoly.x(ring.field)
    while g.degree() > 0 and g(ring.field.zero()).is_zero():
        g = g.exact_div(x)
    if g.degree() <= 0:
        return []
    roots, rest = _split_roots(g)
    if rest.degree() > 0:
        raise ExtensionRequired("a Theta parameter lies outside K", minpoly=_json_poly(rest))
    return roots


def _json_poly(p):
    return [c.to_json() for c in p.monic().coeffs()]


def _primes(start=2 ** 62):
    p = start
    while True:
        p -= 1
        if fmpz(p).is_prime():
            yield p


def _ratrecon(a, N):
    """a/b with |a|, b <= sqrt(N/2) and a = r b mod N, or None."""
    bound = fmpz(N // 2).isqrt()
    r0, r1, s0, s1 = N, a % N, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or fmpz(s1).gcd(N) != 1:
        return None
    return fmpq(r1, s1) if s1 > 0 else fmpq(-r1, -s1)


def _eliminant_mod(ring, gs, Cp, p):
    """gcd over projection pairs of Res_X(Res_L(g_a, g_b), C'), normed to Q, modulo p."""
    ctx = nmod_mpoly_ctx.get(("L", "M", "X", "t"), modulus=p, ordering="lex")

    def conv(f):
        d = {}
        for k, c in f.to_dict().items():
            den = int(c.q) % p
            if den == 0:
                return None
            d[(int(k[2]), int(k[3]), int(k[4]), int(k[5]))] = int(c.p) * pow(den, -1, p) % p
        return ctx.from_dict(d)

    mods = [conv(g) for g in gs + [Cp, ring.m]]
    if any(f is None for f in mods):
        return None
    *hs, cp, m = mods
    dim = ring.field.d
    g = None
    for a, b in itertools.combinations(hs, 2):
        r = a.resultant(b, "L")
        if r.is_zero():
            continue
        r = r.resultant(cp, "X")
        if dim > 1:
            r = r.resultant(m, "t")
        if r.is_zero():
            continue
        coeffs = [0] * (r.degrees()[1] + 1)
        for k, c in r.to_dict().items():
            coeffs[int(k[1])] = int(c)
        u = nmod_poly(coeffs, p)
        g = u if g is None else g.gcd(u)
    if g is None:
        return nmod_poly([], p)
    return g * pow(int(g[g.degree()]), -1, p)


def _modular_eliminant(ring, gs, Cp):
    """The monic Q-polynomial in M whose K-roots contain every M of a rank drop.

    The gcd is reconstructed from its images modulo several primes and accepted
    once it is unchanged by a further prime.
    """
    best, images, last = None, [], None
    for p in _primes():
        g = _eliminant_mod(ring, gs, Cp, p)
        if g is None:
            continue
        if g.degree() < 0:
            raise PositiveDimensionalVariety("the parameter variety has positive dimension")
        if best is None or g.degree() < best:
            best, images, last = g.degree(), [], None
        elif g.degree() > best:
            continue
        images.append((p, [int(c) for c in g.coeffs()]))
        N, res = 1, [0] * (best + 1)
        for q, cs in images:
            inv = pow(N, -1, q)
            for i, c in enumerate(cs):
                res[i] += N * ((c - res[i]) * inv % q)
            N *= q
        cand = [_ratrecon(c, N) for c in res]
        if any(c is None for c in cand):
            continue
        cand = fmpq_poly(cand)
        if cand == last:
            return cand
        last = cand


def _generic_candidates(system, delta):
    """(lambda, M, X) in K^3 on C' where the generic pencil may drop rank.

    lambda is eliminated first between pairs of projections, then X against C'.
    Spurious roots differ between pairs, so the gcd over the pairs is small; it
    is computed modulo primes and lifted to Q. Every candidate is checked later
    on the full matrix.
    """
    ring = system.ring
    Cp = _curve_parameter_relation(ring, delta)
    gs = [g for g in system.projections() if not g.is_zero()]
    if len(gs) < 2:
        raise PositiveDimensionalVariety("the parameter variety has positive dimension")
    G = _modular_eliminant(ring, gs, Cp)
    if G.degree() <= 0:
        return []
    out = []
    for m0, _ in UniPoly.from_qpoly(ring.field, G).roots():
        cx = ring.to_uni(ring.specialize(Cp, m=m0), 4)
        if cx.is_zero() or cx.degree() <= 0:
            continue
        for x0 in _split_roots(cx)[0]:
            gl = _ugcd([ring.to_uni(ring.specialize(g, m=m0, x=x0), 2) for g in gs])
            if gl is None or gl.degree() <= 0:
                continue
            for l0 in _split_roots(gl)[0]:
                if not l0.is_zero():
                    out.append((l0, m0, x0))
    return out


def _strip_var(p, var):
    if p.is_zero():
        return p
    k = min(int(e[var]) for e in p.to_dict())
    if k == 0:
        return p
    d = {}
    for e, c in p.to_dict().items():
        e = [int(x) for x in e]
        e[var] -= k
        d[tuple(e)] = c
    return p.context().from_dict(d)


def _gcd_in_M(ring, ha, hb):
    ua, ub = ring.to_uni(ha, 3), ring.to_uni(hb, 3)
    g = _ugcd([ua, ub])
    if g is None:
        return ring.zero
    return ring.lift(g.mp).compose(ring.v, ring.M, ring.L, ring.M, ring.X, ring.t)


def parametric_kernel(system):
    """All (lambda, pole, kernel basis) with a nontrivial kernel, lambda and pole over K."""
    eq = system.eq
    curve, delta = eq.curve, eq.delta
    F = curve.field
    out = []
    if system.mode == "rational":
        ker = kernel(system.matrix_at(), system.ncols, F)
        return [(F.one(), curve.O, ker)] if ker else []
    if system.mode in ("O", "delta"):
        pole = curve.O if system.mode == "O" else delta
        for lam in _lambda_candidates(system):
            ker = kernel(system.matrix_at(lam=lam), system.ncols, F)
            if ker:
                out.append((lam, pole, ker))
        return out
    xd, yd = delta.x, delta.y
    for lam, m0, x0 in _generic_candidates(system, delta):
        ker = kernel(system.matrix_at(lam=lam, m=m0, x=x0), system.ncols, F)
        if not ker:
            continue
        third = curve.point(x0, m0 * (x0 - xd) - yd)
        out.append((lam, delta - third, ker))
    return out


# ---------------------------------------------------------------------------
# solution classes


def _ansatz(eq, ctx):
    ud = universal_divisor(eq, ctx)
    Q = min_degree_vanishing_poly(ud.divisor.affine_part())
    degQ = Q.degree()
    return ud, Q, degQ + ud.divisor[eq.curve.O]


def _solutions_from(system, found):
    eq = system.eq
    out = []
    for lam, pole, ker in found:
        theta = ThetaFactor(lam, pole, eq.delta)
        for vec in ker:
            P = system.numerator(vec)
            if P.is_zero():
                continue
            sol = Solution(CurveFunction.from_fraction(P, system.Q), theta)
            if verify_solution(eq, sol):
                out.append(sol)
    return out


def rational_solutions(eq, ctx=None):
    """Basis of the rational solutions over K."""
    ctx = ctx or HeightContext()
    _, Q, bound = _ansatz(eq, ctx)
    system = build_system(eq, Q, bound, "rational")
    return independence_filter(_solutions_from(system, parametric_kernel(system)))


def pseudo_rational_solutions(eq, ctx=None):
    """Basis of the solutions F * Theta with F rational, Theta over K."""
    ctx = ctx or HeightContext()
    _, Q, bound = _ansatz(eq, ctx)
    sols = []
    system = build_system(eq, Q, bound, "O")
    sols += _solutions_from(system, parametric_kernel(system))
    for mode in ("delta", "generic"):
        system = build_system(eq, Q, bound + 1, mode)
        sols += _solutions_from(system, parametric_kernel(system))
    return independence_filter(sols)


# ---------------------------------------------------------------------------
# independence


def _rational_rank_filter(funcs):
    """Indices of a maximal K-linearly independent subfamily, greedily in order."""
    if not funcs:
        return []
    L = None
    for f in funcs:
        L = f.den if L is None else (L * f.den).exact_div(L.gcd(f.den))
    vecs = []
    keys = set()
    for f in funcs:
        N = f.num * L.exact_div(f.den)
        d = {(du, dv): c for du, dv, c in N.terms()}
        vecs.append(d)
        keys.update(d)
    keys = sorted(keys)
    F = funcs[0].curve.field
    keep = []
    rows = []
    for idx, d in enumerate(vecs):
        cand = rows + [[d.get(k, F.zero()) for k in keys]]
        if rank(cand, len(keys)) == len(cand):
            rows = cand
            keep.append(idx)
    return keep


def _group_key(sol):
    h = sol.hyper.ratio if sol.hyper else None
    return (sol.lam, sol.pole, h)


def independence_filter(sols):
    """Drop solutions that are K-combinations of others with the same Theta and Hyper factors."""
    groups = {}
    order = []
    for s in sols:
        k = _group_key(s)
        if k not in groups:
            groups[k] = []
            order.append(k)
        groups[k].append(s)
    out = []
    for k in order:
        g = groups[k]
        for idx in _rational_rank_filter([s.rational_part for s in g]):
            out.append(g[idx])
    out.sort(key=lambda s: s.sort_key())
    return out


# ---------------------------------------------------------------------------
# hyperexponential solutions


@dataclass
class JumpCombination:
    jumps: tuple
    points: tuple

    def divisor(self, curve):
        return Divisor(curve, {p: m for p, m in zip(self.points, self.jumps) if m})


@dataclass
class HyperReport:
    solutions: list
    combinations: int
    realizable: int
    ratios: list


def _normalize_hyper_ratio(R):
    """Scale so the leading v-coefficient matches the leading denominator coefficient."""
    A, B = R.num.parts()
    lead = B.lc() if B else A.lc()
    return R.scale(R.den.lc() / lead)


def _principal_shift(D, N, delta, order=None):
    """Cancel an elliptic sum N*delta by moving one unit of multiplicity along its orbit.

    The unit is taken from the first point of ``order`` (default: the support)
    carrying a nonzero multiplicity.
    """
    if N == 0:
        return D
    pts = [p for p in (order if order is not None else D.support()) if not p.is_zero and D[p]]
    if not pts:
        return None
    p = pts[0]
    s = 1 if D[p] > 0 else -1
    return D + Divisor(D.curve, {p: -s}) + Divisor(D.curve, {p + delta * (-N * s): s})


def _complete(D):
    """Make D principal by adding -s and O-multiplicities (exhaustive mode)."""
    curve = D.curve
    D = D + Divisor(curve, {curve.O: -D.degree()})
    s = elliptic_sum(D)
    if s.is_zero:
        return D
    return D + Divisor(curve, {s: -1, curve.O: 1})


def hyperexponential_search(eq, ctx=None, max_combinations=DEFAULT_MAX_COMBINATIONS,
                            principality_filter=True):
    """Enumerate jump combinations and solve each transformed equation."""
    ctx = ctx or HeightContext()
    curve, delta = eq.curve, eq.delta
    records = rational_singularities(eq)
    profiles = singular_orbits(eq, records, ctx)
    points, ranges = [], []
    for prof in profiles:
        lo, hi = prof.jump_range
        points.append(prof.first)
        ranges.append(range(lo, hi + 1))
    total = 1
    for r in ranges:
        total *= len(r)
    if total > max_combinations:
        raise CombinationOverflow("%d jump combinations exceed the cap %d" % (total, max_combinations))
    active = [p for p, r in zip(points, ranges) if len(r) > 1 and not p.is_zero]
    b = regulator_norm_bound(active, delta, ctx) if active else 0
    sols, ratios = [], []
    realizable = 0
    for jumps in itertools.product(*ranges):
        combo = JumpCombination(tuple(jumps), tuple(points))
        D = combo.divisor(curve)
        Dt = None
        if D.degree() == 0:
            N = multiple_of_delta(elliptic_sum(D), delta, ctx, bound=max(b, 1))
            if N is not None:
                Dt = _principal_shift(D, N, delta, points)
        if Dt is None:
            if principality_filter:
                continue
            Dt = _complete(D)
        else:
            realizable += 1
        try:
            R = realize(Dt)
        except NotPrincipal:
            continue
        R = _normalize_hyper_ratio(R)
        ratios.append(R)
        eq2 = transform_by_hyperexp(eq, R) if Dt.mults else eq
        hyper = HyperexpFactor(R) if Dt.mults else None
        for s in pseudo_rational_solutions(eq2, ctx):
            full = Solution(s.rational_part, s.theta, hyper)
            if verify_solution(eq, full):
                sols.append(full)
    return HyperReport(independence_filter(sols), total, realizable, ratios)


def hyperexponential_solutions(eq, ctx=None, max_combinations=DEFAULT_MAX_COMBINATIONS,
                               principality_filter=True):
    return hyperexponential_search(eq, ctx, max_combinations, principality_filter).solutions


def solve(eq, kind, ctx=None, **kw):
    if kind == "rational":
        return rational_solutions(eq, ctx)
    if kind == "pseudo":
        return pseudo_rational_solutions(eq, ctx)
    if kind == "hyper":
        return hyperexponential_solutions(eq, ctx, **kw)
    raise ValueError("unknown solution class %r" % kind)
