"""Polynomial and rational functions on the curve.

A polynomial function is A(u) + v B(u), stored as one FLINT mpoly in (v, u, t)
with v-degree at most 1. A rational function is kept in the unique form
(A + v B) / D with D in K[u] monic and gcd(A, B, D) = 1, so equality of
functions is equality of representations.
"""

from .curve import CurvePoint
from .errors import DivisionByZero, RootOutsideField, SchemaError
from .exactfield import FieldElement, UniPoly, to_fmpq, fmpq_str


def _split(field, mp):
    """(A, B) mpolys with mp = A + v B, assuming deg_v mp <= 1."""
    ctx = field.ctx
    a, b = {}, {}
    for k, c in mp.to_dict().items():
        if k[0] == 0:
            a[k] = c
        else:
            b[(0, k[1], k[2])] = c
    return ctx.from_dict(a), ctx.from_dict(b)


def reduce_mod_curve(curve, mp):
    """Replace v^2 by u^3 + a u + b until the v-degree is at most 1, then reduce mod m(t)."""
    F = curve.field
    if mp.degrees()[0] >= 2:
        mp = divmod(mp, curve.rel_mp)[1]
    return F.reduce(mp)


class CurvePoly:
    """A(u) + v B(u) on the curve."""

    __slots__ = ("curve", "mp")

    def __init__(self, curve, mp, reduced=False):
        self.curve = curve
        self.mp = mp if reduced else reduce_mod_curve(curve, mp)

    @classmethod
    def from_AB(cls, curve, A, B=None):
        F = curve.field
        mp = A.mp if isinstance(A, UniPoly) else A
        if B is not None:
            mp = mp + F.V * (B.mp if isinstance(B, UniPoly) else B)
        return cls(curve, mp)

    @classmethod
    def constant(cls, curve, c):
        return cls(curve, curve.field(c).to_mpoly(), True)

    @classmethod
    def u(cls, curve):
        return cls(curve, curve.field.U, True)

    @classmethod
    def v(cls, curve):
        return cls(curve, curve.field.V, True)

    @classmethod
    def monomial(cls, curve, i, j):
        F = curve.field
        return cls(curve, F.U ** i * F.V ** j)

    def parts(self):
        A, B = _split(self.curve.field, self.mp)
        F = self.curve.field
        return UniPoly(F, A), UniPoly(F, B)

    @property
    def A(self):
        return self.parts()[0]

    @property
    def B(self):
        return self.parts()[1]

    def is_zero(self):
        return self.mp.is_zero()

    def __bool__(self):
        return not self.mp.is_zero()

    def _o(self, o):
        if isinstance(o, CurvePoly):
            return o.mp
        if isinstance(o, UniPoly):
            return o.mp
        if isinstance(o, FieldElement):
            return o.to_mpoly()
        return self.curve.field.ctx.constant(to_fmpq(o))

    def __add__(self, o):
        return CurvePoly(self.curve, self.mp + self._o(o), True)

    __radd__ = __add__

    def __sub__(self, o):
        return CurvePoly(self.curve, self.mp - self._o(o), True)

    def __rsub__(self, o):
        return CurvePoly(self.curve, self._o(o) - self.mp, True)

    def __neg__(self):
        return CurvePoly(self.curve, -self.mp, True)

    def __mul__(self, o):
        if isinstance(o, CurveFunction):
            return NotImplemented
        return CurvePoly(self.curve, self.mp * self._o(o))

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, CurveFunction):
            return CurveFunction.from_poly(self) / o
        if isinstance(o, (CurvePoly, UniPoly)):
            return CurveFunction.from_fraction(self, o)
        return self * self.curve.field(o).inverse()

    def __pow__(self, n):
        r = CurvePoly.constant(self.curve, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, o):
        if isinstance(o, CurvePoly):
            return self.mp == o.mp
        if isinstance(o, CurveFunction):
            return o == self
        return self.mp == self._o(o)

    def __hash__(self):
        return hash(str(self.mp))

    def conj(self):
        A, B = _split(self.curve.field, self.mp)
        return CurvePoly(self.curve, A - self.curve.field.V * B, True)

    def norm(self):
        """A^2 - f B^2 in K[u], the product with the conjugate."""
        A, B = self.parts()
        return A * A - self.curve.f_uni * B * B

    def degree(self):
        """-val_O, i.e. max(2 deg A, 3 + 2 deg B)."""
        if self.is_zero():
            raise ValueError("degree of zero")
        A, B = self.parts()
        return max(2 * A.degree() if A else -1, 3 + 2 * B.degree() if B else -1)

    def dominant(self):
        A, B = self.parts()
        if A and (not B or 2 * A.degree() > 3 + 2 * B.degree()):
            return A.lc()
        return B.lc()

    def __call__(self, p):
        """Value at an affine point."""
        if p.is_zero:
            raise ValueError("polynomial functions have a pole at O")
        F = self.curve.field
        r = F.reduce(self.mp.compose(p.y.to_mpoly(), p.x.to_mpoly(), F.T))
        return FieldElement(F, _tpoly(r))

    def terms(self):
        """List of (du, dv, FieldElement) sorted by (dv, du)."""
        F = self.curve.field
        buckets = {}
        for k, c in self.mp.to_dict().items():
            buckets.setdefault((int(k[1]), int(k[0])), {})[int(k[2])] = c
        out = []
        for (du, dv) in sorted(buckets, key=lambda e: (e[1], e[0])):
            tc = buckets[(du, dv)]
            cs = [0] * (max(tc) + 1)
            for j, c in tc.items():
                cs[j] = c
            out.append((du, dv, F.from_poly(cs)))
        return out

    def to_json(self):
        return [{"du": du, "dv": dv, "coeff": c.to_json()} for du, dv, c in self.terms()]

    @classmethod
    def from_json(cls, curve, terms):
        F = curve.field
        mp = F.ctx.constant(0)
        if not isinstance(terms, list):
            raise SchemaError("polynomial must be a list of terms")
        for t in terms:
            try:
                du, dv, c = int(t["du"]), int(t["dv"]), t["coeff"]
            except (KeyError, TypeError, ValueError):
                raise SchemaError("malformed term %r" % (t,))
            if du < 0 or dv < 0:
                raise SchemaError("negative exponent in %r" % (t,))
            mp += F(c).to_mpoly() * F.U ** du * F.V ** dv
        return cls(curve, mp)

    def __repr__(self):
        return self.mp.str().replace("t", "a")


def _tpoly(mp):
    from .exactfield import _mpoly_to_qpoly
    return _mpoly_to_qpoly(mp, 2)


class CurveFunction:
    """(A + v B) / D, D monic in K[u], gcd(A, B, D) = 1."""

    __slots__ = ("curve", "num", "den")

    def __init__(self, curve, num, den, normalized=False):
        self.curve = curve
        if not normalized:
            num, den = _normalize(curve, num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, P, Q):
        """P / Q with P, Q curve polynomials."""
        curve = P.curve
        if isinstance(Q, UniPoly):
            return cls(curve, P, Q)
        if Q.is_zero():
            raise DivisionByZero("division by the zero function")
        A, B = Q.parts()
        if not B:
            return cls(curve, P, A)
        return cls(curve, P * Q.conj(), Q.norm())

    @classmethod
    def constant(cls, curve, c):
        F = curve.field
        return cls(curve, CurvePoly.constant(curve, c), UniPoly(F, F.ctx.constant(1)), True)

    @classmethod
    def from_poly(cls, P):
        F = P.curve.field
        return cls(P.curve, P, UniPoly(F, F.ctx.constant(1)))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.den.degree() == 0 and (self.num.is_zero() or self.num.degree() == 0)

    def is_polynomial(self):
        return self.den.degree() == 0

    def _lift(self, o):
        if isinstance(o, CurveFunction):
            return o
        if isinstance(o, CurvePoly):
            return CurveFunction.from_poly(o)
        return CurveFunction.constant(self.curve, o)

    def __add__(self, o):
        o = self._lift(o)
        if self.den == o.den:
            return CurveFunction(self.curve, self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        d1 = self.den.exact_div(g)
        d2 = o.den.exact_div(g)
        return CurveFunction(self.curve, self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CurveFunction(self.curve, -self.num, self.den, True)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        if o.is_constant():
            if o.is_zero():
                return CurveFunction.constant(self.curve, 0)
            return CurveFunction(self.curve, self.num * o.num, self.den, True)
        if self.is_constant():
            return o * self
        return CurveFunction(self.curve, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of the zero function")
        A, B = self.num.parts()
        dpoly = CurvePoly.from_AB(self.curve, self.den)
        if not B:
            return CurveFunction(self.curve, dpoly, A)
        return CurveFunction(self.curve, dpoly * self.num.conj(), self.num.norm())

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = CurveFunction.constant(self.curve, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, o):
        if not isinstance(o, CurveFunction):
            if isinstance(o, (CurvePoly, FieldElement, int)):
                o = self._lift(o)
            else:
                return NotImplemented
        return self.num.mp == o.num.mp and self.den.mp == o.den.mp

    def __hash__(self):
        return hash((str(self.num.mp), str(self.den.mp)))

    def __repr__(self):
        if self.den.degree() == 0:
            return "(%r)" % self.num
        return "(%r)/(%r)" % (self.num, CurvePoly.from_AB(self.curve, self.den))

    def scale(self, c):
        c = self.curve.field(c)
        if c.is_zero():
            return CurveFunction.constant(self.curve, 0)
        return CurveFunction(self.curve, self.num * c, self.den, True)

    def numerator_poly(self):
        return self.num

    def denominator_poly(self):
        return CurvePoly.from_AB(self.curve, self.den)

    # structure at O -----------------------------------------------------
    def degree_num(self):
        return self.num.degree()

    def valuation_at_O(self):
        return -self.num.degree() + 2 * self.den.degree()

    def dominant_coefficient(self):
        return self.num.dominant() / self.den.lc()

    # local structure ------------------------------------------------------
    def valuation(self, p):
        if self.is_zero():
            raise ValueError("valuation of zero")
        if p.is_zero:
            return self.valuation_at_O()
        e = 2 if p.is_two_torsion() else 1
        return poly_valuation(self.num, p) - e * self.den.linear_factors_exponent(p.x)

    def evaluate(self, p):
        """Value at p, or POLE."""
        val = self.valuation(p) if self else 1
        if not self:
            return self.curve.field.zero()
        if val < 0:
            return POLE
        if val > 0:
            return self.curve.field.zero()
        if p.is_zero:
            return self.dominant_coefficient() if self.num.degree() == 2 * self.den.degree() else self.curve.field.zero()
        dval = self.den(p.x)
        if dval:
            return self.num(p) / dval
        return local_expansion(self, p, 1).coeffs[0]

    def __call__(self, p):
        return self.evaluate(p)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.denominator_poly().to_json()}

    @classmethod
    def from_json(cls, curve, doc):
        try:
            num = CurvePoly.from_json(curve, doc["num"])
            den = CurvePoly.from_json(curve, doc["den"])
        except (KeyError, TypeError):
            raise SchemaError("rational function needs num and den")
        return cls.from_fraction(num, den)

    def sort_key(self):
        return (str(self.num.mp), str(self.den.mp))


class _Pole:
    def __repr__(self):
        return "POLE"


POLE = _Pole()


def _normalize(curve, num, den):
    F = curve.field
    if isinstance(den, CurvePoly):
        A, B = den.parts()
        if B:
            raise ValueError("denominator must be a polynomial in u")
        den = A
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return num, UniPoly(F, F.ctx.constant(1))
    if den.degree() > 0:
        A, B = num.parts()
        g = den.gcd(A)
        if g.degree() > 0 and B:
            g = g.gcd(B)
        if g.degree() > 0:
            A = A.exact_div(g)
            B = B.exact_div(g) if B else B
            den = den.exact_div(g)
            num = CurvePoly.from_AB(curve, A, B)
    lc = den.lc()
    if lc != 1:
        inv = lc.inverse()
        num = num * inv
        den = den * inv
    return num, den


def poly_valuation(P, p):
    """Order of vanishing of the curve polynomial P at the affine point p."""
    A, B = P.parts()
    if p.is_two_torsion():
        ma = A.linear_factors_exponent(p.x) if A else None
        mb = B.linear_factors_exponent(p.x) if B else None
        cands = []
        if ma is not None:
            cands.append(2 * ma)
        if mb is not None:
            cands.append(1 + 2 * mb)
        return min(cands)
    lin = UniPoly.x(P.curve.field) - p.x
    k = 0
    while (not A or A(p.x).is_zero()) and (not B or B(p.x).is_zero()):
        A = A.exact_div(lin) if A else A
        B = B.exact_div(lin) if B else B
        k += 1
    Q = CurvePoly.from_AB(P.curve, A, B)
    if not Q(p).is_zero():
        return k
    return k + Q.norm().linear_factors_exponent(p.x)


def valuation_at(f, p):
    if isinstance(f, CurvePoly):
        if p.is_zero:
            return -f.degree()
        return poly_valuation(f, p)
    return f.valuation(p)


def dominant_coefficient(f):
    if isinstance(f, CurvePoly):
        return f.dominant()
    return f.dominant_coefficient()


def evaluate(f, p):
    if isinstance(f, CurvePoly):
        f = CurveFunction.from_poly(f)
    return f.evaluate(p)


def affine_support_points(curve, polys, strict=True):
    """K-rational affine points where one of the u-polynomials vanishes.

    With ``strict`` a zero outside C(K) raises RootOutsideField; otherwise the
    result is (points, flags) where flags[i] tells whether polys[i] has zeros
    outside C(K).
    """
    pts = []
    seen = set()
    flags = []
    for g in polys:
        outside = False
        if g.degree() > 0:
            roots = g.roots()
            if sum(m for _, m in roots) != g.degree():
                if strict:
                    raise RootOutsideField("zeros of %r are not all in K" % (g,), g)
                outside = True
            for x0, _ in roots:
                over = curve.points_over(x0)
                if not over:
                    if strict:
                        raise RootOutsideField("ordinate over u = %s is not in K" % (x0,), g)
                    outside = True
                for q in over:
                    if q not in seen:
                        seen.add(q)
                        pts.append(q)
        flags.append(outside)
    if strict:
        return pts
    return pts, flags


def divisor_of(f):
    """Divisor of a nonzero function or curve polynomial."""
    from .divisors import Divisor
    if isinstance(f, CurvePoly):
        f = CurveFunction.from_poly(f)
    if f.is_zero():
        raise ValueError("divisor of zero")
    pts = affine_support_points(f.curve, [f.num.norm(), f.den])
    mults = {}
    for q in pts:
        m = f.valuation(q)
        if m:
            mults[q] = m
    vo = f.valuation_at_O()
    if vo:
        mults[f.curve.O] = vo
    return Divisor(f.curve, mults)


# ---------------------------------------------------------------------------
# translation by multiples of the shift


class Translation:
    """The rational map p -> p + Q for a fixed point Q, as images of u and v."""

    def __init__(self, curve, Q):
        self.curve = curve
        self.Q = Q
        if Q.is_zero:
            return
        F = curve.field
        xq, yq = Q.x.to_mpoly(), Q.y.to_mpoly()
        U, V = F.U, F.V
        E = CurvePoly(curve, U - xq)
        W = CurvePoly(curve, (V - yq) ** 2 - (U + xq) * (U - xq) ** 2)
        # v' = -[yq E^3 + (v - yq)(W - xq E^2)] / E^3
        Vn = -(CurvePoly(curve, yq * E.mp ** 3) + CurvePoly(curve, V - yq) * (W - E * E * Q.x))
        self.E, self.W, self.Vn = E, W, Vn
        self._Epow = [CurvePoly.constant(curve, 1)]
        self._Wpow = [CurvePoly.constant(curve, 1)]

    def _pow(self, cache, base, n):
        while len(cache) <= n:
            cache.append(cache[-1] * base)
        return cache[n]

    def image_uni(self, g, total):
        """Numerator of g(u') over E^total, as a curve polynomial (total >= 2 deg g)."""
        out = CurvePoly.constant(self.curve, 0)
        for i, c in enumerate(g.coeffs()):
            if c:
                out = out + self._pow(self._Wpow, self.W, i) * self._pow(self._Epow, self.E, total - 2 * i) * c
        return out

    def poly(self, P):
        """P(p + Q) as a CurveFunction."""
        if self.Q.is_zero:
            return CurveFunction.from_poly(P)
        A, B = P.parts()
        e = max(2 * A.degree() if A else 0, 2 * B.degree() + 3 if B else 0)
        num = CurvePoly.constant(self.curve, 0)
        if A:
            num = num + self.image_uni(A, e)
        if B:
            num = num + self.image_uni(B, e - 3) * self.Vn
        return CurveFunction.from_fraction(num, self._pow(self._Epow, self.E, e))

    def func(self, f):
        if self.Q.is_zero:
            return f
        num = self.poly(f.num)
        dd = self.den_image(f.den)
        return num / dd

    def den_image(self, g):
        k = g.degree()
        return CurveFunction.from_fraction(self.image_uni(g, 2 * k), self._pow(self._Epow, self.E, 2 * k))

    def point(self, p):
        return p + self.Q


_TRANSLATIONS = {}


def translation(curve, Q):
    key = (id(curve), Q)
    t = _TRANSLATIONS.get(key)
    if t is None:
        t = Translation(curve, Q)
        if len(_TRANSLATIONS) > 256:
            _TRANSLATIONS.clear()
        _TRANSLATIONS[key] = t
    return t


def translate_pullback(f, n, delta):
    """The function p -> f(p + n delta)."""
    Q = delta * n
    tr = translation(delta.curve, Q)
    if isinstance(f, CurvePoly):
        return tr.poly(f)
    return tr.func(f)


def translate_by_point(f, Q):
    tr = translation(Q.curve, Q)
    if isinstance(f, CurvePoly):
        return tr.poly(f)
    return tr.func(f)


# ---------------------------------------------------------------------------
# local expansions


class Laurent:
    """Truncated Laurent series sum c_i s^(val + i), i < len(coeffs)."""

    __slots__ = ("field", "val", "coeffs")

    def __init__(self, field, val, coeffs):
        self.field = field
        self.val = val
        self.coeffs = coeffs

    @property
    def prec(self):
        return self.val + len(self.coeffs)

    def strip(self):
        i = 0
        while i < len(self.coeffs) and self.coeffs[i].is_zero():
            i += 1
        return Laurent(self.field, self.val + i, self.coeffs[i:])

    def __add__(self, o):
        lo = min(self.val, o.val)
        hi = min(self.prec, o.prec)
        cs = [self.field.zero() for _ in range(max(0, hi - lo))]
        for s in (self, o):
            for i, c in enumerate(s.coeffs):
                k = s.val + i - lo
                if k < len(cs):
                    cs[k] = cs[k] + c
        return Laurent(self.field, lo, cs).strip()

    def scale(self, c):
        return Laurent(self.field, self.val, [c * x for x in self.coeffs])

    def __mul__(self, o):
        n = min(len(self.coeffs), len(o.coeffs))
        cs = []
        for k in range(n):
            acc = self.field.zero()
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * o.coeffs[k - i]
            cs.append(acc)
        return Laurent(self.field, self.val + o.val, cs).strip()

    def inverse(self):
        s = self.strip()
        if not s.coeffs:
            raise DivisionByZero("series has no nonzero coefficient at this precision")
        n = len(s.coeffs)
        c0inv = s.coeffs[0].inverse()
        inv = [c0inv]
        for k in range(1, n):
            acc = self.field.zero()
            for i in range(1, k + 1):
                acc = acc + s.coeffs[i] * inv[k - i]
            inv.append(-acc * c0inv)
        return Laurent(self.field, -s.val, inv)


class LocalExpansion:
    """Expansion of a function at a point in the standard uniformizer."""

    def __init__(self, center, tag, order, coeffs):
        self.center = center
        self.tag = tag
        self.order = order
        self.coeffs = coeffs

    def __repr__(self):
        return "LocalExpansion(%r, %s, order=%d, %r)" % (self.center, self.tag, self.order, self.coeffs)


def _coordinate_series(p, n):
    """Series of u and v at p in its uniformizer, with n correct terms each."""
    curve = p.curve
    F = curve.field
    zero, one = F.zero(), F.one()
    if p.is_zero:
        # u = s^-2 (1 + w), v = s^-3 (1 + w), w = -(a s^4 (1 + w) + b s^6) / (1 + w)^2
        w = Laurent(F, 0, [zero] * n)
        for _ in range(n // 4 + 2):
            onew = Laurent(F, 0, [one] + [zero] * (n - 1)) + w
            onew = Laurent(F, 0, onew.coeffs + [zero] * (n - len(onew.coeffs)))
            s4 = Laurent(F, 4, [curve.a] + [zero] * (n - 1))
            s6 = Laurent(F, 6, [curve.b] + [zero] * (n - 1))
            numr = s4 * onew + s6
            inv = (onew * onew).inverse()
            w = (numr * inv).scale(-one)
            w = _pad(F, w, n)
        onew = _pad(F, Laurent(F, 0, [one] + [zero] * (n - 1)) + w, n)
        return Laurent(F, -2, onew.coeffs[:]), Laurent(F, -3, onew.coeffs[:]), "u/v"
    x0, y0 = p.x, p.y
    fp = 3 * x0 * x0 + curve.a
    if y0.is_zero():
        # uniformizer v: f'(x0) w + 3 x0 w^2 + w^3 = s^2
        w = Laurent(F, 0, [zero] * n)
        c1inv = fp.inverse()
        s2 = Laurent(F, 2, [one] + [zero] * (n - 1))
        for _ in range(n + 1):
            w2 = w * w
            w3 = w2 * w
            rhs = s2 + w2.scale(-3 * x0) + w3.scale(-one)
            w = _pad(F, rhs.scale(c1inv), n)
        u = _pad(F, Laurent(F, 0, [x0] + [zero] * (n - 1)) + w, n)
        v = Laurent(F, 1, [one] + [zero] * (n - 1))
        return u, v, "v"
    # uniformizer s = u - x0, v^2 = f(x0 + s)
    c = [curve.rhs(x0), fp, 3 * x0, one]
    vs = [y0]
    inv2y = (2 * y0).inverse()
    for k in range(1, n):
        acc = c[k] if k < 4 else zero
        for i in range(1, k):
            acc = acc - vs[i] * vs[k - i]
        vs.append(acc * inv2y)
    u = Laurent(F, 0, [x0, one] + [zero] * (n - 2)) if n >= 2 else Laurent(F, 0, [x0])
    return u, Laurent(F, 0, vs), "u-x0"


def _pad(F, s, n):
    cs = s.coeffs[:n] + [F.zero()] * max(0, n - len(s.coeffs))
    return Laurent(F, s.val, cs)


def _eval_series(P, us, vs, F):
    A, B = P.parts()
    out = None
    for poly, mult in ((A, None), (B, vs)):
        if not poly:
            continue
        acc = None
        for c in reversed(poly.coeffs()):
            term = Laurent(F, 0, [c] + [F.zero()] * (len(us.coeffs) - 1))
            acc = term if acc is None else acc * us + term
        if mult is not None:
            acc = acc * mult
        out = acc if out is None else out + acc
    return out


def local_expansion(f, p, terms=8):
    """Expansion of f at p with at least ``terms`` significant coefficients."""
    if isinstance(f, CurvePoly):
        f = CurveFunction.from_poly(f)
    if f.is_zero():
        raise ValueError("expansion of zero")
    F = f.curve.field
    n = 8
    deg = max(f.num.degree(), 2 * f.den.degree() + 3)
    while True:
        work = n + 2 * deg + 8
        us, vs, tag = _coordinate_series(p, work)
        num = _eval_series(f.num, us, vs, F)
        den = _eval_series(CurvePoly.from_AB(f.curve, f.den), us, vs, F)
        if num.coeffs and den.coeffs:
            q = num * den.inverse()
            if len(q.coeffs) >= terms and not q.coeffs[0].is_zero():
                return LocalExpansion(p, tag, q.val, q.coeffs[:terms])
        n *= 2
        if n > 4096:
            raise RuntimeError("local expansion did not stabilize")
