"""Number fields K = Q[t]/(m(t)), elements of K, and univariate polynomials over K.

Arithmetic is delegated to FLINT. Elements of K are ``fmpq_poly`` residues of
degree < d. Polynomials in several variables over K are ``fmpq_mpoly`` values
in the lex ring (v, u, t), reduced modulo m(t); a ``UniPoly`` is such a value
that only involves u and t.
"""

import os
from fractions import Fraction
from functools import lru_cache

import flint
from flint import fmpq, fmpz, fmpq_poly, fmpq_mpoly_ctx

from .errors import DivisionByZero, SchemaError

DEFAULT_PRECISION_CAP = 1 << 14


def precision_cap():
    env = os.environ.get("ELLSHIFT_PRECISION_CAP")
    if env:
        try:
            return max(64, int(env))
        except ValueError:
            raise SchemaError("ELLSHIFT_PRECISION_CAP must be an integer")
    return DEFAULT_PRECISION_CAP


def to_fmpq(x):
    """Coerce int, Fraction, fmpq or a "num/den" string to ``fmpq``."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, bool):
        raise SchemaError("booleans are not rationals")
    if isinstance(x, (int, fmpz)):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        try:
            if "/" in s:
                n, d = s.split("/")
                if int(d) == 0:
                    raise DivisionByZero("zero denominator in %r" % x)
                return fmpq(int(n), int(d))
            return fmpq(int(s))
        except ValueError:
            raise SchemaError("not an exact rational: %r" % x)
    raise SchemaError("cannot interpret %r as a rational" % (x,))


def fmpq_str(q):
    return "%s/%s" % (q.p, q.q)


class NumberField:
    """K = Q[t]/(m(t)) with a designated complex embedding.

    ``minpoly`` is given by ascending coefficients. ``embedding`` selects the
    complex root of m: an index into the roots sorted by decreasing real part
    (then decreasing imaginary part), or a complex number whose nearest root is
    chosen. The default is the root with the largest real part.
    """

    def __init__(self, minpoly, embedding=None):
        coeffs = [to_fmpq(c) for c in minpoly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise SchemaError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise SchemaError("minimal polynomial must be monic")
        self.m = fmpq_poly(coeffs)
        self.d = self.m.degree()
        if self.d > 1:
            _, facs = self.m.factor()
            if len(facs) != 1 or facs[0][1] != 1:
                raise SchemaError("minimal polynomial is not irreducible over Q")
        self.ctx = fmpq_mpoly_ctx.get(("v", "u", "t"), "lex")
        self.V, self.U, self.T = self.ctx.gens()
        self.m_mp = qpoly_to_mpoly(self.ctx, self.m, 2)
        self._embedding_spec = embedding
        self._embedding_index = None
        self._root_cache = {}
        self._key = tuple(str(c) for c in coeffs)

    # identity -------------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, NumberField) and self._key == other._key
                and self.embedding_index == other.embedding_index)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "NumberField(%s)" % self.m.str(var="t")

    @property
    def is_rational(self):
        return self.d == 1

    # construction of elements --------------------------------------------
    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field is not self and x.field != self:
                raise SchemaError("element belongs to another field")
            return x
        if isinstance(x, (list, tuple)):
            if len(x) != self.d:
                raise SchemaError("field element needs %d coordinates, got %d" % (self.d, len(x)))
            return FieldElement(self, fmpq_poly([to_fmpq(c) for c in x]))
        return FieldElement(self, fmpq_poly([to_fmpq(x)]))

    def zero(self):
        return FieldElement(self, fmpq_poly())

    def one(self):
        return FieldElement(self, fmpq_poly([1]))

    def gen(self):
        """The class of t; for Q this is 0."""
        return FieldElement(self, fmpq_poly([0, 1]) % self.m)

    def from_poly(self, p):
        return FieldElement(self, fmpq_poly(p) % self.m)

    def reduce(self, mp):
        """Reduce an mpoly in (v,u,t) modulo m(t)."""
        if self.d == 1:
            return mp.compose(self.V, self.U, self.ctx.constant(0)) if mp.degrees()[2] else mp
        if mp.degrees()[2] < self.d:
            return mp
        return mp % self.m_mp

    # embeddings -----------------------------------------------------------
    def roots_numeric(self, bits):
        """All complex roots of m as ``acb`` enclosures at ``bits`` precision."""
        if bits in self._root_cache:
            return self._root_cache[bits]
        with flint.ctx.workprec(bits):
            roots = [r for r, _ in self.m.complex_roots()]
            roots.sort(key=lambda r: (-float(r.real.mid()), -float(r.imag.mid())))
        self._root_cache[bits] = roots
        return roots

    @property
    def embedding_index(self):
        if self._embedding_index is None:
            spec = self._embedding_spec
            if spec is None:
                idx = 0
            elif isinstance(spec, int) and not isinstance(spec, bool):
                if not 0 <= spec < self.d:
                    raise SchemaError("embedding index out of range")
                idx = spec
            else:
                z = complex(spec)
                roots = self.roots_numeric(128)
                dist = [abs(complex(float(r.real.mid()), float(r.imag.mid())) - z) for r in roots]
                idx = min(range(len(roots)), key=dist.__getitem__)
            self._embedding_index = idx
        return self._embedding_index

    def embedding(self, bits=64):
        return self.roots_numeric(bits)[self.embedding_index]


class FieldElement:
    """An element of a number field in the power basis."""

    __slots__ = ("field", "poly")

    def __init__(self, field, poly):
        self.field = field
        self.poly = poly

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other.poly
        if isinstance(other, (int, fmpq, fmpz, Fraction)):
            return fmpq_poly([to_fmpq(other)])
        return NotImplemented

    def _wrap(self, p):
        return FieldElement(self.field, p)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.poly + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.poly - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(o - self.poly)

    def __neg__(self):
        return self._wrap(-self.poly)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.poly * o
        if p.degree() >= self.field.d:
            p = p % self.field.m
        return self._wrap(p)

    __rmul__ = __mul__

    def inverse(self):
        if self.poly.is_zero():
            raise DivisionByZero("inverse of zero in %r" % self.field)
        if self.poly.degree() == 0:
            return self._wrap(fmpq_poly([1 / self.poly[0]]))
        g, s, _ = self.poly.xgcd(self.field.m)
        return self._wrap((s / g[0]) % self.field.m)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            o = self._coerce(other)
            if o is NotImplemented:
                return o
            other = self._wrap(o)
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(o) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.poly == other.poly
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.poly == o

    def __hash__(self):
        return hash(tuple(str(c) for c in self.coeffs()))

    def __bool__(self):
        return not self.poly.is_zero()

    def is_zero(self):
        return self.poly.is_zero()

    def is_rational(self):
        return self.poly.degree() <= 0

    def to_fmpq(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.poly[0]

    def coeffs(self):
        return [self.poly[i] for i in range(self.field.d)]

    def to_json(self):
        return [fmpq_str(c) for c in self.coeffs()]

    def sort_key(self):
        return tuple((c.p, c.q) for c in self.coeffs())

    def to_mpoly(self):
        return qpoly_to_mpoly(self.field.ctx, self.poly, 2)

    def __repr__(self):
        if self.is_rational():
            return str(self.poly[0])
        return "(%s)" % self.poly.str(var="t")

    __str__ = __repr__

    def embed_numeric(self, bits=64):
        """Enclosure (``acb``) of the image under the designated embedding."""
        if bits < 32:
            raise ValueError("bits must be >= 32")
        with flint.ctx.workprec(bits):
            if self.poly.degree() <= 0:
                return flint.acb(flint.arb(self.poly[0]) if not self.poly.is_zero() else 0)
            return _acb_eval(self.poly, self.field.embedding(bits))

    def embeddings(self, bits=64):
        """Enclosures of all d conjugates."""
        with flint.ctx.workprec(bits):
            if self.poly.degree() <= 0:
                c = flint.acb(self.poly[0]) if not self.poly.is_zero() else flint.acb(0)
                return [c] * self.field.d
            return [_acb_eval(self.poly, r) for r in self.field.roots_numeric(bits)]

    def norm(self):
        """Norm from K to Q."""
        if self.poly.degree() <= 0:
            return (self.poly[0] if not self.poly.is_zero() else fmpq(0)) ** self.field.d
        return _poly_resultant_q(self.field.m, self.poly)

    def charpoly(self):
        """Characteristic polynomial over Q of multiplication by self (monic, degree d)."""
        f = self.field
        # Res_t(m(t), x - a(t)) with x played by u
        res = f.m_mp.resultant(f.U - self.to_mpoly(), "t")
        return _mpoly_to_qpoly(res, 1)


def _acb_eval(p, z):
    acc = flint.acb(0)
    for i in range(p.degree(), -1, -1):
        acc = acc * z + flint.acb(p[i])
    return acc


def _poly_resultant_q(p, q):
    ctx = fmpq_mpoly_ctx.get(("t",), "lex")
    r = qpoly_to_mpoly(ctx, p, 0).resultant(qpoly_to_mpoly(ctx, q, 0), "t")
    return r.leading_coefficient() if not r.is_zero() else fmpq(0)


def qpoly_to_mpoly(ctx, p, var):
    """``fmpq_poly`` to an mpoly in generator number ``var`` of ``ctx``."""
    n = ctx.nvars() if callable(ctx.nvars) else ctx.nvars
    terms = {}
    for i in range(p.degree() + 1):
        c = p[i]
        if c != 0:
            e = [0] * n
            e[var] = i
            terms[tuple(e)] = c
    return ctx.from_dict(terms)


def _mpoly_to_qpoly(mp, var):
    """Univariate mpoly in generator number ``var`` to ``fmpq_poly``."""
    d = mp.to_dict()
    if not d:
        return fmpq_poly()
    n = max(k[var] for k in d)
    cs = [fmpq(0)] * (n + 1)
    for k, c in d.items():
        cs[k[var]] += c
    return fmpq_poly(cs)


# ---------------------------------------------------------------------------
# Univariate polynomials over K


class UniPoly:
    """Polynomial in one variable x over K (stored with x played by u)."""

    __slots__ = ("field", "mp")

    def __init__(self, field, mp):
        self.field = field
        self.mp = field.reduce(mp)

    @classmethod
    def from_coeffs(cls, field, coeffs):
        ctx = field.ctx
        mp = ctx.constant(0)
        for i, c in enumerate(coeffs):
            c = field(c)
            if c:
                mp += c.to_mpoly() * field.U ** i
        return cls(field, mp)

    @classmethod
    def x(cls, field):
        return cls(field, field.U)

    def coeff_map(self):
        """Map from x-degree to coefficient as ``fmpq_poly`` in t."""
        out = {}
        for k, c in self.mp.to_dict().items():
            out.setdefault(k[1], {})[k[2]] = c
        res = {}
        for e, tc in out.items():
            n = max(tc)
            cs = [fmpq(0)] * (n + 1)
            for j, c in tc.items():
                cs[j] = c
            res[e] = fmpq_poly(cs)
        return res

    def coeffs(self):
        cm = self.coeff_map()
        if not cm:
            return []
        return [FieldElement(self.field, cm.get(i, fmpq_poly())) for i in range(max(cm) + 1)]

    def coeff(self, i):
        return FieldElement(self.field, self.coeff_map().get(i, fmpq_poly()))

    def degree(self):
        if self.mp.is_zero():
            return -1
        return self.mp.degrees()[1]

    def lc(self):
        return self.coeff(self.degree())

    def is_zero(self):
        return self.mp.is_zero()

    def __bool__(self):
        return not self.mp.is_zero()

    def _other(self, o):
        if isinstance(o, UniPoly):
            return o.mp
        if isinstance(o, FieldElement):
            return o.to_mpoly()
        return self.field.ctx.constant(to_fmpq(o))

    def __add__(self, o):
        return UniPoly(self.field, self.mp + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return UniPoly(self.field, self.mp - self._other(o))

    def __rsub__(self, o):
        return UniPoly(self.field, self._other(o) - self.mp)

    def __neg__(self):
        return UniPoly(self.field, -self.mp)

    def __mul__(self, o):
        return UniPoly(self.field, self.mp * self._other(o))

    __rmul__ = __mul__

    def __pow__(self, n):
        r = UniPoly(self.field, self.field.ctx.constant(1))
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, o):
        if isinstance(o, UniPoly):
            return self.mp == o.mp
        return self.mp == self._other(o)

    def __hash__(self):
        return hash(str(self.mp))

    def __repr__(self):
        return "UniPoly(%s)" % self.mp.str().replace("u", "x")

    def to_qpoly(self):
        """As ``fmpq_poly`` (only for polynomials with rational coefficients)."""
        if self.mp.degrees()[2] > 0:
            raise ValueError("coefficients are not rational")
        return _mpoly_to_qpoly(self.mp, 1)

    @classmethod
    def from_qpoly(cls, field, p):
        return cls(field, qpoly_to_mpoly(field.ctx, p, 1))

    def _rational(self):
        return self.field.d == 1 or self.mp.degrees()[2] == 0

    def monic(self):
        if self.is_zero():
            return self
        return self * self.lc().inverse()

    def divmod(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        f = self.field
        if f.d == 1:
            q, r = divmod(self.to_qpoly(), other.to_qpoly())
            return UniPoly.from_qpoly(f, q), UniPoly.from_qpoly(f, r)
        db = other.degree()
        inv = other.lc().inverse()
        b = (other * inv).mp
        q = f.ctx.constant(0)
        r = self.mp
        U = f.U
        while not r.is_zero():
            dr = r.degrees()[1]
            if dr < db:
                break
            c = UniPoly(f, r).coeff(dr).to_mpoly()
            term = c * U ** (dr - db)
            q += term
            r = f.reduce(r - term * b)
        return UniPoly(f, f.reduce(q * inv.to_mpoly())), UniPoly(f, r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def gcd(self, other):
        """Monic gcd over K."""
        f = self.field
        if self.is_zero() and other.is_zero():
            raise ValueError("gcd of two zero polynomials")
        if f.d == 1:
            return UniPoly.from_qpoly(f, self.to_qpoly().gcd(other.to_qpoly()))
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        return UniPoly(self.field, self.mp.derivative("u"))

    def __call__(self, x):
        x = self.field(x)
        acc = self.field.zero()
        for c in reversed(self.coeffs()):
            acc = acc * x + c
        return acc

    def compose_shift(self, c):
        """p(x + c)."""
        f = self.field
        return UniPoly(f, self.mp.compose(f.V, f.U + f(c).to_mpoly(), f.T))

    def resultant(self, other):
        """Resultant in x, an element of K."""
        f = self.field
        if self.is_zero() or other.is_zero():
            return f.zero()
        if self.degree() == 0:
            return self.coeff(0) ** other.degree()
        if other.degree() == 0:
            return other.coeff(0) ** self.degree()
        r = f.reduce(self.mp.resultant(other.mp, "u"))
        return FieldElement(f, _mpoly_to_qpoly(r, 2))

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (s_i, i) with p = lc * prod s_i^i, s_i monic squarefree."""
        if self.degree() <= 0:
            return []
        out = []
        dp = self.derivative()
        a = self.gcd(dp)
        b = self.exact_div(a)
        c = dp.exact_div(a)
        d = c - b.derivative()
        i = 1
        while b.degree() > 0:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            if a.degree() > 0:
                out.append((a.monic(), i))
            d = c - b.derivative()
            i += 1
        return out

    def roots(self):
        """Roots in K with multiplicity, as a list of (root, multiplicity)."""
        if self.is_zero():
            raise ValueError("roots of the zero polynomial")
        if self.degree() < 1:
            return []
        f = self.field
        if f.d == 1:
            _, facs = self.to_qpoly().factor()
            out = [(f(-g[0] / g[1]), e) for g, e in facs if g.degree() == 1]
        else:
            out = [(r, self.linear_factors_exponent(r)) for r in _norm_roots(self)]
        out.sort(key=lambda re: re[0].sort_key())
        return out

    def linear_factors_exponent(self, r):
        """Multiplicity of the root r."""
        n = 0
        p = self
        lin = UniPoly.x(self.field) - r
        while not p.is_zero() and p(r).is_zero():
            p = p.exact_div(lin)
            n += 1
        return n


def _norm_roots(p):
    """Roots in K of p: their minimal polynomials are Q-factors of the norm of degree <= [K:Q]."""
    f = p.field
    N = _mpoly_to_qpoly(p.mp.resultant(f.m_mp, "t"), 1)
    _, facs = N.factor()
    roots = []
    for g, _ in facs:
        if g.degree() > f.d or f.d % g.degree():
            continue
        h = p.gcd(UniPoly.from_qpoly(f, g))
        for r in _squarefree_roots(h):
            if r not in roots:
                roots.append(r)
    return roots


def _squarefree_roots(s):
    f = s.field
    if s.degree() < 1:
        return []
    if s.degree() == 1:
        return [-s.coeff(0) / s.coeff(1)]
    if f.d == 1:
        q = s.to_qpoly()
        _, facs = q.factor()
        return [f(-g[0] / g[1]) for g, _ in facs if g.degree() == 1]
    # Trager: shift until the norm is squarefree, then split by its Q-factors
    for k in _shift_sequence():
        sk = UniPoly(f, s.mp.compose(f.V, f.U - k * f.T, f.T)) if k else s
        N = _mpoly_to_qpoly(sk.mp.resultant(f.m_mp, "t"), 1)
        if N.gcd(N.derivative()).degree() == 0:
            break
    _, facs = N.factor()
    roots = []
    for g, _ in facs:
        if g.degree() != f.d:
            continue
        h = sk.gcd(UniPoly.from_qpoly(f, g))
        if h.degree() == 1:
            r = -h.coeff(0) / h.coeff(1) - k * f.gen()
            if s(r).is_zero():
                roots.append(r)
    return roots


def _shift_sequence():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


@lru_cache(maxsize=None)
def rational_field():
    return NumberField([0, 1])


def gcd_univariate(p, q):
    return p.gcd(q)


def roots_in_field(p):
    return p.roots()


def resultant(p, q):
    return p.resultant(q)
