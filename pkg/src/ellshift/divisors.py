"""Divisors on the curve and their realization by explicit functions."""

from .curvefunc import CurveFunction, CurvePoly
from .errors import NotPrincipal
from .exactfield import UniPoly


class Divisor:
    """Finitely supported map from points to nonzero integers."""

    __slots__ = ("curve", "mults")

    def __init__(self, curve, mults=None):
        self.curve = curve
        self.mults = {p: int(m) for p, m in (mults or {}).items() if m}

    @classmethod
    def point(cls, p, m=1):
        return cls(p.curve, {p: m})

    def __getitem__(self, p):
        return self.mults.get(p, 0)

    def __iter__(self):
        return iter(self.mults.items())

    def __len__(self):
        return len(self.mults)

    def support(self):
        return sorted(self.mults, key=lambda p: p.sort_key())

    def affine_part(self):
        return Divisor(self.curve, {p: m for p, m in self.mults.items() if not p.is_zero})

    def __add__(self, other):
        out = dict(self.mults)
        for p, m in other.mults.items():
            out[p] = out.get(p, 0) + m
        return Divisor(self.curve, out)

    def __neg__(self):
        return Divisor(self.curve, {p: -m for p, m in self.mults.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Divisor(self.curve, {p: k * m for p, m in self.mults.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.mults == other.mults

    def __hash__(self):
        return hash(frozenset(self.mults.items()))

    def __repr__(self):
        if not self.mults:
            return "0"
        return " + ".join("%d*I%r" % (self[p], p) for p in self.support())

    def degree(self):
        return sum(self.mults.values())

    def is_effective(self):
        return all(m > 0 for m in self.mults.values())

    def to_json(self):
        return [{"point": p.to_json(), "multiplicity": self[p]} for p in self.support()]


def is_proper(D):
    return D.degree() == 0


def elliptic_sum(D):
    s = D.curve.O
    for p, m in D:
        if not p.is_zero:
            s = s + p * m
    return s


def is_principal(D):
    return is_proper(D) and elliptic_sum(D).is_zero


def is_delta_principal(D, delta, bound=None, ctx=None):
    """N with elliptic_sum(D) = N delta and |N| <= bound, else None."""
    from .heights import multiple_of_delta
    if not is_proper(D):
        return None
    return multiple_of_delta(elliptic_sum(D), delta, ctx, bound=bound)


def shift_point(D, p, n, delta):
    """Move the multiplicity of p to p + n delta."""
    if n == 0 or p not in D.mults:
        return D
    m = D.mults[p]
    out = dict(D.mults)
    del out[p]
    q = p + delta * n
    out[q] = out.get(q, 0) + m
    return Divisor(D.curve, out)


def vertical(p):
    """u - x(p) as a function."""
    curve = p.curve
    F = curve.field
    return CurveFunction.from_poly(CurvePoly(curve, F.U - p.x.to_mpoly(), True))


def line_function(T, P):
    """g with div(g) = I_T + I_P - I_(T+P) - I_O."""
    curve = T.curve
    F = curve.field
    one = CurveFunction.constant(curve, 1)
    if T.is_zero or P.is_zero:
        return one
    if (T + P).is_zero:
        return vertical(T)
    if T == P:
        m = (3 * T.x * T.x + curve.a) / (2 * T.y)
    else:
        m = (P.y - T.y) / (P.x - T.x)
    S = T + P
    line = CurvePoly(curve, F.V - T.y.to_mpoly() - m.to_mpoly() * (F.U - T.x.to_mpoly()), True)
    den = UniPoly(F, F.U - S.x.to_mpoly())
    return CurveFunction(curve, line, den)


def realize(D):
    """A function with divisor exactly D, normalized to dominant coefficient 1."""
    if not is_principal(D):
        raise NotPrincipal("divisor is not principal: %r" % (D,))
    curve = D.curve
    f = CurveFunction.constant(curve, 1)
    T = curve.O
    num = CurveFunction.constant(curve, 1)
    den = CurveFunction.constant(curve, 1)
    for p in D.support():
        if p.is_zero:
            continue
        m = D[p]
        step = p if m > 0 else -p
        for _ in range(abs(m)):
            if m < 0:
                den = den * vertical(p)
            num = num * line_function(T, step)
            T = T + step
    assert T.is_zero
    f = num / den
    return f.scale(f.dominant_coefficient().inverse())


def reduce_mod_principal(D):
    """(q, f): q = elliptic_sum(D) and div(f) = D - (I_q - I_O)."""
    q = elliptic_sum(D)
    rest = D - Divisor(D.curve, {q: 1}) + Divisor(D.curve, {D.curve.O: 1})
    return q, realize(rest)
