"""Short Weierstrass curves v^2 = u^3 + a u + b over a number field and their points."""

from .errors import Inconclusive, PointNotOnCurve, SchemaError
from .exactfield import UniPoly

DEFAULT_TORSION_CAP = 16


class Curve:
    def __init__(self, field, a, b):
        self.field = field
        self.a = field(a)
        self.b = field(b)
        if (4 * self.a ** 3 + 27 * self.b ** 2).is_zero():
            raise SchemaError("singular curve: 4a^3 + 27b^2 = 0")
        self.O = CurvePoint(self, None, None)
        F = field
        self.f_mp = F.U ** 3 + self.a.to_mpoly() * F.U + self.b.to_mpoly()
        self.rel_mp = F.V ** 2 - self.f_mp
        self.f_uni = UniPoly(field, self.f_mp)

    def __eq__(self, other):
        return (isinstance(other, Curve) and self.field == other.field
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return "Curve(v^2 = u^3 + %s*u + %s)" % (self.a, self.b)

    def rhs(self, x):
        return (x * x + self.a) * x + self.b

    def point(self, x, y):
        x, y = self.field(x), self.field(y)
        if y * y != self.rhs(x):
            raise PointNotOnCurve("(%s, %s) is not on %r" % (x, y, self))
        return CurvePoint(self, x, y)

    def points_over(self, x):
        """K-rational points with abscissa x (zero, one or two)."""
        x = self.field(x)
        c = self.rhs(x)
        if c.is_zero():
            return [CurvePoint(self, x, c)]
        Y = UniPoly.x(self.field)
        ys = [r for r, _ in (Y * Y - c).roots()]
        return [CurvePoint(self, x, y) for y in ys]


class CurvePoint:
    """The point O (x = y = None) or an affine point (x, y)."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_zero(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.x is None:
            return hash("O")
        return hash((self.x, self.y))

    def __repr__(self):
        if self.x is None:
            return "O"
        return "(%s, %s)" % (self.x, self.y)

    def sort_key(self):
        if self.x is None:
            return (0,)
        return (1, self.x.sort_key(), self.y.sort_key())

    def to_json(self):
        if self.x is None:
            return "O"
        return [self.x.to_json(), self.y.to_json()]

    def __neg__(self):
        if self.x is None:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __add__(self, q):
        p = self
        if p.x is None:
            return q
        if q.x is None:
            return p
        if p.x == q.x:
            if p.y + q.y == 0:
                return p.curve.O
            m = (3 * p.x * p.x + p.curve.a) / (2 * p.y)
        else:
            m = (q.y - p.y) / (q.x - p.x)
        x3 = m * m - p.x - q.x
        y3 = m * (p.x - x3) - p.y
        return CurvePoint(p.curve, x3, y3)

    def __sub__(self, q):
        return self + (-q)

    def __mul__(self, n):
        return scalar_mul(n, self)

    __rmul__ = __mul__

    def on_curve(self):
        return self.x is None or self.y * self.y == self.curve.rhs(self.x)

    def is_two_torsion(self):
        return self.x is not None and self.y.is_zero()


def add(p, q):
    return p + q


def neg(p):
    return -p


def scalar_mul(n, p):
    if n < 0:
        return -scalar_mul(-n, p)
    result = p.curve.O
    base = p
    while n:
        if n & 1:
            result = result + base
        base = base + base
        n >>= 1
    return result


def torsion_order(p, cap=DEFAULT_TORSION_CAP):
    """Exact order of p if it is at most ``cap``, else None."""
    q = p
    for n in range(1, cap + 1):
        if q.is_zero:
            return n
        q = q + p
    return None


def is_torsion(p, cap=DEFAULT_TORSION_CAP, ctx=None):
    """Order of p when p is torsion of order <= cap; None when certified non-torsion.

    Non-torsion is certified by a canonical-height enclosure bounded away from 0.
    """
    n = torsion_order(p, cap)
    if n is not None:
        return n
    from .heights import canonical_height, HeightContext
    h = canonical_height(p, ctx or HeightContext())
    if h.lower() > 0:
        return None
    raise Inconclusive("could not certify that %r is non-torsion" % (p,))
