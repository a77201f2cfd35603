"""Naive and canonical heights, the height pairing, and the bounds built on them.

Heights are returned as ``arb`` enclosures. The canonical height uses the
doubling limit h(2^n p)/4^n with a tail estimate derived from the observed
defects |h(2^k p) - 4 h(2^(k-1) p)|. Every integer decision taken from a height
is confirmed by exact group-law arithmetic, so a loose enclosure can only
produce ``Inconclusive``, never a wrong answer.
"""

import math

import flint
from flint import arb, fmpq, fmpz

from .curve import DEFAULT_TORSION_CAP, scalar_mul, torsion_order
from .errors import Inconclusive, PrecisionExhausted
from .exactfield import precision_cap


class HeightContext:
    def __init__(self, doublings=6, bits=128, torsion_cap=DEFAULT_TORSION_CAP, max_candidates=6):
        if doublings < 2:
            raise ValueError("doublings must be >= 2")
        self.doublings = doublings
        self.bits = bits
        self.torsion_cap = torsion_cap
        self.max_candidates = max_candidates
        self._cache = {}

    def __repr__(self):
        return "HeightContext(doublings=%d, bits=%d)" % (self.doublings, self.bits)


def _log_max1(z):
    a = abs(z)
    return a.max(arb(1)).log()


def naive_height_element(alpha, bits=128):
    """Weil height of alpha in K (no 1/2 factor)."""
    f = alpha.field
    if alpha.is_rational():
        q = alpha.to_fmpq() if not alpha.is_zero() else fmpq(0)
        with flint.ctx.workprec(bits):
            return arb(max(abs(q.p), q.q)).log()
    cp = alpha.charpoly()
    den = fmpz(1)
    for i in range(cp.degree() + 1):
        den = _lcm(den, cp[i].q)
    ints = [cp[i] * den for i in range(cp.degree() + 1)]
    g = fmpz(0)
    for c in ints:
        g = fmpz(math.gcd(int(g), int(c.p)))
    lead = ints[-1].p // g
    size = max(int(c.p).bit_length() for c in ints if c != 0) + max(
        int(c.q).bit_length() for c in alpha.coeffs())
    prec = max(bits, size + bits)
    cap = precision_cap() + size
    while True:
        with flint.ctx.workprec(prec):
            total = arb(lead).log()
            for z in alpha.embeddings(prec):
                total += _log_max1(z)
            h = total / f.d
        if h.rad() < arb(2) ** (-bits // 2) or prec > cap:
            if not h.is_finite():
                raise PrecisionExhausted("naive height enclosure is not finite")
            return h
        prec *= 2


def _lcm(a, b):
    a, b = int(a), int(b)
    return fmpz(a * b // math.gcd(a, b))


def naive_height(p, bits=128):
    """h(p) = h(x(p)); h(O) = 0."""
    if p.is_zero:
        return arb(0)
    return naive_height_element(p.x, bits)


def canonical_height(p, ctx=None):
    ctx = ctx or HeightContext()
    key = (p, ctx.doublings)
    if key in ctx._cache:
        return ctx._cache[key]
    if p.is_zero or torsion_order(p, ctx.torsion_cap) is not None:
        h = arb(0)
    else:
        hs = []
        q = p
        for k in range(ctx.doublings + 1):
            hs.append(naive_height(q, ctx.bits))
            if k < ctx.doublings:
                q = q + q
        n = ctx.doublings
        defects = [abs(hs[k] - 4 * hs[k - 1]) for k in range(1, n + 1)]
        C = max(d.upper() for d in defects)
        tail = 2 * C / (3 * arb(4) ** n)
        est = hs[n] / arb(4) ** n
        h = arb(est.mid(), (est.rad() + tail).upper().mid())
        h = h.nonnegative_part()
    ctx._cache[key] = h
    return h


def pairing(p, q, ctx=None):
    ctx = ctx or HeightContext()
    return (canonical_height(p + q, ctx) - canonical_height(p, ctx) - canonical_height(q, ctx)) / 2


def _candidates(ratio):
    """Integers N >= 0 whose square may equal ``ratio``."""
    lo = ratio.lower()
    hi = ratio.upper()
    lo_f = max(0.0, float(lo.mid()) - float(lo.rad()))
    hi_f = float(hi.mid()) + float(hi.rad())
    return list(range(int(math.floor(math.sqrt(lo_f))), int(math.ceil(math.sqrt(hi_f))) + 1))


def multiple_of_delta(p, delta, ctx=None, bound=None):
    """The integer N with p = N*delta, or None. Exactly verified."""
    ctx = ctx or HeightContext()
    if p.is_zero:
        return 0
    hd = canonical_height(delta, ctx)
    if not hd > 0:
        raise Inconclusive("canonical height of the shift is not certified positive")
    hp = canonical_height(p, ctx)
    if hp.upper() < hd.lower() / 4:
        return None
    cands = [n for n in _candidates(hp / hd) if n > 0 and (bound is None or n <= bound)]
    if len(cands) > ctx.max_candidates:
        raise Inconclusive("height ratio does not isolate a multiple of the shift")
    for n in cands:
        q = scalar_mul(n, delta)
        if q == p:
            return n
        if -q == p:
            return -n
    return None


def dispersion_bound(points, delta, ctx=None):
    """Largest |N| such that two of the points may differ by N*delta.

    The differences p - q that are multiples of delta satisfy N^2 = h(p-q)/h(delta),
    so the floor of the certified upper bound of the square root suffices.
    """
    ctx = ctx or HeightContext()
    pts = list(points)
    hd = canonical_height(delta, ctx)
    best = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            s = pts[i] - pts[j]
            if s.is_zero:
                continue
            r = (canonical_height(s, ctx) / hd).upper()
            hi = float(r.mid()) + float(r.rad())
            best = max(best, int(math.floor(math.sqrt(max(hi, 0.0)) + 1e-9)))
    return best


def regulator_matrix(points, ctx=None):
    ctx = ctx or HeightContext()
    n = len(points)
    return [[pairing(points[i], points[j], ctx) for j in range(n)] for i in range(n)]


def regulator_norm_bound(points, delta, ctx=None):
    """ceil(||Reg||_2 * #L / sqrt(<delta,delta>)), with ||.||_2 bounded by Frobenius."""
    ctx = ctx or HeightContext()
    if not points:
        return 0
    reg = regulator_matrix(list(points), ctx)
    fro = arb(0)
    for row in reg:
        for e in row:
            fro += e * e
    fro = fro.sqrt()
    val = (fro * len(points) / canonical_height(delta, ctx).sqrt()).upper()
    return int(math.ceil(float(val.mid()) + float(val.rad())))
