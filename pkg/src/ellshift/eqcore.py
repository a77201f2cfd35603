"""Elliptic difference equations sum_i a_i(p) f(p + i delta) = 0: singularities,
orbits, the universal divisor, transforms and exact verification."""

from dataclasses import dataclass, field as dc_field

from .curve import torsion_order, DEFAULT_TORSION_CAP
from .curvefunc import CurveFunction, CurvePoly, affine_support_points, translate_pullback, valuation_at
from .divisors import Divisor
from .errors import RootOutsideField, SchemaError, TorsionShift
from .heights import HeightContext, dispersion_bound, multiple_of_delta


class EllipticDifferenceEquation:
    def __init__(self, curve, delta, coeffs, check_torsion=True, ctx=None):
        if len(coeffs) < 2:
            raise SchemaError("an equation needs at least two coefficients")
        coeffs = [c if isinstance(c, CurvePoly) else CurvePoly(curve, c) for c in coeffs]
        if coeffs[0].is_zero() or coeffs[-1].is_zero():
            raise SchemaError("a_0 and a_l must be nonzero")
        if delta.is_zero:
            raise TorsionShift("the shift is the point at infinity")
        self.curve = curve
        self.delta = delta
        self.coeffs = coeffs
        if check_torsion:
            from .curve import is_torsion
            n = is_torsion(delta, ctx=ctx)
            if n is not None:
                raise TorsionShift("the shift is a torsion point of order %d" % n)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def field(self):
        return self.curve.field

    def __repr__(self):
        return " + ".join("(%r) f(p + %d d)" % (a, i) for i, a in enumerate(self.coeffs))

    def apply(self, f):
        """sum a_i f(p + i delta) as a function (f given as a CurveFunction)."""
        total = CurveFunction.constant(self.curve, 0)
        for i, a in enumerate(self.coeffs):
            if a:
                total = total + CurveFunction.from_poly(a) * translate_pullback(f, i, self.delta)
        return total

    def twisted(self, c):
        """a_i -> c^i a_i."""
        c = self.field(c)
        return EllipticDifferenceEquation(self.curve, self.delta,
                                          [a * c ** i for i, a in enumerate(self.coeffs)],
                                          check_torsion=False)

    def to_json(self):
        return [a.to_json() for a in self.coeffs]


@dataclass(frozen=True)
class SingularityRecord:
    point: object
    multiplicity: int


def _relative(eq, p):
    vals = [valuation_at(a, p) for a in eq.coeffs if a]
    mn = min(vals)
    return valuation_at(eq.coeffs[-1], p) - mn, valuation_at(eq.coeffs[0], p) - mn


def singularities(eq, strict=True):
    """Roots of a_l (negative) and of a_0 (positive) not shared with all coefficients.

    With ``strict=False`` singular points outside C(K) are tolerated and the
    result is (records, (outside_l, outside_0)).
    """
    pts, flags = affine_support_points(eq.curve, [eq.coeffs[-1].norm(), eq.coeffs[0].norm()],
                                       strict=False)
    if strict and any(flags):
        side = "a_l" if flags[0] else "a_0"
        raise RootOutsideField("some zeros of %s are not K-rational points" % side)
    pts.append(eq.curve.O)
    out = []
    for p in pts:
        ml, m0 = _relative(eq, p)
        if ml > 0:
            out.append(SingularityRecord(p, -ml))
        if m0 > 0:
            out.append(SingularityRecord(p, m0))
    out.sort(key=lambda r: (r.point.sort_key(), r.multiplicity))
    if strict:
        return out
    return out, tuple(flags)


def rational_singularities(eq):
    """Singularity records usable for pole bounds.

    Points outside C(K) cannot share an orbit with K-rational points since delta
    is K-rational. If only one side has such points, their orbits carry a single
    kind of singularity and add nothing to the bounds, so they are dropped.
    """
    records, (out_l, out_0) = singularities(eq, strict=False)
    if out_l and out_0:
        raise RootOutsideField("both a_l and a_0 have zeros outside C(K); enlarge the field")
    return records


@dataclass
class OrbitProfile:
    """A singular orbit: points first + i delta for 0 <= i < len(root_l)."""
    first: object
    offsets: dict
    root_l: list
    root_0: list
    prefix_l: list = dc_field(default_factory=list)
    prefix_0: list = dc_field(default_factory=list)
    contains_O: bool = False

    @property
    def jump_range(self):
        return (-sum(self.root_l), sum(self.root_0))

    def point_at(self, i, delta):
        return self.first + delta * i

    @property
    def entries(self):
        return list(zip(self.prefix_l, self.prefix_0))


@dataclass
class UniversalDivisorResult:
    divisor: Divisor
    profiles: list
    bound: int

    def value_at_O(self):
        return self.divisor[self.divisor.curve.O]


def singular_orbits(eq, records=None, ctx=None, include_O=True):
    """Group singular points into delta-orbits. Returns a list of OrbitProfile."""
    ctx = ctx or HeightContext()
    records = singularities(eq) if records is None else records
    delta = eq.delta
    ml, m0 = {}, {}
    for r in records:
        if r.multiplicity < 0:
            ml[r.point] = ml.get(r.point, 0) - r.multiplicity
        else:
            m0[r.point] = m0.get(r.point, 0) + r.multiplicity
    pts = sorted(set(ml) | set(m0), key=lambda p: p.sort_key())
    O = eq.curve.O
    groups = []
    if include_O or O in pts:
        groups.append([(O, 0)])
    for p in pts:
        if p.is_zero:
            continue
        placed = False
        for g in groups:
            base = g[0][0]
            n = multiple_of_delta(p - base, delta, ctx)
            if n is not None:
                g.append((p, g[0][1] + n))
                placed = True
                break
        if not placed:
            groups.append([(p, 0)])
    profiles = []
    for g in groups:
        lo = min(n for _, n in g)
        hi = max(n for _, n in g)
        base, bn = g[0]
        first = base + delta * (lo - bn)
        span = hi - lo + 1
        rl = [0] * span
        r0 = [0] * span
        offs = {}
        for p, n in g:
            i = n - lo
            offs[p] = i
            rl[i] += ml.get(p, 0)
            r0[i] += m0.get(p, 0)
        has_O = any(p.is_zero for p, _ in g)
        if has_O and not any(rl) and not any(r0) and not include_O:
            continue
        pl, p0 = [], []
        acc = 0
        for x in rl:
            acc += x
            pl.append(acc)
        acc = 0
        for x in r0:
            acc += x
            p0.append(acc)
        profiles.append(OrbitProfile(first, offs, rl, r0, pl, p0, has_O))
    return profiles


def universal_divisor(eq, ctx=None, records=None):
    """Nonnegative divisor D with div(f) >= -D for every rational solution f."""
    ctx = ctx or HeightContext()
    records = rational_singularities(eq) if records is None else records
    profiles = singular_orbits(eq, records, ctx)
    l = eq.order
    delta = eq.delta
    mults = {}
    for prof in profiles:
        n = len(prof.root_l)
        total0 = sum(prof.root_0)
        for i in range(l, n):
            a = prof.prefix_l[i - l]
            b = total0 - (prof.prefix_0[i - 1] if i > 0 else 0)
            m = min(a, b)
            if m > 0:
                mults[prof.point_at(i, delta)] = m
    pts = [r.point for r in records]
    b = dispersion_bound(pts, delta, ctx) if len(pts) > 1 else 0
    return UniversalDivisorResult(Divisor(eq.curve, mults), profiles, b)


def universal_divisor_bruteforce(eq, base_points, radius):
    """Oracle: walk base + i delta for |i| <= radius, propagating pole bounds.

    Valuations are computed directly at every walked point. Forward propagation
    uses a_l and backward propagation uses a_0.
    """
    delta = eq.delta
    l = eq.order
    mults = {}
    seen = set()
    for base in base_points:
        walk = [base + delta * i for i in range(-radius, radius + 1)]
        if any(p in seen for p in walk):
            continue
        seen.update(walk)
        rel = [_relative(eq, p) for p in walk]
        n = len(walk)
        fwd = [0] * n
        for i in range(n):
            j = i - l
            if j >= 0:
                fwd[i] = max(0, rel[j][0] + max(fwd[j:i]))
        bwd = [0] * n
        for i in range(n - 1, -1, -1):
            nxt = bwd[i + 1:i + l + 1]
            bwd[i] = max(0, rel[i][1] + (max(nxt) if nxt else 0))
        for i, p in enumerate(walk):
            m = min(fwd[i], bwd[i])
            if m > 0:
                mults[p] = m
    return Divisor(eq.curve, mults)


def transform_by_hyperexp(eq, R):
    """Coefficients a_i * prod_{j<i} R(p + j delta), with denominators cleared."""
    if R.is_zero():
        raise ValueError("R must be nonzero")
    funcs = []
    acc = CurveFunction.constant(eq.curve, 1)
    for i, a in enumerate(eq.coeffs):
        funcs.append(CurveFunction.from_poly(a) * acc if a else CurveFunction.constant(eq.curve, 0))
        if i < eq.order:
            acc = acc * translate_pullback(R, i, eq.delta)
    L = None
    for g in funcs:
        if g:
            L = g.den if L is None else (L * g.den).exact_div(L.gcd(g.den))
    new = []
    for g in funcs:
        if not g:
            new.append(CurvePoly.constant(eq.curve, 0))
        else:
            new.append(g.num * L.exact_div(g.den))
    return EllipticDifferenceEquation(eq.curve, eq.delta, new, check_torsion=False)


def verify_solution(eq, sol):
    """Exact check that sol solves eq."""
    from .theta import solution_ratio
    if sol.rational_part.is_zero():
        raise ValueError("solutions must be nonzero")
    total = CurveFunction.constant(eq.curve, 0)
    for i, a in enumerate(eq.coeffs):
        if a:
            total = total + CurveFunction.from_poly(a) * solution_ratio(sol, i, eq.delta)
    return total.is_zero()
