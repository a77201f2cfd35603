"""Theta factors, hyperexponential factors and solutions, all described by shift ratios."""

from .curvefunc import CurveFunction, translate_pullback
from .divisors import Divisor, realize
from .errors import DivisionByZero


def theta_divisor(pole, delta):
    """-I_(pole - delta) + I_pole + I_(-delta) - I_O."""
    curve = delta.curve
    D = Divisor(curve, {pole: 1})
    D = D + Divisor(curve, {pole - delta: -1})
    D = D + Divisor(curve, {-delta: 1})
    return D + Divisor(curve, {curve.O: -1})


def theta_ratio(lam, pole, delta):
    """The ratio Theta(p + delta)/Theta(p): lambda times the normalized realization."""
    curve = delta.curve
    lam = curve.field(lam)
    if lam.is_zero():
        raise DivisionByZero("lambda must be nonzero")
    if pole.is_zero:
        return CurveFunction.constant(curve, lam)
    return realize(theta_divisor(pole, delta)).scale(lam)


def chord_scale(pole, delta):
    """-1/m for m the slope of the chord through pole and -delta, or None if vertical.

    A ratio built as lam * (chord / vertical) has leading coefficient lam * chord_scale
    at O, so lambda_chord = lambda / chord_scale.
    """
    if pole.is_zero:
        return None
    nd = -delta
    if pole == nd:
        if pole.y.is_zero():
            return None
        m = (3 * pole.x * pole.x + pole.curve.a) / (2 * pole.y)
    elif pole.x == nd.x:
        return None
    else:
        m = (pole.y - nd.y) / (pole.x - nd.x)
    if m.is_zero():
        return None
    return -m.inverse()


class ThetaFactor:
    __slots__ = ("lam", "pole", "delta", "_ratio")

    def __init__(self, lam, pole, delta):
        self.lam = delta.curve.field(lam)
        self.pole = pole
        self.delta = delta
        self._ratio = None

    @property
    def ratio(self):
        if self._ratio is None:
            self._ratio = theta_ratio(self.lam, self.pole, self.delta)
        return self._ratio

    def is_trivial(self):
        return self.pole.is_zero and self.lam == 1

    def __eq__(self, other):
        return isinstance(other, ThetaFactor) and self.lam == other.lam and self.pole == other.pole

    def __hash__(self):
        return hash((self.lam, self.pole))

    def __repr__(self):
        return "Theta[%s, %r]" % (self.lam, self.pole)

    @property
    def lambda_chord(self):
        c = chord_scale(self.pole, self.delta)
        if c is None:
            return self.lam if self.pole.is_zero else None
        return self.lam / c

    def to_json(self):
        out = {"lambda": self.lam.to_json(), "pole": self.pole.to_json()}
        lc = self.lambda_chord
        if lc is not None and not self.pole.is_zero:
            out["lambda_chord"] = lc.to_json()
        return out


class HyperexpFactor:
    __slots__ = ("ratio",)

    def __init__(self, ratio):
        if ratio.is_zero():
            raise DivisionByZero("hyperexponential ratio must be nonzero")
        self.ratio = ratio

    def is_trivial(self):
        return self.ratio == CurveFunction.constant(self.ratio.curve, 1)

    def __eq__(self, other):
        return isinstance(other, HyperexpFactor) and self.ratio == other.ratio

    def __hash__(self):
        return hash(self.ratio)

    def __repr__(self):
        return "Hyper[%r]" % (self.ratio,)

    def to_json(self):
        return {"ratio": self.ratio.to_json()}


class Solution:
    """rational_part * Theta * Hyper."""

    __slots__ = ("rational_part", "theta", "hyper")

    def __init__(self, rational_part, theta=None, hyper=None):
        if rational_part.is_zero():
            raise ValueError("rational part must be nonzero")
        if theta is not None and theta.is_trivial():
            theta = None
        if hyper is not None and hyper.is_trivial():
            hyper = None
        self.rational_part = rational_part
        self.theta = theta
        self.hyper = hyper

    def __eq__(self, other):
        return (isinstance(other, Solution) and self.rational_part == other.rational_part
                and self.theta == other.theta and self.hyper == other.hyper)

    __hash__ = None

    @property
    def lam(self):
        return self.theta.lam if self.theta else self.rational_part.curve.field.one()

    @property
    def pole(self):
        return self.theta.pole if self.theta else self.rational_part.curve.O

    @property
    def kind(self):
        if self.hyper is not None:
            return "hyper"
        if self.theta is not None:
            return "pseudo"
        return "rational"

    def __repr__(self):
        parts = [repr(self.rational_part)]
        if self.theta:
            parts.append(repr(self.theta))
        if self.hyper:
            parts.append(repr(self.hyper))
        return " * ".join(parts)

    def to_json(self):
        out = {"rational": self.rational_part.to_json()}
        if self.theta:
            out["theta"] = self.theta.to_json()
        if self.hyper:
            out["hyper"] = self.hyper.to_json()
        return out

    def sort_key(self):
        order = {"rational": 0, "pseudo": 1, "hyper": 2}
        return (order[self.kind], self.lam.sort_key(), self.pole.sort_key(),
                self.hyper.ratio.sort_key() if self.hyper else (), self.rational_part.sort_key())


def solution_ratio(sol, i, delta):
    """f(p + i delta) / f(p) for f = sol."""
    F = sol.rational_part
    r = translate_pullback(F, i, delta) / F
    for factor in (sol.theta, sol.hyper):
        if factor is None:
            continue
        R = factor.ratio
        if R.is_constant():
            r = r * (R ** i)
            continue
        for j in range(i):
            r = r * translate_pullback(R, j, delta)
    return r
