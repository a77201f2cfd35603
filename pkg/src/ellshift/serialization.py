"""JSON documents for equations, points, divisors and solutions. Numbers are exact strings."""

import json

from .curve import Curve
from .curvefunc import CurveFunction, CurvePoly
from .divisors import Divisor
from .eqcore import EllipticDifferenceEquation
from .errors import EllShiftError, PointNotOnCurve, SchemaError
from .exactfield import NumberField
from .theta import HyperexpFactor, Solution, ThetaFactor


def _require(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError("missing key %r" % key)
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError("key %r has the wrong type" % key)
    return val


def parse_field(doc):
    minpoly = _require(doc, "minpoly", list)
    return NumberField(minpoly, embedding=doc.get("embedding"))


def parse_element(K, x):
    if isinstance(x, list):
        return K(x)
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return K(x)
    raise SchemaError("malformed field element %r" % (x,))


def parse_point(curve, doc):
    if doc == "O":
        return curve.O
    if not isinstance(doc, list) or len(doc) != 2:
        raise SchemaError("a point is \"O\" or [x, y]")
    return curve.point(parse_element(curve.field, doc[0]), parse_element(curve.field, doc[1]))


def parse_curve(doc):
    K = parse_field(_require(doc, "field", dict))
    c = _require(doc, "curve", dict)
    return Curve(K, parse_element(K, _require(c, "a")), parse_element(K, _require(c, "b")))


def parse_input(doc, ctx=None, check_torsion=True):
    """Equation document -> (curve, delta, equation)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except ValueError as e:
            raise SchemaError("invalid JSON: %s" % e)
    if not isinstance(doc, dict):
        raise SchemaError("equation document must be an object")
    curve = parse_curve(doc)
    delta = parse_point(curve, _require(doc, "delta"))
    raw = _require(doc, "coeffs", list)
    coeffs = [CurvePoly.from_json(curve, c) for c in raw]
    eq = EllipticDifferenceEquation(curve, delta, coeffs, check_torsion=check_torsion, ctx=ctx)
    return curve, delta, eq


def equation_to_json(eq):
    K = eq.field
    out = {"field": {"minpoly": [str(K.m[i]) for i in range(K.d + 1)]},
           "curve": {"a": eq.curve.a.to_json(), "b": eq.curve.b.to_json()},
           "delta": eq.delta.to_json(),
           "coeffs": [a.to_json() for a in eq.coeffs]}
    if K._embedding_spec is not None:
        out["field"]["embedding"] = K._embedding_spec
    return out


def divisor_to_json(D):
    return D.to_json()


def parse_divisor(curve, doc):
    if not isinstance(doc, list):
        raise SchemaError("a divisor is a list of {point, multiplicity}")
    D = Divisor(curve)
    for item in doc:
        p = parse_point(curve, _require(item, "point"))
        D = D + Divisor(curve, {p: int(_require(item, "multiplicity"))})
    return D


def parse_solution(curve, delta, doc):
    F = CurveFunction.from_json(curve, _require(doc, "rational", dict))
    theta = None
    if "theta" in doc:
        t = doc["theta"]
        theta = ThetaFactor(parse_element(curve.field, _require(t, "lambda")),
                            parse_point(curve, _require(t, "pole")), delta)
    hyper = None
    if "hyper" in doc:
        hyper = HyperexpFactor(CurveFunction.from_json(curve, _require(doc["hyper"], "ratio", dict)))
    return Solution(F, theta, hyper)


def emit_output(solutions, extra=None):
    sols = sorted(solutions, key=lambda s: s.sort_key())
    out = {"solutions": [dict(s.to_json(), **{"class": s.kind}) for s in sols]}
    if extra:
        out.update(extra)
    return out


def error_document(err):
    if isinstance(err, EllShiftError):
        return err.to_json()
    return {"error": "internal", "message": str(err)}


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=1)


__all__ = ["parse_input", "parse_point", "parse_solution", "parse_divisor", "emit_output",
           "equation_to_json", "error_document", "dumps", "PointNotOnCurve"]
