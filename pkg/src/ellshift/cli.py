"""Command line entry point: ``ellshift {solve,analyze,heights,curve-check}``.

Input and output are JSON with every number written as an exact string.
Errors are printed as {"error": code, "message": ...} with exit status 1
(2 for malformed input).
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .curve import DEFAULT_TORSION_CAP, torsion_order
from .curvefunc import divisor_of
from .eqcore import rational_singularities, universal_divisor, verify_solution
from .errors import EllShiftError, SchemaError
from .heights import HeightContext, canonical_height, naive_height, pairing
from .serialization import (dumps, emit_output, error_document, parse_curve, parse_input,
                            parse_point)
from .solver import (DEFAULT_MAX_COMBINATIONS, hyperexponential_search,
                     pseudo_rational_solutions, rational_solutions)
from .theta import theta_divisor


@dataclass
class JobConfig:
    input: str = "-"
    solution_class: str = "rational"
    precision: int = 128
    height_doublings: int = 6
    torsion_cap: int = DEFAULT_TORSION_CAP
    max_combinations: int = DEFAULT_MAX_COMBINATIONS
    verify: bool = False
    emit_divisors: bool = False
    principality_filter: bool = True

    def __post_init__(self):
        for name in ("precision", "height_doublings", "torsion_cap", "max_combinations"):
            if getattr(self, name) <= 0:
                raise SchemaError("%s must be positive" % name.replace("_", "-"))

    def height_context(self):
        return HeightContext(doublings=max(2, self.height_doublings), bits=self.precision,
                             torsion_cap=self.torsion_cap)


def _read(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as e:
        raise SchemaError("cannot read %s: %s" % (path, e.strerror))
    try:
        return json.loads(text)
    except ValueError as e:
        raise SchemaError("invalid JSON: %s" % e)


def _arb_json(x):
    return {"mid": x.mid().str(radius=False), "rad": x.rad().str(radius=False),
            "lower": x.lower().str(radius=False), "upper": x.upper().str(radius=False)}


def _solution_doc(sol, eq, cfg):
    doc = sol.to_json()
    if cfg.verify:
        doc["verified"] = bool(verify_solution(eq, sol))
    if cfg.emit_divisors:
        divs = {"rational": divisor_of(sol.rational_part).to_json()}
        if sol.theta is not None and not sol.pole.is_zero:
            divs["theta_ratio"] = theta_divisor(sol.pole, eq.delta).to_json()
        if sol.hyper is not None:
            divs["hyper_ratio"] = divisor_of(sol.hyper.ratio).to_json()
        doc["divisors"] = divs
    return doc


def run_solve(cfg):
    ctx = cfg.height_context()
    _, _, eq = parse_input(_read(cfg.input), ctx=ctx)
    extra = {}
    if cfg.solution_class == "rational":
        sols = rational_solutions(eq, ctx)
    elif cfg.solution_class == "pseudo":
        sols = pseudo_rational_solutions(eq, ctx)
    else:
        rep = hyperexponential_search(eq, ctx, max_combinations=cfg.max_combinations,
                                      principality_filter=cfg.principality_filter)
        sols = rep.solutions
        extra = {"combinations": rep.combinations, "realizable": rep.realizable}
    out = emit_output(sols, extra)
    order = sorted(sols, key=lambda s: s.sort_key())
    out["solutions"] = [dict(_solution_doc(s, eq, cfg), **{"class": s.kind}) for s in order]
    out["dimension"] = len(order)
    return out


def run_analyze(cfg):
    ctx = cfg.height_context()
    _, _, eq = parse_input(_read(cfg.input), ctx=ctx)
    records = rational_singularities(eq)
    ud = universal_divisor(eq, ctx, records)
    return {
        "singularities": [{"point": r.point.to_json(), "multiplicity": r.multiplicity}
                          for r in records],
        "orbits": [{"first": p.first.to_json(), "a_l": p.root_l, "a_0": p.root_0,
                    "jump_range": list(p.jump_range)} for p in ud.profiles],
        "universal_divisor": ud.divisor.to_json(),
        "dispersion_bound": ud.bound,
    }


def _points_of(doc, curve):
    if "points" in doc:
        pts = doc["points"]
        if not isinstance(pts, list):
            raise SchemaError("points must be a list")
        return [parse_point(curve, p) for p in pts]
    if "delta" in doc:
        return [parse_point(curve, doc["delta"])]
    raise SchemaError("give 'points' or 'delta'")


def run_heights(cfg):
    ctx = cfg.height_context()
    doc = _read(cfg.input)
    curve = parse_curve(doc)
    pts = _points_of(doc, curve)
    rows = []
    for p in pts:
        rows.append({"point": p.to_json(),
                     "naive": _arb_json(naive_height(p, ctx.bits)),
                     "canonical": _arb_json(canonical_height(p, ctx))})
    pair = [[_arb_json(pairing(p, q, ctx)) for q in pts] for p in pts]
    return {"heights": rows, "pairings": pair}


def run_curve_check(cfg):
    ctx = cfg.height_context()
    doc = _read(cfg.input)
    curve = parse_curve(doc)
    out = {"curve": {"a": curve.a.to_json(), "b": curve.b.to_json()}, "nonsingular": True}
    if "delta" in doc:
        delta = parse_point(curve, doc["delta"])
        n = torsion_order(delta, cfg.torsion_cap)
        out["delta"] = delta.to_json()
        out["torsion_order"] = n
        if n is None:
            h = canonical_height(delta, ctx)
            out["canonical_height"] = _arb_json(h)
            out["non_torsion_certified"] = bool(h.lower() > 0)
        out["well_posed"] = n is None
    return out


COMMANDS = {"solve": run_solve, "analyze": run_analyze, "heights": run_heights,
            "curve-check": run_curve_check}


def build_parser():
    ap = argparse.ArgumentParser(prog="ellshift",
                                 description="Exact solutions of elliptic difference equations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", default="-", help="JSON document (default: stdin)")
        p.add_argument("--precision", type=int, default=128, help="bits for height enclosures")
        p.add_argument("--height-doublings", type=int, default=6)
        p.add_argument("--torsion-cap", type=int, default=DEFAULT_TORSION_CAP)

    s = sub.add_parser("solve", help="compute a basis of solutions")
    common(s)
    s.add_argument("--class", dest="solution_class", choices=["rational", "pseudo", "hyper"],
                   default="rational")
    s.add_argument("--verify", action="store_true", help="re-check every solution exactly")
    s.add_argument("--max-combinations", type=int, default=DEFAULT_MAX_COMBINATIONS)
    s.add_argument("--no-principality-filter", dest="principality_filter", action="store_false")
    s.add_argument("--emit-divisors", action="store_true")
    for name, hlp in (("analyze", "singularities and universal divisor"),
                      ("heights", "naive and canonical heights, pairings"),
                      ("curve-check", "curve and shift validation")):
        common(sub.add_parser(name, help=hlp))
    return ap


def config_from_args(args):
    kw = {k: v for k, v in vars(args).items() if k != "command"}
    return JobConfig(**kw)


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        doc = COMMANDS[args.command](cfg)
    except SchemaError as e:
        out.write(dumps(error_document(e)) + "\n")
        return 2
    except EllShiftError as e:
        out.write(dumps(error_document(e)) + "\n")
        return 1
    out.write(dumps(doc) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
