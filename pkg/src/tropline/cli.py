"""Command-line entry point: ``tropline <subcommand> ...``.

Every subcommand prints one JSON document (``plot`` prints SVG).  Domain errors
exit with status 1 and a JSON object on stderr; usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, TroplineError, ValidationError
from .field import QQ, FieldContext, cyclotomic3
from .parsing import parse_element, parse_polynomial
from .puiseux import KPolynomial, PuiseuxElement, substitute_poly, valuation
from .seminorm import CompositeSeminorm, composite_lognorm, linear_agreement, linear_polynomial, witness_difference
from .separate import (
    Arrangement,
    PointSet,
    check_certificate,
    hessian_arrangement,
    incidence_counts,
    separate_points,
    tropical_images,
    transversalize_arrangement,
)
from .serialize import (
    certificate_to_json,
    complex_to_json,
    context_from_json,
    embedding_to_json,
    kpoly_from_json,
    point_from_json,
    report_to_json,
    tpoint_to_json,
    tpoly_to_json,
    tval_to_json,
)
from .svg import ViewBox, emit_svg
from .tropcurve import corner_locus, set_intersection, stable_intersection, tropicalize_poly
from .tropsem import NEG_INF, trop_point

SEED_ENV = "TROPLINE_SEED"

REALIZABILITY_NOTE = (
    "Cited, not computed: the Hessian (4,3)-net is realizable over the complex numbers "
    "but has no realization over the reals, while its tropical counterpart admits "
    "realizations in both settings. This tool only certifies the complex arrangement."
)


class UsageError(Exception):
    """Bad command-line input; reported with exit status 2."""


# ---------------------------------------------------------------------------
# scenes


@dataclass
class Scene:
    context: FieldContext = QQ
    variables: tuple = ("x", "y")
    polynomials: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    incidences: dict = field(default_factory=dict)

    def curves(self) -> dict:
        """All named polynomials, lines included."""
        return {**self.polynomials, **self.lines}

    def arrangement(self) -> Arrangement:
        names = list(self.lines)
        pts = list(self.points)
        return Arrangement(
            [self.lines[n] for n in names],
            [self.points[p] for p in pts] if pts else None,
            [[names.index(l) for l in self.incidences.get(p, ()) if l in self.lines] for p in pts] if pts else None,
            names,
        )


def _read_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def load_scene(source) -> Scene:
    """Read and validate a scene from a path, ``"-"`` (stdin) or a parsed dict."""
    if isinstance(source, dict):
        obj = source
    elif source == "-":
        obj = _read_json(sys.stdin.read())
    else:
        with open(source, encoding="utf-8") as fh:
            obj = _read_json(fh.read())
    if not isinstance(obj, dict):
        raise ParseError("a scene must be a JSON object")
    ctx = context_from_json(obj.get("field"))
    variables = tuple(obj.get("variables", ("x", "y")))
    scene = Scene(ctx, variables)
    for name, spec in obj.get("polynomials", {}).items():
        scene.polynomials[name] = kpoly_from_json(spec, ctx, variables)
    for name, spec in obj.get("lines", {}).items():
        L = kpoly_from_json(spec, ctx, variables)
        if L.nvars != 2 or L.degree() != 1:
            raise ValidationError(f"line {name} is not a polynomial of degree 1 in two variables")
        scene.lines[name] = L
    curves = scene.curves()
    for name, spec in obj.get("points", {}).items():
        on = []
        if isinstance(spec, dict):
            on = list(spec.get("on", []))
            spec = spec.get("coords")
        p = point_from_json(spec, ctx)
        if len(p) != len(variables):
            raise ValidationError(f"point {name} has {len(p)} coordinates, expected {len(variables)}")
        for c in on:
            if c not in curves:
                raise ValidationError(f"point {name} refers to unknown curve {c}")
            if not substitute_poly(curves[c], p).is_zero():
                raise ValidationError(f"declared incidence fails: point {name} is not on {c}")
        scene.points[name] = p
        scene.incidences[name] = on
    return scene


# ---------------------------------------------------------------------------
# subcommands


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


def _context(args, scene: Scene | None = None) -> FieldContext:
    if args.field is not None:
        return context_from_json(args.field)
    return scene.context if scene else QQ


def _scene(args) -> Scene | None:
    return load_scene(args.scene) if args.scene else None


def _polys_from_args(args, count: int | None) -> list[tuple[str, KPolynomial]]:
    """Named polynomials from positional expressions or from ``--scene``."""
    scene = _scene(args)
    ctx = _context(args, scene)
    if args.exprs:
        if scene is not None:
            curves = scene.curves()
            out = []
            for e in args.exprs:
                out.append((e, curves[e] if e in curves else parse_polynomial(e, scene.variables, ctx)))
        else:
            out = [(e, parse_polynomial(e, ("x", "y"), ctx)) for e in args.exprs]
    elif scene is not None:
        out = list(scene.curves().items())
    else:
        raise UsageError("give polynomial expressions or --scene")
    if count is not None:
        if len(out) < count:
            raise UsageError(f"need {count} polynomials, got {len(out)}")
        out = out[:count]
    return out


def cmd_val(args) -> dict:
    x = parse_element(args.expr, _context(args))
    return {"value": tval_to_json(valuation(x))}


def cmd_tropicalize(args) -> dict:
    polys = _polys_from_args(args, None)
    return {"tropicalizations": [{"name": n, "polynomial": tpoly_to_json(tropicalize_poly(F))} for n, F in polys]}


def cmd_curve(args) -> dict:
    polys = _polys_from_args(args, None)
    return {"curves": [{"name": n, "complex": complex_to_json(corner_locus(tropicalize_poly(F)))} for n, F in polys]}


def cmd_intersect(args) -> dict:
    (n1, F), (n2, G) = _polys_from_args(args, 2)
    C1, C2 = corner_locus(tropicalize_poly(F)), corner_locus(tropicalize_poly(G))
    if args.stable:
        report = stable_intersection(C1, C2)
    else:
        report = set_intersection(C1, C2)
    return {"curves": [n1, n2], "mode": "stable" if args.stable else "set", "report": report_to_json(report)}


def _random_linear(rng: random.Random, ctx: FieldContext) -> KPolynomial:
    def coeff():
        if rng.random() < 0.15:
            return PuiseuxElement([], ctx)
        terms = [(Fraction(rng.randint(-6, 6), rng.randint(1, 3)), Fraction(rng.choice([-3, -2, -1, 1, 2, 3])))
                 for _ in range(rng.randint(1, 3))]
        return PuiseuxElement([(q, ctx(c)) for q, c in terms], ctx)

    while True:
        f = linear_polynomial(coeff(), coeff(), coeff())
        if not f.is_zero():
            return f


def cmd_seminorm(args) -> dict:
    ctx = _context(args)
    phi1 = parse_polynomial(args.phi1, ("x",), ctx)
    phi2 = parse_polynomial(args.phi2, ("x",), ctx)
    rho = Fraction(args.rho)
    S1, S2 = CompositeSeminorm(phi1, rho), CompositeSeminorm(phi2, rho)
    rng = random.Random(_seed(args))
    probes = [(p, parse_polynomial(p, ("x", "y"), ctx)) for p in args.probe]
    probes += [(None, _random_linear(rng, ctx)) for _ in range(args.probes)]
    rows = []
    for text, f in probes:
        v1, v2 = composite_lognorm(f, S1), composite_lognorm(f, S2)
        rows.append({"f": text or str(f), "values": [tval_to_json(v1), tval_to_json(v2)], "agree": v1 == v2})
    out = {"phi": [str(phi1), str(phi2)], "rho": str(rho), "seed": _seed(args), "probes": rows}
    out["linear_agreement"] = linear_agreement(S1, S2)
    if phi1 != phi2:
        w, v1, v2 = witness_difference(S1, S2)
        out["witness"] = {"f": str(w), "values": [tval_to_json(v1), tval_to_json(v2)]}
    return out


def cmd_separate(args) -> dict:
    scene = _scene(args)
    if scene is None or not scene.points:
        raise UsageError("separate needs --scene with points")
    names = list(scene.points)
    S = PointSet([scene.points[n] for n in names])
    emb = separate_points(S)
    images = tropical_images(emb, S.points)
    return {
        "points": names,
        "embedding": embedding_to_json(emb),
        "images": [tpoint_to_json(q) for q in images],
    }


def _certificate_report(cert, A: Arrangement, ctx: FieldContext) -> dict:
    out = certificate_to_json(cert, ctx)
    out["line_names"] = [A.label(i) for i in range(len(A))]
    out["checker"] = check_certificate(cert, A)
    return out


def cmd_transversalize(args) -> dict:
    scene = _scene(args)
    if scene is None or len(scene.lines) < 2:
        raise UsageError("transversalize needs --scene with at least two lines")
    A = scene.arrangement()
    cert = transversalize_arrangement(A, _seed(args), args.retries)
    return _certificate_report(cert, A, _context(args, scene))


def cmd_arrangement(args) -> dict:
    if not args.hessian:
        raise UsageError("arrangement: only --hessian is available")
    chart = tuple(Fraction(c) for c in args.chart.split(","))
    if len(chart) != 3:
        raise UsageError("--chart takes three comma-separated rationals")
    A = hessian_arrangement(chart=chart)
    cert = transversalize_arrangement(A, _seed(args), args.retries)
    out = {"arrangement": "hessian (4,3)-net", "chart": [str(c) for c in chart],
           "incidence_counts": list(incidence_counts(A.lines, A.points))}
    out.update(_certificate_report(cert, A, cyclotomic3()))
    out["notes"] = [REALIZABILITY_NOTE]
    return out


def cmd_plot(args) -> str:
    polys = _polys_from_args(args, None)
    scene = _scene(args)
    complexes = [corner_locus(tropicalize_poly(F)) for _, F in polys]
    points = []
    if scene is not None:
        for name, p in scene.points.items():
            q = trop_point(p)
            if len(q) == 2 and NEG_INF not in q:
                points.append((name, q))
    box = None
    if args.view:
        box = ViewBox(*(Fraction(c) for c in args.view.split(",")))
    return emit_svg(complexes, [n for n, _ in polys], box, points)


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"random seed (overrides ${SEED_ENV})")
    common.add_argument("--retries", type=int, default=64, help="retry budget per pair certificate")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")
    common.add_argument("--field", default=None, help="coefficient field: Q (default) or Q(w)")

    parser = _Parser(prog="tropline", description="Exact tropical geometry over Puiseux series.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("val", parents=[common], help="valuation of an element of K")
    p.add_argument("expr")
    p.set_defaults(func=cmd_val)

    for name, func, hint in (("tropicalize", cmd_tropicalize, "coefficient valuations of polynomials"),
                             ("curve", cmd_curve, "corner loci of polynomials"),
                             ("plot", cmd_plot, "SVG of corner loci")):
        p = sub.add_parser(name, parents=[common], help=hint)
        p.add_argument("exprs", nargs="*", help="polynomials in x, y (or curve names from --scene)")
        p.add_argument("--scene", default=None, help="scene JSON file, or - for stdin")
        if name == "plot":
            p.add_argument("--view", default=None, help="xmin,ymin,xmax,ymax")
        p.set_defaults(func=func)

    p = sub.add_parser("intersect", parents=[common], help="intersect two tropical curves")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--set", action="store_true", help="set-theoretic intersection")
    mode.add_argument("--stable", action="store_true", help="stable intersection")
    p.add_argument("exprs", nargs="*")
    p.add_argument("--scene", default=None)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("seminorm", parents=[common], help="composite Gauss seminorms")
    p.add_argument("action", choices=["compare"])
    p.add_argument("--phi1", required=True)
    p.add_argument("--phi2", required=True)
    p.add_argument("--rho", default="0")
    p.add_argument("--probes", type=int, default=10, help="number of random linear probes")
    p.add_argument("--probe", action="append", default=[], help="extra polynomial to evaluate")
    p.set_defaults(func=cmd_seminorm)

    p = sub.add_parser("separate", parents=[common], help="separate the points of a scene")
    p.add_argument("--scene", required=True)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("transversalize", parents=[common], help="certify a line arrangement")
    p.add_argument("--scene", required=True)
    p.set_defaults(func=cmd_transversalize)

    p = sub.add_parser("arrangement", parents=[common], help="built-in arrangements")
    p.add_argument("--hessian", action="store_true")
    p.add_argument("--chart", default="1,2,5", help="affine chart form as three rationals")
    p.set_defaults(func=cmd_arrangement)
    return parser


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except TroplineError as exc:
        print(json.dumps(exc.to_json()), file=stderr)
        return 1
    except OSError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
