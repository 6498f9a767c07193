"""JSON encodings of every exchanged type.

Rationals and tropical values are strings (``"p/q"``, ``"-inf"``); algebraic
numbers are ``{"coeffs": [...]}`` relative to a context declared once per
document; Puiseux elements are lists of ``{"q": ..., "c": ...}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .errors import ParseError
from .field import QQ, AlgebraicNumber, FieldContext
from .puiseux import KPolynomial, PuiseuxElement, PuiseuxFraction, as_fraction
from .tropcurve import Edge, IntersectionReport, PlanarComplex, TropicalPolynomial
from .troplinear import LinearEmbedding, TropPluckerVector
from .tropsem import NEG_INF, format_tval


def rational_to_json(q: Fraction) -> str:
    return str(Fraction(q))


def rational_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {s!r}") from exc


def tval_to_json(v) -> str:
    return format_tval(v)


def tval_from_json(s):
    if s == "-inf":
        return NEG_INF
    return rational_from_json(s)


def context_to_json(ctx: FieldContext) -> dict:
    return {
        "minimal_polynomial": [rational_to_json(c) for c in ctx.minimal_polynomial],
        "generator": ctx.generator,
    }


def context_from_json(obj) -> FieldContext:
    if obj is None:
        return QQ
    if isinstance(obj, str):
        if obj in ("Q", "QQ"):
            return QQ
        if obj in ("Q(w)", "Qw", "cyclotomic3"):
            from .field import cyclotomic3

            return cyclotomic3()
        raise ParseError(f"unknown field {obj!r}")
    try:
        poly = [rational_from_json(c) for c in obj["minimal_polynomial"]]
        return FieldContext(tuple(poly), obj.get("generator", "a"))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed context {obj!r}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def algebraic_to_json(a: AlgebraicNumber) -> dict:
    return {"coeffs": [rational_to_json(c) for c in a.coeffs]}


def algebraic_from_json(obj, ctx: FieldContext = QQ) -> AlgebraicNumber:
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        return ctx(rational_from_json(obj))
    try:
        coeffs = [rational_from_json(c) for c in obj["coeffs"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed algebraic number {obj!r}") from exc
    if len(coeffs) > ctx.degree:
        raise ParseError(f"{len(coeffs)} coordinates for a degree-{ctx.degree} field")
    return ctx(coeffs)


def puiseux_to_json(f: PuiseuxElement) -> list:
    return [{"q": rational_to_json(q), "c": algebraic_to_json(c)} for q, c in f.terms]


def puiseux_from_json(obj, ctx: FieldContext = QQ) -> PuiseuxElement:
    if isinstance(obj, str):
        from .parsing import parse_element

        v = parse_element(obj, ctx)
        if not v.is_element():
            raise ParseError(f"{obj!r} is a quotient, not a Puiseux element")
        return v.num
    if isinstance(obj, int) and not isinstance(obj, bool):
        return PuiseuxElement.constant(obj, ctx)
    if not isinstance(obj, list):
        raise ParseError(f"malformed Puiseux element {obj!r}")
    terms = []
    for term in obj:
        try:
            terms.append((rational_from_json(term["q"]), algebraic_from_json(term["c"], ctx)))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed Puiseux term {term!r}") from exc
    return PuiseuxElement(terms, ctx)


def kelement_to_json(x) -> Any:
    """Elements encode as term lists; genuine quotients as ``{"num": ..., "den": ...}``."""
    x = as_fraction(x)
    if x.is_element():
        return puiseux_to_json(x.num)
    return {"num": puiseux_to_json(x.num), "den": puiseux_to_json(x.den)}


def kelement_from_json(obj, ctx: FieldContext = QQ) -> PuiseuxFraction:
    if isinstance(obj, dict) and "num" in obj:
        return PuiseuxFraction(puiseux_from_json(obj["num"], ctx), puiseux_from_json(obj.get("den", 1), ctx))
    if isinstance(obj, str):
        from .parsing import parse_element

        return parse_element(obj, ctx)
    return PuiseuxFraction(puiseux_from_json(obj, ctx))


def point_to_json(p) -> list:
    return [kelement_to_json(c) for c in p]


def point_from_json(obj, ctx: FieldContext = QQ) -> tuple:
    if not isinstance(obj, list):
        raise ParseError(f"a point is a list of coordinates, got {obj!r}")
    return tuple(kelement_from_json(c, ctx) for c in obj)


def kpoly_to_json(F: KPolynomial) -> list:
    return [{"exp": list(e), "coef": puiseux_to_json(c)} for e, c in F.items()]


def kpoly_from_json(obj, ctx: FieldContext = QQ, variables=("x", "y")) -> KPolynomial:
    if isinstance(obj, str):
        from .parsing import parse_polynomial

        return parse_polynomial(obj, variables, ctx)
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"malformed polynomial {obj!r}")
    try:
        n = len(obj[0]["exp"])
        return KPolynomial(n, [(tuple(m["exp"]), puiseux_from_json(m["coef"], ctx)) for m in obj], ctx)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed monomial in {obj!r}") from exc


def tpoly_to_json(F: TropicalPolynomial) -> list:
    return [{"exp": list(e), "coeff": tval_to_json(c)} for e, c in F.support.items()]


def tpoly_from_json(obj) -> TropicalPolynomial:
    return TropicalPolynomial({tuple(m["exp"]): tval_from_json(m["coeff"]) for m in obj})


def qpoint_to_json(p) -> list:
    return [rational_to_json(c) for c in p]


def complex_to_json(C: PlanarComplex) -> dict:
    edges = []
    for e in C.edges:
        edges.append({
            "kind": e.kind,
            "tail": e.tail,
            "head": e.head,
            "point": qpoint_to_json(e.point),
            "direction": list(e.direction),
            "multiplicity": e.multiplicity,
            "dual": [list(e.dual[0]), list(e.dual[1])],
        })
    return {
        "polynomial": tpoly_to_json(C.polynomial),
        "vertices": [qpoint_to_json(v) for v in C.vertices],
        "edges": edges,
    }


def complex_from_json(obj) -> PlanarComplex:
    vertices = tuple(tuple(rational_from_json(c) for c in v) for v in obj["vertices"])
    edges = []
    for e in obj["edges"]:
        point = tuple(rational_from_json(c) for c in e["point"])
        direction = tuple(e["direction"])
        length = None
        if e["head"] is not None:
            head = vertices[e["head"]]
            k = 0 if direction[0] else 1
            length = (head[k] - point[k]) / direction[k]
        edges.append(Edge(e["tail"], e["head"], point, direction, e["multiplicity"],
                          (tuple(e["dual"][0]), tuple(e["dual"][1])), length))
    return PlanarComplex(tpoly_from_json(obj["polynomial"]), vertices, tuple(edges))


def report_to_json(R: IntersectionReport) -> dict:
    if R.is_finite:
        return {
            "kind": "finite",
            "points": [{"point": qpoint_to_json(p), "multiplicity": m} for p, m in R.points],
            "total_multiplicity": R.total_multiplicity,
        }
    return {
        "kind": "infinite",
        "witness": [qpoint_to_json(p) for p in R.witness],
        "total_multiplicity": R.total_multiplicity,
    }


def embedding_to_json(i: LinearEmbedding) -> list:
    return [[kelement_to_json(c) for c in f] for f in i.forms]


def embedding_from_json(obj, ctx: FieldContext = QQ) -> LinearEmbedding:
    return LinearEmbedding([[kelement_from_json(c, ctx) for c in f] for f in obj])


def plucker_to_json(P: TropPluckerVector) -> list:
    return [[list(kl), tval_to_json(v)] for kl, v in sorted(P.p.items())]


def tpoint_to_json(p) -> list:
    return [tval_to_json(v) for v in p]


def certificate_to_json(cert, ctx: FieldContext = QQ) -> dict:
    return {
        "context": context_to_json(ctx),
        "embedding": embedding_to_json(cert.embedding),
        "pairs": [
            {
                "lines": list(r.lines),
                "proj": list(r.proj),
                "point": tpoint_to_json(r.point),
                "multiplicity": r.multiplicity,
                "source": r.point_index,
                "attempt": r.attempt,
            }
            for r in cert.pairs
        ],
        "points": [point_to_json(p) for p in cert.points],
        "separation": [tpoint_to_json(s) for s in cert.separation],
        "seed": cert.seed,
    }


def certificate_from_json(obj):
    """Rebuild a certificate; planar reports are re-derived, not trusted."""
    from .separate import PairRecord, TransversalityCertificate

    ctx = context_from_json(obj.get("context"))
    emb = embedding_from_json(obj["embedding"], ctx)
    pairs = []
    for r in obj["pairs"]:
        point = tuple(tval_from_json(v) for v in r["point"])
        report = IntersectionReport.finite([(point, r["multiplicity"])])
        k, l = r["proj"]
        pairs.append(PairRecord(tuple(r["lines"]), (emb.forms[k], emb.forms[l]), report, point,
                                r.get("attempt", -1), (k, l), r["source"]))
    points = [point_from_json(p, ctx) for p in obj["points"]]
    separation = [tuple(tval_from_json(v) for v in s) for s in obj["separation"]]
    return TransversalityCertificate(emb, pairs, points, separation, obj["seed"])
