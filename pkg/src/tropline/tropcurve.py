"""Tropical plane curves: corner loci, set and stable intersections.

A :class:`PlanarComplex` is the corner locus of a max-plus polynomial in two
variables, built from the regular subdivision of its Newton polygon that the
coefficients induce.  All coordinates are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Mapping

from .errors import DegenerateSupport, DimensionMismatch, ZeroPolynomial
from .puiseux import KPolynomial, valuation
from .tropsem import NEG_INF, tval

Point2 = tuple  # (Fraction, Fraction)
Exp2 = tuple  # (int, int)


@dataclass(frozen=True)
class TropicalPolynomial:
    """``max over (i, j) of coeff + i*x + j*y``; ``support`` maps exponents to finite coefficients."""

    support: Mapping[Exp2, Fraction]

    def __post_init__(self) -> None:
        if not self.support:
            raise ZeroPolynomial("tropical polynomial with empty support")
        clean = {}
        for exp, c in self.support.items():
            exp = (int(exp[0]), int(exp[1]))
            c = tval(c)
            if c is NEG_INF:
                raise ValueError("support coefficients must be finite")
            clean[exp] = c
        object.__setattr__(self, "support", dict(sorted(clean.items())))

    @property
    def degree(self) -> int:
        return max(i + j for i, j in self.support)

    def __call__(self, p: Point2) -> Fraction:
        return eval_with_argmax(self, p)[0]

    def __hash__(self) -> int:
        return hash(tuple(self.support.items()))


def tropicalize_poly(F: KPolynomial) -> TropicalPolynomial:
    """Replace every coefficient of a bivariate polynomial over K by its valuation."""
    if F.nvars != 2:
        raise DimensionMismatch("plane curves need exactly two variables")
    if F.is_zero():
        raise ZeroPolynomial("cannot tropicalize the zero polynomial")
    return TropicalPolynomial({exp: valuation(c) for exp, c in F.items()})


def eval_with_argmax(F: TropicalPolynomial, p: Point2) -> tuple[Fraction, frozenset]:
    x, y = Fraction(p[0]), Fraction(p[1])
    best = None
    arg: list[Exp2] = []
    for (i, j), c in F.support.items():
        v = c + i * x + j * y
        if best is None or v > best:
            best, arg = v, [(i, j)]
        elif v == best:
            arg.append((i, j))
    return best, frozenset(arg)


def on_curve(F: TropicalPolynomial, p: Point2) -> bool:
    return len(eval_with_argmax(F, p)[1]) >= 2


# ---------------------------------------------------------------------------
# small exact planar geometry


def _cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def primitive(v) -> tuple[int, int]:
    """Primitive integer vector on the ray through a nonzero rational vector."""
    a, b = Fraction(v[0]), Fraction(v[1])
    if a == 0 and b == 0:
        raise ValueError("zero vector has no primitive direction")
    lcm_den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    ia, ib = int(a * lcm_den), int(b * lcm_den)
    g = gcd(ia, ib)
    return ia // g, ib // g


def lattice_length(v) -> int:
    return gcd(int(v[0]), int(v[1]))


def convex_hull(points: Iterable) -> list:
    """Counter-clockwise hull vertices (no collinear points) by monotone chain."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(_sub(out[-1], out[-2]), _sub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def polygon_area(points: Iterable) -> Fraction:
    hull = convex_hull(points)
    if len(hull) < 3:
        return Fraction(0)
    s = sum(_cross(hull[k], hull[(k + 1) % len(hull)]) for k in range(len(hull)))
    return Fraction(abs(s), 2)


def mixed_area(P: Iterable, Q: Iterable) -> Fraction:
    """``area(P + Q) - area(P) - area(Q)``; two unit triangles give 1."""
    P, Q = list(P), list(Q)
    mink = [(a[0] + b[0], a[1] + b[1]) for a in P for b in Q]
    return polygon_area(mink) - polygon_area(P) - polygon_area(Q)


# ---------------------------------------------------------------------------
# planar complexes


@dataclass(frozen=True)
class Edge:
    """A segment (tail and head set), ray (tail only) or full line (neither).

    ``point`` is the tail vertex for segments and rays, and an arbitrary point
    of the line otherwise; ``direction`` is primitive and points from tail to
    head or to infinity.
    """

    tail: int | None
    head: int | None
    point: Point2
    direction: tuple[int, int]
    multiplicity: int
    dual: tuple[Exp2, Exp2]
    length: Fraction | None = None  # in units of ``direction``; segments only

    @property
    def kind(self) -> str:
        if self.head is not None:
            return "segment"
        return "ray" if self.tail is not None else "line"

    def interval(self) -> tuple[Fraction | None, Fraction | None]:
        if self.kind == "segment":
            return Fraction(0), self.length
        if self.kind == "ray":
            return Fraction(0), None
        return None, None

    def at(self, s) -> Point2:
        return (self.point[0] + s * self.direction[0], self.point[1] + s * self.direction[1])


@dataclass(frozen=True)
class PlanarComplex:
    polynomial: TropicalPolynomial
    vertices: tuple[Point2, ...]
    edges: tuple[Edge, ...]

    def edge_directions(self) -> set[tuple[int, int]]:
        return {e.direction for e in self.edges}

    def contains(self, p: Point2) -> bool:
        return on_curve(self.polynomial, p)


def _upper_faces(lifted: list[tuple[Exp2, Fraction]]) -> dict[tuple[Fraction, Fraction, Fraction], list[Exp2]]:
    """Upper facets of the lifted support, keyed by plane ``z = a + b*i + g*j``."""
    faces: dict[tuple[Fraction, Fraction, Fraction], list[Exp2]] = {}
    for (p1, c1), (p2, c2), (p3, c3) in combinations(lifted, 3):
        u, v = _sub(p2, p1), _sub(p3, p1)
        det = _cross(u, v)
        if det == 0:
            continue
        dc2, dc3 = c2 - c1, c3 - c1
        b = Fraction(dc2 * v[1] - dc3 * u[1], det)
        g = Fraction(u[0] * dc3 - v[0] * dc2, det)
        a = c1 - b * p1[0] - g * p1[1]
        key = (a, b, g)
        if key in faces:
            continue
        on = []
        ok = True
        for p, c in lifted:
            h = a + b * p[0] + g * p[1]
            if c > h:
                ok = False
                break
            if c == h:
                on.append(p)
        if ok:
            faces[key] = on
    return faces


def corner_locus(F: TropicalPolynomial) -> PlanarComplex:
    """The tropical curve of ``F`` with primitive directions and lattice-length weights."""
    lifted = list(F.support.items())
    if len(lifted) < 2:
        raise DegenerateSupport("a single monomial has an empty corner locus")
    pts = [p for p, _ in lifted]
    base = pts[0]
    if all(_cross(_sub(p, base), _sub(pts[1], base)) == 0 for p in pts[2:]):
        return _corner_locus_1d(F)

    faces = _upper_faces(lifted)
    keys = sorted(faces, key=lambda k: (-k[1], -k[2]))
    vertex_of = {k: (-k[1], -k[2]) for k in keys}
    vertices = sorted(set(vertex_of.values()))
    index = {v: n for n, v in enumerate(vertices)}

    edge_faces: dict[tuple[Exp2, Exp2], list] = {}
    hulls = {}
    for k in keys:
        hull = convex_hull(faces[k])
        hulls[k] = hull
        for n in range(len(hull)):
            a, b = hull[n], hull[(n + 1) % len(hull)]
            edge_faces.setdefault(tuple(sorted((a, b))), []).append(k)

    edges = []
    for dual, ks in edge_faces.items():
        dvec = _sub(dual[1], dual[0])
        mult = lattice_length(dvec)
        if len(ks) == 2:
            v1, v2 = sorted((vertex_of[ks[0]], vertex_of[ks[1]]))
            step = primitive(_sub(v2, v1))
            length = (v2[0] - v1[0]) / step[0] if step[0] else (v2[1] - v1[1]) / step[1]
            edges.append(Edge(index[v1], index[v2], v1, step, mult, dual, Fraction(length)))
        elif len(ks) == 1:
            k = ks[0]
            normal = primitive((dvec[1], -dvec[0]))
            inner = next(p for p in hulls[k] if p not in dual)
            if _dot(normal, _sub(inner, dual[0])) > 0:
                normal = (-normal[0], -normal[1])
            v = vertex_of[k]
            edges.append(Edge(index[v], None, v, normal, mult, dual))
        else:  # pragma: no cover - impossible for a polyhedral subdivision
            raise AssertionError(f"dual edge {dual} shared by {len(ks)} cells")
    edges.sort(key=_edge_key)
    return PlanarComplex(F, tuple(vertices), tuple(edges))


def _edge_key(e: Edge):
    return (
        -1 if e.tail is None else e.tail,
        -1 if e.head is None else e.head,
        e.direction,
        e.point,
        e.dual,
    )


def _corner_locus_1d(F: TropicalPolynomial) -> PlanarComplex:
    """Collinear support: the locus is a union of parallel full lines."""
    items = sorted(F.support.items())
    p0 = items[0][0]
    u = primitive(_sub(items[-1][0], p0))
    uu = _dot(u, u)
    param = [(Fraction(_dot(_sub(p, p0), u), uu), c, p) for p, c in items]
    # upper hull of (s, c)
    hull: list = []
    for s, c, p in param:
        while len(hull) >= 2:
            (s1, c1, _), (s2, c2, _) = hull[-2], hull[-1]
            if (c2 - c1) * (s - s1) <= (c - c1) * (s2 - s1):
                hull.pop()
            else:
                break
        hull.append((s, c, p))
    if len(hull) < 2:
        raise DegenerateSupport("support collapses to a single cell")
    normal_dir = (-u[1], u[0])
    edges = []
    for (sa, ca, pa), (sb, cb, pb) in zip(hull, hull[1:]):
        # (pb - pa) . X = ca - cb with pb - pa = (sb - sa) u
        rhs = (ca - cb) / (sb - sa)
        lam = rhs / uu
        point = (lam * u[0], lam * u[1])
        edges.append(Edge(None, None, point, normal_dir, int(sb - sa), (pa, pb)))
    return PlanarComplex(F, (), tuple(edges))


def balancing_defects(C: PlanarComplex) -> dict[int, tuple[int, int]]:
    """Vertices where the weighted outgoing primitive directions do not sum to zero."""
    sums = {n: [0, 0] for n in range(len(C.vertices))}
    for e in C.edges:
        if e.tail is not None:
            sums[e.tail][0] += e.multiplicity * e.direction[0]
            sums[e.tail][1] += e.multiplicity * e.direction[1]
        if e.head is not None:
            sums[e.head][0] -= e.multiplicity * e.direction[0]
            sums[e.head][1] -= e.multiplicity * e.direction[1]
    return {n: tuple(s) for n, s in sums.items() if s != [0, 0]}


def is_balanced(C: PlanarComplex) -> bool:
    return not balancing_defects(C)


# ---------------------------------------------------------------------------
# intersections


@dataclass(frozen=True)
class IntersectionReport:
    """``kind`` is ``"finite"`` or ``"infinite"``.

    Finite reports list distinct points with multiplicities; infinite reports
    carry two distinct points of a shared segment as ``witness`` and a total of 0.
    """

    kind: str
    points: tuple[tuple[Point2, int], ...] = ()
    witness: tuple[Point2, Point2] | None = None
    total_multiplicity: int = 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @classmethod
    def finite(cls, points: Iterable[tuple[Point2, int]]) -> "IntersectionReport":
        pts = tuple(sorted(points))
        return cls("finite", pts, None, sum(m for _, m in pts))

    @classmethod
    def infinite(cls, a: Point2, b: Point2) -> "IntersectionReport":
        return cls("infinite", (), (a, b), 0)


def _interval_meet(a, b):
    lo = a[0] if b[0] is None else (b[0] if a[0] is None else max(a[0], b[0]))
    hi = a[1] if b[1] is None else (b[1] if a[1] is None else min(a[1], b[1]))
    return lo, hi


def _in_interval(s, iv) -> bool:
    lo, hi = iv
    return (lo is None or s >= lo) and (hi is None or s <= hi)


def _edge_meet(e1: Edge, e2: Edge):
    """``None``, a point, or a pair of distinct points witnessing an overlap."""
    d1, d2 = e1.direction, e2.direction
    w = _sub(e2.point, e1.point)
    det = _cross(d1, d2)
    if det != 0:
        s = Fraction(_cross(w, d2), det)
        u = Fraction(_cross(w, d1), det)
        if _in_interval(s, e1.interval()) and _in_interval(u, e2.interval()):
            return e1.at(s)
        return None
    if _cross(w, d1) != 0:
        return None
    # collinear: express e2's parameter range in e1's parameter
    offset = Fraction(_dot(w, d1), _dot(d1, d1))
    sign = 1 if _dot(d1, d2) > 0 else -1
    lo2, hi2 = e2.interval()
    ends = [None if v is None else offset + sign * v for v in (lo2, hi2)]
    if sign < 0:
        iv2 = (ends[1], ends[0])
    else:
        iv2 = (ends[0], ends[1])
    lo, hi = _interval_meet(e1.interval(), iv2)
    if lo is not None and hi is not None:
        if lo > hi:
            return None
        if lo == hi:
            return e1.at(lo)
        return (e1.at(lo), e1.at(hi))
    if lo is None and hi is None:
        return (e1.at(0), e1.at(1))
    if lo is None:
        return (e1.at(hi - 1), e1.at(hi))
    return (e1.at(lo), e1.at(lo + 1))


def local_multiplicity(C1: PlanarComplex, C2: PlanarComplex, p: Point2) -> int:
    """Mixed area of the two dual cells at ``p``."""
    _, a1 = eval_with_argmax(C1.polynomial, p)
    _, a2 = eval_with_argmax(C2.polynomial, p)
    m = mixed_area(a1, a2)
    assert m.denominator == 1
    return int(m)


def set_intersection(C1: PlanarComplex, C2: PlanarComplex) -> IntersectionReport:
    """Exact set-theoretic intersection of two planar complexes."""
    points = set()
    for e1 in C1.edges:
        for e2 in C2.edges:
            hit = _edge_meet(e1, e2)
            if hit is None:
                continue
            if isinstance(hit[0], tuple):
                return IntersectionReport.infinite(*hit)
            points.add(hit)
    return IntersectionReport.finite((p, local_multiplicity(C1, C2, p)) for p in points)


def displacement_schedule() -> Iterator[Fraction]:
    """Slopes ``F(n)/F(n+2)`` of Fibonacci numbers: 1/2, 1/3, 2/5, 3/8, ..."""
    a, b, c = 1, 1, 2
    while True:
        yield Fraction(a, c)
        a, b, c = b, c, b + c


def generic_displacement(*complexes: PlanarComplex) -> tuple[int, Fraction]:
    """First direction ``(1, xi)`` of the schedule parallel to no edge of the complexes."""
    dirs = set()
    for C in complexes:
        dirs |= C.edge_directions()
    for xi in displacement_schedule():
        v = (1, xi)
        if all(_cross(v, d) != 0 for d in dirs):
            return v


def _stays_inside(s0, s1, iv) -> bool:
    # s0 + eps*s1 in iv for all small eps > 0 (s1 != 0)
    lo, hi = iv
    if lo is not None and (s0 < lo or (s0 == lo and s1 < 0)):
        return False
    if hi is not None and (s0 > hi or (s0 == hi and s1 > 0)):
        return False
    return True


def stable_intersection(C1: PlanarComplex, C2: PlanarComplex,
                        direction: tuple | None = None) -> IntersectionReport:
    """Limit of ``C1 & (C2 + eps*v)`` as ``eps -> 0+``, taken symbolically."""
    v = direction if direction is not None else generic_displacement(C1, C2)
    v = (Fraction(v[0]), Fraction(v[1]))
    for C in (C1, C2):
        if any(_cross(v, d) == 0 for d in C.edge_directions()):
            raise ValueError(f"displacement {v} is parallel to an edge")
    acc: dict[Point2, int] = {}
    for e1 in C1.edges:
        for e2 in C2.edges:
            d1, d2 = e1.direction, e2.direction
            det = _cross(d1, d2)
            if det == 0:
                continue
            w = _sub(e2.point, e1.point)
            s0, s1 = Fraction(_cross(w, d2), det), Fraction(_cross(v, d2), det)
            u0, u1 = Fraction(_cross(w, d1), det), Fraction(_cross(v, d1), det)
            if _stays_inside(s0, s1, e1.interval()) and _stays_inside(u0, u1, e2.interval()):
                p = e1.at(s0)
                acc[p] = acc.get(p, 0) + e1.multiplicity * e2.multiplicity * abs(det)
    return IntersectionReport.finite(acc.items())
