"""Point separation and transversality certificates for line arrangements.

For each pair of lines a certificate exhibits two affine-linear forms ``u, v``
such that, in the ``(u, v)``-plane, the tropicalizations of the two lines meet
in exactly one point, with multiplicity 1, namely the image of the true
intersection point.  The forms of all pairs are assembled into one linear
embedding, which is then extended until the images of all intersection points
are pairwise distinct.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    EqualPoints,
    IncidenceCheckFailed,
    RetryLimitExceeded,
    SingularSystem,
    ValidationError,
)
from .field import FieldContext, cyclotomic3
from .puiseux import (
    KPolynomial,
    PuiseuxElement,
    PuiseuxFraction,
    as_fraction,
    linear_form_value,
    points_equal,
    solve2x2,
    substitute_poly,
    valuation,
)
from .tropcurve import IntersectionReport, corner_locus, set_intersection, tropicalize_poly
from .troplinear import (
    LinearEmbedding,
    coordinate_form,
    linear_tropicalization,
    trop_projection,
)
from .tropsem import NEG_INF, TropicalPoint

DEFAULT_RETRIES = 64


# ---------------------------------------------------------------------------
# point sets and separation


class PointSet:
    """Pairwise distinct points of K^n."""

    def __init__(self, points: Sequence[Sequence], n: int | None = None):
        pts = tuple(tuple(as_fraction(c) for c in p) for p in points)
        if n is None:
            if not pts:
                raise ValueError("dimension of an empty point set must be given")
            n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("points of mixed dimension")
        for a, b in combinations(range(len(pts)), 2):
            if points_equal(pts[a], pts[b]):
                raise ValueError(f"points {a} and {b} coincide")
        self.points = pts
        self.n = n

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k):
        return self.points[k]


def separating_form(p: Sequence, q: Sequence) -> tuple:
    """``z_k - p_k`` for the least ``k`` with ``p_k != q_k``: zero at ``p``, not at ``q``."""
    if len(p) != len(q):
        raise ValueError("points of different dimension")
    n = len(p)
    for k in range(n):
        pk, qk = as_fraction(p[k]), as_fraction(q[k])
        if pk != qk:
            return tuple(PuiseuxFraction(1 if i == k else 0) for i in range(n)) + (-pk,)
    raise EqualPoints("cannot separate a point from itself")


def tropical_images(i: LinearEmbedding, S: Sequence[Sequence]) -> list[TropicalPoint]:
    return [linear_tropicalization(i, p) for p in S]


def separate_points(S: PointSet | Sequence[Sequence], start: LinearEmbedding | None = None) -> LinearEmbedding:
    """Extend ``start`` (default: the identity) until all images are distinct.

    Pairs are visited in lexicographic order; a separating form is appended
    for each pair whose images still coincide.
    """
    if not isinstance(S, PointSet):
        S = PointSet(S, start.n if start is not None and not S else None)
    emb = start if start is not None else LinearEmbedding.identity(S.n)
    images = tropical_images(emb, S)
    for a, b in combinations(range(len(S)), 2):
        if images[a] != images[b]:
            continue
        f = separating_form(S[a], S[b])
        emb = emb.extended([f])
        images = [img + (valuation(linear_form_value(f, p)),) for img, p in zip(images, S)]
    return emb


def verify_intersection_points(F: KPolynomial, G: KPolynomial, S: Sequence[Sequence],
                               precision=None) -> bool:
    """Check ``F(p) = G(p) = 0`` for every ``p``.

    For truncated points pass ``precision``: the exponent up to which the
    coordinates are exact.  Then only ``val(F(p)) < -precision`` is required.
    """
    for p in S:
        for H in (F, G):
            value = substitute_poly(H, p)
            if precision is None:
                if not value.is_zero():
                    return False
            elif not valuation(value) < -Fraction(precision):
                return False
    return True


# ---------------------------------------------------------------------------
# lines and arrangements


def line_coefficients(L) -> tuple:
    """``(a_1, a_2, a_0)`` for the line ``a_1 x + a_2 y + a_0 = 0``."""
    if isinstance(L, KPolynomial):
        if L.nvars != 2 or L.degree() != 1:
            raise ValueError(f"{L} is not a line")
        return tuple(as_fraction(L.coefficient(e)) for e in ((1, 0), (0, 1), (0, 0)))
    a = tuple(as_fraction(c) for c in L)
    if len(a) != 3:
        raise ValueError("a line in the plane has three coefficients")
    if a[0].is_zero() and a[1].is_zero():
        raise ValueError("degenerate line: zero linear part")
    return a


def line_polynomial(L) -> KPolynomial:
    return _to_polynomial(line_coefficients(L))


def proportional(a: Sequence, b: Sequence) -> bool:
    a, b = [as_fraction(c) for c in a], [as_fraction(c) for c in b]
    return all((a[i] * b[j] - a[j] * b[i]).is_zero() for i, j in combinations(range(len(a)), 2))


def line_intersection(a: Sequence, b: Sequence) -> tuple[PuiseuxFraction, PuiseuxFraction]:
    a, b = line_coefficients(a), line_coefficients(b)
    return solve2x2([[a[0], a[1]], [b[0], b[1]]], [-a[2], -b[2]])


@dataclass
class Arrangement:
    """Affine lines over K, optionally with declared points and incidences.

    ``incidences[k]`` lists the indices of the lines through ``points[k]``.
    """

    lines: list
    points: list | None = None
    incidences: list | None = None
    names: list | None = None

    def __post_init__(self) -> None:
        self.lines = [line_coefficients(L) for L in self.lines]
        for i, j in combinations(range(len(self.lines)), 2):
            if proportional(self.lines[i], self.lines[j]):
                raise ValidationError(f"lines {self.label(i)} and {self.label(j)} coincide")
        if self.points is not None:
            self.points = [tuple(as_fraction(c) for c in p) for p in self.points]
        if self.incidences is not None:
            if self.points is None or len(self.incidences) != len(self.points):
                raise ValidationError("incidences need one entry per declared point")
            for k, lines in enumerate(self.incidences):
                for i in lines:
                    if not linear_form_value(self.lines[i], self.points[k]).is_zero():
                        raise ValidationError(
                            f"declared point {k} does not lie on line {self.label(i)}"
                        )

    def label(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def __len__(self) -> int:
        return len(self.lines)


# ---------------------------------------------------------------------------
# pairwise certificates


@dataclass
class PairRecord:
    lines: tuple[int, int]
    forms: tuple[tuple, tuple]
    report: IntersectionReport
    point: TropicalPoint
    attempt: int
    proj: tuple[int, int] | None = None
    point_index: int | None = None

    @property
    def multiplicity(self) -> int:
        return self.report.points[0][1]


def projected_line(a: Sequence, u: Sequence, v: Sequence) -> tuple:
    """Coefficients of the image of ``a`` in ``(u, v)``-coordinates, times ``det``."""
    a1, a2, a0 = a
    u1, u2, u0 = (as_fraction(c) for c in u)
    v1, v2, v0 = (as_fraction(c) for c in v)
    det = u1 * v2 - u2 * v1
    r1 = a1 * v2 - a2 * v1
    r2 = a2 * u1 - a1 * u2
    return r1, r2, a0 * det - r1 * u0 - r2 * v0


def _to_polynomial(coeffs: Sequence) -> KPolynomial:
    """Bivariate linear polynomial with element coefficients, scaled by the denominators."""
    dens = [as_fraction(c).den for c in coeffs]
    elems = []
    for k, c in enumerate(coeffs):
        e = as_fraction(c).num
        for j, d in enumerate(dens):
            if j != k:
                e = e * d
        elems.append(e)
    return KPolynomial(2, {(1, 0): elems[0], (0, 1): elems[1], (0, 0): elems[2]})


_SMALL = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(3), Fraction(1, 2))


def _pair_rng(seed: int, attempt: int) -> random.Random:
    return random.Random(seed * 1_000_003 + attempt)


def candidate_forms(seed: int, attempt: int, a: Sequence | None = None,
                    b: Sequence | None = None) -> tuple[tuple, tuple]:
    """Forms tried at a given attempt.

    Attempt 0 is the coordinate pair.  Odd attempts use forms adapted to the
    pair, ``u = l_a + r1*l_b + r0`` and ``v = l_b + r2*l_a + r3`` with seeded
    monomials ``r = c*t^e``; even attempts use unrelated seeded forms.

    In adapted coordinates the two lines become ``U - r1*V + (r1*r3 - r0)`` and
    ``r2*U - V + (r3 - r2*r0)`` and the intersection point maps to ``(r0, r3)``.
    Taking ``val(r1) < val(r0) - val(r3)`` and ``val(r2) < val(r3) - val(r0)``
    puts that image on the vertical ray of the first tropical line and the
    horizontal ray of the second, so the crossing is transversal.
    """
    if attempt == 0:
        return coordinate_form(0, 2), coordinate_form(1, 2)
    rng = _pair_rng(seed, attempt)
    span = 1 + attempt // 4

    def coeff(e=None):
        if e is None:
            e = rng.randint(-span, span)
        return PuiseuxElement.monomial(e, rng.choice(_SMALL))

    if attempt % 2 == 1 and a is not None and b is not None:
        e0, e3 = rng.randint(-span, span), rng.randint(-span, span)
        r0, r3 = coeff(e0), coeff(e3)
        r1 = coeff(e0 - e3 + 1 + rng.randint(0, span))
        r2 = coeff(e3 - e0 + 1 + rng.randint(0, span))
        a = [as_fraction(c) for c in a]
        b = [as_fraction(c) for c in b]
        u = (a[0] + r1 * b[0], a[1] + r1 * b[1], a[2] + r1 * b[2] + r0)
        v = (b[0] + r2 * a[0], b[1] + r2 * a[1], b[2] + r2 * a[2] + r3)
        return u, v
    return tuple(coeff() for _ in range(3)), tuple(coeff() for _ in range(3))


def _try_forms(a, b, p, u, v) -> tuple[str, IntersectionReport | None, TropicalPoint | None]:
    u_lin = [as_fraction(c) for c in u[:2]]
    v_lin = [as_fraction(c) for c in v[:2]]
    if (u_lin[0] * v_lin[1] - u_lin[1] * v_lin[0]).is_zero():
        return "dependent forms", None, None
    expected = (valuation(linear_form_value(u, p)), valuation(linear_form_value(v, p)))
    if NEG_INF in expected:
        return "point maps to a coordinate axis", None, None
    pa, pb = projected_line(a, u, v), projected_line(b, u, v)
    if any(c.is_zero() for c in pa + pb):
        return "projected line misses a monomial", None, None
    ca = corner_locus(tropicalize_poly(_to_polynomial(pa)))
    cb = corner_locus(tropicalize_poly(_to_polynomial(pb)))
    report = set_intersection(ca, cb)
    if not report.is_finite:
        return "infinite overlap", report, expected
    if len(report.points) != 1 or report.points[0][0] != expected:
        return "wrong intersection points", report, expected
    if report.points[0][1] != 1:
        return f"multiplicity {report.points[0][1]}", report, expected
    return "ok", report, expected


def pair_certificate(L_a, L_b, p: Sequence | None = None, seed: int = 0,
                     retries: int = DEFAULT_RETRIES, lines: tuple[int, int] = (0, 1)) -> PairRecord:
    """Find forms ``(u, v)`` in whose plane the two tropical lines cross only at ``p``."""
    a, b = line_coefficients(L_a), line_coefficients(L_b)
    if p is None:
        p = line_intersection(a, b)
    p = tuple(as_fraction(c) for c in p)
    if not (linear_form_value(a, p).is_zero() and linear_form_value(b, p).is_zero()):
        raise ValidationError("point is not on both lines")
    if proportional(a[:2], b[:2]):
        raise SingularSystem("lines are parallel")
    failure = None
    for attempt in range(retries):
        u, v = candidate_forms(seed, attempt, a, b)
        status, report, expected = _try_forms(a, b, p, u, v)
        if status == "ok":
            return PairRecord(tuple(lines), (u, v), report, expected, attempt)
        failure = status
    raise RetryLimitExceeded(
        f"no transversal projection found in {retries} attempts (last: {failure})",
        last_failure=failure,
        pair=lines,
    )


@dataclass
class TransversalityCertificate:
    embedding: LinearEmbedding
    pairs: list[PairRecord]
    points: list[tuple]
    separation: list[TropicalPoint]
    seed: int
    notes: dict = field(default_factory=dict)


def _pair_seed(seed: int, a: int, b: int) -> int:
    return seed * 1_000_003 + a * 1_009 + b


def transversalize_arrangement(A: Arrangement, seed: int = 0,
                               retries: int = DEFAULT_RETRIES) -> TransversalityCertificate:
    lines = A.lines
    points: list[tuple] = []
    located = {}
    for a, b in combinations(range(len(lines)), 2):
        try:
            p = line_intersection(lines[a], lines[b])
        except SingularSystem as exc:
            raise SingularSystem(f"lines {A.label(a)} and {A.label(b)} are parallel") from exc
        for k, q in enumerate(points):
            if points_equal(p, q):
                located[(a, b)] = k
                break
        else:
            located[(a, b)] = len(points)
            points.append(p)

    records = []
    emb = LinearEmbedding.identity(2)
    for (a, b), k in located.items():
        try:
            rec = pair_certificate(lines[a], lines[b], points[k], _pair_seed(seed, a, b),
                                   retries, lines=(a, b))
        except RetryLimitExceeded as exc:
            raise RetryLimitExceeded(
                f"pair ({A.label(a)}, {A.label(b)}): {exc}", last_failure=exc.last_failure, pair=(a, b)
            ) from exc
        idx = []
        for form in rec.forms:
            at = emb.index_of(form)
            if at is None:
                emb = emb.extended([form])
                at = len(emb) - 1
            idx.append(at)
        rec.proj = tuple(idx)
        rec.point_index = k
        records.append(rec)

    emb = separate_points(PointSet(points, 2), start=emb) if points else emb
    separation = tropical_images(emb, points)
    return TransversalityCertificate(emb, records, points, separation, seed)


# ---------------------------------------------------------------------------
# the Hessian configuration


def hessian_projective(ctx: FieldContext | None = None):
    """The 12 lines and 9 base points of the Hesse pencil in P^2 over Q(w)."""
    ctx = ctx or cyclotomic3()
    w = ctx.gen()
    one, zero = ctx.one(), ctx.zero()
    lines = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    names = ["X", "Y", "Z"]
    for i in range(3):
        for j in range(3):
            lines.append((one, w ** i, w ** j))
            names.append(f"X+w^{i}Y+w^{j}Z")
    pts = []
    for k in range(3):
        pts.append((zero, one, -(w ** k)))
        pts.append((one, zero, -(w ** k)))
        pts.append((one, -(w ** k), zero))
    return lines, pts, names


def hessian_arrangement(ctx: FieldContext | None = None, chart=(1, 2, 5)) -> Arrangement:
    """The Hessian (4,3)-net in the affine chart where ``chart . (X, Y, Z) != 0``.

    Affine coordinates are ``x = X / l``, ``y = Y / l`` with ``l`` the chart form.
    """
    ctx = ctx or cyclotomic3()
    if ctx.degree != 2 or ctx.minimal_polynomial != (1, 1, 1):
        raise IncidenceCheckFailed("the Hessian arrangement needs the context w^2 + w + 1 = 0")
    c1, c2, c3 = (ctx(Fraction(c)) for c in chart)
    if c3.is_zero():
        raise IncidenceCheckFailed("chart form must involve Z")
    plines, ppts, names = hessian_projective(ctx)

    lines = []
    for (a, b, c), name in zip(plines, names):
        coeffs = (a * c3 - c * c1, b * c3 - c * c2, c)
        if coeffs[0].is_zero() and coeffs[1].is_zero():
            raise IncidenceCheckFailed(f"line {name} is the line at infinity of this chart")
        lines.append(tuple(PuiseuxElement.constant(x, ctx) for x in coeffs))
    points = []
    for X, Y, Z in ppts:
        l = c1 * X + c2 * Y + c3 * Z
        if l.is_zero():
            raise IncidenceCheckFailed(f"base point ({X} : {Y} : {Z}) lies at infinity")
        points.append((PuiseuxElement.constant(X / l, ctx), PuiseuxElement.constant(Y / l, ctx)))

    incidences = [
        [i for i, L in enumerate(lines) if linear_form_value(L, p).is_zero()] for p in points
    ]
    counts = incidence_counts(lines, points)
    if counts != (12, 9, 4, 3):
        raise IncidenceCheckFailed(f"incidence counts {counts} differ from (12, 9, 4, 3)")
    for i, j in combinations(range(len(lines)), 2):
        if proportional(lines[i][:2], lines[j][:2]):
            raise IncidenceCheckFailed(f"lines {names[i]} and {names[j]} meet at infinity")
    return Arrangement(lines, points, incidences, names)


def incidence_counts(lines, points) -> tuple:
    """``(lines, points, lines per point, points per line)``; ``-1`` when not uniform."""
    on = [[linear_form_value(L, p).is_zero() for p in points] for L in lines]
    per_point = {sum(on[i][k] for i in range(len(lines))) for k in range(len(points))}
    per_line = {sum(row) for row in on}
    return (
        len(lines),
        len(points),
        per_point.pop() if len(per_point) == 1 else -1,
        per_line.pop() if len(per_line) == 1 else -1,
    )


# ---------------------------------------------------------------------------
# independent checker


def _val(x):
    return valuation(x)


def _evaluate(form, p):
    out = as_fraction(form[2])
    out = out + as_fraction(form[0]) * p[0]
    return out + as_fraction(form[1]) * p[1]


def _cramer(a, b):
    det = a[0] * b[1] - a[1] * b[0]
    return ((a[1] * b[2] - b[1] * a[2]) / det, (b[0] * a[2] - a[0] * b[2]) / det)


def _two_points(a):
    """Two distinct points of the line ``a`` (coefficients as fractions)."""
    if not a[1].is_zero():
        return [(PuiseuxFraction(x), -(a[2] + a[0] * x) / a[1]) for x in (0, 1)]
    return [(-(a[2] + a[1] * y) / a[0], PuiseuxFraction(y)) for y in (0, 1)]


def _image_line(a, u, v):
    (p1, p2) = _two_points(a)
    U1, V1 = _evaluate(u, p1), _evaluate(v, p1)
    U2, V2 = _evaluate(u, p2), _evaluate(v, p2)
    alpha, beta = V2 - V1, U1 - U2
    return alpha, beta, -(alpha * U1 + beta * V1)


def _trop_line_vertex(coeffs):
    va, vb, vc = (_val(c) for c in coeffs)
    return (vc - va, vc - vb), (va, vb, vc)


def _on_trop_line(vals, pt) -> bool:
    terms = [vals[0] + pt[0], vals[1] + pt[1], vals[2]]
    m = max(terms)
    return terms.count(m) >= 2


def check_certificate(cert: TransversalityCertificate, A: Arrangement) -> list[str]:
    """Re-derive every claim of a certificate from the arrangement alone.

    Returns the list of violated claims (empty when the certificate holds).
    Planar tropical lines are handled in closed form here rather than via
    corner loci.
    """
    problems = []
    lines = [tuple(as_fraction(c) for c in L) for L in A.lines]
    emb = cert.embedding
    if len(cert.pairs) != len(lines) * (len(lines) - 1) // 2:
        problems.append(f"{len(cert.pairs)} pair records for {len(lines)} lines")
    seen = set()
    for rec in cert.pairs:
        a_idx, b_idx = rec.lines
        seen.add((a_idx, b_idx))
        a, b = lines[a_idx], lines[b_idx]
        if (a[0] * b[1] - a[1] * b[0]).is_zero():
            problems.append(f"pair {rec.lines}: lines are parallel")
            continue
        p = _cramer(a, b)
        src = cert.points[rec.point_index]
        if not all(x == y for x, y in zip(p, src)):
            problems.append(f"pair {rec.lines}: recorded point is not the intersection")
        k, l = rec.proj
        if not (0 <= k < len(emb) and 0 <= l < len(emb)):
            problems.append(f"pair {rec.lines}: projection indices out of range")
            continue
        u, v = emb.forms[k], emb.forms[l]
        expected = (_val(_evaluate(u, p)), _val(_evaluate(v, p)))
        if tuple(rec.point) != expected:
            problems.append(f"pair {rec.lines}: recorded point {rec.point} != {expected}")
        full = trop_projection(linear_tropicalization(emb, src), (k, l))
        if full != expected:
            problems.append(f"pair {rec.lines}: projection of the embedded image disagrees")
        if NEG_INF in expected:
            problems.append(f"pair {rec.lines}: image point not in the finite plane")
            continue
        lu = _image_line(a, u, v)
        lv = _image_line(b, u, v)
        if any(c.is_zero() for c in lu + lv):
            problems.append(f"pair {rec.lines}: an image line is not a 3-term tropical line")
            continue
        A_vtx, vals_a = _trop_line_vertex(lu)
        B_vtx, vals_b = _trop_line_vertex(lv)
        if not (_on_trop_line(vals_a, expected) and _on_trop_line(vals_b, expected)):
            problems.append(f"pair {rec.lines}: point not on both tropical lines")
        dx, dy = B_vtx[0] - A_vtx[0], B_vtx[1] - A_vtx[1]
        # vertices aligned along a ray direction make the lines overlap
        if dx == 0 or dy == 0 or dx == dy:
            problems.append(f"pair {rec.lines}: tropical lines overlap")
        if rec.multiplicity != 1:
            problems.append(f"pair {rec.lines}: multiplicity {rec.multiplicity}")
    missing = set(combinations(range(len(lines)), 2)) - seen
    if missing:
        problems.append(f"missing pair records: {sorted(missing)}")

    images = [linear_tropicalization(emb, p) for p in cert.points]
    if [tuple(s) for s in cert.separation] != images:
        problems.append("separation entries do not match the embedded images")
    if len(set(images)) != len(images):
        problems.append("separation images are not pairwise distinct")
    if not emb.is_embedding():
        problems.append("embedding does not contain a coordinate system")
    return problems
