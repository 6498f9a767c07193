"""SVG 1.1 rendering of planar tropical complexes.

Pixel coordinates are decimal approximations (6 places) obtained by exact
rounding of rationals; the exact data rides along in ``data-*`` attributes so a
reader can rebuild every drawn element without trusting the decimals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence
from xml.sax.saxutils import quoteattr, escape

from .errors import EmptyScene
from .tropcurve import Edge, PlanarComplex

PIXELS = 480  # length of the longer side of the picture
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def decimal(q: Fraction, places: int = 6) -> str:
    """Round ``q`` to ``places`` decimals without passing through a float."""
    scaled = round(Fraction(q) * 10 ** places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _q(x) -> str:
    return str(Fraction(x))


def _qpair(p) -> str:
    return f"{_q(p[0])},{_q(p[1])}"


@dataclass(frozen=True)
class ViewBox:
    xmin: Fraction
    ymin: Fraction
    xmax: Fraction
    ymax: Fraction

    def __post_init__(self) -> None:
        for name in ("xmin", "ymin", "xmax", "ymax"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.xmax <= self.xmin or self.ymax <= self.ymin:
            raise ValueError("view box must have positive width and height")

    @property
    def scale(self) -> Fraction:
        return PIXELS / max(self.xmax - self.xmin, self.ymax - self.ymin)

    def to_pixels(self, p) -> tuple[Fraction, Fraction]:
        s = self.scale
        return (p[0] - self.xmin) * s, (self.ymax - p[1]) * s

    def size(self) -> tuple[Fraction, Fraction]:
        s = self.scale
        return (self.xmax - self.xmin) * s, (self.ymax - self.ymin) * s


def auto_view_box(complexes: Sequence[PlanarComplex], points: Iterable = ()) -> ViewBox:
    """Bounding box of all vertices and marked points, padded by 20% per side."""
    pts = [v for C in complexes for v in C.vertices] + [tuple(p) for p in points]
    if not pts:
        # only full lines: use their base points
        pts = [e.point for C in complexes for e in C.edges]
    if not pts:
        raise EmptyScene("nothing to draw")
    xs = [Fraction(p[0]) for p in pts]
    ys = [Fraction(p[1]) for p in pts]

    def pad(lo, hi):
        span = hi - lo
        m = span / 5 if span else Fraction(1)
        return lo - m, hi + m

    x0, x1 = pad(min(xs), max(xs))
    y0, y1 = pad(min(ys), max(ys))
    return ViewBox(x0, y0, x1, y1)


def clip(edge: Edge, box: ViewBox) -> tuple[Fraction, Fraction] | None:
    """Parameter range of ``edge`` inside ``box`` (exact Liang-Barsky), or None."""
    lo, hi = edge.interval()
    for p, d, a, b in ((edge.point[0], edge.direction[0], box.xmin, box.xmax),
                       (edge.point[1], edge.direction[1], box.ymin, box.ymax)):
        if d == 0:
            if not a <= p <= b:
                return None
            continue
        s0, s1 = sorted(((a - p) / d, (b - p) / d))
        lo = s0 if lo is None else max(lo, s0)
        hi = s1 if hi is None else min(hi, s1)
    if lo > hi:
        return None
    return lo, hi


def emit_svg(complexes: PlanarComplex | Sequence[PlanarComplex], labels: Sequence[str] | None = None,
             view_box: ViewBox | tuple | None = None, points: Sequence[tuple[str, tuple]] = ()) -> str:
    """Render complexes (and optional labelled points) as an SVG document string."""
    if isinstance(complexes, PlanarComplex):
        complexes = [complexes]
    complexes = list(complexes)
    if not complexes and not points:
        raise EmptyScene("no complexes and no points to draw")
    labels = list(labels) if labels is not None else [f"C{i}" for i in range(len(complexes))]
    if len(labels) != len(complexes):
        raise ValueError("one label per complex is required")
    if view_box is None:
        box = auto_view_box(complexes, [p for _, p in points])
    elif isinstance(view_box, ViewBox):
        box = view_box
    else:
        box = ViewBox(*view_box)
    w, h = box.size()
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{decimal(w)}" height="{decimal(h)}" '
        f'viewBox="0 0 {decimal(w)} {decimal(h)}" '
        f'data-view-box="{_q(box.xmin)} {_q(box.ymin)} {_q(box.xmax)} {_q(box.ymax)}">',
    ]
    for ci, (C, label) in enumerate(zip(complexes, labels)):
        color = PALETTE[ci % len(PALETTE)]
        out.append(f'<g class="complex" data-complex="{ci}" data-label={quoteattr(label)} stroke="{color}" fill="{color}">')
        out.append(f"<title>{escape(label)}</title>")
        for ei, e in enumerate(C.edges):
            rng = clip(e, box)
            if rng is None:
                continue
            (x1, y1), (x2, y2) = box.to_pixels(e.at(rng[0])), box.to_pixels(e.at(rng[1]))
            meta = (f'data-edge="{ei}" data-kind="{e.kind}" data-point="{_qpair(e.point)}" '
                    f'data-direction="{e.direction[0]},{e.direction[1]}" data-multiplicity="{e.multiplicity}" '
                    f'data-clip="{_q(rng[0])},{_q(rng[1])}"')
            if e.length is not None:
                meta += f' data-length="{_q(e.length)}"'
            out.append(f'<line x1="{decimal(x1)}" y1="{decimal(y1)}" x2="{decimal(x2)}" y2="{decimal(y2)}" '
                       f'stroke-width="{e.multiplicity + 1}" {meta}/>')
        for vi, v in enumerate(C.vertices):
            x, y = box.to_pixels(v)
            out.append(f'<circle cx="{decimal(x)}" cy="{decimal(y)}" r="3" data-vertex="{vi}" data-point="{_qpair(v)}"/>')
        out.append("</g>")
    if points:
        out.append('<g class="points" fill="black">')
        for label, p in points:
            x, y = box.to_pixels(p)
            out.append(f'<circle cx="{decimal(x)}" cy="{decimal(y)}" r="4" data-label={quoteattr(label)} '
                       f'data-point="{_qpair(p)}"/>')
            out.append(f'<text x="{decimal(x + 6)}" y="{decimal(y - 6)}" font-size="12">{escape(label)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def parse_qpair(s: str) -> tuple[Fraction, Fraction]:
    a, b = s.split(",")
    return Fraction(a), Fraction(b)
