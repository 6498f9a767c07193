import random
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from helpers import full_curve
from tropline.errors import EmptyScene
from tropline.puiseux import T, KPolynomial
from tropline.svg import ViewBox, auto_view_box, clip, decimal, emit_svg, parse_qpair
from tropline.tropcurve import Edge, corner_locus, set_intersection, tropicalize_poly

NS = "{http://www.w3.org/2000/svg}"
x = KPolynomial.variable(0, 2)
y = KPolynomial.variable(1, 2)
LINE = corner_locus(tropicalize_poly(x + y + 1))
WORKED = corner_locus(tropicalize_poly(x + T * y + T ** 3))


def drawn_edges(svg):
    root = ET.fromstring(svg)
    return root, root.findall(f".//{NS}line")


def rebuild(el) -> Edge:
    """Reconstruct an edge from metadata alone."""
    point = parse_qpair(el.get("data-point"))
    d = tuple(int(c) for c in el.get("data-direction").split(","))
    length = Fraction(el.get("data-length")) if el.get("data-length") else None
    return el.get("data-kind"), point, d, int(el.get("data-multiplicity")), length


def test_decimal_rounding_is_exact():
    assert decimal(Fraction(1, 3)) == "0.333333"
    assert decimal(Fraction(-2, 3)) == "-0.666667"
    assert decimal(Fraction(5)) == "5.000000"
    assert decimal(Fraction(-1, 10 ** 7)) == "0.000000"


def test_single_tropical_line():
    svg = emit_svg(LINE, ["x+y+1"])
    root, lines = drawn_edges(svg)
    assert len(lines) == 3
    assert len(root.findall(f".//{NS}circle")) == 1
    box = ViewBox(*(Fraction(v) for v in root.get("data-view-box").split()))
    for el in lines:
        kind, point, d, m, _ = rebuild(el)
        assert kind == "ray" and point == (0, 0) and m == 1
        s0, s1 = parse_qpair(el.get("data-clip"))
        end = (point[0] + s1 * d[0], point[1] + s1 * d[1])
        # rays end exactly on the boundary of the box
        assert end[0] in (box.xmin, box.xmax) or end[1] in (box.ymin, box.ymax)


def test_metadata_roundtrips_to_complex():
    rng = random.Random(8)
    for _ in range(10):
        C = corner_locus(tropicalize_poly(full_curve(rng, rng.randint(1, 3))))
        svg = emit_svg([C], ["C"])
        _, lines = drawn_edges(svg)
        assert len(lines) == len(C.edges)
        for el in lines:
            e = C.edges[int(el.get("data-edge"))]
            assert rebuild(el) == (e.kind, e.point, e.direction, e.multiplicity, e.length)
        root = ET.fromstring(svg)
        verts = [parse_qpair(c.get("data-point")) for c in root.findall(f".//{NS}circle")]
        assert verts == list(C.vertices)


def test_two_line_scene_labels_crossing():
    R = set_intersection(LINE, WORKED)
    (p, _), = R.points
    svg = emit_svg([LINE, WORKED], ["L1", "L2"], points=[("P", p)])
    root = ET.fromstring(svg)
    marked = [c for c in root.findall(f".//{NS}circle") if c.get("data-label") == "P"]
    assert len(marked) == 1 and parse_qpair(marked[0].get("data-point")) == (-1, 0)
    assert "<text" in svg


def test_deterministic_bytes():
    a = emit_svg([LINE, WORKED], ["a", "b"])
    b = emit_svg([LINE, WORKED], ["a", "b"])
    assert a == b


def test_view_box_and_clipping():
    box = auto_view_box([WORKED])
    assert (box.xmin, box.xmax) == (-4, -2)
    tiny = ViewBox(10, 10, 11, 11)
    svg = emit_svg([LINE], ["L"], view_box=tiny)
    _, lines = drawn_edges(svg)
    # only the diagonal ray reaches the far box
    assert [el.get("data-direction") for el in lines] == ["1,1"]
    e = next(e for e in LINE.edges if e.direction == (1, 1))
    assert clip(e, tiny) == (10, 11)


def test_only_full_lines():
    from tropline.tropcurve import TropicalPolynomial

    C = corner_locus(TropicalPolynomial({(0, 1): 0, (0, 0): 2}))
    svg = emit_svg(C, ["h"])
    _, lines = drawn_edges(svg)
    assert lines[0].get("data-kind") == "line"


def test_empty_scene():
    with pytest.raises(EmptyScene):
        emit_svg([], [])
