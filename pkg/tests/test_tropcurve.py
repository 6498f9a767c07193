import random
from fractions import Fraction

import pytest

from helpers import full_curve, line_poly, rand_puiseux, shifted
from tropline.errors import DegenerateSupport, DimensionMismatch, ZeroPolynomial
from tropline.puiseux import T, KPolynomial, PuiseuxElement, PuiseuxFraction, substitute_poly
from tropline.tropcurve import (
    TropicalPolynomial,
    convex_hull,
    corner_locus,
    eval_with_argmax,
    generic_displacement,
    is_balanced,
    lattice_length,
    local_multiplicity,
    mixed_area,
    on_curve,
    polygon_area,
    set_intersection,
    stable_intersection,
    tropicalize_poly,
)
from tropline.tropsem import trop_point

x = KPolynomial.variable(0, 2)
y = KPolynomial.variable(1, 2)
one = PuiseuxElement.constant(1)
F = Fraction

LINE = tropicalize_poly(x + y + 1)
LINE_T = tropicalize_poly(x + y + T)
WORKED = tropicalize_poly(x + T * y + T ** 3)


def ray_directions(C):
    return sorted(e.direction for e in C.edges)


def grid(center, radius=3, step=F(1, 2)):
    n = int(radius / step)
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            yield (center[0] + i * step, center[1] + j * step)


def assert_matches_argmax_oracle(C, points):
    for p in points:
        assert C.contains(p) == on_curve(C.polynomial, p), p


# tropicalization and evaluation ------------------------------------------------


def test_tropicalize_values():
    assert LINE_T.support == {(1, 0): 0, (0, 1): 0, (0, 0): -1}
    assert WORKED.support == {(1, 0): 0, (0, 1): -1, (0, 0): -3}
    G = tropicalize_poly((one - T) * y + (one - T ** 3))
    assert G.support == {(0, 1): 0, (0, 0): 0}


def test_tropicalize_errors():
    with pytest.raises(ZeroPolynomial):
        tropicalize_poly(x - x)
    with pytest.raises(DimensionMismatch):
        tropicalize_poly(KPolynomial.variable(0, 3))


def test_eval_with_argmax_values():
    assert eval_with_argmax(LINE, (0, 0)) == (0, {(1, 0), (0, 1), (0, 0)})
    assert eval_with_argmax(LINE, (-1, 0)) == (0, {(0, 1), (0, 0)})
    assert eval_with_argmax(WORKED, (-1, 0)) == (-1, {(1, 0), (0, 1)})


# corner loci -------------------------------------------------------------------


@pytest.mark.parametrize("Fp, vertex", [(LINE, (0, 0)), (LINE_T, (-1, -1)), (WORKED, (-3, -2))])
def test_tropical_line_corner_locus(Fp, vertex):
    C = corner_locus(Fp)
    assert C.vertices == (vertex,)
    assert ray_directions(C) == [(-1, 0), (0, -1), (1, 1)]
    assert all(e.kind == "ray" and e.multiplicity == 1 for e in C.edges)
    assert_matches_argmax_oracle(C, grid(vertex))


def test_single_monomial_is_degenerate():
    with pytest.raises(DegenerateSupport):
        corner_locus(TropicalPolynomial({(1, 1): 0}))


def test_collinear_support_gives_lines():
    # max(2y, y - 1, 0) is a double line y = 0
    C = corner_locus(TropicalPolynomial({(0, 2): 0, (0, 1): -1, (0, 0): 0}))
    assert {e.kind for e in C.edges} == {"line"}
    assert [e.multiplicity for e in C.edges] == [2]
    assert_matches_argmax_oracle(C, grid((0, 0)))
    C2 = corner_locus(TropicalPolynomial({(0, 2): 0, (0, 1): 3, (0, 0): 0}))
    assert sorted(e.point[1] for e in C2.edges) == [-3, 3]


def test_conic_with_bounded_edges():
    # max(2x, x + y + 2, 2y, x + 2, y + 2, 0) has a bounded cell
    Fp = TropicalPolynomial({(2, 0): 0, (1, 1): 2, (0, 2): 0, (1, 0): 2, (0, 1): 2, (0, 0): 0})
    C = corner_locus(Fp)
    assert any(e.kind == "segment" for e in C.edges)
    assert is_balanced(C)
    assert_matches_argmax_oracle(C, grid((0, 0), 6, F(1, 3)))


def test_random_corner_loci_oracle():
    rng = random.Random(5)
    for _ in range(25):
        d = rng.randint(1, 3)
        Fp = tropicalize_poly(full_curve(rng, d))
        C = corner_locus(Fp)
        assert is_balanced(C)
        for e in C.edges:
            assert lattice_length((e.dual[1][0] - e.dual[0][0], e.dual[1][1] - e.dual[0][1])) == e.multiplicity
            # points along each edge are corner points with the dual edge as argmax
            for s in (F(0), F(1, 3), F(1)):
                if e.length is not None and s > e.length:
                    continue
                p = e.at(s * (e.length if e.length is not None else 1))
                assert on_curve(Fp, p)
            mid = e.at(e.length / 2 if e.length is not None else F(1, 2))
            assert set(e.dual) <= eval_with_argmax(Fp, mid)[1]
        for v in C.vertices:
            assert len(eval_with_argmax(Fp, v)[1]) >= 3
        center = C.vertices[0] if C.vertices else (F(0), F(0))
        pts = [(center[0] + F(rng.randint(-40, 40), 7), center[1] + F(rng.randint(-40, 40), 7)) for _ in range(40)]
        assert_matches_argmax_oracle(C, pts)


# geometry helpers --------------------------------------------------------------


def test_hull_and_areas():
    tri = [(0, 0), (2, 0), (0, 2), (1, 0), (1, 1)]
    assert set(convex_hull(tri)) == {(0, 0), (2, 0), (0, 2)}
    assert polygon_area(tri) == 2
    simplex = [(0, 0), (1, 0), (0, 1)]
    assert mixed_area(simplex, simplex) == 1
    assert mixed_area([(0, 0), (2, 0), (0, 2)], [(0, 0), (3, 0), (0, 3)]) == 6
    assert mixed_area([(0, 0), (1, 0)], [(0, 0), (0, 1)]) == 1
    assert mixed_area([(0, 0), (1, 0)], [(0, 0), (2, 0)]) == 0


# intersections -----------------------------------------------------------------


def test_set_intersection_worked_pair():
    R = set_intersection(corner_locus(LINE), corner_locus(WORKED))
    assert R.is_finite
    assert R.points == (((-1, 0), 1),)
    assert R.total_multiplicity == 1


def test_set_intersection_overlaps():
    C = corner_locus(LINE)
    R = set_intersection(C, C)
    assert not R.is_finite and R.witness[0] != R.witness[1]
    R2 = set_intersection(C, corner_locus(LINE_T))
    assert not R2.is_finite
    for p in R2.witness:
        assert on_curve(LINE, p) and on_curve(LINE_T, p)


def test_stable_intersection_examples():
    R = stable_intersection(corner_locus(LINE), corner_locus(WORKED))
    assert R.points == (((-1, 0), 1),)
    C1, C2 = corner_locus(LINE), corner_locus(LINE_T)
    R = stable_intersection(C1, C2)
    assert R.total_multiplicity == 1
    assert R.points == (((0, 0), 1),)
    assert stable_intersection(C1, C2, direction=(1, 2)).points == R.points
    with pytest.raises(ValueError):
        stable_intersection(C1, C2, direction=(1, 1))


def test_generic_displacement_avoids_edge_directions():
    C = corner_locus(tropicalize_poly(x ** 2 + T * x * y + y ** 2 + x + y + 1))
    v = generic_displacement(C, corner_locus(LINE))
    assert v == (1, F(1, 2))
    for e in C.edges:
        assert v[0] * e.direction[1] - v[1] * e.direction[0] != 0


def _near(p, q, tol):
    return abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol


def test_stable_intersection_matches_concrete_displacement():
    """Oracle: translate one curve by a tiny concrete eps*v and intersect set-theoretically."""
    rng = random.Random(17)
    eps = F(1, 10 ** 6)
    for _ in range(20):
        d, e = rng.randint(1, 3), rng.randint(1, 2)
        F1, F2 = tropicalize_poly(full_curve(rng, d)), tropicalize_poly(full_curve(rng, e))
        C1, C2 = corner_locus(F1), corner_locus(F2)
        v = generic_displacement(C1, C2)
        stable = stable_intersection(C1, C2)
        moved = set_intersection(C1, corner_locus(shifted(F2, (eps * v[0], eps * v[1]))))
        assert moved.is_finite
        assert moved.total_multiplicity == stable.total_multiplicity == d * e
        grouped = {p: 0 for p, _ in stable.points}
        for q, m in moved.points:
            near = [p for p in grouped if _near(p, q, 1000 * eps)]
            assert len(near) == 1
            grouped[near[0]] += m
        assert grouped == dict(stable.points)


def test_bezout_and_mixed_area():
    rng = random.Random(23)
    for _ in range(20):
        G1, G2 = full_curve(rng, rng.randint(1, 3), 0.5), full_curve(rng, rng.randint(1, 3), 0.5)
        F1, F2 = tropicalize_poly(G1), tropicalize_poly(G2)
        R = stable_intersection(corner_locus(F1), corner_locus(F2))
        assert R.total_multiplicity == F1.degree * F2.degree == mixed_area(F1.support, F2.support)


def test_set_contains_stable_points_when_finite():
    rng = random.Random(29)
    checked = 0
    for _ in range(30):
        C1 = corner_locus(tropicalize_poly(full_curve(rng, 2)))
        C2 = corner_locus(tropicalize_poly(full_curve(rng, 2)))
        S = set_intersection(C1, C2)
        if not S.is_finite:
            continue
        checked += 1
        stable = stable_intersection(C1, C2)
        assert {p for p, _ in stable.points} <= {p for p, _ in S.points}
        # transversal finite intersections agree with multiplicities too
        assert S.total_multiplicity == stable.total_multiplicity
        for p, m in S.points:
            assert m == local_multiplicity(C1, C2, p)
    assert checked > 10


def test_kapranov_containment_by_substitution():
    rng = random.Random(31)
    for _ in range(30):
        G = full_curve(rng, rng.randint(1, 3))
        p = (PuiseuxFraction(rand_puiseux(rng, 2)), PuiseuxFraction(rand_puiseux(rng, 2)))
        rest = substitute_poly(G - KPolynomial.constant(G.coefficient((0, 0)), 2), p)
        if rest.is_zero() or not rest.is_element():
            continue
        H = G - KPolynomial.constant(G.coefficient((0, 0)), 2) - KPolynomial.constant(rest.to_element(), 2)
        assert substitute_poly(H, p).is_zero()
        assert on_curve(tropicalize_poly(H), trop_point(p))


def test_line_pair_solutions_lie_on_both_loci():
    from tropline.puiseux import solve2x2

    rng = random.Random(37)
    for _ in range(30):
        a = [rand_puiseux(rng, 2) for _ in range(3)]
        b = [rand_puiseux(rng, 2) for _ in range(3)]
        p = solve2x2([a[:2], b[:2]], [-a[2], -b[2]])
        q = trop_point(p)
        for coeffs in (a, b):
            assert on_curve(tropicalize_poly(line_poly(coeffs)), q)
