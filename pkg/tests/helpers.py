"""Seeded random data and small independent oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from tropline.field import QQ, FieldContext
from tropline.puiseux import KPolynomial, PuiseuxElement, PuiseuxFraction
from tropline.tropcurve import TropicalPolynomial

SMALL_COEFFS = (-3, -2, -1, 1, 2, 3)


def rand_rational(rng: random.Random, lo=-5, hi=5, dens=(1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rand_algebraic(rng: random.Random, ctx: FieldContext = QQ, nonzero=True):
    while True:
        a = ctx([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ctx.degree)])
        if not nonzero or not a.is_zero():
            return a


def rand_puiseux(rng: random.Random, max_terms=5, ctx: FieldContext = QQ, nonzero=True,
                 exps=(-4, 4), dens=(1, 2, 3)) -> PuiseuxElement:
    while True:
        terms = [(Fraction(rng.randint(*exps), rng.choice(dens)), rand_algebraic(rng, ctx))
                 for _ in range(rng.randint(0 if not nonzero else 1, max_terms))]
        f = PuiseuxElement(terms, ctx)
        if not nonzero or not f.is_zero():
            return f


def rand_monomial(rng: random.Random, lo=-3, hi=3) -> PuiseuxElement:
    return PuiseuxElement.monomial(rng.randint(lo, hi), rng.choice(SMALL_COEFFS))


def rand_line(rng: random.Random, max_terms=3, zero_prob=0.0) -> tuple:
    """Coefficients ``(a, b, c)`` of ``a*x + b*y + c`` with ``(a, b) != 0``."""
    while True:
        coeffs = [PuiseuxElement() if rng.random() < zero_prob else rand_puiseux(rng, max_terms)
                  for _ in range(3)]
        if not (coeffs[0].is_zero() and coeffs[1].is_zero()):
            return tuple(coeffs)


def line_poly(coeffs) -> KPolynomial:
    a, b, c = coeffs
    return KPolynomial(2, {(1, 0): a, (0, 1): b, (0, 0): c})


def full_curve(rng: random.Random, d: int, fill=0.7) -> KPolynomial:
    """Random curve of degree ``d`` whose Newton polygon is the full triangle."""
    mons = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            corner = (i, j) in ((0, 0), (d, 0), (0, d))
            if corner or rng.random() < fill:
                mons[(i, j)] = rand_monomial(rng, -4, 4) + (rand_monomial(rng, 5, 6) if rng.random() < 0.3 else 0)
    return KPolynomial(2, mons)


def shifted(F: TropicalPolynomial, a) -> TropicalPolynomial:
    """Tropical polynomial whose corner locus is that of ``F`` translated by ``a``."""
    return TropicalPolynomial({(i, j): c - i * a[0] - j * a[1] for (i, j), c in F.support.items()})


def brute_valuation(f: PuiseuxElement):
    """Minus the least exponent with nonzero coefficient, by direct scan."""
    exps = [q for q, c in f.terms if not c.is_zero()]
    return -min(exps) if exps else None


def brute_product(f: PuiseuxElement, g: PuiseuxElement) -> dict:
    out: dict = {}
    for q1, c1 in f.terms:
        for q2, c2 in g.terms:
            out[q1 + q2] = out.get(q1 + q2, 0) + c1 * c2
    return {q: c for q, c in out.items() if not c.is_zero()}


# hypothesis strategies ---------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def puiseux_elements(draw, max_terms=4, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = []
    for _ in range(n):
        q = draw(st.fractions(min_value=-4, max_value=4, max_denominator=3))
        c = draw(st.integers(-4, 4).filter(bool))
        terms.append((q, c))
    f = PuiseuxElement(terms)
    if nonzero and f.is_zero():
        f = PuiseuxElement.monomial(0, 1)
    return f


@st.composite
def k_fractions(draw, nonzero=False):
    num = draw(puiseux_elements(3, nonzero=nonzero))
    den = draw(puiseux_elements(2, nonzero=True))
    return PuiseuxFraction(num, den)


@st.composite
def univariate_polys(draw, max_deg=3, nonzero=False):
    mons = {(i,): draw(puiseux_elements(2)) for i in range(draw(st.integers(0, max_deg)) + 1)}
    p = KPolynomial(1, mons)
    if nonzero and p.is_zero():
        p = KPolynomial(1, {(0,): PuiseuxElement.monomial(0, 1)})
    return p
