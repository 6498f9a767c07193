"""Exact tropical geometry over the field of rational Puiseux series.

Coefficients live in Q or a simple algebraic extension of Q; tropical values are
rationals or ``NEG_INF`` under the max-plus convention.
"""

from .errors import TroplineError
from .field import QQ, AlgebraicNumber, FieldContext, cyclotomic3
from .puiseux import T, KPolynomial, PuiseuxElement, PuiseuxFraction, valuation
from .tropsem import NEG_INF

__all__ = [
    "QQ",
    "AlgebraicNumber",
    "FieldContext",
    "cyclotomic3",
    "T",
    "KPolynomial",
    "PuiseuxElement",
    "PuiseuxFraction",
    "valuation",
    "NEG_INF",
    "TroplineError",
]
__version__ = "0.1.0"
