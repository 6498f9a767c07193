"""The max-plus semifield T = Q u {-inf} and coordinatewise tropicalization.

Finite tropical values are plain :class:`~fractions.Fraction` objects; the
tropical zero is the singleton :data:`NEG_INF`, which orders below every
rational and absorbs addition.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union


@total_ordering
class _MinusInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("tropline.NEG_INF")

    def __lt__(self, other) -> bool:
        return other is not self

    def __add__(self, other):
        # classical addition of valuations; -inf absorbs
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("-inf - (-inf) is undefined")
        return self

    def __rsub__(self, other):
        raise ArithmeticError("subtracting -inf from a finite value")

    def __mul__(self, k):
        # scaling by a positive integer exponent
        if k == 0:
            return Fraction(0)
        if k < 0:
            raise ArithmeticError("negative multiple of -inf")
        return self

    __rmul__ = __mul__

    def __reduce__(self):
        return (_MinusInfinity, ())


NEG_INF = _MinusInfinity()

TropicalValue = Union[Fraction, _MinusInfinity]
TropicalPoint = tuple  # tuple of TropicalValue


def is_finite(v: TropicalValue) -> bool:
    return v is not NEG_INF


def tval(v) -> TropicalValue:
    """Coerce ``int``/``Fraction``/``str`` (``"-inf"`` or ``"p/q"``) to a tropical value."""
    if v is NEG_INF:
        return v
    if isinstance(v, str):
        s = v.strip()
        if s in ("-inf", "-oo", "−∞"):
            return NEG_INF
        return Fraction(s)
    if isinstance(v, float):
        raise TypeError("floats are not tropical values; use Fraction")
    return Fraction(v)


def tadd(a: TropicalValue, b: TropicalValue) -> TropicalValue:
    """Tropical sum: ``max(a, b)``."""
    return a if a >= b else b


def tmul(a: TropicalValue, b: TropicalValue) -> TropicalValue:
    """Tropical product: ``a + b`` with -inf absorbing."""
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


def tsum(values: Iterable[TropicalValue]) -> TropicalValue:
    out: TropicalValue = NEG_INF
    for v in values:
        if v > out:
            out = v
    return out


def max_attained_twice(values: Sequence[TropicalValue]) -> bool:
    """True iff the maximum of ``values`` is attained at least twice."""
    m = tsum(values)
    return sum(1 for v in values if v == m) >= 2


def trop_point(p: Iterable) -> TropicalPoint:
    """Coordinatewise valuation of a point of K^n."""
    from .puiseux import valuation

    return tuple(valuation(c) for c in p)


def tmul_points(p: Sequence[TropicalValue], q: Sequence[TropicalValue]) -> TropicalPoint:
    if len(p) != len(q):
        raise ValueError("tropical points of different length")
    return tuple(tmul(a, b) for a, b in zip(p, q))


def format_tval(v: TropicalValue) -> str:
    return "-inf" if v is NEG_INF else str(v)
