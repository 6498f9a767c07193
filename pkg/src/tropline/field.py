"""Exact arithmetic in Q and in simple extensions Q[a]/(m(a)).

Rationals are :class:`fractions.Fraction`.  An :class:`AlgebraicNumber` is a
coordinate vector in the power basis ``1, a, ..., a^(d-1)`` of a
:class:`FieldContext`, always stored fully reduced so that equality is a
componentwise comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import ContextMismatch, DivisionByZero, NotInvertible

Rational = Fraction
Scalar = Union[int, Fraction, "AlgebraicNumber"]


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _poly_sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(p), len(q))
    out = [
        (p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)
    ]
    return _trim([Fraction(c) for c in out])


def _poly_divmod(p: Sequence[Fraction], m: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Long division of ``p`` by ``m`` (both low-to-high, ``m`` nonzero)."""
    rem = _trim([Fraction(c) for c in p])
    m = _trim([Fraction(c) for c in m])
    dm = len(m) - 1
    lead = m[-1]
    quot = [Fraction(0)] * max(len(rem) - dm, 1)
    while len(rem) - 1 >= dm and rem:
        shift = len(rem) - 1 - dm
        c = rem[-1] / lead
        quot[shift] = c
        for i, mc in enumerate(m):
            rem[shift + i] -= c * mc
        rem.pop()  # leading term cancels exactly
        _trim(rem)
    return _trim(quot), rem


@dataclass(frozen=True)
class FieldContext:
    """A simple extension Q[a]/(m(a)); ``minimal_polynomial`` is low-to-high and monic."""

    minimal_polynomial: tuple[Fraction, ...]
    generator: str = field(default="a", compare=False)

    def __post_init__(self) -> None:
        poly = tuple(Fraction(c) for c in self.minimal_polynomial)
        if len(poly) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if poly[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        object.__setattr__(self, "minimal_polynomial", poly)

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @cached_property
    def _power_table(self) -> tuple[tuple[Fraction, ...], ...]:
        # reduced coordinates of a^k for k < 2d - 1
        d = self.degree
        rows = []
        for k in range(2 * d - 1):
            _, rem = _poly_divmod([Fraction(0)] * k + [Fraction(1)], self.minimal_polynomial)
            rows.append(tuple(rem + [Fraction(0)] * (d - len(rem))))
        return tuple(rows)

    def __call__(self, value: Scalar | Sequence) -> "AlgebraicNumber":
        """Coerce an integer, rational, or coefficient sequence into this field."""
        if isinstance(value, AlgebraicNumber):
            return value.lift(self)
        if isinstance(value, (int, Fraction)):
            return reduce([Fraction(value)], self)
        return reduce([Fraction(c) for c in value], self)

    def zero(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, (Fraction(0),) * self.degree)

    def one(self) -> "AlgebraicNumber":
        return self(1)

    def gen(self) -> "AlgebraicNumber":
        return reduce([Fraction(0), Fraction(1)], self)

    def __repr__(self) -> str:
        return f"FieldContext({[str(c) for c in self.minimal_polynomial]}, {self.generator!r})"


QQ = FieldContext((Fraction(0), Fraction(1)), "a")
"""The rational numbers, as the degree-1 context with minimal polynomial ``a``."""


def cyclotomic3(generator: str = "w") -> FieldContext:
    """Q(w) with w^2 + w + 1 = 0."""
    return FieldContext((Fraction(1), Fraction(1), Fraction(1)), generator)


def reduce(p: Iterable[Fraction | int], ctx: FieldContext) -> "AlgebraicNumber":
    """Return the canonical representative of the polynomial ``p(a)`` in ``ctx``."""
    p = list(p)
    if len(p) <= ctx.degree:
        return AlgebraicNumber(ctx, tuple(Fraction(c) for c in p) + (Fraction(0),) * (ctx.degree - len(p)))
    _, rem = _poly_divmod(list(p), ctx.minimal_polynomial)
    coeffs = rem + [Fraction(0)] * (ctx.degree - len(rem))
    return AlgebraicNumber(ctx, tuple(coeffs))


def _common_context(a: FieldContext, b: FieldContext) -> FieldContext:
    if a == b:
        return a
    # rationals embed in every context
    if a.is_rational:
        return b
    if b.is_rational:
        return a
    raise ContextMismatch(f"cannot combine elements of {a!r} and {b!r}")


@dataclass(frozen=True)
class AlgebraicNumber:
    context: FieldContext
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.context.degree:
            raise ValueError("coefficient vector length must equal the extension degree")

    # -- coercion -----------------------------------------------------------
    def lift(self, ctx: FieldContext) -> "AlgebraicNumber":
        if ctx == self.context:
            return self
        if self.context.is_rational:
            return ctx(self.rational_value())
        raise ContextMismatch(f"cannot move an element of {self.context!r} into {ctx!r}")

    def _coerce(self, other) -> tuple["AlgebraicNumber", "AlgebraicNumber"] | None:
        if isinstance(other, (int, Fraction)):
            return self, self.context(other)
        if isinstance(other, AlgebraicNumber):
            ctx = _common_context(self.context, other.context)
            return self.lift(ctx), other.lift(ctx)
        return None

    def rational_value(self) -> Fraction:
        """The value of an element that lies in Q (degree-1 contexts only)."""
        if not self.context.is_rational:
            if all(c == 0 for c in self.coeffs[1:]):
                return self.coeffs[0]
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgebraicNumber(a.context, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self.context, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgebraicNumber(a.context, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.context, tuple(c * other for c in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        ctx = a.context
        if ctx.is_rational:
            return AlgebraicNumber(ctx, (a.coeffs[0] * b.coeffs[0],))
        d = ctx.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        out = [Fraction(0)] * d
        for k, c in enumerate(prod):
            if c:
                for i, r in enumerate(ctx._power_table[k]):
                    if r:
                        out[i] += c * r
        return AlgebraicNumber(ctx, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * invert(b)

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * invert(a)

    def __pow__(self, n: int) -> "AlgebraicNumber":
        if n < 0:
            return invert(self) ** (-n)
        result = self.context.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        if isinstance(other, AlgebraicNumber):
            try:
                return equals(self, other)
            except ContextMismatch:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.context, self.coeffs))

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self})"

    def __str__(self) -> str:
        g = self.context.generator
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = g if i == 1 else f"{g}^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def equals(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Exact equality; both operands must live in compatible contexts."""
    ctx = _common_context(a.context, b.context)
    return a.lift(ctx).coeffs == b.lift(ctx).coeffs


def invert(a: AlgebraicNumber) -> AlgebraicNumber:
    """Multiplicative inverse via the extended Euclidean algorithm in Q[a].

    Raises :class:`NotInvertible` when ``a`` shares a factor with the minimal
    polynomial, which only happens for a reducible context.
    """
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    ctx = a.context
    if ctx.is_rational:
        return AlgebraicNumber(ctx, (1 / a.coeffs[0],))
    # invariant: s * a == r0 (mod m)
    r0, r1 = _trim(list(a.coeffs)), list(ctx.minimal_polynomial)
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise NotInvertible(f"{a} shares a factor with the minimal polynomial of {ctx!r}")
    inv = [c / r0[0] for c in s0]
    return reduce(inv, ctx)


def as_algebraic(value: Scalar, ctx: FieldContext = QQ) -> AlgebraicNumber:
    if isinstance(value, AlgebraicNumber):
        return value
    return ctx(value)
