"""Finite-support Puiseux series over a number field, and polynomials over them.

The valuation convention is ``val(t^q) = -q`` so that ``|t| < 1`` and all
tropical operations are max-plus.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DimensionMismatch, DivisionByZero, SingularSystem
from .field import QQ, AlgebraicNumber, FieldContext, _common_context
from .tropsem import NEG_INF, TropicalValue


class PuiseuxElement:
    """A finite sum ``sum c_q t^q`` with rational exponents (possibly negative).

    ``terms`` is a tuple of ``(exponent, coefficient)`` with strictly increasing
    exponents and no zero coefficients; the empty tuple is zero.
    """

    __slots__ = ("terms", "context")

    def __init__(self, terms: Iterable = (), context: FieldContext | None = None):
        acc: dict[Fraction, AlgebraicNumber] = {}
        ctx = context
        for q, c in terms:
            q = Fraction(q)
            if not isinstance(c, AlgebraicNumber):
                c = (ctx or QQ)(c)
            ctx = c.context if ctx is None else _common_context(ctx, c.context)
            acc[q] = acc[q] + c if q in acc else c
        ctx = ctx or QQ
        self.context = ctx
        self.terms = tuple(
            (q, acc[q].lift(ctx)) for q in sorted(acc) if not acc[q].is_zero()
        )

    @classmethod
    def _raw(cls, terms: tuple, context: FieldContext) -> "PuiseuxElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.context = context
        return obj

    @classmethod
    def monomial(cls, q=1, c=1, context: FieldContext | None = None) -> "PuiseuxElement":
        return cls([(q, c)], context)

    @classmethod
    def constant(cls, c, context: FieldContext | None = None) -> "PuiseuxElement":
        return cls([(0, c)], context)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def leading_exponent(self) -> Fraction | None:
        return self.terms[0][0] if self.terms else None

    def leading_coefficient(self) -> AlgebraicNumber:
        return self.terms[0][1] if self.terms else self.context.zero()

    def coefficient(self, q) -> AlgebraicNumber:
        q = Fraction(q)
        for e, c in self.terms:
            if e == q:
                return c
        return self.context.zero()

    def lift(self, ctx: FieldContext) -> "PuiseuxElement":
        if ctx == self.context:
            return self
        return PuiseuxElement._raw(tuple((q, c.lift(ctx)) for q, c in self.terms), ctx)

    # -- arithmetic ---------------------------------------------------------
    def _pair(self, other) -> tuple["PuiseuxElement", "PuiseuxElement"] | None:
        if isinstance(other, PuiseuxElement):
            pass
        elif isinstance(other, (int, Fraction, AlgebraicNumber)):
            other = PuiseuxElement.constant(other, self.context)
        else:
            return None
        ctx = _common_context(self.context, other.context)
        return self.lift(ctx), other.lift(ctx)

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return PuiseuxElement(a.terms + b.terms, a.context)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxElement":
        return PuiseuxElement._raw(tuple((q, -c) for q, c in self.terms), self.context)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return multiply(*pair)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PuiseuxElement":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only of monomials")
            (q, c), = self.terms
            return PuiseuxElement._raw(((q * n, c ** n),), self.context)
        result = PuiseuxElement.constant(1, self.context)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, PuiseuxFraction):
            return PuiseuxFraction(self) / other
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return PuiseuxFraction(*pair)

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return PuiseuxFraction(pair[1], pair[0])

    def divide_by_monomial(self, m: "PuiseuxElement") -> "PuiseuxElement":
        """Exact division by a single-term element."""
        if not m.is_monomial():
            raise ValueError("divisor is not a monomial")
        ctx = _common_context(self.context, m.context)
        (q, c), = m.terms
        inv = 1 / c.lift(ctx)
        return PuiseuxElement._raw(
            tuple((e - q, a.lift(ctx) * inv) for e, a in self.terms), ctx
        )

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, PuiseuxFraction):
            return other == self
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.leading_coefficient()) if self.terms else 0
        return hash(tuple((q, hash(c)) for q, c in self.terms))

    def __repr__(self) -> str:
        return f"PuiseuxElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for q, c in self.terms:
            cs = str(c)
            if q == 0:
                parts.append(cs)
                continue
            mono = "t" if q == 1 else (f"t^{q}" if q.denominator == 1 and q > 0 else f"t^({q})")
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            elif " " in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


T = PuiseuxElement.monomial(1)
"""The uniformizer ``t`` over Q."""


def multiply(f: PuiseuxElement, g: PuiseuxElement) -> PuiseuxElement:
    """Exact product of two Puiseux elements in a common context."""
    if f.context != g.context:
        ctx = _common_context(f.context, g.context)
        f, g = f.lift(ctx), g.lift(ctx)
    if not f.terms or not g.terms:
        return PuiseuxElement._raw((), f.context)
    acc: dict[Fraction, AlgebraicNumber] = {}
    for q1, c1 in f.terms:
        for q2, c2 in g.terms:
            q = q1 + q2
            c = c1 * c2
            acc[q] = acc[q] + c if q in acc else c
    terms = tuple((q, acc[q]) for q in sorted(acc) if not acc[q].is_zero())
    return PuiseuxElement._raw(terms, f.context)


def as_puiseux(x, context: FieldContext | None = None) -> PuiseuxElement:
    if isinstance(x, PuiseuxElement):
        return x
    if isinstance(x, PuiseuxFraction):
        raise TypeError("expected a Puiseux element, got a fraction")
    return PuiseuxElement.constant(x, context)


class PuiseuxFraction:
    """A formal quotient ``num / den`` of Puiseux elements.

    Fractions are not reduced to lowest terms; a monomial denominator is
    divided out since that is exact.  Equality is by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = as_puiseux(num)
        den = as_puiseux(den, num.context)
        if den.is_zero():
            raise DivisionByZero("Puiseux fraction with zero denominator")
        if num.context != den.context:
            ctx = _common_context(num.context, den.context)
            num, den = num.lift(ctx), den.lift(ctx)
        if num.is_zero():
            den = PuiseuxElement.constant(1, num.context)
        elif den.is_monomial() and den.terms != ((Fraction(0), den.context.one()),):
            num = num.divide_by_monomial(den)
            den = PuiseuxElement.constant(1, num.context)
        self.num = num
        self.den = den

    @property
    def context(self) -> FieldContext:
        return self.num.context

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_element(self) -> bool:
        return self.den.is_constant() and self.den.leading_coefficient() == 1

    def to_element(self) -> PuiseuxElement:
        """The underlying element when the denominator is 1."""
        if not self.is_element():
            raise ValueError("fraction has a non-trivial denominator")
        return self.num

    @staticmethod
    def _coerce(x) -> "PuiseuxFraction | None":
        if isinstance(x, PuiseuxFraction):
            return x
        if isinstance(x, (PuiseuxElement, int, Fraction, AlgebraicNumber)):
            return PuiseuxFraction(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return PuiseuxFraction(self.num + o.num, self.den)
        return PuiseuxFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxFraction":
        return PuiseuxFraction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PuiseuxFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero in K")
        return PuiseuxFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "PuiseuxFraction":
        if n < 0:
            return PuiseuxFraction(self.den ** (-n), self.num ** (-n))
        return PuiseuxFraction(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PuiseuxFraction({self})"

    def __str__(self) -> str:
        if self.is_element():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


KElement = Union[PuiseuxElement, PuiseuxFraction]


def as_fraction(x) -> PuiseuxFraction:
    if isinstance(x, PuiseuxFraction):
        return x
    return PuiseuxFraction(x)


def valuation(f) -> TropicalValue:
    """``val(0) = -inf``; otherwise minus the least exponent (differences for fractions)."""
    if isinstance(f, PuiseuxFraction):
        return valuation(f.num) - valuation(f.den) if f.num.terms else NEG_INF
    if isinstance(f, PuiseuxElement):
        return -f.terms[0][0] if f.terms else NEG_INF
    if isinstance(f, AlgebraicNumber):
        return NEG_INF if f.is_zero() else Fraction(0)
    if isinstance(f, (int, Fraction)):
        return NEG_INF if f == 0 else Fraction(0)
    raise TypeError(f"no valuation for {type(f).__name__}")


def solve2x2(A: Sequence[Sequence], b: Sequence) -> tuple[PuiseuxFraction, PuiseuxFraction]:
    """Cramer's rule for ``A @ (x, y) = b`` over K."""
    (a11, a12), (a21, a22) = [[as_fraction(v) for v in row] for row in A]
    b1, b2 = (as_fraction(v) for v in b)
    det = a11 * a22 - a12 * a21
    if det.is_zero():
        raise SingularSystem("2x2 system has zero determinant")
    x = (b1 * a22 - a12 * b2) / det
    y = (a11 * b2 - b1 * a21) / det
    return x, y


Monomial = tuple  # exponent tuple


class KPolynomial:
    """A polynomial in ``nvars`` variables with Puiseux coefficients."""

    __slots__ = ("nvars", "monomials", "context")

    def __init__(self, nvars: int, monomials: Mapping[Monomial, object] | Iterable = (),
                 context: FieldContext | None = None):
        items = monomials.items() if isinstance(monomials, Mapping) else monomials
        acc: dict[Monomial, PuiseuxElement] = {}
        ctx = context
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise DimensionMismatch(f"bad exponent {exp} for {nvars} variables")
            if isinstance(coef, PuiseuxFraction):
                coef = coef.to_element()
            coef = as_puiseux(coef, ctx)
            ctx = coef.context if ctx is None else _common_context(ctx, coef.context)
            acc[exp] = acc[exp] + coef if exp in acc else coef
        self.nvars = nvars
        self.context = ctx or QQ
        self.monomials = {
            e: c.lift(self.context) for e, c in sorted(acc.items()) if not c.is_zero()
        }

    @classmethod
    def variable(cls, i: int, nvars: int, context: FieldContext | None = None) -> "KPolynomial":
        exp = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, {exp: PuiseuxElement.constant(1, context)}, context)

    @classmethod
    def constant(cls, c, nvars: int) -> "KPolynomial":
        c = as_puiseux(c)
        return cls(nvars, {(0,) * nvars: c}, c.context)

    @classmethod
    def affine(cls, coeffs: Sequence) -> "KPolynomial":
        """``c_1 z_1 + ... + c_n z_n + c_0`` from ``[c_1, ..., c_n, c_0]`` (elements only)."""
        n = len(coeffs) - 1
        mons = {}
        for i, c in enumerate(coeffs[:-1]):
            mons[tuple(1 if k == i else 0 for k in range(n))] = c
        mons[(0,) * n] = coeffs[-1]
        return cls(n, mons)

    def is_zero(self) -> bool:
        return not self.monomials

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def degree(self) -> int:
        return max((sum(e) for e in self.monomials), default=-1)

    def coefficient(self, exp: Monomial) -> PuiseuxElement:
        return self.monomials.get(tuple(exp), PuiseuxElement((), self.context))

    def items(self) -> Iterator[tuple[Monomial, PuiseuxElement]]:
        return iter(self.monomials.items())

    def _check(self, other: "KPolynomial") -> None:
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift_other(self, other):
        if isinstance(other, KPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, AlgebraicNumber, PuiseuxElement)):
            return KPolynomial.constant(other, self.nvars)
        return None

    def __add__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return KPolynomial(self.nvars, list(self.monomials.items()) + list(o.monomials.items()))

    __radd__ = __add__

    def __neg__(self) -> "KPolynomial":
        return KPolynomial(self.nvars, {e: -c for e, c in self.monomials.items()}, self.context)

    def __sub__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._lift_other(other)
        if o is None:
            return NotImplemented
        terms = []
        for e1, c1 in self.monomials.items():
            for e2, c2 in o.monomials.items():
                terms.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return KPolynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "KPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = KPolynomial.constant(PuiseuxElement.constant(1, self.context), self.nvars)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._lift_other(other) if not isinstance(other, KPolynomial) else other
        if o is None:
            return NotImplemented
        return self.nvars == o.nvars and self.monomials == o.monomials

    __hash__ = None  # type: ignore[assignment]

    def evaluate(self, point: Sequence) -> PuiseuxFraction:
        return substitute_poly(self, point)

    def compose(self, substitutions: Sequence["KPolynomial"]) -> "KPolynomial":
        """Substitute a polynomial for each variable."""
        if len(substitutions) != self.nvars:
            raise DimensionMismatch("one substitution per variable required")
        m = substitutions[0].nvars if substitutions else 0
        result = KPolynomial(m, {}, self.context)
        cache: dict[tuple[int, int], KPolynomial] = {}
        for exp, c in self.monomials.items():
            term = KPolynomial.constant(c, m)
            for i, k in enumerate(exp):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = substitutions[i] ** k
                    term = term * cache[(i, k)]
            result = result + term
        return result

    def univariate_coefficients(self) -> dict[int, PuiseuxElement]:
        if self.nvars != 1:
            raise DimensionMismatch("not a univariate polynomial")
        return {e[0]: c for e, c in self.monomials.items()}

    def __repr__(self) -> str:
        return f"KPolynomial({self})"

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        names = default_variable_names(self.nvars)
        parts = []
        for exp, c in sorted(self.monomials.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0]))):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            elif " " in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def default_variable_names(n: int) -> list[str]:
    if n == 1:
        return ["x"]
    if n == 2:
        return ["x", "y"]
    return [f"z{i + 1}" for i in range(n)]


def substitute_poly(F: KPolynomial, p: Sequence) -> PuiseuxFraction:
    """Exact value of ``F`` at a point with coordinates in K."""
    if len(p) != F.nvars:
        raise DimensionMismatch(f"point has {len(p)} coordinates, polynomial has {F.nvars} variables")
    coords = [as_fraction(c) for c in p]
    for c in coords:
        _common_context(F.context, c.context)
    # common denominator keeps the result a single fraction
    dens = [c.den for c in coords]
    nums = [c.num for c in coords]
    deg = [max((e[i] for e in F.monomials), default=0) for i in range(F.nvars)]
    num_pows = [[nums[i] ** k for k in range(deg[i] + 1)] for i in range(F.nvars)]
    den_pows = [[dens[i] ** k for k in range(deg[i] + 1)] for i in range(F.nvars)]
    total = PuiseuxElement((), F.context)
    for exp, c in F.monomials.items():
        term = c
        for i, k in enumerate(exp):
            term = term * num_pows[i][k] * den_pows[i][deg[i] - k]
        total = total + term
    denom = PuiseuxElement.constant(1, F.context)
    for i in range(F.nvars):
        denom = denom * den_pows[i][deg[i]]
    return PuiseuxFraction(total, denom)


def linear_form_value(coeffs: Sequence, p: Sequence) -> PuiseuxFraction:
    """Value of ``c_1 z_1 + ... + c_n z_n + c_0`` at ``p``; coefficients may be fractions."""
    if len(coeffs) != len(p) + 1:
        raise DimensionMismatch("form length must be point dimension + 1")
    acc = as_fraction(coeffs[-1])
    for c, z in zip(coeffs[:-1], p):
        acc = acc + as_fraction(c) * as_fraction(z)
    return acc


def points_equal(p: Sequence, q: Sequence) -> bool:
    return len(p) == len(q) and all(as_fraction(a) == as_fraction(b) for a, b in zip(p, q))
