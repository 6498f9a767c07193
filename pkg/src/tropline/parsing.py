"""Parse human-readable expressions such as ``"t^(1/2) + 2*t"`` or ``"x + t*y + t^3"``.

Python's own expression grammar does the tokenizing; ``^`` is accepted as a
synonym for ``**``.  The name ``t`` is the Puiseux uniformizer and the field
generator (``w`` for Q(w)) is available when a context provides one.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Sequence, Union

from .errors import ParseError
from .field import QQ, FieldContext
from .puiseux import KPolynomial, PuiseuxElement, PuiseuxFraction

Value = Union[PuiseuxFraction, KPolynomial]


def _normalize(text: str) -> str:
    return text.replace("^", "**").replace("−", "-").replace("·", "*")


class _Evaluator:
    def __init__(self, variables: Sequence[str], ctx: FieldContext):
        self.variables = list(variables)
        self.ctx = ctx
        self.n = len(self.variables)

    # -- promotion ----------------------------------------------------------
    def _poly(self, v: Value) -> KPolynomial:
        if isinstance(v, KPolynomial):
            return v
        if not v.is_element():
            raise ParseError(f"coefficient {v} is not a Puiseux element")
        return KPolynomial.constant(v.num, self.n)

    def _binary(self, op, a: Value, b: Value) -> Value:
        if isinstance(a, PuiseuxFraction) and isinstance(b, PuiseuxFraction):
            return op(a, b)
        return op(self._poly(a), self._poly(b))

    def _constant(self, v: Value) -> PuiseuxFraction:
        if isinstance(v, KPolynomial):
            if any(any(e) for e, _ in v.items()):
                raise ParseError("expected an expression without variables")
            return PuiseuxFraction(v.coefficient((0,) * self.n))
        return v

    def _rational(self, v: Value) -> Fraction:
        v = self._constant(v)
        if not v.is_element() or not v.num.is_constant():
            raise ParseError(f"exponent {v} is not a rational number")
        c = v.num.leading_coefficient() if v.num.terms else QQ.zero()
        if not c.is_rational():
            raise ParseError(f"exponent {v} is not a rational number")
        return c.coeffs[0]

    # -- evaluation ---------------------------------------------------------
    def eval(self, node) -> Value:
        if isinstance(node, ast.Expression):
            return self.eval(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"unsupported literal {node.value!r}; use integers and '/'")
            return PuiseuxFraction(PuiseuxElement.constant(node.value, self.ctx))
        if isinstance(node, ast.Name):
            return self._name(node.id)
        if isinstance(node, ast.UnaryOp):
            v = self.eval(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            return self._binop(node)
        raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")

    def _name(self, name: str) -> Value:
        if name == "t":
            return PuiseuxFraction(PuiseuxElement.monomial(1, 1, self.ctx))
        if name in self.variables:
            return KPolynomial.variable(self.variables.index(name), self.n, self.ctx)
        if not self.ctx.is_rational and name == self.ctx.generator:
            return PuiseuxFraction(PuiseuxElement.constant(self.ctx.gen(), self.ctx))
        raise ParseError(f"unknown name {name!r}")

    def _binop(self, node: ast.BinOp) -> Value:
        op = node.op
        if isinstance(op, ast.Pow):
            return self._pow(node)
        a, b = self.eval(node.left), self.eval(node.right)
        if isinstance(op, ast.Add):
            return self._binary(lambda x, y: x + y, a, b)
        if isinstance(op, ast.Sub):
            return self._binary(lambda x, y: x - y, a, b)
        if isinstance(op, ast.Mult):
            return self._binary(lambda x, y: x * y, a, b)
        if isinstance(op, ast.Div):
            d = self._constant(b)
            if d.is_zero():
                raise ParseError("division by zero")
            if isinstance(a, PuiseuxFraction):
                return a / d
            inv = PuiseuxFraction(1) / d
            if not inv.is_element():
                raise ParseError("polynomials may only be divided by monomials in t")
            return a * inv.num
        raise ParseError(f"unsupported operator {type(op).__name__}")

    def _pow(self, node: ast.BinOp) -> Value:
        base = self.eval(node.left)
        k = self._rational(self.eval(node.right))
        if k.denominator == 1:
            if isinstance(base, KPolynomial):
                if k < 0:
                    raise ParseError("negative power of a polynomial")
                return base ** int(k)
            return base ** int(k)
        b = self._constant(base)
        if not (b.is_element() and b.num.is_monomial() and b.num.leading_coefficient() == 1):
            raise ParseError("fractional powers are only defined for t^q")
        return PuiseuxFraction(PuiseuxElement.monomial(b.num.leading_exponent() * k, 1, self.ctx))


def parse(text: str, variables: Sequence[str] = (), ctx: FieldContext = QQ) -> Value:
    try:
        tree = ast.parse(_normalize(text.strip()), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}", line=exc.lineno, column=exc.offset) from None
    try:
        return _Evaluator(variables, ctx).eval(tree)
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc


def parse_element(text: str, ctx: FieldContext = QQ) -> PuiseuxFraction:
    """An element of K, possibly a quotient such as ``(t + t^2)/(1 - t)``."""
    v = parse(text, (), ctx)
    assert isinstance(v, PuiseuxFraction)
    return v


def parse_polynomial(text: str, variables: Sequence[str] = ("x", "y"), ctx: FieldContext = QQ) -> KPolynomial:
    v = parse(text, variables, ctx)
    if isinstance(v, PuiseuxFraction):
        if not v.is_element():
            raise ParseError(f"{text!r} is not a polynomial")
        return KPolynomial.constant(v.num, len(variables))
    return v
