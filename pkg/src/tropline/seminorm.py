"""Gauss seminorms and their pullbacks along ``y -> phi(x)``, in log scale.

``gauss_lognorm(p, rho)`` is ``max_i val(a_i) + i*rho`` for ``p = sum a_i x^i``;
this is ``log |p|_r`` with ``rho = log r``.  Composite seminorms evaluate a
bivariate polynomial after substituting ``phi(x)`` for ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CancellationRisk, DimensionMismatch, IdenticalSubstitutions
from .puiseux import KPolynomial, valuation
from .tropsem import NEG_INF, TropicalValue, tsum, tval


@dataclass(frozen=True)
class GaussParameter:
    rho: Fraction

    def __post_init__(self) -> None:
        rho = tval(self.rho)
        if rho is NEG_INF or rho > 0:
            raise ValueError(f"rho must be a rational <= 0, got {self.rho}")
        object.__setattr__(self, "rho", rho)


def _rho(r) -> Fraction:
    return r.rho if isinstance(r, GaussParameter) else GaussParameter(r).rho


@dataclass(frozen=True, eq=False)
class CompositeSeminorm:
    """``f -> |f(x, phi(x))|_r`` for a univariate ``phi``."""

    phi: KPolynomial
    rho: GaussParameter

    def __post_init__(self) -> None:
        if self.phi.nvars != 1:
            raise DimensionMismatch("phi must be a polynomial in one variable")
        if self.phi.is_zero():
            raise ValueError("phi must be nonzero")
        if not isinstance(self.rho, GaussParameter):
            object.__setattr__(self, "rho", GaussParameter(self.rho))

    def __call__(self, f: KPolynomial) -> TropicalValue:
        return composite_lognorm(f, self)


def gauss_lognorm(p: KPolynomial, rho) -> TropicalValue:
    rho = _rho(rho)
    if p.nvars != 1:
        raise DimensionMismatch("Gauss norm is defined on univariate polynomials here")
    return tsum(valuation(a) + e[0] * rho for e, a in p.items())


def substitute_phi(f: KPolynomial, phi: KPolynomial) -> KPolynomial:
    """``f(x, phi(x))`` as a univariate polynomial."""
    if f.nvars != 2:
        raise DimensionMismatch("composite seminorms act on polynomials in x, y")
    x = KPolynomial.variable(0, 1)
    return f.compose([x, phi])


def composite_lognorm(f: KPolynomial, S: CompositeSeminorm) -> TropicalValue:
    return gauss_lognorm(substitute_phi(f, S.phi), S.rho)


def _check_no_low_terms(phi: KPolynomial) -> None:
    for e, _ in phi.items():
        if e[0] <= 1:
            raise CancellationRisk(
                f"phi = {phi} has a term of degree {e[0]}; agreement on linear forms "
                "cannot be decided by comparing Gauss norms of phi"
            )


def linear_agreement(S1: CompositeSeminorm, S2: CompositeSeminorm) -> bool:
    """Whether the two seminorms agree on every ``a*x + b*y + c``.

    With no terms of degree <= 1 in either ``phi`` there is no cancellation, so
    the value on ``a*x + b*y + c`` is ``max(val a + rho, val b + M, val c)`` with
    ``M`` the log Gauss norm of ``phi``.
    """
    _check_no_low_terms(S1.phi)
    _check_no_low_terms(S2.phi)
    if S1.rho.rho != S2.rho.rho:
        return False
    return gauss_lognorm(S1.phi, S1.rho) == gauss_lognorm(S2.phi, S2.rho)


def witness_difference(S1: CompositeSeminorm, S2: CompositeSeminorm) -> tuple[KPolynomial, TropicalValue, TropicalValue]:
    """The polynomial ``phi_1(x) - y``, killed by ``S1`` and not by ``S2``."""
    if S1.phi == S2.phi:
        raise IdenticalSubstitutions("phi_1 and phi_2 coincide")
    x_only = S1.phi.compose([KPolynomial.variable(0, 2)])
    f = x_only - KPolynomial.variable(1, 2)
    return f, composite_lognorm(f, S1), composite_lognorm(f, S2)


def vanishes_on_ideal(S: CompositeSeminorm, g: KPolynomial) -> bool:
    """True iff ``g(x, phi(x))`` is identically zero."""
    return composite_lognorm(g, S) is NEG_INF


def linear_polynomial(a, b, c) -> KPolynomial:
    """``a*x + b*y + c`` with coefficients in K."""
    return KPolynomial(2, {(1, 0): a, (0, 1): b, (0, 0): c})
