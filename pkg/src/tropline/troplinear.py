"""Linear embeddings of affine space and tropicalized lines.

A :class:`LinearEmbedding` is a tuple of affine-linear forms over K, each
stored as ``[c_1, ..., c_n, c_0]`` for ``c_1 z_1 + ... + c_n z_n + c_0``.
Coordinate indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, RankDeficient
from .puiseux import PuiseuxElement, PuiseuxFraction, as_fraction, linear_form_value, valuation
from .tropsem import NEG_INF, TropicalPoint, TropicalValue, max_attained_twice, tmul, trop_point


def _as_k(c):
    if isinstance(c, (PuiseuxElement, PuiseuxFraction)):
        return c
    return PuiseuxElement.constant(c)


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a matrix over K by Gaussian elimination."""
    m = [[as_fraction(c) for c in row] for row in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            if m[i][col].is_zero():
                continue
            f = m[i][col] / m[r][col]
            m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


class LinearEmbedding:
    """An N-tuple of affine-linear forms in ``n`` variables over K."""

    __slots__ = ("forms", "n")

    def __init__(self, forms: Iterable[Sequence], n: int | None = None, *, require_embedding: bool = False):
        forms = tuple(tuple(_as_k(c) for c in f) for f in forms)
        if n is None:
            if not forms:
                raise DimensionMismatch("cannot infer the source dimension of an empty embedding")
            n = len(forms[0]) - 1
        for f in forms:
            if len(f) != n + 1:
                raise DimensionMismatch(f"form of length {len(f)} in {n} variables")
        self.forms = forms
        self.n = n
        if require_embedding and not self.is_embedding():
            raise RankDeficient("linear parts do not span the source space")

    @classmethod
    def identity(cls, n: int) -> "LinearEmbedding":
        return cls([coordinate_form(k, n) for k in range(n)], n)

    def __len__(self) -> int:
        return len(self.forms)

    @property
    def N(self) -> int:
        return len(self.forms)

    def linear_parts(self) -> list[tuple]:
        return [f[:-1] for f in self.forms]

    def is_embedding(self) -> bool:
        return len(self.forms) >= self.n and rank(self.linear_parts()) == self.n

    def __call__(self, p: Sequence) -> tuple:
        return apply_embedding(self, p)

    def extended(self, forms: Iterable[Sequence]) -> "LinearEmbedding":
        return LinearEmbedding(list(self.forms) + list(forms), self.n)

    def index_of(self, form: Sequence) -> int | None:
        form = tuple(as_fraction(c) for c in form)
        for k, f in enumerate(self.forms):
            if all(as_fraction(a) == b for a, b in zip(f, form)):
                return k
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearEmbedding):
            return NotImplemented
        return self.n == other.n and len(self) == len(other) and all(
            all(as_fraction(a) == as_fraction(b) for a, b in zip(f, g))
            for f, g in zip(self.forms, other.forms)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinearEmbedding(N={len(self)}, n={self.n})"


def coordinate_form(k: int, n: int) -> tuple:
    """The form ``z_k`` (0-based) in ``n`` variables."""
    return tuple(PuiseuxElement.constant(1 if i == k else 0) for i in range(n)) + (PuiseuxElement(),)


def apply_embedding(i: LinearEmbedding, p: Sequence) -> tuple[PuiseuxFraction, ...]:
    if len(p) != i.n:
        raise DimensionMismatch(f"point in {len(p)} dimensions, embedding expects {i.n}")
    return tuple(linear_form_value(f, p) for f in i.forms)


def product_embedding(i: LinearEmbedding, j: LinearEmbedding) -> LinearEmbedding:
    """``x -> (i(x), j(x))``."""
    if i.n != j.n:
        raise DimensionMismatch(f"source dimensions {i.n} and {j.n} differ")
    return LinearEmbedding(i.forms + j.forms, i.n)


def trop_projection(q: Sequence[TropicalValue], S: Sequence[int]) -> TropicalPoint:
    """Restriction of a tropical point to the coordinates ``S`` (in the given order)."""
    out = []
    for k in S:
        if not 0 <= k < len(q):
            raise IndexOutOfRange(f"coordinate {k} outside 0..{len(q) - 1}")
        out.append(q[k])
    return tuple(out)


def linear_tropicalization(i: LinearEmbedding, p: Sequence) -> TropicalPoint:
    """``val(i(p))`` coordinatewise."""
    return trop_point(apply_embedding(i, p))


@dataclass(frozen=True)
class TropPluckerVector:
    """Valuations of the 2x2 minors of a rank-2 matrix, keyed by 0-based column pairs."""

    N: int
    p: Mapping[tuple[int, int], TropicalValue]

    def __getitem__(self, kl: tuple[int, int]) -> TropicalValue:
        k, l = kl
        if k == l:
            return NEG_INF
        return self.p[(k, l)] if k < l else self.p[(l, k)]

    def satisfies_four_point(self) -> bool:
        return all(
            max_attained_twice(four_point_terms(self, quad))
            for quad in combinations(range(self.N), 4)
        )


def four_point_terms(P: TropPluckerVector, quad: Sequence[int]) -> tuple:
    i, j, k, l = quad
    return (
        tmul(P[i, j], P[k, l]),
        tmul(P[i, k], P[j, l]),
        tmul(P[i, l], P[j, k]),
    )


def plucker_valuations(M: Sequence[Sequence]) -> TropPluckerVector:
    """Tropical Plücker vector of the row space of a 2 x N matrix over K."""
    if len(M) != 2 or len(M[0]) != len(M[1]):
        raise DimensionMismatch("expected a 2 x N matrix")
    r1 = [as_fraction(c) for c in M[0]]
    r2 = [as_fraction(c) for c in M[1]]
    N = len(r1)
    p = {}
    for k, l in combinations(range(N), 2):
        p[(k, l)] = valuation(r1[k] * r2[l] - r1[l] * r2[k])
    if all(v is NEG_INF for v in p.values()):
        raise RankDeficient("matrix has rank < 2")
    return TropPluckerVector(N, p)


def line_membership(P: TropPluckerVector, x: Sequence[TropicalValue]) -> bool:
    """Circuit test: every 3-subset's maximum is attained at least twice."""
    if len(x) != P.N:
        raise DimensionMismatch(f"point has {len(x)} coordinates, line lives in T^{P.N}")
    for i, j, k in combinations(range(P.N), 3):
        terms = (tmul(P[j, k], x[i]), tmul(P[i, k], x[j]), tmul(P[i, j], x[k]))
        if not max_attained_twice(terms):
            return False
    return True
