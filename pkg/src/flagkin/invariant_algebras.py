"""H-invariant subalgebras of the rotation algebra.

Two cases are materialized: the area-measure algebra R[t]/<t^n> for
H = SO(n-1), and the flag algebra on x, y (plus u when p == q) for
H = S(O(p) x O(q)).  The first block of diagonal indices is {2..p+1},
the second {p+2..n}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ExceptionalUnavailable, NotHomogeneous, NotInSubalgebra, SolveFailure
from .linalg import solve_unique
from .rotation_algebra import (
    AlgebraElement,
    _body_to_row,
    determinant,
    elementary_symmetric,
    generator,
    split_unit,
)
from .scalars import Scalar, factorial


@dataclass(frozen=True)
class FlagContext:
    """Ambient dimension n and block split p + q = n - 1."""

    n: int
    p: int

    def __post_init__(self) -> None:
        if not 0 <= self.p <= self.n - 1:
            raise ValueError(f"p={self.p} outside 0..{self.n - 1}")

    @property
    def q(self) -> int:
        return self.n - self.p - 1

    @property
    def exceptional(self) -> bool:
        return self.n % 2 == 1 and self.p == self.q

    @property
    def middle(self) -> int:
        return (self.n - 1) // 2

    def m(self, k: int) -> int:
        return min(self.p, self.q, k, self.n - k - 1)

    def m_prime(self, k: int) -> int:
        return min(self.p, k)

    def block1(self) -> range:
        return range(2, self.p + 2)

    def block2(self) -> range:
        return range(self.p + 2, self.n + 1)


def t_element(n: int) -> AlgebraElement:
    """E_1(x_22, ..., x_nn); the area algebra map sends t^i to i! E_i."""
    return elementary_symmetric(n, range(2, n + 1), 1)


@lru_cache(maxsize=None)
def x_element(ctx: FlagContext) -> AlgebraElement:
    return elementary_symmetric(ctx.n, ctx.block1(), 1)


@lru_cache(maxsize=None)
def y_element(ctx: FlagContext) -> AlgebraElement:
    return elementary_symmetric(ctx.n, ctx.block2(), 1)


@lru_cache(maxsize=None)
def u_element(ctx: FlagContext) -> AlgebraElement:
    """The exceptional generator: det of the off-diagonal block of X."""
    if not ctx.exceptional:
        raise ExceptionalUnavailable(f"n={ctx.n}, p={ctx.p} is not exceptional")
    rows = list(ctx.block1())
    cols = list(ctx.block2())
    entries = [[generator(ctx.n, i, j) for j in cols] for i in rows]
    return determinant(entries)


def flag_generators(ctx: FlagContext):
    """(x, y, u) with u = None outside the exceptional case."""
    u = u_element(ctx) if ctx.exceptional else None
    return x_element(ctx), y_element(ctx), u


@lru_cache(maxsize=None)
def embed_monomial(ctx: FlagContext, i: int, j: int) -> AlgebraElement:
    """Image of x^i y^j: i! E_i(first block) * j! E_j(second block)."""
    ei = elementary_symmetric(ctx.n, ctx.block1(), i)
    ej = elementary_symmetric(ctx.n, ctx.block2(), j)
    return (ei * ej).smul(Scalar(factorial(i) * factorial(j)))


def monomial_exponents(ctx: FlagContext, k: int) -> list[tuple[int, int]]:
    return [(i, k - i) for i in range(max(0, k - ctx.q), min(k, ctx.p) + 1)]


@dataclass(frozen=True)
class InvariantCoords:
    xy: tuple[tuple[tuple[int, int], Scalar], ...]
    u: Scalar | None

    def coefficient(self, i: int, j: int) -> Scalar:
        for (a, b), c in self.xy:
            if (a, b) == (i, j):
                return c
        return Scalar()


@lru_cache(maxsize=None)
def _invariant_columns(ctx: FlagContext, k: int):
    exps = monomial_exponents(ctx, k)
    cols = [_body_to_row(embed_monomial(ctx, i, j).body) for i, j in exps]
    has_u = ctx.exceptional and k == ctx.middle
    if has_u:
        cols.append(_body_to_row(u_element(ctx).body))
    return exps, cols, has_u


def invariant_coordinates(ctx: FlagContext, a: AlgebraElement, k: int) -> InvariantCoords:
    """Coordinates of a over the monomial basis x^i y^j (plus u in the middle).

    Membership in the invariant subalgebra is certified by solvability of
    the exact linear system; inconsistency raises NotInSubalgebra.
    """
    exps, cols, has_u = _invariant_columns(ctx, k)
    if a.is_zero():
        zero = Scalar()
        return InvariantCoords(tuple(((i, j), zero) for i, j in exps), zero if has_u else None)
    if a.degree() != k:
        raise NotHomogeneous(f"element has degree {a.degree()}, expected {k}")
    units, rhs = split_unit(a.body)
    try:
        sol = solve_unique(list(cols), rhs)
    except SolveFailure as exc:
        raise NotInSubalgebra(str(exc)) from exc
    unit = Scalar(Fraction(1), units)
    vals = [Scalar(v) * unit for v in sol]
    xy = tuple((exp, val) for exp, val in zip(exps, vals[: len(exps)]))
    return InvariantCoords(xy, vals[-1] if has_u else None)


def invariant_dimension(ctx: FlagContext, k: int) -> int:
    """m_k + 1, plus 1 in the exceptional middle degree."""
    extra = 1 if ctx.exceptional and k == ctx.middle else 0
    return ctx.m(k) + 1 + extra
