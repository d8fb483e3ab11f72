"""Named measure bases, their dual algebra elements, and base changes.

Labels: Phi[k,a] and S[k,i] index the two bases of flag area measures,
PhiEx the exceptional one (only for odd n with p == q), GlobS[k] the
globalized area measures and Sp[k] the rescaled family of Corollary-style
binomial tables.  Dual elements are stored as algebra elements through the
invariant-subalgebra embedding; their normalizations are the closed
formulas of the source basis (x^a y^(k-a) times explicit binomial
constants), so that every kinematic coefficient is computed purely inside
the algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ExceptionalUnavailable, IndexOutOfRange
from .invariant_algebras import (
    FlagContext,
    embed_monomial,
    invariant_coordinates,
    u_element,
)
from .rotation_algebra import AlgebraElement
from .scalars import ONE, Scalar, factorial, sbinom


@dataclass(frozen=True, order=True)
class MeasureLabel:
    kind: str  # "Phi" | "S" | "PhiEx" | "GlobS" | "Sp"
    k: int = 0
    idx: int = 0

    def degree(self, ctx: FlagContext) -> int:
        return ctx.middle if self.kind == "PhiEx" else self.k

    def to_text(self) -> str:
        if self.kind == "PhiEx":
            return "PhiEx"
        if self.kind in ("GlobS", "Sp"):
            return f"{self.kind}[{self.k}]"
        return f"{self.kind}[{self.k},{self.idx}]"

    @staticmethod
    def from_text(text: str) -> "MeasureLabel":
        if text == "PhiEx":
            return MeasureLabel("PhiEx")
        m = re.match(r"^(Phi|S)\[(\d+),(\d+)\]$", text)
        if m:
            return MeasureLabel(m.group(1), int(m.group(2)), int(m.group(3)))
        m = re.match(r"^(GlobS|Sp)\[(\d+)\]$", text)
        if m:
            return MeasureLabel(m.group(1), int(m.group(2)))
        raise ValueError(f"bad measure label {text!r}")

    def __str__(self) -> str:
        return self.to_text()


def phi_label(k: int, a: int) -> MeasureLabel:
    return MeasureLabel("Phi", k, a)


def s_label(k: int, i: int) -> MeasureLabel:
    return MeasureLabel("S", k, i)


PHI_EX = MeasureLabel("PhiEx")


def validate_label(ctx: FlagContext, label: MeasureLabel) -> None:
    k = label.k
    if label.kind == "Phi":
        if not (0 <= k <= ctx.n - 1 and max(0, k - ctx.q) <= label.idx <= min(k, ctx.p)):
            raise IndexOutOfRange(f"{label} invalid for n={ctx.n}, p={ctx.p}")
    elif label.kind == "S":
        if not (0 <= k <= ctx.n - 1 and 0 <= label.idx <= ctx.m(k)):
            raise IndexOutOfRange(f"{label} invalid for n={ctx.n}, p={ctx.p}")
    elif label.kind == "PhiEx":
        if not ctx.exceptional:
            raise ExceptionalUnavailable(f"PhiEx needs odd n with p == q, got n={ctx.n}, p={ctx.p}")
    elif label.kind in ("GlobS", "Sp"):
        if not 0 <= k <= ctx.n - 1:
            raise IndexOutOfRange(f"{label} invalid for n={ctx.n}")
    else:
        raise ValueError(f"unknown label kind {label.kind!r}")


def basis_labels(ctx: FlagContext, k: int, family: str) -> list[MeasureLabel]:
    """All family labels in degree k; PhiEx joins both families in the middle."""
    if family == "Phi":
        out = [phi_label(k, a) for a in range(max(0, k - ctx.q), min(k, ctx.p) + 1)]
    elif family == "S":
        out = [s_label(k, i) for i in range(ctx.m(k) + 1)]
    else:
        raise ValueError(f"unknown family {family!r}")
    if ctx.exceptional and k == ctx.middle:
        out.append(PHI_EX)
    return out


@dataclass(frozen=True)
class MeasureExpr:
    """Homogeneous Scalar-linear combination of basis measures."""

    ctx: FlagContext
    terms: tuple[tuple[MeasureLabel, Scalar], ...]

    def __post_init__(self) -> None:
        for label, _ in self.terms:
            validate_label(self.ctx, label)
        degs = {label.degree(self.ctx) for label, c in self.terms if not c.is_zero()}
        if len(degs) > 1:
            raise ValueError(f"mixed degrees {sorted(degs)}")
        object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    @staticmethod
    def of(ctx: FlagContext, mapping: dict[MeasureLabel, Scalar]) -> "MeasureExpr":
        return MeasureExpr(ctx, tuple((l, c) for l, c in mapping.items() if not c.is_zero()))

    def coefficient(self, label: MeasureLabel) -> Scalar:
        for l, c in self.terms:
            if l == label:
                return c
        return Scalar()

    def degree(self) -> int | None:
        return self.terms[0][0].degree(self.ctx) if self.terms else None

    def map_scalars(self, f) -> "MeasureExpr":
        return MeasureExpr.of(self.ctx, {l: f(c) for l, c in self.terms})

    def __add__(self, other: "MeasureExpr") -> "MeasureExpr":
        acc = {l: c for l, c in self.terms}
        for l, c in other.terms:
            acc[l] = acc.get(l, Scalar()) + c
        return MeasureExpr.of(self.ctx, acc)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c.to_text()}] {l.to_text()}" for l, c in self.terms)

    def __str__(self) -> str:
        return self.to_text()


# -- normalization constants and base changes ---------------------------------


def c_constant(n: int, k: int, p: int, i: int) -> Scalar:
    """c_{n,k,p,i}, the binomial normalization of the S-basis."""
    ctx = FlagContext(n, p)
    if not (0 <= k <= n - 1 and 0 <= i <= ctx.m(k)):
        raise IndexOutOfRange(f"c_({n},{k},{p},{i})")
    m_k = ctx.m(k)
    value = (
        ONE
        / sbinom(n - 1, k)
        / sbinom(m_k, i)
        / sbinom(abs(k - ctx.q) + m_k, i)
        * sbinom(n - 1, i)
    )
    return value


def s_in_phi(ctx: FlagContext, k: int, i: int) -> MeasureExpr:
    """S_k^(p),i as a combination of the Phi_{k,a}."""
    if not (0 <= k <= ctx.n - 1 and 0 <= i <= ctx.m(k)):
        raise IndexOutOfRange(f"S[{k},{i}] invalid for n={ctx.n}, p={ctx.p}")
    c = c_constant(ctx.n, k, ctx.p, i)
    mp, m = ctx.m_prime(k), ctx.m(k)
    terms = {}
    for a in range(mp - m, mp - i + 1):
        terms[phi_label(k, a)] = c * sbinom(mp - a, i)
    return MeasureExpr.of(ctx, terms)


def phi_in_s(ctx: FlagContext, j: int, a: int) -> MeasureExpr:
    """Phi_{j,a} as the alternating combination of the S_j^(p),s."""
    if not (0 <= j <= ctx.n - 1 and max(0, j - ctx.q) <= a <= min(j, ctx.p)):
        raise IndexOutOfRange(f"Phi[{j},{a}] invalid for n={ctx.n}, p={ctx.p}")
    mp, m = ctx.m_prime(j), ctx.m(j)
    terms = {}
    for s in range(mp - a, m + 1):
        sign = Scalar.of((-1) ** (a + mp + s))
        terms[s_label(j, s)] = (
            sign / c_constant(ctx.n, j, ctx.p, s) * sbinom(s, mp - a)
        )
    return MeasureExpr.of(ctx, terms)


def s_in_phi_matrix(ctx: FlagContext, k: int) -> list[list[Scalar]]:
    """Rows indexed by i, columns by the a-range of valid Phi labels."""
    a_vals = [l.idx for l in basis_labels(ctx, k, "Phi") if l.kind == "Phi"]
    return [
        [s_in_phi(ctx, k, i).coefficient(phi_label(k, a)) for a in a_vals]
        for i in range(ctx.m(k) + 1)
    ]


def phi_in_s_matrix(ctx: FlagContext, k: int) -> list[list[Scalar]]:
    """Rows indexed by a, columns by i."""
    a_vals = [l.idx for l in basis_labels(ctx, k, "Phi") if l.kind == "Phi"]
    return [
        [phi_in_s(ctx, k, a).coefficient(s_label(k, i)) for i in range(ctx.m(k) + 1)]
        for a in a_vals
    ]


# -- dual algebra elements -----------------------------------------------------


@lru_cache(maxsize=None)
def phi_dual(ctx: FlagContext, k: int, a: int) -> AlgebraElement:
    """Phi_{k,a}^* = x^a y^(k-a) / (omega_n C(q,k-a) C(p,a) a! (k-a)!)."""
    if not (0 <= k <= ctx.n - 1 and max(0, k - ctx.q) <= a <= min(k, ctx.p)):
        raise IndexOutOfRange(f"Phi[{k},{a}] invalid for n={ctx.n}, p={ctx.p}")
    coeff = (
        Scalar.omega(ctx.n, -1)
        / sbinom(ctx.q, k - a)
        / sbinom(ctx.p, a)
        / Scalar(factorial(a) * factorial(k - a))
    )
    return embed_monomial(ctx, a, k - a).smul(coeff)


@lru_cache(maxsize=None)
def s_dual(ctx: FlagContext, k: int, i: int) -> AlgebraElement:
    """S_k^(p),i,* as the alternating combination of x^a y^(k-a)."""
    if not (0 <= k <= ctx.n - 1 and 0 <= i <= ctx.m(k)):
        raise IndexOutOfRange(f"S[{k},{i}] invalid for n={ctx.n}, p={ctx.p}")
    mp = ctx.m_prime(k)
    front = Scalar.of((-1) ** (i + mp)) * Scalar.omega(ctx.n, -1) / c_constant(
        ctx.n, k, ctx.p, i
    )
    from .rotation_algebra import zero

    out = zero(ctx.n)
    for a in range(mp - i, mp + 1):
        coeff = (
            Scalar.of((-1) ** a)
            / Scalar(factorial(a) * factorial(k - a))
            * sbinom(i, mp - a)
            / sbinom(ctx.q, k - a)
            / sbinom(ctx.p, a)
        )
        out = out + embed_monomial(ctx, a, k - a).smul(coeff)
    return out.smul(front)


@lru_cache(maxsize=None)
def phi_ex_dual(ctx: FlagContext) -> AlgebraElement:
    """Phi_ex^* = (-1)^p u / (omega_n p!)."""
    if not ctx.exceptional:
        raise ExceptionalUnavailable(f"n={ctx.n}, p={ctx.p} is not exceptional")
    coeff = Scalar.of((-1) ** ctx.p) * Scalar.omega(ctx.n, -1) / Scalar(factorial(ctx.p))
    return u_element(ctx).smul(coeff)


def dual_element(ctx: FlagContext, label: MeasureLabel) -> AlgebraElement:
    validate_label(ctx, label)
    if label.kind == "Phi":
        return phi_dual(ctx, label.k, label.idx)
    if label.kind == "S":
        return s_dual(ctx, label.k, label.idx)
    if label.kind == "PhiEx":
        return phi_ex_dual(ctx)
    raise ValueError(f"no dual element for {label}")


def expand_in_duals(
    ctx: FlagContext, element: AlgebraElement, k: int, family: str
) -> dict[MeasureLabel, Scalar]:
    """Coefficients of a degree-k algebra element over the dual basis.

    Inverts the explicit dual formulas: the x^a y^(k-a) coordinate is
    rescaled into the Phi-dual coefficient, then base-changed for the
    S family; a u coordinate becomes the PhiEx-dual coefficient.
    """
    coords = invariant_coordinates(ctx, element, k)
    phi_coeffs: dict[int, Scalar] = {}
    for (a, b), c in coords.xy:
        phi_coeffs[a] = (
            c
            * Scalar.omega(ctx.n)
            * sbinom(ctx.q, b)
            * sbinom(ctx.p, a)
            * Scalar(factorial(a) * factorial(b))
        )
    out: dict[MeasureLabel, Scalar] = {}
    if family == "Phi":
        for a, c in phi_coeffs.items():
            if not c.is_zero():
                out[phi_label(k, a)] = c
    elif family == "S":
        mp = ctx.m_prime(k)
        for i in range(ctx.m(k) + 1):
            acc = Scalar()
            for a, c in phi_coeffs.items():
                acc = acc + c * c_constant(ctx.n, k, ctx.p, i) * sbinom(mp - a, i)
            if not acc.is_zero():
                out[s_label(k, i)] = acc
    else:
        raise ValueError(f"unknown family {family!r}")
    if coords.u is not None and not coords.u.is_zero():
        out[PHI_EX] = (
            coords.u
            * Scalar.of((-1) ** ctx.p)
            * Scalar(factorial(ctx.p))
            * Scalar.omega(ctx.n)
        )
    return out


# -- globalization and the rescaled family -------------------------------------


def globalize(expr: MeasureExpr) -> MeasureExpr:
    """Push forward to the global S_k basis.

    S[k,i] maps to GlobS[k]; Phi[k,a] to C(q,k-a) C(p,a) GlobS[k]; PhiEx
    has no stated global image in the basis and is sent to zero.
    """
    ctx = expr.ctx
    acc: dict[MeasureLabel, Scalar] = {}
    for label, c in expr.terms:
        if label.kind == "S":
            target, factor = MeasureLabel("GlobS", label.k), ONE
        elif label.kind == "Phi":
            target = MeasureLabel("GlobS", label.k)
            factor = sbinom(ctx.q, label.k - label.idx) * sbinom(ctx.p, label.idx)
        elif label.kind == "PhiEx":
            continue
        else:
            raise ValueError(f"cannot globalize {label}")
        acc[target] = acc.get(target, Scalar()) + c * factor
    return MeasureExpr.of(ctx, acc)


def hug_weil_measure(ctx: FlagContext, k: int) -> MeasureExpr:
    """S_k^(p) = (omega_{n-p} / omega_n) C(q,k)^{-1} Phi_{k,0}."""
    if not (0 <= ctx.p <= ctx.n - k - 1):
        raise IndexOutOfRange(f"S^(p)_k needs p <= n-k-1, got p={ctx.p}, k={k}")
    coeff = Scalar.omega(ctx.n - ctx.p) * Scalar.omega(ctx.n, -1) / sbinom(ctx.q, k)
    return MeasureExpr.of(ctx, {phi_label(k, 0): coeff})
