"""Exact scalars: rationals times a Laurent monomial in formal volume units.

The unit symbols omega(m) (volume of the (m-1)-sphere), volSO(n) and
volFlag are opaque and commute; they are never given numeric values in any
verification path.  An optional floating-point evaluation of the omega
units is provided for display only.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, UnitMismatch

Units = tuple[tuple[str, int], ...]


def omega_sym(m: int) -> str:
    if m < 1:
        raise ValueError("omega index must be >= 1")
    return f"omega({m})"


def vol_so_sym(n: int) -> str:
    return f"volSO({n})"


VOL_FLAG_SYM = "volFlag"

_SYM_RE = re.compile(r"^(omega|volSO)\((\d+)\)$|^volFlag$")


def _check_sym(sym: str) -> None:
    if not _SYM_RE.match(sym):
        raise ValueError(f"unknown unit symbol {sym!r}")


def _merge_units(a: Units, b: Units, flip_b: bool = False) -> Units:
    acc: dict[str, int] = dict(a)
    for sym, exp in b:
        if flip_b:
            exp = -exp
        acc[sym] = acc.get(sym, 0) + exp
    return tuple(sorted((s, e) for s, e in acc.items() if e != 0))


@dataclass(frozen=True)
class Scalar:
    """An exact rational times a monomial in formal unit symbols."""

    value: Fraction = Fraction(0)
    units: Units = ()

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.value == 0:
            object.__setattr__(self, "units", ())
        else:
            for sym, exp in self.units:
                _check_sym(sym)
                if exp == 0:
                    raise ValueError("zero exponent stored in unit map")
            object.__setattr__(self, "units", tuple(sorted(self.units)))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(num, den: int = 1) -> "Scalar":
        return Scalar(Fraction(num, den))

    @staticmethod
    def omega(m: int, exp: int = 1) -> "Scalar":
        return Scalar(Fraction(1), ((omega_sym(m), exp),))

    @staticmethod
    def vol_so(n: int, exp: int = 1) -> "Scalar":
        return Scalar(Fraction(1), ((vol_so_sym(n), exp),))

    @staticmethod
    def vol_flag(exp: int = 1) -> "Scalar":
        return Scalar(Fraction(1), ((VOL_FLAG_SYM, exp),))

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def is_rational(self) -> bool:
        return self.units == ()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = Scalar.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.units != other.units:
            raise UnitMismatch(f"{self.units} vs {other.units}")
        return Scalar(self.value + other.value, self.units)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.value, self.units)

    def __sub__(self, other) -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return Scalar.coerce(other) + (-self)

    def __mul__(self, other) -> "Scalar":
        other = Scalar.coerce(other)
        if self.is_zero() or other.is_zero():
            return Scalar()
        return Scalar(self.value * other.value, _merge_units(self.units, other.units))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        other = Scalar.coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by zero scalar")
        if self.is_zero():
            return Scalar()
        return Scalar(self.value / other.value, _merge_units(self.units, other.units, flip_b=True))

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) / self

    def __pow__(self, k: int) -> "Scalar":
        if k == 0:
            return Scalar.of(1)
        if k < 0:
            return Scalar.of(1) / self ** (-k)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def inverse(self) -> "Scalar":
        return Scalar.of(1) / self

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        parts = [f"{self.value.numerator}/{self.value.denominator}"]
        parts += [f"{sym}^{exp}" for sym, exp in self.units]
        return " * ".join(parts)

    @staticmethod
    def from_text(text: str) -> "Scalar":
        parts = [p.strip() for p in text.split("*")]
        num, den = parts[0].split("/")
        units = []
        for part in parts[1:]:
            sym, exp = part.rsplit("^", 1)
            units.append((sym, int(exp)))
        return Scalar(Fraction(int(num), int(den)), tuple(units))

    def to_json(self) -> dict:
        return {
            "num": self.value.numerator,
            "den": self.value.denominator,
            "units": [{"sym": sym, "exp": exp} for sym, exp in self.units],
        }

    @staticmethod
    def from_json(data: dict) -> "Scalar":
        units = tuple((u["sym"], u["exp"]) for u in data["units"])
        return Scalar(Fraction(data["num"], data["den"]), units)

    def to_latex(self) -> str:
        num, den = self.value.numerator, self.value.denominator
        sign = "-" if num < 0 else ""
        num = abs(num)
        body = f"{sign}{num}" if den == 1 else f"{sign}\\frac{{{num}}}{{{den}}}"
        for sym, exp in self.units:
            m = _SYM_RE.match(sym)
            if m.group(1) == "omega":
                tex = f"\\omega_{{{m.group(2)}}}"
            elif m.group(1) == "volSO":
                tex = f"\\operatorname{{vol}}\\mathrm{{SO}}({m.group(2)})"
            else:
                tex = "\\operatorname{vol}\\mathrm{Flag}"
            body += tex if exp == 1 else f"{tex}^{{{exp}}}"
        return body

    def approximate(self) -> float:
        """Display-only float, substituting omega(m) -> 2 pi^(m/2) / Gamma(m/2)."""
        out = float(self.value)
        for sym, exp in self.units:
            m = _SYM_RE.match(sym)
            if m.group(1) != "omega":
                raise ValueError(f"no numeric value for {sym}")
            mm = int(m.group(2))
            out *= (2 * math.pi ** (mm / 2) / math.gamma(mm / 2)) ** exp
        return out

    def __str__(self) -> str:
        return self.to_text()


ZERO = Scalar()
ONE = Scalar.of(1)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch arithmetic by name: one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def binom(m: int, r: int) -> Fraction:
    """Binomial coefficient with C(m, r) = 0 outside 0 <= r <= m."""
    if r < 0 or r > m or m < 0:
        return Fraction(0)
    return Fraction(math.comb(m, r))


def sbinom(m: int, r: int) -> Scalar:
    return Scalar(binom(m, r))


def factorial(k: int) -> Fraction:
    return Fraction(math.factorial(k))
