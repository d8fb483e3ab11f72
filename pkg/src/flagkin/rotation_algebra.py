"""The graded algebra R[X]/I realized faithfully inside the exterior kernel.

Generators x_{ij} (2 <= i, j <= n) are represented by the invariant forms
(sigma_i ^ omega_{j,1} + sigma_j ^ omega_{i,1}) / 2, and products are wedge
products, so the ideal relations hold identically instead of by rewriting.
Chord monomials (diagonal factors plus a non-crossing perfect matching)
give a basis in each degree; normal forms are recovered by exact linear
solves against their images.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb

from .errors import (
    BadIndexSet,
    DimensionMismatch,
    IndexOutOfRange,
    NotHomogeneous,
    UnitMismatch,
)
from .exterior import Blade, Multivector, sigma, omega1, wedge
from .linalg import SparseEchelon, in_span, solve_unique
from .scalars import Scalar, Units


@dataclass(frozen=True)
class AlgebraElement:
    """Element of R[X]/I over ambient dimension n, stored as its form body."""

    n: int
    body: Multivector

    def _check(self, other: "AlgebraElement") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"n={self.n} vs n={other.n}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.n, self.body + other.body)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.n, self.body - other.body)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.n, -self.body)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.n, self.body.wedge(other.body))

    def __pow__(self, k: int) -> "AlgebraElement":
        out = one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def smul(self, s) -> "AlgebraElement":
        return AlgebraElement(self.n, self.body.smul(s))

    def __rmul__(self, s) -> "AlgebraElement":
        return self.smul(s)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def degree(self) -> int:
        """Common algebra degree of all blades; NotHomogeneous otherwise."""
        degs = set()
        for blade, _ in self.body.terms():
            if blade.rho:
                raise NotHomogeneous("rho marker inside algebra element")
            ks, ko = blade.sigma_degree(), blade.omega_degree()
            if ks != ko:
                raise NotHomogeneous("sigma and omega degrees differ")
            degs.add(ks)
        if len(degs) > 1:
            raise NotHomogeneous(f"mixed degrees {sorted(degs)}")
        return degs.pop() if degs else 0


def one(n: int) -> AlgebraElement:
    return AlgebraElement(n, Multivector.unit())


def zero(n: int) -> AlgebraElement:
    return AlgebraElement(n, Multivector.zero())


def generator(n: int, i: int, j: int) -> AlgebraElement:
    """The generator x_{ij} = (sigma_i ^ omega_{j,1} + sigma_j ^ omega_{i,1})/2."""
    if not (2 <= i <= n and 2 <= j <= n):
        raise IndexOutOfRange(f"x_({i},{j}) needs indices in 2..{n}")
    if i == j:
        return AlgebraElement(n, wedge(sigma(i), omega1(i)))
    body = (wedge(sigma(i), omega1(j)) + wedge(sigma(j), omega1(i))).smul(Scalar.of(1, 2))
    return AlgebraElement(n, body)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def monomial(n: int, pairs) -> AlgebraElement:
    """Product of generators x_{ij} over a sequence of index pairs."""
    return reduce(multiply, (generator(n, i, j) for i, j in pairs), one(n))


# -- chord monomials ---------------------------------------------------------


@dataclass(frozen=True)
class ChordMonomial:
    """Diagonal factors x_dd for d in diagonals, times non-crossing chords x_ab."""

    n: int
    diagonals: tuple[int, ...]
    matching: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "diagonals", tuple(sorted(self.diagonals)))
        chords = tuple(sorted(tuple(sorted(c)) for c in self.matching))
        object.__setattr__(self, "matching", chords)
        support = set(self.diagonals)
        for a, b in chords:
            if a == b or {a, b} & support:
                raise ValueError("overlapping chord endpoints")
            support |= {a, b}
        if any(not 2 <= v <= self.n for v in support):
            raise IndexOutOfRange(f"index outside 2..{self.n}")
        for (a, b), (c, d) in itertools.combinations(chords, 2):
            if a < c < b < d or c < a < d < b:
                raise ValueError(f"crossing chords ({a},{b}) and ({c},{d})")

    def degree(self) -> int:
        return len(self.diagonals) + len(self.matching)

    def to_text(self) -> str:
        d = ",".join(str(v) for v in self.diagonals)
        m = "".join(f"({a},{b})" for a, b in self.matching)
        return f"D{{{d}}}M{{{m}}}"

    @staticmethod
    def from_text(n: int, text: str) -> "ChordMonomial":
        import re

        m = re.match(r"^D\{([\d,]*)\}M\{((?:\(\d+,\d+\))*)\}$", text)
        if not m:
            raise ValueError(f"bad chord monomial {text!r}")
        diag = tuple(int(v) for v in m.group(1).split(",") if v)
        chords = tuple(
            (int(a), int(b)) for a, b in re.findall(r"\((\d+),(\d+)\)", m.group(2))
        )
        return ChordMonomial(n, diag, chords)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "diagonals": list(self.diagonals),
            "matching": [list(c) for c in self.matching],
        }

    @staticmethod
    def from_json(data: dict) -> "ChordMonomial":
        return ChordMonomial(
            data["n"],
            tuple(data["diagonals"]),
            tuple(tuple(c) for c in data["matching"]),
        )

    def evaluate(self) -> AlgebraElement:
        pairs = [(d, d) for d in self.diagonals] + list(self.matching)
        return monomial(self.n, pairs)


def _noncrossing_matchings(points: tuple[int, ...]):
    """All non-crossing perfect matchings of an ascending tuple of points."""
    if not points:
        yield ()
        return
    first = points[0]
    for t in range(1, len(points), 2):
        left, partner, right = points[1:t], points[t], points[t + 1 :]
        for m1 in _noncrossing_matchings(left):
            for m2 in _noncrossing_matchings(right):
                yield ((first, partner),) + m1 + m2


@lru_cache(maxsize=None)
def chord_basis(n: int, k: int) -> tuple[ChordMonomial, ...]:
    if not 0 <= k <= n - 1:
        raise IndexOutOfRange(f"degree {k} outside 0..{n - 1}")
    out = []
    indices = range(2, n + 1)
    for chords in range(k + 1):
        for diag in itertools.combinations(indices, k - chords):
            rest = [v for v in indices if v not in diag]
            for points in itertools.combinations(rest, 2 * chords):
                for matching in _noncrossing_matchings(points):
                    out.append(ChordMonomial(n, diag, matching))
    return tuple(out)


def catalan(l: int) -> int:
    return comb(2 * l, l) // (l + 1)


def chord_count(n: int, k: int) -> int:
    """Combinatorial count: sum_l C(n-1,k-l) C(n-k+l-1,2l) Catalan(l)."""
    return sum(
        comb(n - 1, k - l) * comb(n - k + l - 1, 2 * l) * catalan(l)
        for l in range(k + 1)
    )


def narayana(n: int, k: int) -> int:
    return comb(n, k) * comb(n, k + 1) // n


# -- coordinates and graded dimensions ---------------------------------------


def _blade_index(blade: Blade) -> int:
    return (blade.sigma << 32) | blade.omega


def _body_to_row(body: Multivector) -> dict[int, Fraction]:
    row = {}
    for blade, coeff in body.terms():
        if coeff.units:
            raise UnitMismatch("expected unitless coefficients")
        row[_blade_index(blade)] = coeff.value
    return row


def split_unit(body: Multivector) -> tuple[Units, dict[int, Fraction]]:
    """Factor the common unit monomial out of a multivector's coefficients."""
    units = {c.units for _, c in body.terms()}
    if not units:
        return (), {}
    if len(units) > 1:
        raise UnitMismatch(f"mixed unit monomials {sorted(units)}")
    (u,) = units
    return u, {_blade_index(b): c.value for b, c in body.terms()}


@lru_cache(maxsize=None)
def _chord_columns(n: int, k: int) -> tuple[dict[int, Fraction], ...]:
    return tuple(_body_to_row(mon.evaluate().body) for mon in chord_basis(n, k))


def coordinates(a: AlgebraElement, k: int) -> list[Scalar]:
    """Coefficient vector of a over chord_basis(a.n, k)."""
    if a.is_zero():
        return [Scalar() for _ in chord_basis(a.n, k)]
    if a.degree() != k:
        raise NotHomogeneous(f"element has degree {a.degree()}, expected {k}")
    units, rhs = split_unit(a.body)
    sol = solve_unique(list(_chord_columns(a.n, k)), rhs)
    unit = Scalar(Fraction(1), units)
    return [Scalar(v) * unit for v in sol]


@lru_cache(maxsize=None)
def graded_dimension(n: int, k: int) -> int:
    """Exact rank of the chord-monomial image span in degree k."""
    if not 0 <= k <= n - 1:
        raise IndexOutOfRange(f"degree {k} outside 0..{n - 1}")
    ech = SparseEchelon()
    for col in _chord_columns(n, k):
        ech.add(dict(col))
    return ech.rank


# -- the primal rotation-measure space ----------------------------------------


def dalpha(n: int) -> Multivector:
    """The symplectic form sum_i sigma_i ^ omega_{i,1}, i = 2..n (up to sign)."""
    out = Multivector.zero()
    for i in range(2, n + 1):
        out = out + wedge(sigma(i), omega1(i))
    return out


@lru_cache(maxsize=None)
def _dalpha_image_columns(n: int, k: int) -> tuple[dict[int, Fraction], ...]:
    """Images of wedge-by-dalpha from bidegree (k-1, n-2-k)."""
    if k < 1 or n - 2 - k < 0:
        return ()
    da = dalpha(n)
    cols = []
    for sig in itertools.combinations(range(2, n + 1), k - 1):
        for om in itertools.combinations(range(2, n + 1), n - 2 - k):
            blade = Blade(
                sigma=sum(1 << i for i in sig),
                omega=sum(1 << j for j in om),
            )
            img = da.wedge(Multivector.from_blade(blade))
            if not img.is_zero():
                cols.append(_body_to_row(img))
    return tuple(cols)


@lru_cache(maxsize=None)
def rotation_space_dimension(n: int, k: int) -> int:
    """dim of (sigma^k x omega^(n-1-k)) modulo the image of wedge-by-dalpha."""
    if not 0 <= k <= n - 1:
        raise IndexOutOfRange(f"degree {k} outside 0..{n - 1}")
    ambient = comb(n - 1, k) * comb(n - 1, n - 1 - k)
    ech = SparseEchelon()
    for col in _dalpha_image_columns(n, k):
        ech.add(dict(col))
    return ambient - ech.rank


def _perm_sign(seq) -> int:
    inv = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return -1 if inv & 1 else 1


def rotation_measure_rep(n: int, I, J, with_rho: bool = False) -> Multivector:
    """Representative blade of S_{I,J}: sigma_I wedge omega_{J^c,1} (^ rho).

    J^c is taken ascending; the sign makes the concatenation (J, J^c)
    carry the parity of (2, ..., n).  Antisymmetry in I comes from the
    wedge, antisymmetry in J from the completion sign.
    """
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise BadIndexSet("|I| != |J|")
    for v in I + J:
        if not 2 <= v <= n:
            raise BadIndexSet(f"index {v} outside 2..{n}")
    if len(set(J)) != len(J):
        return Multivector.zero()
    comp = tuple(v for v in range(2, n + 1) if v not in J)
    jsign = _perm_sign(J + comp)
    out = reduce(wedge, (sigma(i) for i in I), Multivector.unit())
    for j in comp:
        out = out.wedge(omega1(j))
    if with_rho:
        out = out.wedge(Multivector.from_blade(Blade(rho=True)))
    return out.smul(Scalar.of(jsign))


def rotation_relation_check(n: int, i_prime, j_prime) -> bool:
    """Check the alternating-sum relation among the S_{I,J} in degree k.

    i_prime has k-1 entries, j_prime has k+1; the relation holds iff the
    alternating sum of representatives lies in the image of wedge-by-dalpha.
    """
    i_prime, j_prime = tuple(i_prime), tuple(j_prime)
    k = len(j_prime) - 1
    if len(i_prime) != k - 1:
        raise BadIndexSet(f"|I'|={len(i_prime)} but |J'|-1={k}")
    if len(set(i_prime)) != len(i_prime) or len(set(j_prime)) != len(j_prime):
        raise BadIndexSet("repeated index inside I' or J'")
    for v in i_prime + j_prime:
        if not 2 <= v <= n:
            raise BadIndexSet(f"index {v} outside 2..{n}")
    total = Multivector.zero()
    for l in range(1, k + 2):
        I = i_prime + (j_prime[l - 1],)
        J = j_prime[: l - 1] + j_prime[l:]
        rep = rotation_measure_rep(n, I, J)
        total = total + (rep if l % 2 == 0 else -rep)
    if total.is_zero():
        return True
    return in_span(list(_dalpha_image_columns(n, k)), _body_to_row(total))


# -- classical identities ------------------------------------------------------


def determinant(entries: list[list[AlgebraElement]]) -> AlgebraElement:
    """Determinant of a square matrix of commuting algebra elements."""
    m = len(entries)
    n = entries[0][0].n
    out = zero(n)
    for perm in itertools.permutations(range(m)):
        term = reduce(multiply, (entries[r][perm[r]] for r in range(m)), one(n))
        out = out + term.smul(Scalar.of(_perm_sign(perm)))
    return out


def elementary_symmetric(n: int, indices, i: int) -> AlgebraElement:
    """E_i of the diagonal generators x_dd, d running over indices."""
    indices = tuple(indices)
    out = zero(n)
    for subset in itertools.combinations(indices, i):
        out = out + monomial(n, [(d, d) for d in subset])
    return out
