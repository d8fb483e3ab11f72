"""Independent verification layer built directly from the invariant forms.

The primal basis forms eta_hat_{k,a} and eta_ex are expanded from their
generating products; dual forms are the star1-inverse images of algebra
elements (carrying the explicit sigma_1 factor).  The pairing integral
collapses to omega_n times the top-blade coefficient: the rho factor and
the flag volume cancel symbolically.

All values are computed in the single orientation fixed by the exterior
module (sigma_1 ^ ... ^ omega_{n,1} ^ rho positive) with star1 as defined
there.  In that convention the rotation pairings come out to the stated
-vol SO(n) and -vol SO(n)/2, while the diagonal flag pairings acquire a
(-1)^k twist and the exceptional one a 2^-p factor relative to the stated
constants, and the four-variable generating identity reads
(-1)^(n-1) (alpha - alpha~)^p (beta - beta~)^q; see honest_* below.
No convention satisfies all the stated constants at once, because the two
cross terms of (alpha sigma_i + omega_i1) ^ (alpha~ sigma_i + omega_i1)
carry opposite signs in any exterior algebra.
"""

from __future__ import annotations

from functools import lru_cache, reduce

from .errors import DegreeMismatch, DimensionMismatch, ExceptionalUnavailable
from .exterior import Blade, Multivector, omega1, sigma, star1, star1_inv, top_coefficient
from .invariant_algebras import FlagContext, u_element
from .measures import validate_label
from .rotation_algebra import (
    AlgebraElement,
    dalpha,
    elementary_symmetric,
    monomial,
    rotation_measure_rep,
)
from .scalars import Scalar, sbinom

Poly2 = dict[tuple[int, int], Multivector]


def _poly_mul(a: Poly2, b: Poly2) -> Poly2:
    out: Poly2 = {}
    for (e1, f1), m1 in a.items():
        for (e2, f2), m2 in b.items():
            prod = m1.wedge(m2)
            if prod.is_zero():
                continue
            key = (e1 + e2, f1 + f2)
            out[key] = out.get(key, Multivector.zero()) + prod
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def eta_poly(ctx: FlagContext) -> tuple[tuple[tuple[int, int], Multivector], ...]:
    """Expansion of the product of (alpha sigma_i + omega_i1) factors."""
    poly: Poly2 = {(0, 0): Multivector.unit()}
    for i in ctx.block1():
        poly = _poly_mul(poly, {(1, 0): sigma(i), (0, 0): omega1(i)})
    for j in ctx.block2():
        poly = _poly_mul(poly, {(0, 1): sigma(j), (0, 0): omega1(j)})
    return tuple(sorted(poly.items()))


def eta_hat(ctx: FlagContext, k: int, a: int) -> Multivector:
    """Coefficient of alpha^a beta^(k-a) in the eta generating product."""
    from .measures import phi_label

    validate_label(ctx, phi_label(k, a))
    for key, mv in eta_poly(ctx):
        if key == (a, k - a):
            return mv
    return Multivector.zero()


def eta_ex(ctx: FlagContext) -> Multivector:
    """sigma_{p+2} ^ ... ^ sigma_n ^ omega_{p+2,1} ^ ... ^ omega_{n,1}."""
    if not ctx.exceptional:
        raise ExceptionalUnavailable(f"n={ctx.n}, p={ctx.p} is not exceptional")
    factors = [sigma(j) for j in ctx.block2()] + [omega1(j) for j in ctx.block2()]
    return reduce(lambda x, y: x.wedge(y), factors, Multivector.unit())


@lru_cache(maxsize=None)
def tau_tilde(ctx: FlagContext, k: int, a: int) -> AlgebraElement:
    """The algebra element E_a(first block) E_{k-a}(second block)."""
    ea = elementary_symmetric(ctx.n, ctx.block1(), a)
    eb = elementary_symmetric(ctx.n, ctx.block2(), k - a)
    return ea * eb


def pairing(ctx: FlagContext, dual: AlgebraElement, primal: Multivector) -> Scalar:
    """omega_n times the top-blade coefficient of star1_inv(dual) ^ primal."""
    if dual.n != ctx.n:
        raise DimensionMismatch(f"dual over n={dual.n}, ctx n={ctx.n}")
    if len(dual.body.sigma_degrees()) > 1:
        raise DegreeMismatch("dual element is not homogeneous")
    completed = star1_inv(ctx.n, dual.body)
    return Scalar.omega(ctx.n) * top_coefficient(ctx.n, completed.wedge(primal))


# -- the four-variable generating identity -----------------------------------


@lru_cache(maxsize=None)
def generating_identity_polynomial(
    ctx: FlagContext,
) -> tuple[tuple[tuple[int, int, int, int], Scalar], ...]:
    """Coefficients of eta_{alpha,beta} ^ tau~_{alpha~,beta~} on the top blade.

    Keys are exponents (alpha, beta, alpha~, beta~); every term is checked
    to be a multiple of the top blade.
    """
    n, p, q = ctx.n, ctx.p, ctx.q
    out: dict[tuple[int, int, int, int], Scalar] = {}
    tau_components = {
        (p - i, q - j): star1_inv(n, tau_tilde(ctx, i + j, i).body)
        for i in range(p + 1)
        for j in range(q + 1)
    }
    for (ea, eb), eta_mv in eta_poly(ctx):
        for (ta, tb), tau_mv in tau_components.items():
            prod = eta_mv.wedge(tau_mv)
            if prod.is_zero():
                continue
            if len(prod) != 1:
                raise AssertionError("generating product is not a top-blade multiple")
            coeff = top_coefficient(n, prod)
            if coeff.is_zero():
                raise AssertionError("generating product missed the top blade")
            key = (ea, eb, ta, tb)
            out[key] = out.get(key, Scalar()) + coeff
    return tuple(sorted((k, v) for k, v in out.items() if not v.is_zero()))


def _binomial_target(ctx: FlagContext, sign_inside: int, global_sign: int):
    """Coefficients of global_sign (alpha + s alpha~)^p (beta + s beta~)^q."""
    p, q = ctx.p, ctx.q
    out = {}
    for i in range(p + 1):
        for j in range(q + 1):
            c = (
                Scalar.of(global_sign * sign_inside ** ((p - i) + (q - j)))
                * sbinom(p, i)
                * sbinom(q, j)
            )
            out[(i, j, p - i, q - j)] = c
    return tuple(sorted(out.items()))


def generating_identity_check(ctx: FlagContext) -> bool:
    """Does eta ^ tau~ equal (alpha+alpha~)^p (beta+beta~)^q times the top blade?

    This is the stated form of the identity; in the engine's (forced)
    conventions it is false whenever p + q > 0, see honest_generating_identity.
    """
    return generating_identity_polynomial(ctx) == _binomial_target(ctx, +1, +1)


def honest_generating_identity(ctx: FlagContext) -> bool:
    """The identity that actually holds: (-1)^(n-1) (alpha-alpha~)^p (beta-beta~)^q."""
    sign = (-1) ** (ctx.n - 1)
    return generating_identity_polynomial(ctx) == _binomial_target(ctx, -1, sign)


# -- convolution cross-check ---------------------------------------------------


def convolution_cross_check(ctx: FlagContext, m1, m2) -> bool:
    """Compare the algebra product with the form-level convolution.

    m1, m2 are monomials given as sequences of (i, j) generator indices.
    Route one: wedge the bodies inside the algebra.  Route two: take the
    star1-inverse images (which carry sigma_1), convolve them through
    tau * tau' = star1_inv(star1 tau ^ star1 tau'), and compare against
    the star1-inverse image of the algebra product.  Both J-space
    conditions (sigma_1 divisibility and annihilation by d alpha) are
    asserted along the way.
    """
    m1, m2 = tuple(m1), tuple(m2)
    n = ctx.n
    if len(m1) + len(m2) > n - 1:
        raise DimensionMismatch(f"degrees {len(m1)}+{len(m2)} exceed n-1={n - 1}")
    e1, e2 = monomial(n, m1), monomial(n, m2)
    algebra_product = e1 * e2

    tau1 = star1_inv(n, e1.body)
    tau2 = star1_inv(n, e2.body)
    da = dalpha(n)
    for tau in (tau1, tau2):
        for blade, _ in tau.terms():
            if not blade.sigma & 2:  # bit 1: sigma_1
                return False
        if not da.wedge(tau).is_zero():
            return False
    convolution = star1_inv(n, star1(n, tau1).wedge(star1(n, tau2)))
    if convolution != star1_inv(n, algebra_product.body):
        return False
    if not da.wedge(convolution).is_zero():
        return False
    return all(blade.sigma & 2 for blade, _ in convolution.terms()) or convolution.is_zero()


# -- rotation pairings ----------------------------------------------------------


def omega_IJ(n: int, I, J) -> Multivector:
    """The representing form of S_{I,J} including the rho factor."""
    return rotation_measure_rep(n, I, J, with_rho=True)


def rotation_pairing(n: int, i: int, j: int, I, J) -> Scalar:
    """vol SO(n) times the top coefficient of star1_inv(x_ij) ^ omega_{I,J}.

    Only |I| = |J| = 1 is implemented.
    """
    from .errors import BadIndexSet
    from .rotation_algebra import generator

    I, J = tuple(I), tuple(J)
    if len(I) != 1 or len(J) != 1:
        raise BadIndexSet("only the degree-1 rotation pairing is implemented")
    tau = star1_inv(n, generator(n, i, j).body)
    product = tau.wedge(omega_IJ(n, I, J))
    coeff = product.coefficient(
        Blade(
            sigma=((1 << (n + 1)) - 1) & ~1,
            omega=((1 << (n + 1)) - 1) & ~3,
            rho=True,
        )
    )
    return Scalar.vol_so(n) * coeff


# -- the honest pairing table ----------------------------------------------------


def honest_diagonal_twist(k: int) -> Scalar:
    """Sign of <tau~_{k,a}, eta_{k,a}> relative to omega_n C(p,a) C(q,k-a)."""
    return Scalar.of((-1) ** k)


def honest_exceptional_pairing(ctx: FlagContext) -> Scalar:
    """The model value of <tau~_ex, eta_ex>: (-1)^p p! / 2^p times omega_n."""
    if not ctx.exceptional:
        raise ExceptionalUnavailable(f"n={ctx.n}, p={ctx.p} is not exceptional")
    p = ctx.p
    from .scalars import factorial

    return Scalar((-1) ** p * factorial(p) / 2**p) * Scalar.omega(ctx.n)


def tau_ex(ctx: FlagContext) -> AlgebraElement:
    """The algebra element whose star1-inverse image is tau~_ex."""
    return u_element(ctx)
