"""Acceptance suite: every criterion at exact arithmetic, zero tolerance.

Each test prints one CRITERION line (run with -s or -rA to see them all).
Criterion 5 asserts the stated oracle constants verbatim; its rotation
anchors hold, but the three flag-side constants provably cannot coexist
with them in any exterior-algebra realization (see the docstring of
tests/test_grassmann_oracle.py), so that criterion reports the honest
values and fails.
"""

import itertools
import random
from math import comb, factorial

import pytest

from flagkin.grassmann_oracle import (
    convolution_cross_check,
    eta_ex,
    eta_hat,
    generating_identity_check,
    honest_diagonal_twist,
    honest_exceptional_pairing,
    honest_generating_identity,
    pairing,
    rotation_pairing,
    tau_ex,
    tau_tilde,
)
from flagkin.invariant_algebras import (
    FlagContext,
    embed_monomial,
    flag_generators,
    u_element,
)
from flagkin.kinematics import (
    check_phi_closed_form,
    check_s_closed_form,
    coproduct,
    coproduct_tables,
    exceptional_coproduct,
    hug_weil_coproduct,
    verify_structure,
    _global_table,
)
from flagkin.linalg import SparseEchelon
from flagkin.measures import (
    PHI_EX,
    MeasureLabel,
    basis_labels,
    expand_in_duals,
    phi_in_s_matrix,
    phi_label,
    s_dual,
    s_in_phi,
    s_in_phi_matrix,
    s_label,
)
from flagkin.rotation_algebra import (
    chord_count,
    elementary_symmetric,
    determinant,
    generator,
    graded_dimension,
    monomial,
    narayana,
    rotation_relation_check,
    rotation_space_dimension,
)
from flagkin.scalars import ONE, Scalar, sbinom


def _report(num: int, ok: bool, detail: str = "") -> None:
    tail = f" - {detail}" if detail else ""
    line = f"CRITERION {num}: {'PASS' if ok else 'FAIL'}{tail}"
    print(line)
    if not ok:
        pytest.fail(line, pytrace=False)


def test_criterion_1_dimension_theorem():
    for n in range(2, 8):
        for k in range(n):
            rank = graded_dimension(n, k)
            assert rank == narayana(n, k), (n, k, rank)
            assert rank == chord_count(n, k), (n, k, rank)
    _report(1, True, "chord-image rank = Narayana = combinatorial count, n <= 7")


def test_criterion_2_ideal_identities():
    for n in range(2, 7):
        idx = range(2, n + 1)
        for i, j, k, l in itertools.product(idx, repeat=4):
            total = (
                generator(n, i, j) * generator(n, k, l)
                + generator(n, i, k) * generator(n, j, l)
                + generator(n, i, l) * generator(n, j, k)
            )
            assert total.is_zero(), (n, i, j, k, l)
        for a, b in itertools.product(idx, repeat=2):
            assert generator(n, a, b) == generator(n, b, a)
            assert (generator(n, a, a) * generator(n, a, b)).is_zero()
        for a, b1, b2, b3 in itertools.product(idx, repeat=4):
            assert monomial(n, [(a, b1), (a, b2), (a, b3)]).is_zero()
    rng = random.Random(20260808)
    for n in range(7, 11):
        for _ in range(40):
            i, j, k, l = (rng.randint(2, n) for _ in range(4))
            total = (
                generator(n, i, j) * generator(n, k, l)
                + generator(n, i, k) * generator(n, j, l)
                + generator(n, i, l) * generator(n, j, k)
            )
            assert total.is_zero(), (n, i, j, k, l)
    for n in range(2, 7):
        entries = [[generator(n, i, j) for j in range(2, n + 1)] for i in range(2, n + 1)]
        diag = monomial(n, [(d, d) for d in range(2, n + 1)])
        assert determinant(entries) == diag.smul(Scalar.of(factorial(n), 2 ** (n - 1)))
    for n in range(2, 9):
        E = lambda i: elementary_symmetric(n, range(2, n + 1), i)
        for i in range(n):
            for j in range(n - i):
                assert E(i) * E(j) == E(i + j).smul(Scalar.of(comb(i + j, i)))
    _report(2, True, "ideal generators, Lemma-type identities, det and E_i E_j")


def test_criterion_3_flag_algebra_presentation():
    for n in range(2, 8):
        for p in range(n):
            ctx = FlagContext(n, p)
            x, y, u = flag_generators(ctx)
            assert (x ** (p + 1)).is_zero(), (n, p)
            assert (y ** (ctx.q + 1)).is_zero(), (n, p)
            assert not (x**p * y**ctx.q).is_zero(), (n, p)
    for n, p in ((3, 1), (5, 2), (7, 3)):
        ctx = FlagContext(n, p)
        x, y, u = flag_generators(ctx)
        assert (u * x).is_zero() and (u * y).is_zero()
        want = (x**p * y**p).smul(Scalar.of((-1) ** p * (p + 1), 2 ** (2 * p)))
        assert u * u == want, (n, p)
    # p even: u independent of x^(p/2) y^(p/2) in the middle degree
    ctx = FlagContext(5, 2)
    ech = SparseEchelon()
    from flagkin.rotation_algebra import _body_to_row

    assert ech.add(_body_to_row(embed_monomial(ctx, 1, 1).body))
    assert ech.add(_body_to_row(u_element(ctx).body))
    _report(3, True, "x, y, u presentation for n <= 7, exceptional n in {3,5,7}")


def test_criterion_4_base_changes():
    for n in range(2, 8):
        for p in range(n):
            ctx = FlagContext(n, p)
            for k in range(n):
                P = s_in_phi_matrix(ctx, k)
                Q = phi_in_s_matrix(ctx, k)
                m = len(P)
                for i in range(m):
                    for j in range(m):
                        pq = sum((P[i][t] * Q[t][j] for t in range(m)), Scalar())
                        qp = sum((Q[i][t] * P[t][j] for t in range(m)), Scalar())
                        want = ONE if i == j else Scalar()
                        assert pq == want and qp == want, (n, p, k)
                # dual change = inverse transpose of the primal one
                a_vals = [
                    l.idx for l in basis_labels(ctx, k, "Phi") if l.kind == "Phi"
                ]
                for i in range(m):
                    expansion = expand_in_duals(ctx, s_dual(ctx, k, i), k, "Phi")
                    for row, a in enumerate(a_vals):
                        got = expansion.get(phi_label(k, a), Scalar())
                        assert got == Q[row][i], (n, p, k, i, a)
    _report(4, True, "S/Phi matrices mutually inverse; dual change inverse-transpose")


def test_criterion_5_dual_pairings():
    sub = []

    ok = True
    for n in range(2, 7):
        for i in range(2, n + 1):
            if rotation_pairing(n, i, i, (i,), (i,)) != Scalar.of(-1) * Scalar.vol_so(n):
                ok = False
            for j in range(2, n + 1):
                if i != j and rotation_pairing(n, i, j, (i,), (j,)) != Scalar.of(
                    -1, 2
                ) * Scalar.vol_so(n):
                    ok = False
    sub.append(("rotation pairings -volSO(n), -volSO(n)/2", ok, ""))

    ok = True
    for n in range(2, 7):
        for p in range(n):
            ctx = FlagContext(n, p)
            labels = [
                (k, a)
                for k in range(n)
                for a in range(max(0, k - ctx.q), min(k, p) + 1)
            ]
            for (k, a) in labels:
                for (l, b) in labels:
                    if (k, a) != (l, b):
                        if not pairing(ctx, tau_tilde(ctx, k, a), eta_hat(ctx, l, b)).is_zero():
                            ok = False
    sub.append(("off-diagonal pairings vanish", ok, ""))

    ok, detail = True, ""
    for n in range(2, 7):
        for p in range(n):
            ctx = FlagContext(n, p)
            for k in range(n):
                for a in range(max(0, k - ctx.q), min(k, p) + 1):
                    got = pairing(ctx, tau_tilde(ctx, k, a), eta_hat(ctx, k, a))
                    stated = sbinom(p, a) * sbinom(ctx.q, k - a) * Scalar.omega(n)
                    if got != stated:
                        if ok:
                            detail = (
                                f"first at (n,p,k,a)=({n},{p},{k},{a}): got {got}, "
                                f"stated {stated}; honest value carries (-1)^k"
                            )
                        ok = False
                        assert got == honest_diagonal_twist(k) * stated
    sub.append(("diagonal = omega_n C(p,a) C(q,k-a)", ok, detail))

    ok, detail = True, ""
    for n, p in ((3, 1), (5, 2)):
        ctx = FlagContext(n, p)
        got = pairing(ctx, tau_ex(ctx), eta_ex(ctx))
        stated = Scalar((-1) ** p * factorial(p)) * Scalar.omega(n)
        if got != stated:
            if ok:
                detail = f"n={n}: got {got}, stated {stated}; honest value carries 2^-p"
            ok = False
            assert got == honest_exceptional_pairing(ctx)
    sub.append(("exceptional pairing (-1)^p p! omega_n", ok, detail))

    ok, detail = True, ""
    for n in range(2, 7):
        for p in range(n):
            ctx = FlagContext(n, p)
            if not generating_identity_check(ctx):
                if ok:
                    detail = (
                        f"first at (n,p)=({n},{p}); the product expands to "
                        "(-1)^(n-1) (alpha-alpha~)^p (beta-beta~)^q"
                    )
                ok = False
                assert honest_generating_identity(ctx)
    sub.append(("generating identity (alpha+alpha~)^p (beta+beta~)^q", ok, detail))

    for name, okay, detail in sub:
        print(f"  criterion 5 sub-check [{'ok' if okay else 'FAIL'}] {name}"
              + (f": {detail}" if detail and not okay else ""))
    failed = [name for name, okay, _ in sub if not okay]
    _report(
        5,
        not failed,
        "all stated pairing constants reproduced"
        if not failed
        else "stated constants mutually inconsistent; failing sub-checks: "
        + "; ".join(failed),
    )


def test_criterion_6_kinematic_tables():
    for n in range(2, 7):
        for p in range(n):
            ctx = FlagContext(n, p)
            assert check_phi_closed_form(ctx) == [], (n, p)
            assert check_s_closed_form(ctx) == [], (n, p)
    for n, p in ((3, 1), (5, 2)):
        ctx = FlagContext(n, p)
        top, ex = exceptional_coproduct(ctx)
        corr = top.coefficient(PHI_EX, PHI_EX)
        inv_omega = Scalar.omega(n, -1)
        assert corr == Scalar.of((-1) ** p * (p + 1), 2 ** (2 * p)) * inv_omega
        assert corr == Scalar.of((-1) ** ((n - 1) // 2) * (n + 1), 2**n) * inv_omega
        # S[n-1,0] and Phi[n-1,p] tables agree term by term after base change
        s_table = coproduct(ctx, s_label(n - 1, 0), "S")
        phi_table = coproduct(ctx, phi_label(n - 1, p), "Phi")
        assert s_table.coefficient(PHI_EX, PHI_EX) == corr
        converted: dict = {}
        for left, right, c in s_table.terms:
            lexp = s_in_phi(ctx, left.k, left.idx).terms if left.kind == "S" else ((left, ONE),)
            rexp = s_in_phi(ctx, right.k, right.idx).terms if right.kind == "S" else ((right, ONE),)
            for ll, fl in lexp:
                for rl, fr in rexp:
                    converted[(ll, rl)] = converted.get((ll, rl), Scalar()) + c * fl * fr
        converted = {key: v for key, v in converted.items() if not v.is_zero()}
        assert converted == {(l, r): c for l, r, c in phi_table.terms}
        # A(Phi_ex) is the stated two-term table
        assert ex.terms == (
            (phi_label(0, 0), PHI_EX, inv_omega),
            (PHI_EX, phi_label(0, 0), inv_omega),
        )
    _report(6, True, "tables = closed forms for n <= 6, exceptional corrections exact")


def test_criterion_7_structural_laws():
    for n in range(2, 6):
        for p in range(n):
            ctx = FlagContext(n, p)
            report = verify_structure(ctx)
            assert report.ok, (n, p, report.first_failure)
            tables = coproduct_tables(ctx, "S")
            inv_omega = Scalar.omega(n, -1)
            for k in range(n):
                for i in range(ctx.m(k) + 1):
                    glob = _global_table(ctx, tables[s_label(k, i)])
                    want = {
                        (j, k - j): sbinom(k, j) * inv_omega for j in range(k + 1)
                    }
                    assert glob == want, (n, p, k, i)
            for k in range(n - p):
                table = hug_weil_coproduct(ctx, k)
                unit = Scalar.omega(n - p, -1)
                for j in range(k + 1):
                    got = table.coefficient(MeasureLabel("Sp", j), MeasureLabel("Sp", k - j))
                    assert got == sbinom(k, j) * unit, (n, p, k, j)
                    assert got.units == ((f"omega({n - p})", -1),)
    _report(7, True, "coalgebra laws, globalization, binomial tables with omega_(n-p)")


def test_criterion_8_convolution_cross_check():
    for n in range(2, 6):
        ctx = FlagContext(n, max(0, n - 2))
        gens = [(i, j) for i in range(2, n + 1) for j in range(i, n + 1)]
        monos = {1: [(g,) for g in gens]}
        for d in range(2, n - 1):
            monos[d] = [m + (g,) for m in monos[d - 1] for g in gens]
        for d1 in range(1, n - 1):
            for d2 in range(1, n - d1):
                for m1 in monos[d1]:
                    for m2 in monos[d2]:
                        assert convolution_cross_check(ctx, m1, m2), (n, m1, m2)
    _report(8, True, "algebra products = form-level convolutions, n <= 5 exhaustive")


def test_criterion_9_rotation_relations():
    for n in range(2, 7):
        for k in range(n):
            assert rotation_space_dimension(n, k) == narayana(n, k), (n, k)
    for n in range(3, 6):
        idx = range(2, n + 1)
        for k in range(1, n - 1):
            for ip in itertools.combinations(idx, k - 1):
                for jp in itertools.combinations(idx, k + 1):
                    assert rotation_relation_check(n, ip, jp), (n, ip, jp)
    _report(9, True, "quotient dimensions for n <= 6, alternating relations for n <= 5")
