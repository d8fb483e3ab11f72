import json

import pytest

from flagkin.errors import ExceptionalUnavailable, IndexOutOfRange
from flagkin.invariant_algebras import FlagContext
from flagkin.kinematics import (
    check_phi_closed_form,
    check_s_closed_form,
    closed_form_S,
    closed_form_phi,
    coproduct,
    coproduct_tables,
    exceptional_coproduct,
    hug_weil_coproduct,
    table_to_csv,
    table_to_json,
    table_to_latex,
    verify_structure,
    _global_table,
)
from flagkin.measures import PHI_EX, MeasureLabel, phi_label, s_in_phi, s_label
from flagkin.scalars import ONE, Scalar, sbinom


def inv_omega(n):
    return Scalar.omega(n, -1)


def test_coproduct_degree_one():
    ctx = FlagContext(5, 2)
    table = coproduct(ctx, phi_label(1, 0))
    assert table.coefficient(phi_label(0, 0), phi_label(1, 0)) == inv_omega(5)
    assert table.coefficient(phi_label(1, 0), phi_label(0, 0)) == inv_omega(5)
    assert len(table.terms) == 2


def test_coproduct_counit():
    ctx = FlagContext(5, 2)
    table = coproduct(ctx, s_label(0, 0), "S")
    assert table.terms == ((s_label(0, 0), s_label(0, 0), inv_omega(5)),)


def test_coproduct_phi_ex():
    ctx = FlagContext(5, 2)
    table = coproduct(ctx, PHI_EX)
    assert table.coefficient(PHI_EX, phi_label(0, 0)) == inv_omega(5)
    assert table.coefficient(phi_label(0, 0), PHI_EX) == inv_omega(5)
    assert len(table.terms) == 2


def test_closed_form_phi_examples():
    ctx = FlagContext(5, 2)
    assert closed_form_phi(ctx, 1, 0, 0, 0) == ONE
    assert closed_form_phi(ctx, 1, 0, 1, 0) == ONE
    for k in range(5):
        for a in range(max(0, k - ctx.q), min(k, ctx.p) + 1):
            assert closed_form_phi(ctx, k, a, k, a) == ONE
    with pytest.raises(IndexOutOfRange):
        closed_form_phi(ctx, 2, 1, 1, 2)


def test_closed_form_S_counit():
    ctx = FlagContext(5, 2)
    assert closed_form_S(ctx, 0, 0, 0, 0, 0) == ONE
    for k in range(5):
        for i in range(ctx.m(k) + 1):
            assert closed_form_S(ctx, k, i, k, i, 0) == ONE
            assert closed_form_S(ctx, k, i, 0, 0, i) == ONE


@pytest.mark.parametrize("n,p", [(3, 1), (4, 1), (4, 2), (5, 2), (5, 0), (6, 3)])
def test_tables_match_closed_forms(n, p):
    ctx = FlagContext(n, p)
    assert check_phi_closed_form(ctx) == []
    assert check_s_closed_form(ctx) == []


@pytest.mark.parametrize(
    "n,p",
    [(3, 1), (5, 2), (7, 3)],
)
def test_exceptional_corrections(n, p):
    ctx = FlagContext(n, p)
    top, ex = exceptional_coproduct(ctx)
    corr = top.coefficient(PHI_EX, PHI_EX)
    assert corr == Scalar.of((-1) ** p * (p + 1), 2 ** (2 * p)) * inv_omega(n)
    assert corr == Scalar.of((-1) ** ((n - 1) // 2) * (n + 1), 2**n) * inv_omega(n)
    assert ex.coefficient(PHI_EX, phi_label(0, 0)) == inv_omega(n)


def test_exceptional_unavailable():
    with pytest.raises(ExceptionalUnavailable):
        exceptional_coproduct(FlagContext(4, 1))


def test_n3_S_table_exceptional_value():
    # coefficient of the exceptional square in A(S[2,0]) for n=3 is -1/(2 omega_3)
    ctx = FlagContext(3, 1)
    table = coproduct(ctx, s_label(2, 0), "S")
    assert table.coefficient(PHI_EX, PHI_EX) == Scalar.of(-1, 2) * inv_omega(3)


@pytest.mark.parametrize("n,p", [(3, 1), (5, 2)])
def test_S_top_table_equals_phi_top_table(n, p):
    # S[n-1,0] = Phi[n-1,p], so the two tables agree after base change
    ctx = FlagContext(n, p)
    phi_table = coproduct(ctx, phi_label(n - 1, p), "Phi")
    s_table = coproduct(ctx, s_label(n - 1, 0), "S")
    converted: dict = {}
    for left, right, c in s_table.terms:
        lexp = (
            s_in_phi(ctx, left.k, left.idx).terms
            if left.kind == "S"
            else ((left, ONE),)
        )
        rexp = (
            s_in_phi(ctx, right.k, right.idx).terms
            if right.kind == "S"
            else ((right, ONE),)
        )
        for ll, fl in lexp:
            for rl, fr in rexp:
                key = (ll, rl)
                converted[key] = converted.get(key, Scalar()) + c * fl * fr
    converted = {k: v for k, v in converted.items() if not v.is_zero()}
    want = {(l, r): c for l, r, c in phi_table.terms}
    assert converted == want


@pytest.mark.parametrize("n,p", [(2, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 3)])
def test_structure_report(n, p):
    report = verify_structure(FlagContext(n, p))
    assert report.ok, report.first_failure
    assert report.first_failure is None


def test_globalized_area_formula_middle_coefficient():
    ctx = FlagContext(4, 1)
    table = coproduct(ctx, s_label(2, 0), "S")
    glob = _global_table(ctx, table)
    assert glob[(1, 1)] == Scalar.of(2) * inv_omega(4)


def test_hug_weil_tables():
    ctx = FlagContext(4, 1)
    hw = lambda k: MeasureLabel("Sp", k)
    t0 = hug_weil_coproduct(ctx, 0)
    assert t0.terms == ((hw(0), hw(0), Scalar.omega(3, -1)),)
    t1 = hug_weil_coproduct(ctx, 1)
    assert t1.coefficient(hw(0), hw(1)) == Scalar.omega(3, -1)
    assert t1.coefficient(hw(1), hw(0)) == Scalar.omega(3, -1)
    t2 = hug_weil_coproduct(ctx, 2)
    assert t2.coefficient(hw(1), hw(1)) == Scalar.of(2) * Scalar.omega(3, -1)


@pytest.mark.parametrize("n,p", [(4, 0), (4, 1), (5, 1), (5, 2), (6, 2)])
def test_hug_weil_binomial_everywhere(n, p):
    ctx = FlagContext(n, p)
    unit = Scalar.omega(n - p, -1)
    for k in range(n - p):
        table = hug_weil_coproduct(ctx, k)
        for j in range(k + 1):
            got = table.coefficient(MeasureLabel("Sp", j), MeasureLabel("Sp", k - j))
            assert got == sbinom(k, j) * unit, (n, p, k, j)


def test_table_renderings_deterministic():
    ctx = FlagContext(4, 1)
    table = coproduct(ctx, s_label(1, 0), "S")
    blob = json.dumps(table_to_json(table), indent=2)
    assert json.dumps(table_to_json(table), indent=2) == blob
    data = json.loads(blob)
    assert data["schema"] == "flagkin/table/v1"
    assert data["input"] == "S[1,0]"
    csv = table_to_csv(table)
    assert csv.splitlines()[0] == "left,right,num,den,units"
    assert "S[0,0],S[1,0],1,1,omega(4)^-1" in csv
    tex = table_to_latex(table)
    assert "\\omega_{4}^{-1}" in tex and "\\begin{tabular}" in tex


def test_every_coefficient_carries_inverse_omega():
    ctx = FlagContext(5, 2)
    for family in ("Phi", "S"):
        for table in coproduct_tables(ctx, family).values():
            for _, _, c in table.terms:
                assert c.units == (("omega(5)", -1),), table.input
