"""flagkin command line: dimensions, bases, products, kinematic tables, verify.

Exit codes: 0 success, 1 bad usage or invalid arguments, 2 a verification
suite failed (the first counterexample is printed).  Output is
byte-identical across runs for identical requests.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys

from . import __version__
from .errors import FlagkinError, ValidationError
from .invariant_algebras import FlagContext, flag_generators, invariant_dimension
from .kinematics import (
    KinematicTable,
    check_phi_closed_form,
    check_s_closed_form,
    coproduct,
    coproduct_tables,
    hug_weil_coproduct,
    table_to_csv,
    table_to_json,
    table_to_latex,
    verify_structure,
)
from .measures import (
    PHI_EX,
    MeasureLabel,
    basis_labels,
    dual_element,
    expand_in_duals,
    phi_in_s_matrix,
    phi_label,
    s_in_phi_matrix,
    s_label,
)
from .rotation_algebra import (
    chord_basis,
    chord_count,
    generator,
    graded_dimension,
    narayana,
    rotation_relation_check,
    rotation_space_dimension,
)
from .scalars import Scalar, sbinom

DEFAULT_MAX_N = 8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _max_n(args) -> int:
    if args.max_n is not None:
        return args.max_n
    return int(os.environ.get("FLAGKIN_MAX_N", DEFAULT_MAX_N))


def _guard(args) -> None:
    limit = _max_n(args)
    if args.n > limit:
        raise ValidationError(
            f"n={args.n} exceeds the budget guard max-n={limit} "
            "(raise with --max-n or FLAGKIN_MAX_N)"
        )
    if args.n < 2:
        raise ValidationError("n must be at least 2")


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ctx(args) -> FlagContext:
    if args.p is None:
        raise ValidationError("this request needs --p")
    if not 0 <= args.p <= args.n - 1:
        raise ValidationError(f"p={args.p} outside 0..{args.n - 1}")
    return FlagContext(args.n, args.p)


def _input_label(ctx: FlagContext, args) -> MeasureLabel:
    if args.ex:
        if not ctx.exceptional:
            raise ValidationError(f"--ex needs odd n with p == q, got n={ctx.n}, p={ctx.p}")
        return PHI_EX
    if args.k is None:
        raise ValidationError("need --k (or --ex)")
    if not 0 <= args.k <= ctx.n - 1:
        raise ValidationError(f"k={args.k} outside 0..{ctx.n - 1}")
    idx = args.a if args.basis == "Phi" else args.i
    flag = "--a" if args.basis == "Phi" else "--i"
    if idx is None:
        raise ValidationError(f"need {flag} for basis {args.basis}")
    label = phi_label(args.k, idx) if args.basis == "Phi" else s_label(args.k, idx)
    try:
        from .measures import validate_label

        validate_label(ctx, label)
    except FlagkinError as exc:
        raise ValidationError(str(exc)) from exc
    return label


# -- commands -------------------------------------------------------------------


def cmd_dim(args) -> int:
    _guard(args)
    if args.p is None:
        rows = [
            {"k": k, "dimension": graded_dimension(args.n, k)} for k in range(args.n)
        ]
        title = f"rotation algebra graded dimensions, n={args.n}"
    else:
        ctx = _ctx(args)
        rows = [
            {"k": k, "dimension": invariant_dimension(ctx, k)} for k in range(args.n)
        ]
        title = f"flag invariant subalgebra dimensions, n={args.n}, p={args.p}"
    if args.format == "json":
        _emit(args, json.dumps({"title": title, "rows": rows}, indent=2) + "\n")
    elif args.format == "csv":
        lines = ["k,dimension"] + [f"{r['k']},{r['dimension']}" for r in rows]
        _emit(args, "\n".join(lines) + "\n")
    elif args.format == "latex":
        body = " & ".join(str(r["dimension"]) for r in rows)
        _emit(
            args,
            f"% {title}\n\\begin{{tabular}}{{{'c' * args.n}}}\n{body} \\\\\n\\end{{tabular}}\n",
        )
    else:
        lines = [title] + [f"  k={r['k']}: {r['dimension']}" for r in rows]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_basis(args) -> int:
    _guard(args)
    if args.k is None:
        raise ValidationError("need --k")
    if args.p is None:
        if not 0 <= args.k <= args.n - 1:
            raise ValidationError(f"k={args.k} outside 0..{args.n - 1}")
        mons = chord_basis(args.n, args.k)
        if args.format == "json":
            _emit(
                args,
                json.dumps(
                    {
                        "n": args.n,
                        "k": args.k,
                        "count": len(mons),
                        "monomials": [m.to_text() for m in mons],
                    },
                    indent=2,
                )
                + "\n",
            )
        else:
            lines = [f"chord basis n={args.n} k={args.k} ({len(mons)} monomials)"]
            lines += [f"  {m.to_text()}" for m in mons]
            _emit(args, "\n".join(lines) + "\n")
        return 0
    ctx = _ctx(args)
    labels = basis_labels(ctx, args.k, args.basis)
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "n": ctx.n,
                    "p": ctx.p,
                    "k": args.k,
                    "basis": args.basis,
                    "labels": [l.to_text() for l in labels],
                },
                indent=2,
            )
            + "\n",
        )
    else:
        _emit(args, "\n".join(l.to_text() for l in labels) + "\n")
    return 0


def cmd_product(args) -> int:
    _guard(args)
    ctx = _ctx(args)
    left = _input_label(ctx, args)
    right_args = argparse.Namespace(
        ex=args.ex2, k=args.k2, a=args.a2, i=args.i2, basis=args.basis
    )
    right = _input_label(ctx, right_args)
    deg = left.degree(ctx) + right.degree(ctx)
    if deg > ctx.n - 1:
        raise ValidationError(f"total degree {deg} exceeds n-1={ctx.n - 1}")
    product = dual_element(ctx, left) * dual_element(ctx, right)
    expansion = expand_in_duals(ctx, product, deg, args.basis)
    terms = sorted(expansion.items())
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "schema": "flagkin/product/v1",
                    "n": ctx.n,
                    "p": ctx.p,
                    "basis": args.basis,
                    "left": left.to_text(),
                    "right": right.to_text(),
                    "terms": [
                        {"label": l.to_text(), "coeff": c.to_json()} for l, c in terms
                    ],
                },
                indent=2,
            )
            + "\n",
        )
    else:
        lines = [f"{left.to_text()}* . {right.to_text()}*  [n={ctx.n}, p={ctx.p}]"]
        lines += [f"  {l.to_text()}* : {c.to_text()}" for l, c in terms]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _render_tables(args, tables: list[KinematicTable]) -> str:
    if args.format == "json":
        if len(tables) == 1:
            return json.dumps(table_to_json(tables[0]), indent=2) + "\n"
        return (
            json.dumps(
                {
                    "schema": "flagkin/tables/v1",
                    "n": tables[0].ctx.n,
                    "p": tables[0].ctx.p,
                    "tables": [table_to_json(t) for t in tables],
                },
                indent=2,
            )
            + "\n"
        )
    if args.format == "csv":
        if len(tables) == 1:
            return table_to_csv(tables[0])
        lines = ["input,left,right,num,den,units"]
        for t in tables:
            for l, r, c in t.terms:
                units = " ".join(f"{sym}^{exp}" for sym, exp in c.units)
                lines.append(
                    f"{t.input.to_text()},{l.to_text()},{r.to_text()},"
                    f"{c.value.numerator},{c.value.denominator},{units}"
                )
        return "\n".join(lines) + "\n"
    if args.format == "latex":
        return "\n".join(table_to_latex(t) for t in tables) + "\n"
    return "\n\n".join(t.to_text() for t in tables) + "\n"


def cmd_coproduct(args) -> int:
    _guard(args)
    ctx = _ctx(args)
    label = _input_label(ctx, args)
    table = coproduct(ctx, label, args.basis)
    _emit(args, _render_tables(args, [table]))
    return 0


def cmd_table(args) -> int:
    _guard(args)
    ctx = _ctx(args)
    if args.hug_weil:
        tables = [hug_weil_coproduct(ctx, k) for k in range(ctx.n - ctx.p)]
    else:
        all_tables = coproduct_tables(ctx, args.basis)
        labels = [l for k in range(ctx.n) for l in basis_labels(ctx, k, args.basis)]
        seen: list[MeasureLabel] = []
        for l in labels:
            if l not in seen:
                seen.append(l)
        tables = [all_tables[l] for l in seen]
    _emit(args, _render_tables(args, tables))
    return 0


# -- verify ----------------------------------------------------------------------


def _suite_dimensions(ctx: FlagContext):
    for k in range(ctx.n):
        if not graded_dimension(ctx.n, k) == narayana(ctx.n, k) == chord_count(ctx.n, k):
            return f"graded dimension mismatch at k={k}"
        if rotation_space_dimension(ctx.n, k) != narayana(ctx.n, k):
            return f"rotation space dimension mismatch at k={k}"
    return None


def _suite_ideal(ctx: FlagContext):
    n = ctx.n
    idx = range(2, n + 1)
    if n <= 6:
        quads = itertools.product(idx, repeat=4)
    else:
        rng = random.Random(20260808)
        quads = [tuple(rng.choice(list(idx)) for _ in range(4)) for _ in range(300)]
    for i, j, k, l in quads:
        total = (
            generator(n, i, j) * generator(n, k, l)
            + generator(n, i, k) * generator(n, j, l)
            + generator(n, i, l) * generator(n, j, k)
        )
        if not total.is_zero():
            return f"ideal generator ({i},{j},{k},{l}) nonzero"
    for a in idx:
        for b in idx:
            if not (generator(n, a, a) * generator(n, a, b)).is_zero():
                return f"x_{a}{a} x_{a}{b} nonzero"
    return None


def _suite_base_change(ctx: FlagContext):
    from .scalars import ONE

    for k in range(ctx.n):
        P = s_in_phi_matrix(ctx, k)
        Q = phi_in_s_matrix(ctx, k)
        m = len(P)
        for i in range(m):
            for j in range(m):
                acc = Scalar()
                for t in range(m):
                    acc = acc + P[i][t] * Q[t][j]
                if acc != (ONE if i == j else Scalar()):
                    return f"base change not inverse at k={k}"
    return None


def _suite_flag_algebra(ctx: FlagContext):
    x, y, u = flag_generators(ctx)
    if not (x ** (ctx.p + 1)).is_zero():
        return "x^(p+1) nonzero"
    if not (y ** (ctx.q + 1)).is_zero():
        return "y^(q+1) nonzero"
    if (x**ctx.p * y**ctx.q).is_zero():
        return "x^p y^q vanishes"
    if u is not None:
        if not (u * x).is_zero() or not (u * y).is_zero():
            return "u x or u y nonzero"
        want = (x**ctx.p * y**ctx.p).smul(
            Scalar.of((-1) ** ctx.p * (ctx.p + 1), 2 ** (2 * ctx.p))
        )
        if u * u != want:
            return "u^2 relation fails"
    return None


def _suite_closed_forms(ctx: FlagContext):
    bad = check_phi_closed_form(ctx)
    if bad:
        return bad[0]
    bad = check_s_closed_form(ctx)
    if bad:
        return bad[0]
    return None


def _suite_structure(ctx: FlagContext):
    report = verify_structure(ctx)
    return None if report.ok else report.first_failure


def _suite_convolution(ctx: FlagContext):
    from .grassmann_oracle import convolution_cross_check

    n = ctx.n
    gens = [(i, j) for i in range(2, n + 1) for j in range(i, n + 1)]
    rng = random.Random(20260808)

    def monomials(degree):
        if n <= 4:
            return list(itertools.product(gens, repeat=degree))
        return [
            tuple(rng.choice(gens) for _ in range(degree)) for _ in range(12)
        ]

    for d1 in range(1, n - 1):
        for d2 in range(1, n - d1):
            for m1 in monomials(d1):
                for m2 in monomials(d2):
                    if not convolution_cross_check(ctx, m1, m2):
                        return f"convolution mismatch at {m1} * {m2}"
    return None


def _suite_rotation_relations(ctx: FlagContext):
    n = ctx.n
    idx = range(2, n + 1)
    for k in range(1, n - 1):
        for ip in itertools.combinations(idx, k - 1):
            for jp in itertools.combinations(idx, k + 1):
                if not rotation_relation_check(n, ip, jp):
                    return f"relation fails at I'={ip}, J'={jp}"
    return None


def _suite_oracle(ctx: FlagContext):
    from .grassmann_oracle import (
        eta_ex,
        eta_hat,
        honest_diagonal_twist,
        honest_exceptional_pairing,
        honest_generating_identity,
        pairing,
        rotation_pairing,
        tau_ex,
        tau_tilde,
    )

    n, p, q = ctx.n, ctx.p, ctx.q
    for i in range(2, n + 1):
        if rotation_pairing(n, i, i, (i,), (i,)) != Scalar.of(-1) * Scalar.vol_so(n):
            return f"<x_{i}{i}, S_{i}{i}> != -volSO({n})"
        for j in range(2, n + 1):
            if i != j and rotation_pairing(n, i, j, (i,), (j,)) != Scalar.of(-1, 2) * Scalar.vol_so(n):
                return f"<x_{i}{j}, S_{i}{j}> != -volSO({n})/2"
    for k in range(n):
        for a in range(max(0, k - q), min(k, p) + 1):
            for l in range(n):
                for b in range(max(0, l - q), min(l, p) + 1):
                    val = pairing(ctx, tau_tilde(ctx, k, a), eta_hat(ctx, l, b))
                    if (k, a) == (l, b):
                        want = (
                            honest_diagonal_twist(k)
                            * sbinom(p, a)
                            * sbinom(q, k - a)
                            * Scalar.omega(n)
                        )
                        if val != want:
                            return f"diagonal pairing ({k},{a}) = {val}, expected {want}"
                    elif not val.is_zero():
                        return f"off-diagonal pairing ({k},{a})x({l},{b}) nonzero"
    if not honest_generating_identity(ctx):
        return "generating identity polynomial has unexpected shape"
    if ctx.exceptional:
        if pairing(ctx, tau_ex(ctx), eta_ex(ctx)) != honest_exceptional_pairing(ctx):
            return "exceptional pairing off"
    return None


VERIFY_SUITES = (
    ("dimensions", _suite_dimensions),
    ("ideal identities", _suite_ideal),
    ("base changes", _suite_base_change),
    ("flag algebra relations", _suite_flag_algebra),
    ("rotation relations", _suite_rotation_relations),
    ("closed-form agreement", _suite_closed_forms),
    ("structural laws", _suite_structure),
    ("convolution cross-check", _suite_convolution),
    ("oracle pairings", _suite_oracle),
)


def cmd_verify(args) -> int:
    _guard(args)
    ctx = _ctx(args)
    lines = [f"verify n={ctx.n} p={ctx.p}"]
    failure = None
    for name, suite in VERIFY_SUITES:
        detail = suite(ctx)
        ok = detail is None
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
        if not ok and failure is None:
            failure = f"{name}: {detail}"
    if failure:
        lines.append(f"first counterexample: {failure}")
    _emit(args, "\n".join(lines) + "\n")
    return 0 if failure is None else 2


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagkin", description=__doc__)
    parser.add_argument("--version", action="version", version=f"flagkin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_p=True):
        sp.add_argument("--n", type=int, required=True, help="ambient dimension")
        if with_p:
            sp.add_argument("--p", type=int, default=None, help="plane dimension minus one")
        sp.add_argument(
            "--format",
            choices=("text", "json", "csv", "latex"),
            default="text",
        )
        sp.add_argument("--output", default=None, help="write to file instead of stdout")
        sp.add_argument("--max-n", type=int, default=None, help="override the size guard")

    sp = sub.add_parser("dim", help="graded dimensions")
    common(sp)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("basis", help="chord basis or measure labels")
    common(sp)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--basis", choices=("Phi", "S"), default="S")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("product", help="dual basis product expansion")
    common(sp)
    sp.add_argument("--basis", choices=("Phi", "S"), default="S")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--a", type=int, default=None)
    sp.add_argument("--i", type=int, default=None)
    sp.add_argument("--ex", action="store_true")
    sp.add_argument("--k2", type=int, default=None)
    sp.add_argument("--a2", type=int, default=None)
    sp.add_argument("--i2", type=int, default=None)
    sp.add_argument("--ex2", action="store_true")
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("coproduct", help="kinematic table of one basis measure")
    common(sp)
    sp.add_argument("--basis", choices=("Phi", "S"), default="S")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--a", type=int, default=None)
    sp.add_argument("--i", type=int, default=None)
    sp.add_argument("--ex", action="store_true")
    sp.set_defaults(func=cmd_coproduct)

    sp = sub.add_parser("table", help="all kinematic tables for (n, p)")
    common(sp)
    sp.add_argument("--basis", choices=("Phi", "S"), default="S")
    sp.add_argument("--hug-weil", action="store_true", help="emit the rescaled S^(p) tables")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="run all verification suites for (n, p)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"flagkin: error: {exc}", file=sys.stderr)
        return 1
    except FlagkinError as exc:
        print(f"flagkin: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
