"""Command-line front end.

Subcommands: zeta (closed forms), verify (identity suites), coeffs
(Dirichlet coefficients, optionally against the brute-force oracle), oracle
(finite-ring enumerations), global (Euler-factor polynomial and numeric
residue factor).  Exit codes: 0 success, 1 mathematical mismatch, 2 usage or
guard violation.  All output is deterministic for fixed inputs and version.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .combinat import Partition
from .errors import BudgetExceeded, HeiszetaError, SizeGuard
from .exactalg import (
    FactoredRational,
    format_latex,
    format_plain,
    format_poly,
    rational_to_json,
)
from .igusa import check_I_equals_K, generic_slots, igusa_B, igusa_B_subset
from .igusa import igusa_B_residue, igusa_B_residue_limit
from .exactalg import mono
from .oracle import check_factorization, enum_lagrangians, enum_sublattices
from .oracle import enum_subalgebras
from .zeta import (
    dirichlet_coeffs,
    funeq_check,
    global_factor,
    global_factor_eval,
    pole_analysis,
    reduced_c,
    reduced_cone_series,
    reduced_zeta,
    rn_numeric,
    zeta_graded,
    zeta_ideal,
    zeta_igusa_sum,
    zeta_compact,
    zeta_hyperoctahedral,
)

FORMS = {
    "a": zeta_igusa_sum,
    "b": zeta_compact,
    "c": zeta_hyperoctahedral,
    "ideal": zeta_ideal,
    "graded": zeta_graded,
    "reduced": reduced_zeta,
}


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _render(f: FactoredRational, fmt: str) -> str:
    if fmt == "plain":
        return format_plain(f)
    if fmt == "latex":
        return format_latex(f)
    data = rational_to_json(f)
    data["version"] = __version__
    return json.dumps(data, sort_keys=True)


def cmd_zeta(args) -> int:
    f = FORMS[args.form](args.n)
    _emit(_render(f, args.output), args.out)
    return 0


def _check_crossform(n: int) -> dict:
    a, b, c = zeta_igusa_sum(n), zeta_compact(n), zeta_hyperoctahedral(n)
    ok = a == b and b == c
    return {"check": "crossform", "n": n, "status": "pass" if ok else "fail"}


def _check_funeq(n: int) -> dict:
    rep = funeq_check(n)
    return {"check": "funeq", "n": n, "status": rep["status"], "detail": rep["factor"]}


def _check_poles(n: int) -> dict:
    rep = pole_analysis(n)
    detail = {
        "integral": [[s, o] for s, o in rep.integral_poles],
        "fractional": [[str(s), o] for s, o in rep.fractional_poles],
        "double": [str(s) for s in rep.double_poles],
    }
    expected_double = [m for m in range(1, n + 1) if m * (m + 1) == 4 * n]
    ok = not rep.discrepancies and [int(s) for s in rep.double_poles] == expected_double
    return {
        "check": "poles",
        "n": n,
        "status": "pass" if ok else "fail",
        "detail": detail,
    }


def _check_fibre(n: int) -> dict:
    for k in range(n + 1):
        for r in range(2 * k + 2):
            check_I_equals_K(n, k, r)
    if n == 4:
        check_I_equals_K(4, 2, 2)
    return {"check": "fibre", "n": n, "status": "pass"}


def _check_residue(n: int) -> dict:
    Z = mono(977, 2)
    for m in range(n + 1):
        X = generic_slots(n)
        if igusa_B_residue(n, m, -1, Z, X) != igusa_B_residue_limit(n, m, -1, Z, X):
            return {"check": "residue", "n": n, "status": "fail", "detail": "m=%d" % m}
    X = generic_slots(n + 1)
    if igusa_B(n, -1, Z, X) != igusa_B_subset(n, -1, Z, X):
        return {"check": "residue", "n": n, "status": "fail", "detail": "subset"}
    return {"check": "residue", "n": n, "status": "pass"}


def _check_reduced(n: int) -> dict:
    f = reduced_zeta(n)
    series = [c.coefficient(0, 0) for c in f.series_in_T(10)]
    ok = series == reduced_cone_series(n, 10)
    lhs = f.subs_inverse()
    rhs = FactoredRational(f.num.scaled(-1), f.den, f.tshift + 2 * n + 1)
    ok = ok and lhs == rhs and 0 < reduced_c(n) < 1
    return {"check": "reduced", "n": n, "status": "pass" if ok else "fail"}


CHECKS = {
    "crossform": _check_crossform,
    "funeq": _check_funeq,
    "poles": _check_poles,
    "fibre": _check_fibre,
    "residue": _check_residue,
    "reduced": _check_reduced,
}


def cmd_verify(args) -> int:
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    for name in names:
        if name not in CHECKS:
            raise SizeGuard("unknown check %r" % name)
    reports = []
    failed = None
    for name in names:
        t0 = time.time()
        rep = CHECKS[name](args.n)
        rep["seconds"] = round(time.time() - t0, 3)
        rep["version"] = __version__
        reports.append(rep)
        if rep["status"] != "pass" and failed is None:
            failed = name
    _emit(json.dumps(reports, sort_keys=True, indent=2), args.out)
    if failed:
        print("FAILED: %s" % failed, file=sys.stderr)
        return 1
    return 0


def cmd_coeffs(args) -> int:
    formula = dirichlet_coeffs(args.n, args.prime, args.max_order)
    rows = []
    oracle_counts = None
    if args.oracle:
        oracle_counts = enum_subalgebras(args.n, args.prime, args.max_order)
    ok = True
    for i, val in enumerate(formula):
        row = {"index": "%d^%d" % (args.prime, i), "formula": val}
        if oracle_counts is not None:
            row["oracle"] = oracle_counts[i]
            row["agree"] = oracle_counts[i] == val
            ok = ok and row["agree"]
        rows.append(row)
    header = ["index", "formula"] + (["oracle", "agree"] if args.oracle else [])
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(row[h]) for h in header))
    _emit("\n".join(lines), args.out)
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    if args.mode == "lagrangian":
        mu = Partition.from_string(args.mu)
        counts = enum_lagrangians(mu, args.prime)
        rows = [
            {"lambda": str(lam), "mu": str(mu), "p": args.prime, "count": str(c)}
            for lam, c in sorted(counts.items(), key=lambda kv: kv[0].parts)
        ]
        rows.append(
            {
                "lambda": "*",
                "mu": str(mu),
                "p": args.prime,
                "count": str(sum(counts.values())),
            }
        )
    elif args.mode == "sublattice":
        table = enum_sublattices(args.n, args.prime, args.max_val)
        rows = [
            {"lambda": str(lam), "mu": str(mu), "p": args.prime, "count": str(c)}
            for (lam, mu), c in sorted(
                table.items(), key=lambda kv: (kv[0][0].parts, kv[0][1].parts)
            )
        ]
    else:  # factorization
        rows = check_factorization(args.n, args.prime, args.max_val)
    _emit(json.dumps(rows, sort_keys=True, indent=2), args.out)
    return 0


def cmd_global(args) -> int:
    lines = [
        "N_%d(X, Y) = %s"
        % (args.n, format_poly(global_factor(args.n), qvar="X", tvar="Y"))
    ]
    if args.eval:
        lines.append(
            "N_%d(p, p^-%d) = %s"
            % (args.n, 2 * args.n, format_poly(global_factor_eval(args.n), qvar="p"))
        )
    if args.rn:
        rep = rn_numeric(args.n, args.prime_bound)
        half = rn_numeric(args.n, max(2, args.prime_bound // 2))
        rep["delta_vs_half_bound"] = abs(rep["value"] - half["value"])
        lines.append(json.dumps(rep, sort_keys=True))
    _emit("\n".join(lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="heiszeta",
        description="Exact subalgebra zeta functions of higher Heisenberg Lie algebras",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeta", help="print a closed form")
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--form", choices=sorted(FORMS), default="b")
    z.add_argument("--output", choices=["plain", "json", "latex"], default="plain")
    z.add_argument("--out", help="write to file instead of stdout")
    z.set_defaults(func=cmd_zeta)

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--checks", default="crossform,funeq")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("coeffs", help="Dirichlet coefficients a_{p^i}")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--prime", type=int, required=True)
    c.add_argument("--max-order", type=int, required=True)
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_coeffs)

    o = sub.add_parser("oracle", help="finite-ring brute-force counts")
    o.add_argument("mode", choices=["lagrangian", "sublattice", "factorization"])
    o.add_argument("--mu", default="")
    o.add_argument("--n", type=int, default=1)
    o.add_argument("--prime", type=int, required=True)
    o.add_argument("--max-val", type=int, default=2)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("global", help="global Euler-factor polynomial N_n")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--eval", action="store_true")
    g.add_argument("--rn", action="store_true")
    g.add_argument("--prime-bound", type=int, default=1000)
    g.add_argument("--out")
    g.set_defaults(func=cmd_global)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (SizeGuard, BudgetExceeded) as exc:
        print("guard: %s" % exc, file=sys.stderr)
        return 2
    except HeiszetaError as exc:
        print("mismatch: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
