"""Command line entry point: ``folval {resolve,verify,balanced,audit}``.

Exit codes: 0 success, 1 bad input or usage, 2 a checked identity or bound
failed, 3 the input needs irrational points or a deeper reduction.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import gcd
from .divisors import SeparatrixDivisor, balanced_divisor
from .errors import FolvalError, ParseError, ResolutionDepthError, UnsupportedFieldError, ValidationError
from .foliation import OneFormGerm
from .parsing import InputSpec, parse_expression, parse_input, parse_points, parse_rational
from .projective import AuditReport, ProjForm, audit, format_point
from .resolution import DEFAULT_MAX_DEPTH, ResolutionTree, reduce
from .valuation import ValuationReport, verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_UNSUPPORTED = 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Report documents (field order is part of the output format)
# ---------------------------------------------------------------------------


def valuation_document(report: ValuationReport) -> dict:
    return {
        "components": [
            {
                "id": c.id + 1,
                "dicritical": c.dicritical,
                "rho": c.rho,
                "val": c.val,
                "epsilon": c.epsilon,
                "nu_F": c.nu_F,
                "nu_F_direct": c.nu_F_direct,
                "nu_Psi": c.nu_Psi,
                "xi": c.xi,
                "theorem_ok": c.theorem_ok,
                "corollary_ok": c.corollary_ok,
            }
            for c in report.components
        ],
        "root": {
            "nu_p": report.nu_p,
            "nu_B": report.nu_B,
            "xi_p": report.xi_p,
            "second_type": report.second_type,
            "prop34_ok": report.prop34_ok,
        },
    }


def divisor_document(tree: ResolutionTree, divisor: SeparatrixDivisor) -> dict:
    branches = []
    for b, a in divisor.entries:
        branches.append(
            {
                "kind": b.kind,
                "coefficient": a,
                "component": None if b.component is None else b.component + 1,
                "point": b.point,
                "attach": None if b.attach_coords is None else [str(c) for c in b.attach_coords],
                "formal": b.formal,
                "root_multiplicity": b.root_multiplicity,
                "m": {str(k): v for k, v in sorted(b.m.items())},
            }
        )
    return {
        "branches": branches,
        "nu_p": divisor.nu_p(),
        "balance": {f"D{c + 1}": s for c, s in sorted(divisor.balance(tree).items())},
        "balanced": divisor.is_balanced(tree),
        "primitive": divisor.is_primitive(tree),
    }


def audit_document(report: AuditReport) -> dict:
    points = []
    for p in report.points:
        entry = {
            "point": format_point(p.point),
            "chart": p.chart,
            "germ": None if p.germ is None else {"P": str(p.germ.P), "Q": str(p.germ.Q)},
            "error": p.error,
        }
        if p.report is not None:
            entry.update(valuation_document(p.report))
        entry["term"] = p.term
        entry["substituted_term"] = p.substituted
        points.append(entry)
    return {
        "d": report.d,
        "points": points,
        "lhs": report.lhs,
        "lhs_substituted": report.lhs_substituted,
        "rhs": report.rhs,
        "bound_ok": report.bound_ok,
        "consistent": report.consistent,
        "complete": report.complete,
        "hypothesis": report.disclaimer,
    }


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def _yes(flag: bool | None) -> str:
    return {True: "yes", False: "NO", None: "unknown"}[flag]


def render_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *rows]]
    return "\n".join(lines) + "\n"


def valuation_table(report: ValuationReport) -> str:
    rows = [
        [
            f"D{c.id + 1}",
            "dicritical" if c.dicritical else "invariant",
            str(c.rho),
            str(c.val),
            str(c.nu_F),
            str(c.nu_F_direct),
            str(c.nu_Psi),
            str(c.xi),
            c.identity(),
            _yes(c.theorem_ok and c.oracle_ok),
            _yes(c.corollary_ok),
        ]
        for c in report.components
    ]
    header = ["component", "type", "rho", "val", "nu_F", "nu_F(direct)", "nu_Psi", "xi", "identity", "ok", "bound"]
    out = render_table(header, rows) if rows else "no exceptional components\n"
    out += (
        f"root: nu_p = {report.nu_p}, nu_B = {report.nu_B}, xi_p = {report.xi_p}; "
        f"{report.nu_p} = {report.nu_B} - 1 + {report.xi_p} {_yes(report.prop34_ok)}; "
        f"second type: {_yes(report.second_type)}\n"
    )
    return out


def tree_table(tree: ResolutionTree) -> str:
    rows = []
    for c in tree.components:
        rows.append(
            [
                f"D{c.id + 1}",
                str(c.stage),
                f"p{c.birth_point}",
                "dicritical" if c.dicritical else "invariant",
                str(c.rho),
                str(tree.val(c.id)),
                ",".join(f"D{n + 1}" for n in tree.neighbours(c.id)) or "-",
            ]
        )
    out = f"blow-ups: {len(tree.blowup_order)}\n"
    if rows:
        out += render_table(["component", "stage", "born at", "type", "rho", "val", "meets"], rows)
    prow = []
    for p in tree.points:
        where = "root" if p.parent is None else f"p{p.parent} chart {p.chart}"
        coords = "(" + ", ".join(str(c) for c in p.coords) + ")" if p.coords else f"roots of {p.factor.format('y')}"
        status = f"-> D{p.component_born + 1}" if p.blown_up else p.cls.kind.value
        if p.cls.weak_index is not None and not p.blown_up:
            status += f" (weak index {p.cls.weak_index}, tangent to D{p.tangent_component + 1})"
        on = ",".join(f"D{c + 1}" for c in p.V) or "-"
        prow.append([f"p{p.id}", str(p.stage), where, coords, on, status])
    out += render_table(["point", "stage", "from", "coords", "on", "status"], prow)
    return out


def divisor_table(tree: ResolutionTree, divisor: SeparatrixDivisor) -> str:
    rows = []
    for b, a in divisor.entries:
        where = "root" if b.component is None else f"D{b.component + 1}"
        at = f"p{b.point}" if b.point is not None else "(0, " + str(b.attach_coords[1]) + ")"
        mseq = " ".join(f"p{k}:{v}" for k, v in sorted(b.m.items()))
        rows.append([f"{a:+d}", b.kind + (" (formal)" if b.formal else ""), where, at, mseq])
    out = render_table(["coef", "kind", "on", "at", "multiplicities"], rows) if rows else "no branches\n"
    out += f"nu_p(B) = {divisor.nu_p()}; balanced: {_yes(divisor.is_balanced(tree))}; primitive: {_yes(divisor.is_primitive(tree))}\n"
    return out


def audit_table(report: AuditReport) -> str:
    rows = []
    for p in report.points:
        if p.error:
            rows.append([format_point(p.point), p.chart, "-", "-", "-", p.error])
            continue
        nus = ",".join(str(c.nu_F) for c in p.report.components) or "-"
        rows.append([format_point(p.point), p.chart, nus, str(p.term), str(p.substituted), _yes(p.report.ok)])
    out = render_table(["point", "chart", "nu_D(F)", "term", "substituted", "checks"], rows)
    out += (
        f"degree d = {report.d}; sum = {report.lhs} (substituted {report.lhs_substituted}); "
        f"bound (d-1)^2 = {report.rhs}: {_yes(report.bound_ok)}\n"
        f"point list complete: {_yes(report.complete)}\n"
        f"note: {report.disclaimer}\n"
    )
    return out


# ---------------------------------------------------------------------------
# Input handling
# ---------------------------------------------------------------------------


def _bindings(params: list[str]) -> dict[str, Fraction]:
    out = {}
    for item in params or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip().isidentifier():
            raise UsageError(f"--param expects NAME=RATIONAL, got {item!r}")
        try:
            out[name.strip()] = parse_rational(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_input(args) -> InputSpec:
    bindings = _bindings(args.param)
    if args.expr:
        if args.input is not None:
            raise UsageError("give either an input file or -e expressions, not both")
        text = "\n".join(args.expr)
    elif args.input is not None:
        text = _read(args.input)
    else:
        raise UsageError("no input: give a file, '-' for stdin, or -e NAME=EXPR")
    return parse_input(text, bindings)


def local_germ(spec: InputSpec) -> OneFormGerm:
    if spec.kind != "local":
        raise UsageError("this command needs a local germ (P and Q)")
    P, Q = spec.exprs["P"], spec.exprs["Q"]
    if not P and not Q:
        raise UsageError("P and Q are both zero")
    g = gcd(P, Q)
    if not g.is_constant():
        print(f"note: dividing P and Q by their common factor {g}", file=sys.stderr)
        P, Q = P.exact_div(g), Q.exact_div(g)
    return OneFormGerm(P, Q)


def _order(value: str) -> str | int:
    if value in ("lowest", "highest"):
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("order is 'lowest', 'highest' or an integer seed") from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _reduce(args, germ: OneFormGerm) -> ResolutionTree:
    return reduce(germ, max_depth=args.max_depth, order=args.order, conjugate_points=args.conjugate_points)


def cmd_resolve(args, out) -> int:
    tree = _reduce(args, local_germ(load_input(args)))
    out.write(dump_json(tree.to_dict()) if args.format == "json" else tree_table(tree))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    tree = _reduce(args, local_germ(load_input(args)))
    report = verify(tree)
    out.write(dump_json(valuation_document(report)) if args.format == "json" else valuation_table(report))
    for line in report.violations():
        print(f"violation: {line}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_balanced(args, out) -> int:
    tree = _reduce(args, local_germ(load_input(args)))
    divisor = balanced_divisor(tree)
    if args.format == "json":
        out.write(dump_json(divisor_document(tree, divisor)))
    else:
        out.write(divisor_table(tree, divisor))
    ok = divisor.is_balanced(tree) and divisor.is_primitive(tree)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_audit(args, out) -> int:
    spec = load_input(args)
    if spec.kind != "projective":
        raise UsageError("audit needs a projective form (A, B and C)")
    form = ProjForm(spec.exprs["A"], spec.exprs["B"], spec.exprs["C"])
    points = parse_points(_read(args.points)) if args.points else None
    report = audit(form, points, max_depth=args.max_depth, conjugate_points=args.conjugate_points)
    out.write(dump_json(audit_document(report)) if args.format == "json" else audit_table(report))
    for line in report.errors:
        print(f"error: {line}", file=sys.stderr)
    if not report.bound_ok:
        print(
            f"violation: sum {report.lhs} exceeds (d-1)^2 = {report.rhs}; "
            "the point list may be incomplete or the hypothesis may fail",
            file=sys.stderr,
        )
    if report.errors:
        return EXIT_UNSUPPORTED
    return EXIT_OK if report.ok else EXIT_VIOLATION


COMMANDS = {
    "resolve": (cmd_resolve, "reduce the singularity and print the blow-up tree"),
    "verify": (cmd_verify, "check the separatrix identities on every component"),
    "balanced": (cmd_balanced, "describe the balanced divisor of separatrices"),
    "audit": (cmd_audit, "degree bound for a foliation of the projective plane"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="input file, or '-' for stdin")
    common.add_argument("-e", "--expr", action="append", metavar="NAME=EXPR", help="inline assignment, repeatable")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    common.add_argument("--param", action="append", metavar="NAME=RAT", help="bind a parameter, repeatable")
    common.add_argument("--order", type=_order, default="lowest", help="blow-up order: lowest, highest or a seed")
    common.add_argument(
        "--conjugate-points", action="store_true",
        help="accept irrational singular points that can be certified reduced",
    )
    parser = argparse.ArgumentParser(prog="folval", description="Singularities of plane foliations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "audit":
            p.add_argument("--points", metavar="FILE", help="singular points, one 'x:y:z' per line")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler = COMMANDS[args.command][0]
    try:
        return handler(args, out)
    except (UsageError, ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedFieldError, ResolutionDepthError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except FolvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
