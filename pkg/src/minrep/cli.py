"""Command-line surface: run the verification suite, print the summary
tables, and expose reflection-group utilities.

Exit codes: 0 success, 1 at least one failing check, 2 usage or
configuration error.  Default output is byte-identical across runs;
timing columns only appear with --timings.  The environment variable
MINREP_BUDGET overrides the default enumeration budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction as Q

from . import registry
from .registry import (
    all_default_records,
    builtin_records,
    default_instances,
    instantiate_family,
    joseph_infchar,
    k_display,
)
from .render import format_q, format_weight, format_word
from .rootsys import UnsupportedCartanType, make_root_system, omega_to_coords, pair_coroot
from .verify import (
    CHECK_NAMES,
    VerifyConfig,
    run_all,
    run_check,
    suite_status,
)
from .weyl import (
    BudgetExceededError,
    group_order,
    longest_element,
    orbit_size,
    orthogonal_subsystem,
)

DEFAULT_BUDGET = 10 ** 7


class UsageError(Exception):
    pass


def _env_budget() -> int:
    raw = os.environ.get("MINREP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"MINREP_BUDGET must be an integer, got {raw!r}")
    if value <= 0:
        raise UsageError("MINREP_BUDGET must be positive")
    return value


# ---------------------------------------------------------------------------
# verify


def _verify_reports_json(reports, with_timings: bool) -> str:
    payload = {
        "schema": "minrep-verify/1",
        "overall": suite_status(reports),
        "reports": [
            {"check": r.check, "record": r.record, "status": r.status,
             "evidence": r.evidence,
             "duration_ms": r.duration_ms if with_timings else 0}
            for r in reports
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _verify_reports_md(reports, with_timings: bool) -> str:
    cols = ["record", "check", "status", "evidence"]
    if with_timings:
        cols.append("duration_ms")
    lines = ["| " + " | ".join(cols) + " |",
             "|" + "|".join("---" for _ in cols) + "|"]
    for r in reports:
        cells = [r.record, r.check, r.status, r.evidence.replace("|", "/")]
        if with_timings:
            cells.append(str(r.duration_ms))
        lines.append("| " + " | ".join(cells) + " |")
    tally = {"pass": 0, "fail": 0, "skipped": 0}
    for r in reports:
        tally[r.status] += 1
    lines.append("")
    lines.append(f"overall: {suite_status(reports)} ({tally['pass']} pass, "
                 f"{tally['skipped']} skipped, {tally['fail']} fail)")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    budget = args.budget if args.budget is not None else _env_budget()
    if budget <= 0:
        raise UsageError("--budget must be positive")
    if args.params is not None and args.family is None:
        raise UsageError("--params requires --family")
    config = VerifyConfig(strategy=args.strategy, rung_cap=args.rungs,
                          budget=budget, jobs=args.jobs)
    records = None
    family = args.family
    if args.records is not None:
        try:
            with open(args.records, "r", encoding="utf-8") as fh:
                records = registry.load(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.records}: {exc.strerror}")
        except (registry.RegistryFormatError,
                registry.RegistryValidationError) as exc:
            raise UsageError(str(exc))
    if args.family is not None and args.params is not None:
        try:
            params = tuple(int(p) for p in args.params.split(","))
        except ValueError:
            raise UsageError(f"--params must be comma-separated integers, "
                             f"got {args.params!r}")
        try:
            records = (instantiate_family(args.family, params),)
        except ValueError as exc:
            raise UsageError(str(exc))
        family = None
    try:
        reports = run_all(records, record=args.record, family=family,
                          checks=args.check or None, config=config)
    except KeyError as exc:
        pool = records if records is not None else all_default_records()
        raise UsageError(f"{exc.args[0]}; known records: "
                         + ", ".join(r.name for r in pool))
    except ValueError as exc:
        raise UsageError(str(exc))
    render = _verify_reports_json if args.format == "json" else _verify_reports_md
    sys.stdout.write(render(reports, args.timings))
    return 0 if suite_status(reports) == "pass" else 1


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class Table:
    table_id: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]      # cells are str or list[str]


def _passes(record, *checks) -> str:
    ok = all(run_check(name, record).status == "pass" for name in checks)
    return "yes" if ok else "no"


NUMBER_ROWS = (
    ("sp(n,R) (n>=2)", 4, ("sp_R",), ()),
    ("so(p,2) (p>=5), so*(2n) (n>=4), e6(-14), e7(-25)", 2,
     ("so_p_2", "so_star"), ("e6(-14)", "e7(-25)")),
    ("so(p,q) (p,q>=3, p+q>=8 even), so(p,3) (p>=4 even), e6(6), e6(2), "
     "e7(7), e7(-5), e8(8), e8(-24), f4(4), g2(2)", 1,
     ("so_even_even", "so_odd_odd", "so_2n_3"),
     ("e6(6)", "e6(2)", "e7(7)", "e7(-5)", "e8(8)", "e8(-24)", "f4(4)",
      "g2(2)")),
    ("sp(n) (n>=2), so(n) (n>=7), e6, e7, e8, f4, g2, so(n,1) (n>=6), "
     "sp(p,q) (p,q>=1), e6(-26), f4(-20), so(p,q) (p,q>=4, p+q odd)", 0,
     ("sp_compact", "so_compact", "so_n_1", "sp_p_q", "so_odd_sum"),
     ("e6", "e7", "e8", "f4", "g2", "e6(-26)", "f4(-20)")),
    ("sp(n,C) (n>=2)", 2, ("sp_C",), ()),
    ("so(n,C) (n>=7), e6(C), e7(C), e8(C), f4(C), g2(C)", 1,
     ("so_C",), ("e6(C)", "e7(C)", "e8(C)", "f4(C)", "g2(C)")),
)


def _class_members(families, fixed):
    members = [r for fam in families for r in default_instances()
               if r.family == fam]
    by_name = {r.name: r for r in builtin_records()}
    members.extend(by_name[name] for name in fixed)
    return members


def table_numbers() -> Table:
    rows = []
    for label, count, families, fixed in NUMBER_ROWS:
        members = _class_members(families, fixed)
        ok = all(r.expected_count == count
                 and run_check("count_and_disjoint", r).status == "pass"
                 for r in members)
        rows.append((label, str(count), "yes" if ok else "no"))
    return Table("numbers", ("g", "count", "verified"), tuple(rows))


INFCHAR_SYMBOLIC = (
    ("so(2n+1,C) (n>=3)", "1 (i<=n-3), 1/2, 1/2, 1", "B", range(3, 9)),
    ("sp(n,C) (n>=2)", "1 (i<=n-1), 1/2", "C", range(2, 9)),
    ("so(2n,C) (n>=4)", "1 (i<=n-3), 0, 1, 1", "D", range(4, 9)),
)

INFCHAR_FIXED = ("e6(C)", "e7(C)", "e8(C)", "f4(C)", "g2(C)")


def _pattern_roundtrips(g_label: str) -> bool:
    pattern = joseph_infchar(g_label)
    rs = make_root_system(g_label)
    coords = omega_to_coords(rs, pattern)
    return tuple(pair_coroot(coords, a) for a in rs.simple) == pattern


def table_infchar() -> Table:
    rows = []
    for label, pattern, family, ranks in INFCHAR_SYMBOLIC:
        ok = all(_pattern_roundtrips(f"{family}{n}") for n in ranks)
        rows.append((label, pattern, "yes" if ok else "no"))
    for name in INFCHAR_FIXED:
        g_label = name.split("(")[0].upper()
        coeffs = joseph_infchar(g_label)
        ok = _pattern_roundtrips(g_label)
        rows.append((name, [format_q(c) for c in coeffs], "yes" if ok else "no"))
    return Table("infchar", ("g_C", "coefficients", "verified"), tuple(rows))


def _hermitian_pool():
    fams = [r for fam in ("sp_R", "so_p_2", "so_star")
            for r in default_instances() if r.family == fam]
    return fams + [r for r in builtin_records() if r.hermitian]


def _line_data_pool():
    fams = [r for fam in ("so_even_even", "so_odd_odd", "so_2n_3")
            for r in default_instances() if r.family == fam]
    fixed = [r for r in builtin_records()
             if r.modules and not r.hermitian and len(r.g_complex) == 1]
    return fams + fixed


def table_hermitian() -> Table:
    rows = []
    for r in _hermitian_pool():
        plus, minus = r.p_summands
        ktypes = [f"{m.label}: {format_weight(m.mu0)}" for m in r.modules]
        verified = _passes(r, "p_dimension", "ladder_wellformed",
                           "count_and_disjoint")
        rows.append((r.name, k_display(r.space), format_weight(plus),
                     format_weight(minus), ktypes, str(r.expected_count),
                     verified))
    return Table("hermitian",
                 ("g", "K", "p_plus", "p_minus", "minimal_k_types", "count",
                  "verified"), tuple(rows))


def table_nonhermitian() -> Table:
    rows = []
    for r in _line_data_pool():
        verified = _passes(r, "p_dimension", "ladder_wellformed",
                           "count_and_disjoint")
        rows.append((r.name, k_display(r.space),
                     format_weight(r.p_summands[0]),
                     format_weight(r.modules[0].mu0), verified))
    return Table("nonhermitian",
                 ("g", "K", "p", "minimal_k_type", "verified"), tuple(rows))


def table_data1() -> Table:
    rows = []
    for r in _line_data_pool():
        verified = _passes(r, "rho", "ladder_wellformed")
        rows.append((r.name, format_weight(r.rho),
                     format_weight(r.modules[0].mu0),
                     format_weight(r.modules[0].beta), verified))
    return Table("data1", ("g", "rho", "mu0", "beta", "verified"), tuple(rows))


def table_data2() -> Table:
    rows = []
    for r in _line_data_pool():
        verified = _passes(r, "xi0", "w0_table", "w0_formula", "same_line")
        rows.append((r.name, format_weight(r.xi0), format_word(r.w0), verified))
    return Table("data2", ("g", "xi0", "w0", "verified"), tuple(rows))


TABLES = {
    "numbers": table_numbers,
    "infchar": table_infchar,
    "hermitian": table_hermitian,
    "nonhermitian": table_nonhermitian,
    "data1": table_data1,
    "data2": table_data2,
}


def _cell_text(cell) -> str:
    if isinstance(cell, list):
        return ", ".join(cell)
    return cell


def _table_markdown(t: Table) -> str:
    lines = ["| " + " | ".join(t.columns) + " |",
             "|" + "|".join("---" for _ in t.columns) + "|"]
    for row in t.rows:
        lines.append("| " + " | ".join(_cell_text(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def _table_csv(t: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(t.columns)
    for row in t.rows:
        writer.writerow([_cell_text(c) for c in row])
    return buf.getvalue()


def _table_json(t: Table) -> str:
    payload = {
        "schema": "minrep-table/1",
        "table": t.table_id,
        "columns": list(t.columns),
        "rows": [dict(zip(t.columns, row)) for row in t.rows],
    }
    return json.dumps(payload, indent=2) + "\n"


_LATEX_SPECIALS = {"&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#",
                   "_": r"\_", "{": r"\{", "}": r"\}"}


def _latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def _table_latex(t: Table) -> str:
    lines = [r"\begin{tabular}{" + "l" * len(t.columns) + "}",
             " & ".join(_latex_escape(c) for c in t.columns) + r" \\",
             r"\hline"]
    for row in t.rows:
        lines.append(" & ".join(_latex_escape(_cell_text(c)) for c in row)
                     + r" \\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


_TABLE_FORMATS = {
    "markdown": _table_markdown,
    "csv": _table_csv,
    "json": _table_json,
    "latex": _table_latex,
}


def cmd_table(args) -> int:
    table = TABLES[args.table]()
    sys.stdout.write(_TABLE_FORMATS[args.format](table))
    return 0


# ---------------------------------------------------------------------------
# weyl utilities


def _root_system(label: str):
    try:
        return make_root_system(label)
    except UnsupportedCartanType as exc:
        raise UsageError(str(exc))


def cmd_weyl(args) -> int:
    budget = args.budget if args.budget is not None else _env_budget()
    rs = _root_system(args.type)
    if args.action == "order":
        closed = group_order(rs)
        if closed <= budget:
            enumerated = orbit_size(rs, budget)
            if enumerated != closed:
                print(f"error: enumeration found {enumerated} elements, "
                      f"closed form gives {closed}", file=sys.stderr)
                return 1
        else:
            print(f"note: order {closed} above budget {budget}, "
                  f"enumeration cross-check skipped", file=sys.stderr)
        print(closed)
        return 0
    if args.action == "longest":
        print(format_word(longest_element(rs)))
        return 0
    # subsystem
    if args.orthogonal_to is None:
        raise UsageError("subsystem requires --orthogonal-to")
    try:
        v = tuple(Q(part) for part in args.orthogonal_to.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed vector {args.orthogonal_to!r}; expected "
                         "comma-separated rationals like 1,0,-1/2")
    if len(v) != rs.ambient:
        raise UsageError(f"vector has {len(v)} coordinates, {rs.label} "
                         f"lives in {rs.ambient}")
    sub = orthogonal_subsystem(rs, v)
    kind = "x".join(sub.components) if sub.components else "empty"
    print(f"{len(sub.roots)} roots, type {kind}")
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minrep",
        description="Exact verification of minimal-module ladder data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run checks over the catalog")
    scope = p_verify.add_mutually_exclusive_group()
    scope.add_argument("--record", help="single record by name, e.g. e8_-24")
    scope.add_argument("--family", help="family id, e.g. so_even_even")
    p_verify.add_argument("--params",
                          help="comma-separated family parameters, e.g. 3,2")
    p_verify.add_argument("--check", action="append", choices=CHECK_NAMES,
                          metavar="CHECK",
                          help="restrict to one check (repeatable); one of: "
                          + ", ".join(CHECK_NAMES))
    p_verify.add_argument("--strategy", choices=("brute", "reduced"),
                          default="reduced")
    p_verify.add_argument("--rungs", type=int, default=50,
                          help="ladder sweep cap for disjointness")
    p_verify.add_argument("--budget", type=int, default=None,
                          help="enumeration budget (default MINREP_BUDGET "
                          f"or {DEFAULT_BUDGET})")
    p_verify.add_argument("--format", choices=("md", "json"), default="md")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--records", metavar="FILE",
                          help="verify records loaded from a registry file")
    p_verify.add_argument("--timings", action="store_true",
                          help="include real durations in the output")
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="print a summary table")
    p_table.add_argument("table", choices=tuple(TABLES))
    p_table.add_argument("--format", choices=tuple(_TABLE_FORMATS),
                         default="markdown")
    p_table.set_defaults(func=cmd_table)

    p_weyl = sub.add_parser("weyl", help="reflection-group utilities")
    p_weyl.add_argument("action", choices=("order", "longest", "subsystem"))
    p_weyl.add_argument("type", help="Cartan type, e.g. F4 or D5")
    p_weyl.add_argument("--orthogonal-to", metavar="VEC",
                        help="comma-separated rational coordinates")
    p_weyl.add_argument("--budget", type=int, default=None)
    p_weyl.set_defaults(func=cmd_weyl)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
