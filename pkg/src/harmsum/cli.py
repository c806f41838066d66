"""Command-line front end.

Subcommands: single verifications (`verify`), default-grid sweeps (`scan`),
conjecture sweeps (`conjecture`), ad-hoc triple sums (`sum`) and Bernoulli
queries (`bernoulli`).  Reports print as an aligned table, JSON or CSV.

Exit codes: 0 when every executed check passed, 1 on a genuine congruence
mismatch, 2 on usage or parameter errors, 3 when a size cap is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from math import prod

from .bernoulli import bernoulli_value
from .errors import CapExceeded, HarmsumError
from .harmonic import (
    ParityFilter,
    SignVariant,
    TripleSumSpec,
    triple_sum_bruteforce,
    triple_sum_exact,
    triple_sum_fast,
)
from .modarith import PrimePower, factorize, reduce_rational
from .verify import (
    DEFAULT_POOL,
    FAST_CAP,
    ORACLE_CAP,
    STATEMENTS,
    CongruenceReport,
    StatementParams,
    conjecture_scan,
    scan,
    verify,
)

PARAM_KEYS = ("p", "q", "alpha", "beta", "r", "m", "n", "variant")

# flattened column order shared by CSV and the table renderer
REPORT_FIELDS = (
    "statement",
    *PARAM_KEYS,
    "modulus",
    "lhs",
    "rhs",
    "pass",
    "method",
    "elapsed_ms",
)


def report_to_json(report: CongruenceReport) -> dict:
    """Schema: statement, params{...}, modulus/lhs/rhs as decimal strings."""
    return {
        "statement": report.params.statement,
        "params": {key: getattr(report.params, key) for key in PARAM_KEYS},
        "modulus": str(report.modulus),
        "lhs": str(report.lhs.value),
        "rhs": str(report.rhs.value),
        "pass": report.passed,
        "method": report.method,
        "elapsed_ms": round(report.elapsed * 1000.0, 3),
    }


def _flat_row(obj: dict) -> dict:
    row = {"statement": obj["statement"]}
    for key in PARAM_KEYS:
        value = obj["params"][key]
        row[key] = "" if value is None else str(value)
    row["modulus"] = obj["modulus"]
    row["lhs"] = obj["lhs"]
    row["rhs"] = obj["rhs"]
    row["pass"] = "true" if obj["pass"] else "false"
    row["method"] = obj["method"]
    row["elapsed_ms"] = str(obj["elapsed_ms"])
    return row


def _render_table(rows: list[dict], fields: tuple[str, ...]) -> str:
    used = [f for f in fields if any(row.get(f, "") for row in rows)]
    if not used:
        used = list(fields[:1])
    widths = {f: max(len(f), *(len(row.get(f, "")) for row in rows)) for f in used}
    lines = ["  ".join(f.ljust(widths[f]) for f in used).rstrip()]
    for row in rows:
        lines.append(
            "  ".join(row.get(f, "").ljust(widths[f]) for f in used).rstrip()
        )
    return "\n".join(lines) + "\n"


def _render_csv(rows: list[dict], fields: tuple[str, ...]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_reports(reports, fmt, out, single: bool) -> None:
    objs = [report_to_json(r) for r in reports]
    if fmt == "json":
        payload = objs[0] if single and len(objs) == 1 else objs
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        text = _render_csv([_flat_row(o) for o in objs], REPORT_FIELDS)
    else:
        rows = []
        for report, obj in zip(reports, objs):
            row = _flat_row(obj)
            row["pass"] = "pass" if obj["pass"] else "FAIL"
            note = "; ".join(
                f"{k}={v}" for k, v in sorted(report.extras.items())
            )
            row["note"] = note
            rows.append(row)
        text = _render_table(rows, REPORT_FIELDS + ("note",))
    _emit(text, out)


def _diag(message: str, quiet: bool) -> None:
    if not quiet:
        print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args) -> int:
    kwargs = {key: getattr(args, key) for key in PARAM_KEYS}
    params = StatementParams(
        args.statement, **{k: v for k, v in kwargs.items() if v is not None}
    )
    report = verify(
        params, use_oracle=args.oracle, oracle_check=args.oracle_check
    )
    _emit_reports([report], args.format, args.out, single=True)
    return 0 if report.passed else 1


def _cmd_scan(args) -> int:
    start = time.perf_counter()
    reports, notes = scan(
        statements=args.statements,
        pool=tuple(args.p_set),
        alpha_max=args.alpha_max,
        fast_cap=args.fast_cap,
        oracle_cap=args.oracle_cap,
        oracle_check=args.oracle_check,
        threads=args.threads,
    )
    for note in notes:
        _diag(f"note: {note}", args.quiet)
    _emit_reports(reports, args.format, args.out, single=False)
    failed = sum(1 for r in reports if not r.passed)
    _diag(
        f"{len(reports)} reports, {failed} failed, "
        f"{time.perf_counter() - start:.2f}s",
        args.quiet,
    )
    return 0 if failed == 0 else 1


def _cmd_conjecture(args) -> int:
    start = time.perf_counter()
    reports = conjecture_scan(
        args.n_max,
        min_distinct_primes=args.min_primes,
        include_even=args.include_even,
        threads=args.threads,
    )
    _emit_reports(reports, args.format, args.out, single=False)
    failed = sum(1 for r in reports if not r.passed)
    _diag(
        f"{len(reports)} reports, {failed} failed, "
        f"{time.perf_counter() - start:.2f}s",
        args.quiet,
    )
    return 0 if failed == 0 else 1


def _sum_spec(args) -> TripleSumSpec:
    radical = args.radical
    if radical is None:
        radical = prod(factorize(args.n))
    return TripleSumSpec(
        args.n,
        radical,
        SignVariant(args.sign),
        ParityFilter(args.parity),
    )


def _cmd_sum(args) -> int:
    spec = _sum_spec(args)
    if args.method in ("brute", "fast") and args.mod is None:
        print("error: --mod is required for the modular methods", file=sys.stderr)
        return 2
    if args.method == "brute":
        result = triple_sum_bruteforce(spec, args.mod)
        value = str(result.residue.value)
        modulus = str(args.mod)
    elif args.method == "fast":
        fact = factorize(args.mod)
        if len(fact) != 1:
            print(
                "error: the fast method needs a prime-power modulus",
                file=sys.stderr,
            )
            return 2
        (p, alpha), = fact.items()
        cofactors = sorted(set(factorize(spec.radical)) - {p})
        result = triple_sum_fast(spec, PrimePower(p, alpha), cofactors)
        value = str(result.residue.value)
        modulus = str(args.mod)
    else:
        result = triple_sum_exact(spec)
        if args.mod is not None:
            value = str(reduce_rational(result.residue, args.mod).value)
            modulus = str(args.mod)
        else:
            value = str(result.residue)
            modulus = ""
    obj = {
        "n": spec.n,
        "radical": spec.radical,
        "sign": spec.sign.value,
        "parity": spec.parity.value,
        "method": result.method,
        "modulus": modulus or None,
        "value": value,
        "term_count": result.term_count,
        "elapsed_ms": round(result.elapsed * 1000.0, 3),
    }
    _emit_single(obj, args)
    return 0


def _cmd_bernoulli(args) -> int:
    # --mod and --exact are mutually exclusive; no --mod means exact
    value = bernoulli_value(args.k, args.mod)
    if isinstance(value.payload, Fraction):
        text = str(value.payload)
        mod_text = None
    else:
        text = str(value.payload.value)
        mod_text = str(value.payload.modulus)
    obj = {
        "k": value.index,
        "modulus": mod_text,
        "value": text,
        "route": value.provenance,
    }
    _emit_single(obj, args)
    return 0


def _emit_single(obj: dict, args) -> None:
    fields = tuple(obj)
    if args.format == "json":
        text = json.dumps(obj, indent=2) + "\n"
    else:
        row = {
            k: ("" if v is None else str(v)) for k, v in obj.items()
        }
        if args.format == "csv":
            text = _render_csv([row], fields)
        else:
            text = _render_table([row], fields)
    _emit(text, args.out)


# ---------------------------------------------------------------------------
# parser


def _add_output_flags(sub) -> None:
    sub.add_argument(
        "--format", choices=("table", "json", "csv"), default="table"
    )
    sub.add_argument("--out", metavar="PATH", help="write the report here")
    sub.add_argument(
        "--quiet", action="store_true", help="suppress stderr diagnostics"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmsum",
        description="Congruence checks for restricted harmonic triple sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="check one statement at explicit parameters"
    )
    p_verify.add_argument("statement", choices=STATEMENTS)
    for key in ("p", "q", "alpha", "beta", "r", "m", "n"):
        p_verify.add_argument(f"--{key}", type=int)
    p_verify.add_argument("--variant")
    p_verify.add_argument(
        "--oracle",
        action="store_true",
        help="compute the sum by brute force instead of the fast path",
    )
    p_verify.add_argument(
        "--oracle-check",
        action="store_true",
        help="run both paths and fail on divergence",
    )
    _add_output_flags(p_verify)

    p_scan = sub.add_parser("scan", help="verify the default parameter grids")
    p_scan.add_argument(
        "--statements",
        nargs="+",
        choices=STATEMENTS,
        help="restrict to these statements (default: all theorem grids)",
    )
    p_scan.add_argument(
        "--p-set",
        nargs="+",
        type=int,
        default=list(DEFAULT_POOL),
        help=f"prime pool for the grids (default {list(DEFAULT_POOL)})",
    )
    p_scan.add_argument("--alpha-max", type=int, default=2)
    p_scan.add_argument(
        "--fast-cap",
        type=int,
        default=FAST_CAP,
        help="skip grid points whose sum length exceeds this",
    )
    p_scan.add_argument(
        "--oracle-cap",
        type=int,
        default=ORACLE_CAP,
        help="--oracle-check duplicates only sums up to this length",
    )
    p_scan.add_argument(
        "--oracle-check",
        action="store_true",
        help="re-run every fast-path sum by brute force and compare",
    )
    p_scan.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker processes (0 = one per core)",
    )
    _add_output_flags(p_scan)

    p_conj = sub.add_parser(
        "conjecture", help="sweep the composite-modulus conjecture"
    )
    p_conj.add_argument("--n-max", type=int, required=True)
    p_conj.add_argument(
        "--min-primes",
        type=int,
        default=2,
        help="minimum number of distinct prime factors of n",
    )
    p_conj.add_argument(
        "--include-even", action="store_true", help="include even n (vacuous)"
    )
    p_conj.add_argument("--threads", type=int, default=1)
    _add_output_flags(p_conj)

    p_sum = sub.add_parser("sum", help="evaluate one triple sum")
    p_sum.add_argument("--n", type=int, required=True)
    p_sum.add_argument(
        "--radical", type=int, help="coprimality radical (default: rad(n))"
    )
    p_sum.add_argument(
        "--sign",
        choices=[variant.value for variant in SignVariant],
        default=SignVariant.PLAIN.value,
    )
    p_sum.add_argument(
        "--parity",
        choices=[flt.value for flt in ParityFilter],
        default=ParityFilter.ALL.value,
    )
    p_sum.add_argument("--mod", type=int)
    p_sum.add_argument(
        "--method", choices=("brute", "fast", "exact"), default="brute"
    )
    _add_output_flags(p_sum)

    p_bern = sub.add_parser("bernoulli", help="evaluate one Bernoulli number")
    p_bern.add_argument("--k", type=int, required=True)
    group = p_bern.add_mutually_exclusive_group()
    group.add_argument("--mod", type=int)
    group.add_argument(
        "--exact", action="store_true", help="exact rational (default)"
    )
    _add_output_flags(p_bern)

    return parser


_COMMANDS = {
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "conjecture": _cmd_conjecture,
    "sum": _cmd_sum,
    "bernoulli": _cmd_bernoulli,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; normalize the rest
        return 0 if exc.code in (0, None) else 2
    try:
        return _COMMANDS[args.command](args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except HarmsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
