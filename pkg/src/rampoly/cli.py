"""Command-line interface: ``rampoly <command> <n> [options]``.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 precision
exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import construct, verify
from .construct import ClassPolynomialResult, HILBERT, RAMANUJAN
from .dataset import ResultCache, ResultDocument, load_expected
from .errors import (
    NeedsMorePrecisionError,
    PrecisionExhaustedError,
    RampolyError,
    TableMismatch,
    TheoremViolation,
    UnsupportedDiscriminantError,
    VerificationFailure,
)
from .factor import FactoredInteger, factorize
from .numerics import PrecisionContext
from .polyz import discriminant
from .quadform import check_n, class_group

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt_factored(fi: FactoredInteger, times: str = "·") -> str:
    return fi.format(times=times, with_sign=True)


def _ctx(args) -> PrecisionContext | None:
    if args.precision_bits is None:
        return None
    try:
        return PrecisionContext(args.precision_bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _compute(kind: str, n: int, args) -> ClassPolynomialResult:
    ctx = _ctx(args)
    if kind == HILBERT:
        return construct.hilbert_class_poly(n, ctx)
    return construct.ramanujan_poly(n, ctx)


def _from_document(doc: ResultDocument) -> ClassPolynomialResult:
    return ClassPolynomialResult(
        n=doc.n, kind=doc.kind, polynomial=doc.polynomial, bits=doc.bits, verified=doc.flags.get("verified", False)
    )


def _recheck_cached(doc: ResultDocument, n: int) -> None:
    poly = doc.polynomial
    if doc.n != n or poly.degree != class_group(n).h:
        raise VerificationFailure(f"cached {doc.kind}_{n} has the wrong degree")
    if doc.kind == RAMANUJAN:
        construct.verify_ramanujan_poly(poly, n, PrecisionContext(max(doc.bits, 64)))
    elif not poly.is_monic():
        raise VerificationFailure(f"cached hilbert_{n} is not monic")


def result_document(kind: str, n: int, args) -> ResultDocument:
    cache = ResultCache(args.cache) if args.cache else None
    if cache is not None and args.precision_bits is None:
        doc = cache.get(kind, n)
        if doc is not None:
            _recheck_cached(doc, n)
            construct.preload(_from_document(doc))
            return doc
    result = _compute(kind, n, args)
    disc = factorize(discriminant(result.polynomial), max(n, 2))
    doc = ResultDocument.from_result(result, disc, class_group(n).invariant_factors)
    if cache is not None and args.precision_bits is None:
        cache.put(doc)
    return doc


def _emit(args, payload, text: str, csv_rows=None, csv_header=None):
    out = args.out
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        if csv_header:
            w.writerow(csv_header)
        for row in csv_rows or []:
            w.writerow(row)
    else:
        out.write(text.rstrip("\n") + "\n")


def cmd_classgroup(args) -> int:
    n = args.n
    group = class_group(n)
    forms = [[f.a, f.b, f.c] for f in group.elements]
    payload = {"n": n, "h": group.h, "invariant_factors": list(group.invariant_factors), "forms": forms}
    lines = [f"n = {n}", f"h = {group.h}", f"Cl(n) = {group.structure()}", "forms:"]
    lines += [f"  {f}" for f in group.elements]
    inv = "x".join(map(str, group.invariant_factors))
    _emit(args, payload, "\n".join(lines), [[n, group.h, inv]], ["n", "h", "invariant_factors"])
    return EXIT_OK


def _poly_command(kind: str, args) -> int:
    n = args.n
    doc = result_document(kind, n, args)
    name = "H" if kind == HILBERT else "P"
    disc = _fmt_factored(_factored(doc.discriminant))
    text = f"{name}_{n}(z) = {doc.polynomial}\nΔ({name}_{n}) = {disc}\nprecision: {doc.bits} bits"
    row = [n, kind, doc.degree, " ".join(doc.coefficients), disc]
    _emit(args, doc.to_json(), text, [row], ["n", "kind", "degree", "coefficients", "discriminant"])
    return EXIT_OK


def _factored(d: dict) -> FactoredInteger:
    from .dataset import factored_from_json

    return factored_from_json(d)


def cmd_hilbert(args) -> int:
    return _poly_command(HILBERT, args)


def cmd_ramanujan(args) -> int:
    return _poly_command(RAMANUJAN, args)


def cmd_disc(args) -> int:
    n = args.n
    result_document(RAMANUJAN, n, args)
    result_document(HILBERT, n, args)
    disc_p, disc_h = verify.discriminants(n)
    fp, fh = factorize(disc_p, max(n, 2)), factorize(disc_h, max(n, 2))
    try:
        quotient, index = verify.check_square_quotient(n)
    except TheoremViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    fi = factorize(index, max(n, 2)) if index else FactoredInteger(1)
    payload = {
        "n": n,
        "ramanujan_discriminant": _json_factored(fp),
        "hilbert_discriminant": _json_factored(fh),
        "quotient": str(quotient),
        "index": str(index),
        "index_factored": _json_factored(fi),
    }
    text = "\n".join(
        [
            f"Δ(P_{n}) = {_fmt_factored(fp)}",
            f"Δ(H_{n}) = {_fmt_factored(fh)}",
            f"Δ(H_{n})/Δ(P_{n}) = ({fi.format()})^2",
        ]
    )
    row = [n, _fmt_factored(fp, "×"), _fmt_factored(fh, "×"), fi.format("×")]
    _emit(args, payload, text, [row], ["n", "disc_ramanujan", "disc_hilbert", "index"])
    return EXIT_OK


def _json_factored(fi: FactoredInteger) -> dict:
    from .dataset import factored_to_json

    return factored_to_json(fi)


def _report_failed(report: verify.VerificationReport, strict: bool) -> list[str]:
    failed = [k for k, ok in report.checks.items() if not ok]
    if report.table_match:
        failed += [f"table:{k}" for k, ok in report.table_match.items() if not ok]
    if strict and not report.literal_square:
        failed.append("diagnostic:literal_square")
    return failed


def _report_text(report: verify.VerificationReport) -> str:
    lines = [
        f"n = {report.n}",
        f"h = {report.h}, Cl(n) invariant factors {list(report.invariant_factors)}, |Cl(n)[2]| = {report.two_torsion}",
        f"Δ(P_{report.n}) = {_fmt_factored(report.disc_ramanujan)}",
        f"Δ(H_{report.n}) = {_fmt_factored(report.disc_hilbert)}",
        f"index [Z[t_n]:Z[j_n]] = {report.index}",
        f"sign: predicted {report.predicted_sign}, actual {report.actual_sign}",
    ]
    if report.field_discriminant is not None:
        lines.append(f"field discriminant = {report.field_discriminant}, [O:Z[t_n]] = {report.field_index}")
    lines.append(f"3 divides Δ(P_n): {report.three_divides}; 3 splits: {report.three_splits}")
    lines.append(f"real roots: H_n {report.real_roots_hilbert}, P_n {report.real_roots_ramanujan}")
    lines.append(f"Δ(P_n) is a perfect square (diagnostic): {report.literal_square}")
    for k, ok in report.checks.items():
        lines.append(f"check {k}: {'pass' if ok else 'FAIL'}")
    if report.table_match is not None:
        for k, ok in report.table_match.items():
            lines.append(f"table {k}: {'match' if ok else 'MISMATCH'}")
    return "\n".join(lines)


def _verify_one(n: int, dataset_path) -> dict:
    expected = load_expected(dataset_path)
    report = verify.verify_table_row(n, expected, strict=False)
    return report.to_dict()


def cmd_verify(args) -> int:
    n = args.n
    if args.cache:
        result_document(RAMANUJAN, n, args)
        result_document(HILBERT, n, args)
    expected = load_expected(args.dataset)
    report = verify.verify_table_row(n, expected, strict=False)
    failed = _report_failed(report, args.strict)
    row = [n, report.h, report.actual_sign, report.disc_ramanujan.format("×"), "x".join(map(str, report.invariant_factors)), not failed]
    _emit(args, report.to_dict(), _report_text(report), [row], CSV_HEADER)
    if failed:
        print(f"verification failure for n={n}: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


CSV_HEADER = ["n", "h", "sign", "factorization", "invariant_factors", "match"]


def _sweep_values(lo: int, hi: int) -> list[int]:
    first = lo + ((11 - lo) % 24)
    return list(range(first, hi + 1, 24))


def _spot_check_cache(args, values) -> bool:
    """Recompute one cached n from scratch and compare with the cache."""
    cache = ResultCache(args.cache)
    cached = [n for n in values if cache.get(RAMANUJAN, n) and cache.get(HILBERT, n)]
    if not cached:
        return True
    n = random.Random().choice(cached)
    for kind in (RAMANUJAN, HILBERT):
        doc = cache.get(kind, n)
        result = construct.fresh_result(kind, n)
        if result.polynomial != doc.polynomial:
            print(f"cache entry {kind}_{n} disagrees with a fresh computation", file=sys.stderr)
            return False
    return True


def cmd_table(args) -> int:
    lo, hi = args.from_, args.to
    if lo > hi or hi < 11:
        raise UsageError("empty range")
    values = _sweep_values(lo, hi)
    if args.cache:
        if not _spot_check_cache(args, values):
            return EXIT_VERIFY
        for n in values:
            result_document(RAMANUJAN, n, args)
            result_document(HILBERT, n, args)
    if args.jobs > 1 and not args.cache:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            docs = list(pool.map(_verify_one, values, [args.dataset] * len(values)))
    else:
        docs = [_verify_one(n, args.dataset) for n in values]
    rows, lines, any_failed = [], [], False
    header = f"{'n':>5} {'h':>3} {'sgn':>3}  {'|Δ(P_n)|':<52} {'Cl(n)':<14} match"
    lines.append(header)
    for d in docs:
        fi = _factored(d["disc_ramanujan"])
        checks_ok = all(d["checks"].values())
        table_ok = d["table_match"] is None or all(d["table_match"].values())
        strict_ok = d["literal_square"] or not args.strict
        match = checks_ok and table_ok and strict_ok
        any_failed |= not match
        inv = "x".join(map(str, d["invariant_factors"]))
        rows.append([d["n"], d["h"], d["actual_sign"], fi.format("×"), inv, "yes" if match else "no"])
        structure = " x ".join(f"Z/{k}" for k in reversed(d["invariant_factors"]))
        lines.append(f"{d['n']:>5} {d['h']:>3} {d['actual_sign']:>3}  {fi.format('·'):<52} {structure:<14} {'yes' if match else 'NO'}")
    _emit(args, docs, "\n".join(lines), rows, CSV_HEADER)
    return EXIT_VERIFY if any_failed else EXIT_OK


def _n_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    common.add_argument("--precision-bits", type=int, default=None, metavar="K")
    common.add_argument("--cache", default=None, metavar="DIR")
    common.add_argument("--jobs", type=int, default=1, metavar="K")
    common.add_argument("--strict", action="store_true")
    common.add_argument("--dataset", default=None, help=argparse.SUPPRESS)
    common.set_defaults(format="text")

    parser = _Parser(prog="rampoly", description="Hilbert class polynomials and Ramanujan t_n polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn, helptext in (
        ("classgroup", cmd_classgroup, "reduced forms, class number and group structure"),
        ("hilbert", cmd_hilbert, "the Hilbert class polynomial H_n"),
        ("ramanujan", cmd_ramanujan, "the minimal polynomial P_n of t_n"),
        ("disc", cmd_disc, "both discriminants, factored, with quotient and index"),
        ("verify", cmd_verify, "full verification report for n"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("n", type=_n_arg)
        p.set_defaults(func=fn)
    p = sub.add_parser("table", parents=[common], help="sweep n ≡ 11 (mod 24) over a range")
    p.add_argument("--from", dest="from_", type=int, default=11)
    p.add_argument("--to", type=int, default=995)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.out = out if out is not None else sys.stdout
    try:
        if hasattr(args, "n"):
            check_n(args.n)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except (UnsupportedDiscriminantError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VerificationFailure, TheoremViolation, TableMismatch) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (NeedsMorePrecisionError, PrecisionExhaustedError) as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except RampolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
