"""Command line entry point: c13tamagawa {curve,sweep,verify-parity,unique-v13-2,search-v13-4,selftest}."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .exactnum import factor_budget_from_env, parse_rational, rational_str
from .family import DegenerateParameterError, RationalPointError, build
from .localred import tamagawa
from .survey import (
    RunConfig,
    compute_record,
    read_records,
    search_v13_4,
    selftest,
    sweep,
    verify_parity,
    verify_unique_v13_2,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="c13tamagawa",
        description="Tamagawa numbers of elliptic curves with a point of order 13 over quadratic fields.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument(
        "--factor-budget", type=int, default=None,
        help="rho iterations per factorization (default: $C13_FACTOR_BUDGET or 200000)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", help="local reduction data and c_E for a single t")
    p.add_argument("--t", required=True, type=_rational, help="parameter as r/q")
    p.add_argument("--json", action="store_true", help="print the survey record as JSON")

    p = sub.add_parser("sweep", help="all t up to a height bound, written as JSONL")
    p.add_argument("--max-height", required=True, type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="sweep.jsonl")
    p.add_argument("--resume", action="store_true", help="reuse records already in --out")
    p.add_argument("--oracle", action="store_true", help="cross-check bad primes against norm(disc)")
    p.add_argument("--timing", action="store_true", help="store per-curve timings (output no longer reproducible)")

    p = sub.add_parser("verify-parity", help="v13(c_E) even and >= 2 for every record")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("unique-v13-2", help="v13(c_E) = 2 only for the curve E_2")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("search-v13-4", help="v13(c_E) along {1, 2^p-1, 2^p}, {1, 2^k, 2^k+1}, {1, 8, 9}")
    p.add_argument("--mersenne", type=_int_list, default=[], help="exponents p, e.g. 2,3,5,7")
    p.add_argument("--fermat", type=_int_list, default=[], help="exponents k, e.g. 1,2,4")
    p.add_argument("--special189", action="store_true", help="include the set {1, 8, 9}")
    p.add_argument("--json", action="store_true")

    sub.add_parser("selftest", help="fast internal consistency checks")
    return parser


def cmd_curve(args) -> int:
    t = args.t
    if args.json:
        print(compute_record(t, factor_budget=args.factor_budget).to_json())
        return EXIT_OK
    try:
        fc = build(t)
    except DegenerateParameterError:
        print(f"t = {rational_str(t)} is degenerate: E_t is singular at the cusps t = 0, 1")
        return EXIT_OK
    except RationalPointError:
        print(f"t = {rational_str(t)}: D(t) is a rational square, so E_t is not over a quadratic field")
        return EXIT_OK
    g = tamagawa(fc)
    print(f"t = {rational_str(t)}")
    print(f"K = Q(sqrt({fc.d})), discriminant {fc.field.disc}")
    print(f"s = {fc.s}")
    print(f"model: {fc.model}")
    print(f"j = {rational_str(fc.model.j.x)}")
    print(f"{'prime':>8} {'kind':>8} {'type':>8} {'v(D)':>6} {'red':>9} {'c':>5}")
    for ld in g.locals:
        print(
            f"{ld.prime.label:>8} {ld.prime.kind.value:>8} {ld.kodaira:>8} "
            f"{ld.v_delta_min:>6} {ld.reduction.value:>9} {ld.c:>5}"
        )
    print(f"c_E = {g.c_E}, v13(c_E) = {g.v13}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = RunConfig(
        max_height=args.max_height,
        jobs=args.jobs,
        out_path=args.out,
        resume=args.resume,
        factor_budget=args.factor_budget,
        oracle_mode=args.oracle,
        record_timing=args.timing,
    )
    result = sweep(cfg)
    errors = [r for r in result.records if r.flags.startswith("error")]
    print(f"{len(result.records)} records in {cfg.out_path} ({result.computed} computed, {result.reused} reused)")
    for r in errors:
        print(f"  t = {r.t}: {r.flags}")
    return EXIT_FAIL if errors else EXIT_OK


def cmd_parity(args) -> int:
    report = verify_parity(read_records(args.infile))
    for line in report.violations:
        print(line)
    print(f"parity: {report.checked} records, {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_unique(args) -> int:
    report = verify_unique_v13_2(read_records(args.infile))
    for v13, ts in report.buckets.items():
        print(f"v13 = {v13}: {len(ts)} curves")
    print(f"v13 = 2 at t in {{{', '.join(report.v13_two)}}}")
    for line in report.violations:
        print(line)
    print(f"uniqueness: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_search(args) -> int:
    if not (args.mersenne or args.fermat or args.special189):
        print("nothing to search: give --mersenne, --fermat or --special189", file=sys.stderr)
        return EXIT_USAGE
    rows = search_v13_4(args.mersenne, args.fermat, args.special189, args.factor_budget)
    if args.json:
        for row in rows:
            print(json.dumps(row.as_dict(), sort_keys=True))
    else:
        for row in rows:
            print(f"{row.family:<16} t = {row.t:<12} v13 = {row.v13}  {row.flag}")
    return EXIT_FAIL if any(r.flag in ("violation", "record-error") for r in rows) else EXIT_OK


def cmd_selftest(args) -> int:
    checks = selftest()
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail and not c.passed else ""))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


COMMANDS = {
    "curve": cmd_curve,
    "sweep": cmd_sweep,
    "verify-parity": cmd_parity,
    "unique-v13-2": cmd_unique,
    "search-v13-4": cmd_search,
    "selftest": cmd_selftest,
}


def _join_negative_t(argv: list[str]) -> list[str]:
    # argparse reads "--t -1/2" as a missing value followed by an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--t" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--t={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_t(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.factor_budget is None:
        args.factor_budget = factor_budget_from_env()
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
