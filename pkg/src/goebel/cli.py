"""Command-line interface.

Subcommands: seq, modseq, nk, verify, nset, oeis-check.
Exit codes: 0 success, 1 verification/mismatch failure, 2 usage/domain/parse
error.
"""

import argparse
import sys
import time

from .engine import (
    DEFAULT_HARD_CAP,
    compute_nk,
    n_set_scan,
    nk_table,
    verify_main_theorem,
)
from .errors import DomainError, GoebelError, PrecisionExhausted, VerificationFailed
from .exact import DigitBudget, exact_sequence, format_term
from .oeis import ParseError, check_entries, load_bfile
from .records import make_record
from .tracked import FAILURE, SequenceConfig, run


def _parse_k_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo < 2 or hi < lo:
        raise ValueError(f"bad k range {text!r}")
    return lo, hi


def _k_range(text: str) -> tuple[int, int]:
    try:
        return _parse_k_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _emit(record, args, text_lines):
    if args.format == "json":
        print(record.to_json())
    elif args.format == "csv":
        sys.stdout.write(record.to_csv())
    else:
        for line in text_lines:
            print(line)


def cmd_seq(args) -> int:
    started = time.perf_counter()
    result = exact_sequence(
        args.k, args.n_max, init=args.init, budget=DigitBudget(args.digit_budget)
    )
    rows = [
        {"index": t.n, "value": format_term(t.value)} for t in result.terms
    ]
    record = make_record(
        "seq",
        {
            "k": args.k,
            "n_max": args.n_max,
            "init": args.init,
            "digit_budget": args.digit_budget,
        },
        rows,
        wall_time_s=time.perf_counter() - started,
    )
    _emit(record, args, [" ".join(row["value"] for row in rows)] if rows else [])
    if result.truncated_at is not None:
        print(
            f"digit budget {args.digit_budget} exceeded at n={result.truncated_at}; "
            f"printed terms up to n={rows[-1]['index'] if rows else 'none'}",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_modseq(args) -> int:
    started = time.perf_counter()
    cfg = SequenceConfig(k=args.k, p=args.p, r=args.r, init=args.init)
    n_max = args.n_max if args.n_max is not None else cfg.max_index()
    trace = run(cfg, n_max, keep_trace=True)
    rows = [
        {"index": n, "value": "F" if state is FAILURE else repr(state)}
        for n, state in trace.rows()
    ]
    record = make_record(
        "modseq",
        {"k": args.k, "p": args.p, "r": args.r, "n_max": n_max, "init": args.init},
        rows,
        wall_time_s=time.perf_counter() - started,
    )
    _emit(record, args, [f"{row['index']} {row['value']}" for row in rows])
    return 0


def _nk_row(res) -> dict:
    if res.found:
        row = {"index": res.k, "value": str(res.nk)}
        if res.certificate is not None:
            row["p"] = res.certificate.p
            row["n"] = res.certificate.n
        return row
    return {"index": res.k, "value": f">{res.searched_to}"}


def cmd_nk(args) -> int:
    started = time.perf_counter()
    k_from, k_to = args.k
    results = nk_table(
        k_from, k_to, init=args.init, hard_cap=args.hard_cap, jobs=args.jobs
    )
    rows = [_nk_row(res) for res in results]
    certificates = [
        {"k": res.k, **res.certificate.to_dict()}
        for res in results
        if res.certificate is not None
    ]
    record = make_record(
        "nk",
        {
            "k_from": k_from,
            "k_to": k_to,
            "init": args.init,
            "hard_cap": args.hard_cap,
            "jobs": args.jobs,
        },
        rows,
        certificates=certificates,
        wall_time_s=time.perf_counter() - started,
    )
    _emit(record, args, [" ".join(row["value"] for row in rows)])
    return 0


def cmd_verify(args) -> int:
    report = verify_main_theorem()
    if args.format == "json":
        import json

        print(json.dumps(report.to_dict(), indent=2))
    else:
        for check in report.prime_checks:
            print(
                f"p={check.p}: r={check.r}, k=2..{check.k_max}, "
                f"cases={check.cases}, failures={check.failures}"
            )
        failing = ",".join(str(k) for k in report.failing_k)
        print(f"p=19: r=1, k=2..19, F exactly at k={failing}")
        classes = ",".join(str(c) for c in report.classes)
        verdict = "CONFIRMED" if report.confirmed else "NOT CONFIRMED"
        print(
            f"min N_k = {report.min_nk}; N_k = {report.min_nk} iff "
            f"k ≡ {classes} (mod {report.modulus}): {verdict}"
        )
    return 0 if report.confirmed else 1


def cmd_nset(args) -> int:
    started = time.perf_counter()
    summary = n_set_scan(args.k_to, hard_cap=args.hard_cap, jobs=args.jobs)
    if args.format == "json":
        import json

        payload = summary.to_dict()
        payload["wall_time_s"] = time.perf_counter() - started
        print(json.dumps(payload, indent=2))
    else:
        for entry in summary.entries:
            kind = "prime" if entry.value_is_prime else "composite"
            print(f"{entry.value} k={entry.smallest_k} {kind}")
        if summary.exceeded:
            ks = ",".join(str(k) for k in summary.exceeded)
            print(f"exceeded cap {summary.hard_cap} for k: {ks}")
    return 0


def cmd_oeis_check(args) -> int:
    entries = load_bfile(args.bfile)
    report = check_entries(
        entries, args.k_to, offset=args.offset, hard_cap=args.hard_cap, jobs=args.jobs
    )
    if args.format == "json":
        import json

        print(json.dumps(report.to_dict(), indent=2))
    else:
        mismatched = {m.k: m for m in report.mismatches}
        for k in report.checked:
            if k in mismatched:
                m = mismatched[k]
                print(f"k={k}: computed {m.computed}, b-file lists {m.listed} MISMATCH")
            else:
                print(f"k={k}: ok")
        print(
            f"checked {len(report.checked)} entries, "
            f"{len(report.checked) - len(report.mismatches)} matches, "
            f"{len(report.mismatches)} mismatches"
        )
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goebel",
        description="Exact and tracked-precision k-Goebel sequence computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("seq", help="exact terms of the sequence")
    p_seq.add_argument("--k", type=int, required=True)
    p_seq.add_argument("--n-max", type=int, required=True)
    p_seq.add_argument("--init", type=_positive, default=2)
    p_seq.add_argument("--digit-budget", type=_positive, default=1_000_000)
    p_seq.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_seq.set_defaults(func=cmd_seq)

    p_mod = sub.add_parser("modseq", help="tracked residues modulo p^r")
    p_mod.add_argument("--k", type=int, required=True)
    p_mod.add_argument("--p", type=int, required=True)
    p_mod.add_argument("--r", type=int, required=True)
    p_mod.add_argument("--n-max", type=int, default=None)
    p_mod.add_argument("--init", type=_positive, default=2)
    p_mod.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_mod.set_defaults(func=cmd_modseq)

    p_nk = sub.add_parser("nk", help="first non-integer index, with certificate")
    p_nk.add_argument("--k", type=_k_range, required=True, metavar="K[..K2]")
    p_nk.add_argument("--init", type=_positive, default=2)
    p_nk.add_argument("--hard-cap", type=_positive, default=DEFAULT_HARD_CAP)
    p_nk.add_argument("--jobs", type=_positive, default=1)
    p_nk.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_nk.set_defaults(func=cmd_nk)

    p_ver = sub.add_parser("verify", help="run the finite minimum-index verification")
    p_ver.add_argument("--format", choices=("text", "json"), default="text")
    p_ver.add_argument(
        "--json", dest="format", action="store_const", const="json",
        help="shorthand for --format json",
    )
    p_ver.set_defaults(func=cmd_verify)

    p_nset = sub.add_parser("nset", help="distinct first-non-integer values")
    p_nset.add_argument("--k-to", type=_positive, required=True)
    p_nset.add_argument("--hard-cap", type=_positive, default=DEFAULT_HARD_CAP)
    p_nset.add_argument("--jobs", type=_positive, default=1)
    p_nset.add_argument("--format", choices=("text", "json"), default="text")
    p_nset.set_defaults(func=cmd_nset)

    p_oeis = sub.add_parser("oeis-check", help="cross-check against an OEIS b-file")
    p_oeis.add_argument("bfile", help="path to a b-file (e.g. b108394.txt)")
    p_oeis.add_argument("--k-to", type=_positive, required=True)
    p_oeis.add_argument(
        "--offset", type=int, default=0, help="k = file index + offset (default 0)"
    )
    p_oeis.add_argument("--hard-cap", type=_positive, default=DEFAULT_HARD_CAP)
    p_oeis.add_argument("--jobs", type=_positive, default=1)
    p_oeis.add_argument("--format", choices=("text", "json"), default="text")
    p_oeis.set_defaults(func=cmd_oeis_check)

    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # terms legitimately reach millions of digits
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PrecisionExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GoebelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
