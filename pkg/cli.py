#!/usr/bin/env python3
"""Command-line front end.

    python cli.py disc --family exp --t 3 --n 5
    python cli.py disc --family squares --n-max 10 --format tsv
    python cli.py verify theorem --t 3,5,7 --a 1,3 --c 0..4 --n-max 64
    python cli.py witness --t 3 --k 2 --m 6
    python cli.py scan --family linear --a 5 --b 7 --shifts 0..16 --n-max 128

Records go to stdout (JSONL or TSV), logs to stderr. Exit codes: 0 success,
1 verification failure, 2 usage or parameter error. No environment variables
are read; everything is a flag.

A grid value that starts with a minus sign must be attached with "=", as in
`--a=-3,1` or `--shifts=-1..2`; argparse otherwise reads it as a flag.
"""
import argparse
import logging
import sys
from typing import Any, Dict, Iterable, List, Optional

from discriminators.engine import discriminator_profile, window_discriminator
from discriminators.exact import closed_form_discriminator, collision_witness
from discriminators.families import FAMILIES, SequenceHandle, make_sequence
from discriminators.scan import scan_shifts
from discriminators.verification import DEFAULT_MAX_CHECKS, TARGETS, build_grid, run_suite
from utils.common import configure_logging, to_jsonl, to_tsv
from utils.errors import DomainError, UsageError
from utils.ranges import parse_int_grid

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# --- shared flags ------------------------------------------------------------
def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--t", type=int, help="exp: odd base, |t| >= 3")
    p.add_argument("--a", type=int, help="exp: odd multiplier; linear: slope")
    p.add_argument("--b", type=int, help="linear: intercept (exp derives b from t)")
    p.add_argument("--k", type=int, help="quadratic: power of two exponent, >= 1")
    p.add_argument("--c1", type=int, help="quadratic: odd coefficient c'")
    p.add_argument("--b1", type=int, help="quadratic: odd coefficient b'")
    p.add_argument("--scale", type=int, help="multiply every term by this nonzero integer")


def _family_params(args: argparse.Namespace) -> Dict[str, Any]:
    names = ("t", "a", "b", "k", "c1", "b1")
    return {n: getattr(args, n) for n in names if getattr(args, n) is not None}


def _build_handle(args: argparse.Namespace, c: int = 0) -> SequenceHandle:
    return make_sequence(args.family, c=c, scale=args.scale, **_family_params(args))


def _emit(lines: Iterable[str]) -> None:
    for line in lines:
        sys.stdout.write(line + "\n")
    sys.stdout.flush()


# --- commands ----------------------------------------------------------------
def cmd_disc(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.n_max is None):
        raise UsageError("give exactly one of --n or --n-max")
    if (args.n if args.n is not None else args.n_max) < 1:
        raise UsageError("n must be >= 1")
    if args.mode == "closed":
        even_scale = args.scale is not None and args.scale % 2 == 0
        if args.family != "exp" or even_scale:
            raise UsageError("closed mode is only valid for the exp family")
        if args.shift_window:
            raise UsageError("closed mode has no --shift-window")
    if args.c < 0 or args.shift_window < 0:
        raise UsageError("--c and --shift-window must be >= 0")

    handle = _build_handle(args, c=args.c)
    ns = [args.n] if args.n is not None else list(range(1, args.n_max + 1))

    if args.mode == "closed":
        pairs = [(n, closed_form_discriminator(n), None) for n in ns]
    elif args.n is not None:
        r = window_discriminator(handle, args.shift_window, args.n)
        pairs = [(r.n, r.d, r.failure_pair)]
    else:
        pairs = [(r.n, r.d, r.failure_pair) for r in discriminator_profile(handle, args.n_max, start=args.shift_window)]

    if args.format == "tsv":
        _emit([to_tsv(("n", "d"))] + [to_tsv((n, d)) for n, d, _ in pairs])
        return EXIT_OK

    base = handle.describe()
    lines = []
    for n, d, failure in pairs:
        record: Dict[str, Any] = {**base, "n": n, "d": d}
        if args.shift_window:
            record["start"] = args.shift_window
        if args.show_failures and failure is not None:
            record["failure_pair"] = list(failure)
        if args.show_terms:
            record["terms"] = [str(handle.term(args.shift_window + i)) for i in range(n)]
        lines.append(to_jsonl(record))
    _emit(lines)
    return EXIT_OK


_GRID_FLAGS = ("t", "a", "c", "scales", "linear_a", "linear_b")
_INT_FLAGS = ("n_max", "k_max", "start_max", "m_limit")


def cmd_verify(args: argparse.Namespace) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    overrides: Dict[str, Any] = {}
    for name in _GRID_FLAGS:
        raw = getattr(args, name)
        if raw is not None:
            overrides[name] = parse_int_grid(raw)
    for name in _INT_FLAGS:
        value = getattr(args, name)
        if value is not None:
            if value < 0 or (name in ("n_max", "m_limit") and value < 1):
                raise UsageError(f"--{name.replace('_', '-')} out of range: {value}")
            overrides[name] = value

    grid = build_grid(args.target, overrides)
    report = run_suite(
        args.target,
        grid,
        max_checks=args.max_checks,
        workers=args.workers,
        progress=args.progress,
    )
    _emit([report.model_dump_json()])
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_witness(args: argparse.Namespace) -> int:
    try:
        w = collision_witness(args.t, args.k, args.m)
    except DomainError as e:
        raise UsageError(str(e))
    _emit([to_jsonl(w.model_dump())])
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    shifts = parse_int_grid(args.shifts)
    if shifts[0] < 0:
        raise UsageError("shifts must be >= 0")
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    checks = len(shifts) * args.n_max
    if checks > args.max_checks:
        raise UsageError(f"scan has {checks} profile entries, above the cap of {args.max_checks}")
    report = scan_shifts(_build_handle(args), shifts, args.n_max)
    _emit([report.model_dump_json(exclude_none=True)])
    if args.expect_invariant and not report.invariant:
        return EXIT_FAILED
    return EXIT_OK


# --- parser ------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cli.py",
        description="Discriminators of integer sequences: brute force, closed form, witnesses.",
    )
    p.add_argument("--log-level", default="WARNING", help="DEBUG, INFO, WARNING, ...")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("disc", help="compute D(n) or a profile D(1..n_max)")
    _add_family_flags(d)
    d.add_argument("--c", type=int, default=0, help="shift c >= 0")
    d.add_argument("--n", type=int)
    d.add_argument("--n-max", type=int)
    d.add_argument("--mode", choices=("brute", "closed"), default="brute")
    d.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    d.add_argument("--shift-window", type=int, default=0, metavar="START",
                   help="discriminate s(START..START+n-1) instead of the prefix")
    d.add_argument("--show-terms", action="store_true", help="add exact terms as decimal strings")
    d.add_argument("--show-failures", action="store_true", help="add the colliding pair for d - 1")
    d.set_defaults(func=cmd_disc)

    v = sub.add_parser("verify", help="check a result over a parameter grid")
    v.add_argument("target", choices=TARGETS)
    v.add_argument("--t", help="e.g. 3,5,7 or 3..17")
    v.add_argument("--a", help="e.g. 1,3,5; write --a=-3,1 when the first value is negative")
    v.add_argument("--c")
    v.add_argument("--scales", help="lemma7 scale factors, e.g. -3,3,-5,5,7")
    v.add_argument("--linear-a", help="lemma7 linear base slopes")
    v.add_argument("--linear-b", help="lemma7 linear base intercepts")
    v.add_argument("--n-max", type=int)
    v.add_argument("--k-max", type=int)
    v.add_argument("--start-max", type=int)
    v.add_argument("--m-limit", type=int, help="lemma5 upper bound on m")
    v.add_argument("--max-checks", type=int, default=DEFAULT_MAX_CHECKS)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--progress", action=argparse.BooleanOptionalAction, default=False)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="explicit colliding pair for modulus 2^b * m")
    w.add_argument("--t", type=int, required=True)
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--m", type=int, required=True)
    w.set_defaults(func=cmd_witness)

    s = sub.add_parser("scan", help="compare profiles across shifts")
    _add_family_flags(s)
    s.add_argument("--shifts", default="0..8")
    s.add_argument("--n-max", type=int, default=64)
    s.add_argument("--max-checks", type=int, default=DEFAULT_MAX_CHECKS)
    s.add_argument("--expect-invariant", action="store_true", help="exit 1 when the scan diverges")
    s.set_defaults(func=cmd_scan)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_logging(args.log_level)
        return args.func(args)
    except (UsageError, DomainError) as e:
        logger.debug("[cli] usage error", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
