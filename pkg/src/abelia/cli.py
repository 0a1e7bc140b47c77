"""``abelia`` command-line front end.

Every command writes records through one :class:`RecordWriter`, as JSON
lines by default or CSV with ``--format csv``.  Rationals are rendered
exactly (``"-20/7"``); reals carry a fixed number of significant digits.

Exit codes: 0 success, 1 verification mismatch, 2 bad arguments or a
memory budget that would be exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import IO, Sequence

from . import __version__
from .acceptance import SUITES, TOLERANCE_PROFILES, run_suite
from .arith import DEFAULT_MEMORY_BUDGET, MemoryBudgetError, snapped_floor
from .constants import DEFAULT_CUTOFF, C_and_D
from .counting import (
    c3_count_for_a,
    reducible_asymptotic,
    reducible_census,
    stabilized_point_count,
)
from .cubic import TraceOneCubic
from .cyclo import (
    CycloElement,
    elements_of,
    format_fraction,
    quadratic_of,
    rows_at_height,
)
from .dirichlet import (
    default_cache_path,
    iter_coefficient_blocks,
    load_table,
    main_term,
    save_table,
    sieve_coefficients,
    streaming_partial_sums,
)
from .enumeration import count_c3_root_height, fast_c3_count_toric

log = logging.getLogger("abelia")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
REAL_DIGITS = 15

# flags whose value may legitimately start with "-"
_SIGNED_FLAGS = ("--cubic", "--element", "--per-a", "--heights")


class UsageError(Exception):
    pass


def real(x: float, digits: int = REAL_DIGITS) -> float:
    return float(f"{float(x):.{digits}g}")


class RecordWriter:
    """Serializes records to one stream in a fixed order."""

    def __init__(self, fmt: str, stream: IO[str]) -> None:
        self.fmt = fmt
        self.stream = stream
        self._csv: csv.DictWriter | None = None

    def write(self, record: dict) -> None:
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(record, separators=(", ", ": ")) + "\n")
            return
        if self._csv is None:
            self._csv = csv.DictWriter(self.stream, fieldnames=list(record), lineterminator="\n")
            self._csv.writeheader()
        flat = {
            k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in record.items()
        }
        self._csv.writerow(flat)


def parse_height(text: str) -> float:
    """``"10"``, ``"2.5"`` or ``"sqrt(7)"``."""
    text = text.strip()
    m = re.fullmatch(r"sqrt\((\d+)\)", text)
    try:
        if m:
            value: float = math.sqrt(int(m.group(1)))
        elif re.fullmatch(r"\d+", text):
            value = int(text)
        else:
            value = float(text)
    except ValueError:
        raise UsageError(f"bad height {text!r}") from None
    if not value >= 1:
        raise UsageError(f"height must be >= 1, got {text!r}")
    return value


def _pair(text: str, name: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"{name} expects two comma-separated values, got {text!r}")
    try:
        return Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{name}: cannot parse {text!r} as rationals") from None


def _int_list(text: str, name: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{name} expects comma-separated integers, got {text!r}") from None


def _height_squared(H: float) -> int:
    return H * H if isinstance(H, int) else snapped_floor(H * H)


# commands -----------------------------------------------------------------


def cmd_coeffs(args, out: RecordWriter) -> int:
    N = args.limit
    if N < 1:
        raise UsageError("--limit must be >= 1")
    cache = Path(args.cache) if args.cache else default_cache_path(N)
    if cache is not None:
        table = None
        if cache.exists():
            table = load_table(cache)
            if table.limit < N:
                log.info("cache %s covers only %d, recomputing", cache, table.limit)
                table = None
        if table is None:
            table = sieve_coefficients(N, workers=args.threads, budget=args.memory_budget)
            cache.parent.mkdir(parents=True, exist_ok=True)
            save_table(table, cache)
        for n in range(1, N + 1):
            out.write({"n": n, "d": int(table.values[n])})
        return EXIT_OK
    for lo, block in iter_coefficient_blocks(N, workers=args.threads):
        for i, d in enumerate(block.tolist()):
            if lo + i >= 1:
                out.write({"n": lo + i, "d": d})
    return EXIT_OK


def cmd_sum(args, out: RecordWriter) -> int:
    X = args.limit
    if X < 2:
        raise UsageError("--limit must be >= 2")
    S = streaming_partial_sums([X], workers=args.threads)[X]
    rep = C_and_D(args.prime_cutoff)
    c2, c1 = float(rep.c2.value), float(rep.c1.value)
    lead = c2 / 4 * X * math.log(X)
    out.write({
        "X": X,
        "partial_sum": S,
        "main_term_standard": real(main_term(X, c2, c1, "standard")),
        "main_term_printed": real(main_term(X, c2, c1, "printed")),
        "leading_ratio": real(S / lead),
        "second_order_R": real((S - lead) / X),
        "candidate_c1_half_minus_c2_quarter": real(c1 / 2 - c2 / 4),
        "candidate_c1_half": real(c1 / 2),
    })
    return EXIT_OK


def cmd_count(args, out: RecordWriter) -> int:
    if args.per_a is not None:
        a = int(args.per_a)
        if a > 0:
            raise UsageError("--per-a needs a <= 0 (no cyclic cubic has a > 0)")
        out.write({"a": a, "c3_count": c3_count_for_a(a)})
    elif args.toric is not None:
        H = parse_height(args.toric)
        h2 = _height_squared(H)
        table = sieve_coefficients(h2, workers=args.threads, budget=args.memory_budget)
        census = reducible_census(H)
        out.write({
            "toric_height": args.toric,
            "height_squared": h2,
            "c3_count": fast_c3_count_toric(H, table, census),
            "partial_sum": table.partial_sum(h2),
            "count_disc_zero": census.count_disc_zero,
            "count_disc_nonzero": census.count_disc_nonzero,
        })
    else:
        H = parse_height(args.root_height)
        out.write({"root_height": args.root_height,
                   "c3_count": count_c3_root_height(H, workers=args.threads)})
    return EXIT_OK


def cmd_constants(args, out: RecordWriter) -> int:
    out.write(C_and_D(args.prime_cutoff).to_dict())
    return EXIT_OK


def cmd_reducible(args, out: RecordWriter) -> int:
    H = parse_height(args.height)
    c = reducible_census(H)
    out.write({
        "height": args.height,
        "count_disc_zero": c.count_disc_zero,
        "count_disc_nonzero": c.count_disc_nonzero,
        "total": c.total,
        "stabilized_points": stabilized_point_count(H),
        "asymptotic_disc_nonzero": real(reducible_asymptotic(H)),
    })
    return EXIT_OK


def cmd_param(args, out: RecordWriter) -> int:
    if args.cubic is not None:
        a, b = _pair(args.cubic, "--cubic")
        if a.denominator != 1 or b.denominator != 1:
            raise UsageError("--cubic expects integers a,b")
        f = TraceOneCubic(int(a), int(b))
        g = quadratic_of(f.a, f.b)
        record = {
            "a": f.a,
            "b": f.b,
            "f": str(f),
            "class": f.classify().value,
            "in_family": f.in_family(),
            "g": str(g),
            "trace": format_fraction(g.trace),
            "norm": format_fraction(g.norm),
            "disc_g": format_fraction(g.discriminant),
            "elements": [],
        }
        if f.in_family():
            record["weight"] = f.weight()
            record["elements"] = [
                [format_fraction(e.u), format_fraction(e.v)] for e in elements_of(f)
            ]
        out.write(record)
    else:
        u, v = _pair(args.element, "--element")
        if u == 0 and v == 0:
            raise UsageError("--element must be nonzero")
        e = CycloElement(u, v)
        a, b = e.to_cubic()
        out.write({
            "u": format_fraction(u),
            "v": format_fraction(v),
            "norm": format_fraction(e.norm),
            "trace": format_fraction(e.trace),
            "a": format_fraction(a),
            "b": format_fraction(b),
            "integral": e.is_integral_image(),
        })
    return EXIT_OK


def cmd_table(args, out: RecordWriter) -> int:
    for n in _int_list(args.heights, "--heights"):
        if n < 1:
            raise UsageError(f"--heights entries must be >= 1, got {n}")
        for row in rows_at_height(n):
            out.write(row.as_dict())
    return EXIT_OK


def cmd_verify(args, out: RecordWriter) -> int:
    results = run_suite(args.suite, args.tolerance_profile, args.threads)
    first = None
    for r in results:
        out.write(r.as_dict())
        print(r.line(), file=sys.stderr)
        if not r.passed and first is None:
            first = r
    if first is None:
        return EXIT_OK
    out.write({"first_counterexample": {"criterion": first.key,
                                        **(first.counterexample or {})}})
    return EXIT_MISMATCH


# parser -------------------------------------------------------------------


def _common(default: bool) -> argparse.ArgumentParser:
    # subcommands take the same flags; SUPPRESS keeps a value set before the
    # subcommand name from being overwritten by the subparser default
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if default else (lambda v: argparse.SUPPRESS)
    p.add_argument("--threads", type=int, default=d(1), help="worker threads")
    p.add_argument("--format", choices=("jsonl", "csv"), default=d("jsonl"))
    p.add_argument("--cache", default=d(None), metavar="PATH",
                   help="coefficient table cache file")
    p.add_argument("--prime-cutoff", type=int, default=d(DEFAULT_CUTOFF))
    p.add_argument("--tolerance-profile", choices=sorted(TOLERANCE_PROFILES),
                   default=d("default"))
    p.add_argument("--memory-budget", type=int, default=d(DEFAULT_MEMORY_BUDGET),
                   metavar="BYTES", help="largest in-memory table allowed")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelia", description="Counting abelian trace-one cubics by height.",
        parents=[_common(True)],
    )
    parser.add_argument("--version", action="version", version=f"abelia {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("coeffs", parents=[common], help="Dirichlet coefficients d_1..d_N")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("sum", parents=[common], help="partial sum against the main terms")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("count", parents=[common], help="cyclic cubic counts")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--per-a", type=int)
    g.add_argument("--toric", metavar="H")
    g.add_argument("--root-height", metavar="H")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("constants", parents=[common], help="leading constants report")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("reducible", parents=[common], help="reducible census")
    p.add_argument("--height", required=True, metavar="H")
    p.set_defaults(func=cmd_reducible)

    p = sub.add_parser("param", parents=[common], help="cubic <-> element correspondence")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cubic", metavar="A,B")
    g.add_argument("--element", metavar="U,V")
    p.set_defaults(func=cmd_param)

    p = sub.add_parser("table", parents=[common], help="correspondence table rows")
    p.add_argument("--heights", required=True, metavar="N1,N2,...")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def _join_signed(argv: Sequence[str]) -> list[str]:
    # "--cubic -2,1" would otherwise read "-2,1" as an option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _SIGNED_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None, stdout: IO[str] | None = None) -> int:
    argv = _join_signed(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("abelia: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    out = RecordWriter(args.format, stdout or sys.stdout)
    try:
        return args.func(args, out)
    except (UsageError, ValueError, MemoryBudgetError) as exc:
        print(f"abelia: {exc}", file=sys.stderr)
        return EXIT_USAGE
