"""
Command line front end for fibolattice.

Subcommands:
- enum: one JSON line per element of F_n^p
- count: CSV counts of elements, covers, irreducibles and intervals
- series: coefficients of a closed-form generating function
- check: brute force versus closed form harness with a pass/fail matrix
- hasse: the Hasse diagram as a DOT digraph
- biject: convert JSON records through the Motzkin, Catalan, composition
  and subset bijections

Results go to stdout (or --out), logs to stderr. Exit codes: 0 success,
1 check mismatch, 2 invalid input, 3 size guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import replace
from pathlib import Path
from typing import Any

from fibolattice import __version__
from fibolattice.bijections import (
    SubsetRepr,
    from_catalan_word,
    from_composition,
    from_subset,
    to_catalan_word,
    to_composition,
    to_subset,
)
from fibolattice.check_service import CheckService
from fibolattice.config import AppConfig, CheckConfig, SeriesConfig
from fibolattice.dyckpath import DyckPath, enumerate_family
from fibolattice.errors import InvalidInputError, SizeGuardError
from fibolattice.family import INFINITY, FamilyParam
from fibolattice.generating_functions import GF_CATALOG, series_by_name
from fibolattice.intervals import (
    Interval,
    IntervalKind,
    all_intervals,
    count_by_height,
    count_intervals,
)
from fibolattice.lattice import hasse_edges, join_irreducibles, meet_irreducibles
from fibolattice.logging_config import get_logger, setup_logging
from fibolattice.motzkin import (
    BicoloredMotzkinPath,
    interval_to_motzkin,
    motzkin_to_interval,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3
EXIT_INTERRUPTED = 130

ENUM_FORMATS = ("steps", "catalan", "composition", "subset")
COUNT_KINDS = ("elements", "covers", "meet-irr", "join-irr", "boolean", "linear", "intervals")
BIJECT_TARGETS = ("motzkin", "catalan", "composition", "subset")


# --- argument types ---


def _family_arg(text: str) -> FamilyParam:
    try:
        return FamilyParam.of(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _family_list_arg(text: str) -> tuple[FamilyParam, ...]:
    try:
        return FamilyParam.parse_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _dumps(record: dict[str, Any]) -> str:
    return json.dumps(record, ensure_ascii=False)


def _node(path: DyckPath) -> str:
    return f'"{path.steps or "ε"}"'


# --- subcommands ---


def _enum_record(path: DyckPath, p: FamilyParam, fmt: str) -> dict[str, Any]:
    record: dict[str, Any] = {"n": path.semilength, "p": p.to_json()}
    if fmt == "steps":
        record["steps"] = path.steps
    elif fmt == "catalan":
        record["catalan"] = list(to_catalan_word(path, p).letters)
    elif fmt == "composition":
        record["composition"] = list(to_composition(path, p).parts)
    else:
        record["members"] = to_subset(path, p).sorted_members
    return record


def cmd_enum(args: argparse.Namespace, config: AppConfig) -> Iterator[str]:
    for path in enumerate_family(args.n, args.p, config.guards):
        yield _dumps(_enum_record(path, args.p, args.format))


def _count_histogram(args: argparse.Namespace, config: AppConfig) -> dict[int, int]:
    """Histogram keyed by the --by statistic (key 0 holds the total for --by none)."""
    n, p, guard = args.n, args.p, config.guards
    what, by = args.what, args.by
    if by == "ascent-gap" and what != "intervals":
        raise InvalidInputError("--by ascent-gap only applies to --what intervals")

    if what in ("boolean", "linear"):
        histogram = count_intervals(n, p, IntervalKind(what), guard).histogram
    elif what == "intervals":
        if by == "height":
            histogram = count_by_height(all_intervals(n, p, guard))
        else:
            histogram = count_intervals(n, p, IntervalKind.ALL, guard).histogram
    elif what == "covers":
        histogram = dict(Counter(low.area for low, _ in hasse_edges(n, p, guard)))
    else:
        select = {
            "elements": enumerate_family,
            "meet-irr": meet_irreducibles,
            "join-irr": join_irreducibles,
        }[what]
        histogram = dict(Counter(path.area for path in select(n, p, guard)))

    if by == "none":
        return {0: sum(histogram.values())}
    return dict(sorted(histogram.items()))


def cmd_count(args: argparse.Namespace, config: AppConfig) -> Iterator[str]:
    histogram = _count_histogram(args, config)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if args.by == "none":
        writer.writerow(["n", "p", "kind", "count"])
        writer.writerow([args.n, args.p, args.what, histogram[0]])
    else:
        writer.writerow(["n", "p", "kind", args.by.replace("-", "_"), "count"])
        for key, count in histogram.items():
            writer.writerow([args.n, args.p, args.what, key, count])
    yield from buffer.getvalue().splitlines()


def cmd_series(args: argparse.Namespace, config: AppConfig) -> Iterator[str]:
    series = series_by_name(args.gf, args.p, config.series.order, at_y1=args.at_y1)
    for n, coefficient in enumerate(series):
        # counting coefficients must be integral
        coefficient.to_counts()
        yield f"{n}\t{coefficient.format_sparse()}"


def cmd_hasse(args: argparse.Namespace, config: AppConfig) -> Iterator[str]:
    paths = enumerate_family(args.n, args.p, config.guards)
    yield f'digraph "F_{args.n}^{args.p}" {{'
    for path in sorted(paths, key=DyckPath.sort_key):
        yield f"  {_node(path)} [area={path.area}];"
    for low, high in hasse_edges(args.n, args.p, config.guards):
        yield f"  {_node(low)} -> {_node(high)};"
    yield "}"


def _field(record: dict[str, Any], name: str) -> Any:
    try:
        return record[name]
    except KeyError:
        raise InvalidInputError(f"Record is missing the {name!r} field") from None


def _convert(record: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    p, target, figure = args.p, args.target, args.flat_colors == "figure"
    if args.direction == "to":
        if target == "motzkin":
            interval = Interval.parse(_field(record, "lower"), _field(record, "upper"), p)
            word = interval_to_motzkin(interval)
            return {"motzkin": str(word.swap_flat_colors() if figure else word)}
        path = DyckPath.parse(_field(record, "steps"))
        if target == "catalan":
            return {"catalan": list(to_catalan_word(path, p).letters)}
        if target == "composition":
            return {"composition": list(to_composition(path, p).parts)}
        subset = to_subset(path, p)
        return {"members": subset.sorted_members, "n": subset.n}

    if target == "motzkin":
        word = BicoloredMotzkinPath.parse(_field(record, "motzkin"))
        interval = motzkin_to_interval(word.swap_flat_colors() if figure else word, p)
        return {"lower": interval.lower.steps, "upper": interval.upper.steps}
    if target == "catalan":
        path = from_catalan_word(list(_field(record, "catalan")), p)
    elif target == "composition":
        path = from_composition(list(_field(record, "composition")), p)
    else:
        subset = SubsetRepr(frozenset(_field(record, "members")), int(_field(record, "n")))
        path = from_subset(subset, p)
    return {"steps": path.steps}


def _read_records(source: Iterable[str]) -> Iterator[dict[str, Any]]:
    for number, line in enumerate(source, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"Line {number} is not valid JSON: {e.msg}") from e
        if not isinstance(record, dict):
            raise InvalidInputError(f"Line {number} is not a JSON object")
        yield record


def cmd_biject(args: argparse.Namespace, config: AppConfig) -> Iterator[str]:
    if args.input and args.input != "-":
        with Path(args.input).open(encoding="utf-8") as source:
            lines = source.readlines()
    else:
        lines = sys.stdin.readlines()
    for record in _read_records(lines):
        yield _dumps(_convert(record, args))


def cmd_check(args: argparse.Namespace, config: AppConfig) -> tuple[list[str], int]:
    check = config.check
    check = CheckConfig(
        n_max=check.n_max if args.n_max is None else args.n_max,
        p_values=check.p_values if args.p_list is None else args.p_list,
        workers=check.workers if args.workers is None else args.workers,
        enable_progress_bar=not args.no_progress,
        motzkin_n_max=check.motzkin_n_max,
        mobius_n_max=check.mobius_n_max,
    )
    only = None
    if args.only:
        only = [name.strip() for name in args.only.split(",") if name.strip()]
    report = CheckService(replace(config, check=check), only).run()
    lines = report.render().splitlines()
    return lines, EXIT_OK if report.all_passed else EXIT_MISMATCH


# --- parser ---


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write results to FILE instead of stdout")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="override FIBOLATTICE_LOG_LEVEL",
    )
    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--p", type=_family_arg, default=INFINITY, help="integer >= 2 or inf")
    lattice = argparse.ArgumentParser(add_help=False, parents=[family])
    lattice.add_argument("--n", type=int, required=True, help="semilength")

    parser = argparse.ArgumentParser(
        prog="fibolattice",
        description="Lattices of Dyck paths avoiding DUU and D^(p+1).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    enum = commands.add_parser("enum", parents=[common, lattice], help="enumerate F_n^p")
    enum.add_argument("--format", choices=ENUM_FORMATS, default="steps")

    count = commands.add_parser("count", parents=[common, lattice], help="count structures")
    count.add_argument("--what", choices=COUNT_KINDS, default="elements")
    count.add_argument("--by", choices=("none", "height", "ascent-gap"), default="none")

    series = commands.add_parser("series", parents=[common, family], help="print a generating function")
    series.add_argument("--gf", choices=sorted(GF_CATALOG), default="F")
    series.add_argument("--order", type=int, help="number of coefficients")
    series.add_argument("--at-y1", action="store_true", help="substitute y = 1")

    check = commands.add_parser("check", parents=[common], help="run the check harness")
    check.add_argument("--n-max", type=int)
    check.add_argument("--p-list", "--p", dest="p_list", type=_family_list_arg, help="e.g. 2,3,inf")
    check.add_argument("--workers", type=int)
    check.add_argument("--only", help="comma separated check names")
    check.add_argument("--no-progress", action="store_true")

    commands.add_parser("hasse", parents=[common, lattice], help="Hasse diagram as DOT")

    biject = commands.add_parser("biject", parents=[common, family], help="convert JSON records")
    biject.add_argument("--target", choices=BIJECT_TARGETS, required=True)
    biject.add_argument("--direction", choices=("to", "from"), default="to")
    biject.add_argument("--flat-colors", choices=("text", "figure"), default="text")
    biject.add_argument("--input", help="JSON lines file (default stdin)")
    return parser


COMMANDS = {
    "enum": cmd_enum,
    "count": cmd_count,
    "series": cmd_series,
    "hasse": cmd_hasse,
    "biject": cmd_biject,
}


def _write(lines: Iterable[str], out: str | None) -> int:
    written = 0
    if out:
        with Path(out).open("w", encoding="utf-8") as target:
            for line in lines:
                target.write(line + "\n")
                written += 1
        logger.info("Wrote %d lines to %s", written, out)
    else:
        for line in lines:
            sys.stdout.write(line + "\n")
            written += 1
        sys.stdout.flush()
    return written


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        setup_logging(level=getattr(logging, args.log_level), force_reset=True)

    try:
        config = AppConfig.from_env()
        if getattr(args, "order", None) is not None:
            config = replace(config, series=SeriesConfig(order=args.order))
        if args.command == "check":
            lines, status = cmd_check(args, config)
            _write(lines, args.out)
            return status
        # materialize first so a failure never leaves partial output behind
        lines = list(COMMANDS[args.command](args, config))
        _write(lines, args.out)
        return EXIT_OK
    except SizeGuardError as e:
        logger.debug("Size guard: %s", e)
        print(f"fibolattice: too large: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (InvalidInputError, ValueError, OSError) as e:
        logger.debug("Invalid input: %s", e)
        print(f"fibolattice: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
