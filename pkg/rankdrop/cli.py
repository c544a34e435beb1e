"""Rankdrop command line interface."""

import argparse
import json
import logging
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .classifier import classify, classify_p1
from .constants import (
    EXIT_DEFICIENT,
    EXIT_FULL_RANK,
    EXIT_FUZZ_VIOLATION,
    EXIT_NOT_DEFICIENT,
    EXIT_USAGE,
    FUZZ_REGIMES,
    MAX_PAIRS,
    MIN_PAIRS,
)
from .cubic_surface import (
    cubic_form,
    line_x,
    line_y,
    pencil_from_config,
    verify_double_six,
)
from .errors import ConfigFormatError, RankDropError
from .file_format import (
    ConfigFile,
    InvariantsFile,
    dumps,
    load_config,
    report_file,
    surface_file,
)
from .fuzzing import FuzzOptions, run_fuzz
from .invariants import coble_bar, joubert
from .projective import (
    Config,
    PointP2,
    PointPair,
    collinear,
    to_line_points,
)
from .synthesis import completion_y, sixth_pair, sturm_sixth_pair
from .type_map import get_exit_code

log = logging.getLogger(__name__)


def get_version() -> str:
    """Get the program version."""
    return __version__


def _emit(document: object) -> None:
    print(dumps(document))


def _report_error(error: RankDropError) -> int:
    print(
        json.dumps({"error": error.kind, "message": str(error)}),
        file=sys.stderr,
    )
    return get_exit_code(error.kind)


def _require_k(c: Config, *ks: int) -> None:
    if c.k not in ks:
        expected = " or ".join(str(k) for k in ks)
        raise ConfigFormatError(f"expected {expected} pairs, got {c.k}")


def _require_p2(c: Config) -> List[PointP2]:
    if c.dimension != 2:
        raise ConfigFormatError("expected pairs of points in P2")
    return [p for p in c.xs if isinstance(p, PointP2)]


def cmd_check(args: argparse.Namespace) -> int:
    c = load_config(args.input)
    if args.p1 != (c.dimension == 1):
        raise ConfigFormatError(
            "P1 pairs need --p1" if not args.p1 else "--p1 needs P1 pairs"
        )
    start = time.perf_counter()
    if args.p1:
        report = classify_p1(c, lattice=args.verbose)
    else:
        report = classify(c, lattice=args.verbose)
    elapsed = time.perf_counter() - start
    _emit(report_file(report, {"classifySeconds": f"{elapsed:.6f}"}))
    return EXIT_DEFICIENT if report.deficient else EXIT_FULL_RANK


def _synth_sixth(
    c: Config, construct: Callable[[Config], PointPair]
) -> Config:
    _require_p2(c)
    _require_k(c, 5)
    pair = construct(c)
    return Config(c.pairs + (pair,))


def cmd_synth(args: argparse.Namespace) -> int:
    c = load_config(args.input)
    if args.mode == "sixth-pair":
        result = _synth_sixth(c, sixth_pair)
    elif args.mode == "sturm":
        result = _synth_sixth(c, sturm_sixth_pair)
    else:
        xs = _require_p2(c)
        _require_k(c, 6)
        result = Config.from_points(xs, completion_y(xs))
    _emit(ConfigFile.from_config(result))
    if args.verify and not classify(result).deficient:
        log.error("the synthesized configuration has full rank")
        return EXIT_NOT_DEFICIENT
    return EXIT_FULL_RANK


def cmd_surface(args: argparse.Namespace) -> int:
    c = load_config(args.input)
    _require_p2(c)
    _require_k(c, 5, 6)
    pencil = pencil_from_config(c)
    lx = [line_x(pencil, x) for x in c.xs if isinstance(x, PointP2)]
    ly = [line_y(pencil, y) for y in c.ys if isinstance(y, PointP2)]
    verified = verify_double_six(lx, ly)
    _emit(surface_file(pencil, cubic_form(pencil), lx + ly, verified))
    return EXIT_FULL_RANK


def cmd_invariants(args: argparse.Namespace) -> int:
    c = load_config(args.input)
    xs = _require_p2(c)
    _require_k(c, 6)
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    coble_x, coble_y = coble_bar(xs), coble_bar(ys)
    _emit(
        InvariantsFile(
            coble_x=list(coble_x),
            coble_y=list(coble_y),
            joubert_x=(
                list(joubert(to_line_points(xs))) if collinear(xs) else None
            ),
            joubert_y=(
                list(joubert(to_line_points(ys))) if collinear(ys) else None
            ),
            proportional=coble_x.proportional_to(coble_y),
        )
    )
    return EXIT_FULL_RANK


def cmd_fuzz(args: argparse.Namespace) -> int:
    options = FuzzOptions(
        seed=args.seed,
        count=args.count,
        regimes=tuple(args.regime or FUZZ_REGIMES),
        ks=tuple(args.k or range(MIN_PAIRS, MAX_PAIRS + 1)),
        jobs=args.jobs,
    )
    summary = run_fuzz(options)
    _emit(summary)
    return EXIT_FUZZ_VIOLATION if summary.violations else EXIT_FULL_RANK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "check": cmd_check,
    "synth": cmd_synth,
    "surface": cmd_surface,
    "invariants": cmd_invariants,
    "fuzz": cmd_fuzz,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankdrop",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        description="Rankdrop: exact rank deficiency of face-splitting "
        "matrices of point pairs in P2 x P2.",
        epilog="""\
Examples:

    Classify a configuration : rankdrop check pairs.json
    Complete five pairs      : rankdrop synth sixth-pair five.json --verify
    Surface and double six   : rankdrop surface six.json
    Seeded soundness sweep   : rankdrop fuzz --seed 42 --count 100

Exit codes:

    0 full rank or success, 2 invalid input, 3 construction impossible,
    4 not deficient, 10 deficient, 20 fuzz violation
""",
    )
    parser.add_argument(
        "--version",
        help="display version information and exit",
        action="store_true",
    )
    parser.add_argument(
        "--log-file",
        help="redirect logs to file specified",
        type=str,
    )
    parser.add_argument(
        "-v",
        "--verbosity",
        help="increase verbosity of log output",
        action="count",
        default=0,
    )
    parser.add_argument(
        "--format",
        help="output format (default json)",
        choices=["json"],
        default="json",
    )
    commands = parser.add_subparsers(dest="command")

    check = commands.add_parser("check", help="classify a configuration")
    check.add_argument("input", help="configuration file, - for stdin")
    check.add_argument(
        "--p1", help="pairs of points in P1 x P1", action="store_true"
    )
    check.add_argument(
        "--verbose",
        help="list every deficient proper subset",
        action="store_true",
    )

    synth = commands.add_parser("synth", help="synthesize deficient pairs")
    synth.add_argument("mode", choices=["sixth-pair", "completion", "sturm"])
    synth.add_argument("input", help="configuration file, - for stdin")
    synth.add_argument(
        "--verify",
        help="check that the output is rank deficient",
        action="store_true",
    )

    surface = commands.add_parser(
        "surface", help="pencil, cubic form and double six"
    )
    surface.add_argument("input", help="configuration file, - for stdin")

    invariants = commands.add_parser(
        "invariants", help="Coble and Joubert invariants of six pairs"
    )
    invariants.add_argument("input", help="configuration file, - for stdin")

    fuzz = commands.add_parser("fuzz", help="seeded classify-vs-rank sweep")
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument(
        "--count",
        help="configurations per regime and k (default 100)",
        type=int,
        default=100,
    )
    fuzz.add_argument(
        "--regime", action="append", choices=list(FUZZ_REGIMES)
    )
    fuzz.add_argument(
        "--k",
        action="append",
        type=int,
        choices=range(MIN_PAIRS, MAX_PAIRS + 1),
    )
    fuzz.add_argument(
        "--jobs", help="worker processes (default 1)", type=int, default=1
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return the exit code."""
    parser = _parser()
    args = parser.parse_args(argv)
    if args.version:
        print(get_version())
        return EXIT_FULL_RANK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    log_level = {0: logging.WARN, 1: logging.INFO, 2: logging.DEBUG}.get(
        args.verbosity,
        logging.DEBUG,
    )

    if args.log_file:
        logging.basicConfig(
            filename=args.log_file,
            filemode="w",
            level=log_level,
        )
    else:
        logging.basicConfig(stream=sys.stderr, level=log_level)

    try:
        return COMMANDS[args.command](args)
    except RankDropError as error:
        return _report_error(error)
    except ValueError as error:
        print(
            json.dumps({"error": "ValueError", "message": str(error)}),
            file=sys.stderr,
        )
        return EXIT_USAGE


def cli() -> None:
    """Rankdrop cli entrypoint."""
    sys.exit(main())
