"""
Command line entry point: ``qdotsim <subcommand> [options]``.
"""

import argparse
import logging
import os
import sys

from typing import Any, Dict, List, Optional

from load import (
    ConfigError,
    ConfigFromPath,
    ConfigFromProfile,
    ExperimentConfig,
    InvalidPathError,
    InvalidProfileError,
    Profiles,
    StepGrid,
)
from metrics import InfeasibleTargetError
from network import CalibrationError

from . import __version__
from .commands import COMMANDS
from .result_table import ResultTable

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SOLVER = 2
EXIT_IO = 3

# Largest tolerated share of rows flagged as not converged
MAX_FLAGGED_FRACTION = 0.10
THREADS_ENV = "QDOTSIM_THREADS"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdotsim",
        description="Gate-based RF readout of a double quantum dot: figure tables.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--config", help="Path of a JSON configuration document.")
    source.add_argument(
        "--profile",
        default="table-i",
        choices=Profiles().names,
        help="Shipped configuration profile (default: table-i).",
    )
    common.add_argument("--out", required=True, help="Output path of the table.")
    common.add_argument("--format", choices=["csv", "doc"], default="csv")
    common.add_argument("--threads", type=int, default=None, help=f"Worker threads (fallback: ${THREADS_ENV}).")
    common.add_argument("--power-dbm", default=None, metavar="A:B:STEP", help="Override the power grid in dBm.")
    common.add_argument("--tn-kelvin", type=float, default=None, help="Override the system noise temperature in K.")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    common.add_argument("--quiet", action="store_true", help="Hide progress bars and INFO messages.")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command in COMMANDS.items():
        summary = (command.__doc__ or "").strip().splitlines()[0]
        subparsers.add_parser(name, parents=[common], help=summary, description=summary)

    render = subparsers.add_parser("render", help="Draw a written CSV table with matplotlib.")
    render.add_argument("--input", required=True, help="CSV table written by a figure command.")
    render.add_argument("--out", required=True, help="Image path (format from the suffix).")
    render.add_argument("--verbose", action="store_true")
    render.add_argument("--quiet", action="store_true")
    return parser


def resolve_threads(value: Optional[int]) -> int:
    """
    Thread count from the option, else the environment, else 1.
    """
    if value is None:
        text = os.environ.get(THREADS_ENV, "").strip()
        if not text:
            return 1
        try:
            value = int(text)
        except ValueError as e:
            raise ConfigError(THREADS_ENV, f"expected an integer, got {text!r}") from e
    if value < 1:
        raise ConfigError("threads", f"expected at least one thread, got {value}")
    return value


def build_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if args.power_dbm is not None:
        grid = StepGrid.from_text(args.power_dbm, "sweep.power_dbm")
        overrides["sweep"] = {"power_dbm": grid.to_dict()}
    if args.tn_kelvin is not None:
        if not args.tn_kelvin > 0:
            raise ConfigError("noise.t_n_k", f"expected a positive temperature, got {args.tn_kelvin}")
        overrides["noise"] = {"t_n_k": args.tn_kelvin}
    return overrides


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    overrides = build_overrides(args)
    if args.config is not None:
        return ConfigFromPath(args.config, overrides).get_config()
    return ConfigFromProfile(args.profile, overrides).get_config()


def configure_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def run_render(args: argparse.Namespace) -> int:
    # matplotlib is only needed here
    from plot import FigurePlotter

    FigurePlotter(ResultTable.read_csv(args.input)).save(args.out)
    return EXIT_OK


def run_command(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    threads = resolve_threads(args.threads)
    table = COMMANDS[args.command](cfg, threads=threads, progress=not args.quiet)
    table.write(args.out, args.format)
    logger.info(f"Wrote {len(table)} rows of '{table.name}' to {args.out}")

    flagged = table.flagged_fraction
    if flagged > MAX_FLAGGED_FRACTION:
        logger.error(f"{flagged:.1%} of the rows of '{table.name}' did not converge.")
        return EXIT_SOLVER
    if flagged > 0:
        logger.warning(f"{flagged:.1%} of the rows of '{table.name}' did not converge.")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and map failures onto exit codes.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        if args.command == "render":
            return run_render(args)
        return run_command(args)
    except (InvalidPathError, OSError) as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except (
        ConfigError,
        InvalidProfileError,
        CalibrationError,
        InfeasibleTargetError,
        ValueError,
    ) as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
