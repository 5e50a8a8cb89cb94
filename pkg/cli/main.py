"""
Command-line front end: argument parsing, logging setup, and the one place
where exceptions become exit codes.
"""

import argparse
import logging
from typing import List, Optional

from config import get_config
from utils.errors import BundleFormatError, ExitCode, LocgenError, TheoryError
from utils.log import configure_logging, resolve_level

from .commands import COMMANDS
from .config import RunConfig

logger = logging.getLogger("locgen")

EPILOG = """
Examples:
  # Generate the classifier of the theory of objects over |P| = 2
  python run_toolkit.py classify corpus/objects.gth --p 2

  # List the points of the core groupoid
  python run_toolkit.py points corpus/objects.gth --p 2 --layer core

  # Read one point as a model
  python run_toolkit.py decode corpus/objects.gth --layer objects --point 0

  # Run one seeded suite and keep the JSON report
  python run_toolkit.py verify --suite descent --seed 7 --out out/

  # Summarise a saved report
  python run_toolkit.py report out/report.json

Exit codes: 0 ok, 1 a check failed, 2 parse or usage error, 3 generation error or corrupt bundle.
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locgen",
        description="Generate and check frame presentations of classifying categories",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--config", type=str, help="JSON configuration file (default: $LOCGEN_CONFIG)")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--quiet", action="store_true", help="Log warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    def theory_command(name: str, text: str, theory_required: bool = True) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("theory", nargs=None if theory_required else "?", help="Theory file (.gth)")
        cmd.add_argument("--p", type=int, help="Number of parameters |P|")
        cmd.add_argument("--orientation", type=str.lower, choices=["lh", "ps"], help="Parameter orientation")
        cmd.add_argument("--json", action="store_true", help="Print JSON instead of text")
        return cmd

    classify = theory_command("classify", "Generate a classifier bundle and print layer counts")
    classify.add_argument("--out", type=str, help="Directory for the bundle JSON tree")

    for name, text in (("points", "List the points of a layer"), ("decode", "Decode one point of a layer")):
        cmd = theory_command(name, text)
        cmd.add_argument("--layer", type=str, default="objects", help="objects | arrows | core | E:<sort>")
        if name == "decode":
            cmd.add_argument("--point", type=int, default=0, help="Index of the point in bitmask order")

    verify = theory_command("verify", "Run verification suites", theory_required=False)
    verify.add_argument("--suite", type=str, default="all", help="Suite name, or 'all'")
    verify.add_argument("--seed", type=int, help="Seed for the randomized suites")
    verify.add_argument("--out", type=str, help="Directory (or .json path) for the report")
    verify.add_argument("--bundle", type=str, help="Re-verify an exported bundle directory instead")

    report = sub.add_parser("report", help="Summarise a saved verification report")
    report.add_argument("report", help="Report JSON written by 'verify --out'")
    report.add_argument("--json", action="store_true", help="Print JSON instead of text")
    return parser


def exit_code_for(error: BaseException) -> int:
    """Parse and usage problems give 2; everything else, a corrupt bundle included, gives 3."""
    if isinstance(error, BundleFormatError):
        return ExitCode.GENERATION_ERROR
    if isinstance(error, (TheoryError, ValueError, KeyError, FileNotFoundError)):
        return ExitCode.PARSE_ERROR
    return ExitCode.GENERATION_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = get_config(args.config)
    configure_logging(resolve_level(args.verbose, args.quiet, config.get("logging.level")))
    try:
        cfg = RunConfig.from_args(args, config)
        logger.debug(f"run configuration: {cfg}")
        return COMMANDS[cfg.command](cfg)
    except LocgenError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return exit_code_for(e)
    except (ValueError, KeyError, FileNotFoundError) as e:
        logger.error(f"{e}")
        return exit_code_for(e)
    except Exception as e:
        logger.exception(f"unexpected failure: {e}")
        return exit_code_for(e)
