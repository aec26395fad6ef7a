"""
Application  : coulombkit
Description  : Exact combinatorics of 3d N=4 Coulomb and Higgs branches from the
               command line: monopole weights, good/ugly/bad verdicts, complete
               intersection tests, strata posets, Hilbert series and the SL(2)
               surface family.
"""
import argparse
import sys
import time

from commands import (
    ci_cli,
    classify_cli,
    delta_cli,
    hilbert_cli,
    roots_cli,
    sl2_cli,
    strata_cli,
    verify_cli,
)
from config.logger_config import log_run_context, setup_logger
from utilities.errors import CoulombKitError
from utilities.report_archive import archive_report

# -----------------------------
# Logger
# -----------------------------
logger = setup_logger(__name__)

# -----------------------------
# Subcommands
# -----------------------------
COMMANDS = (classify_cli, delta_cli, roots_cli, ci_cli, strata_cli, hilbert_cli, sl2_cli, verify_cli)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coulombkit", description="Exact Coulomb and Higgs branch combinatorics")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    log_run_context(logger, args.command, threads=args.threads)
    started = time.perf_counter()
    try:
        outcome = args.func(args)
    except CoulombKitError as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception:
        logger.exception(f"Unexpected failure in {args.command}")
        raise

    if args.timing:
        outcome.report.timing = {"wall_seconds": round(time.perf_counter() - started, 6)}
    print(outcome.render())
    if args.archive:
        status = "ok" if outcome.exit_code == 0 else "fail"
        row = archive_report(outcome.report, status=status)
        logger.info(f"{args.command} report archived as row {row}")
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
