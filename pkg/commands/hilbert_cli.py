# commands/hilbert_cli.py
from commands.reports import CommandOutcome, Report, add_common_flags
from config.logger_config import setup_logger
from hilbert.series import expand_expression, monopole_series
from utilities.read_theory_file import read_theory_file

logger = setup_logger(__name__)

UNCERTIFIED_MARKER = "# uncertified"


def register(subparsers):
    parser = subparsers.add_parser("hilbert", help="truncated monopole Hilbert series")
    parser.add_argument("theory", help="theory JSON file")
    parser.add_argument("--cutoff", type=int, required=True, help="largest 2*Delta degree kept")
    parser.add_argument("--radius", type=int, default=None, help="fixed charge radius; output is uncertified")
    parser.add_argument("--expect", default=None, help='rational function of t, e.g. "(1+t^4)/((1-t^4)(1-t^8))"')
    parser.add_argument("--json", action="store_true", help="print the JSON report instead of TSV")
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def handle(args) -> CommandOutcome:
    theory, digest = read_theory_file(args.theory)
    series = monopole_series(theory, args.cutoff, radius=args.radius, threads=args.threads)
    result = {
        "cutoff": series.cutoff,
        "coefficients": list(series.coeffs),
        "certified": series.certified,
    }
    exit_code = 0
    if args.expect is not None:
        expected = expand_expression(args.expect, args.cutoff)
        result["expected"] = list(expected.coeffs)
        result["matches"] = expected.coeffs == series.coeffs
        if not result["matches"]:
            logger.warning(f"Series differs from {args.expect!r}")
            exit_code = 1
    report = Report(command="hilbert", input_digest=digest, result=result)
    if args.json:
        return CommandOutcome(report, exit_code=exit_code)
    lines = [] if series.certified else [UNCERTIFIED_MARKER]
    lines += [f"{degree}\t{c}" for degree, c in enumerate(series.coeffs)]
    return CommandOutcome(report, exit_code=exit_code, text="\n".join(lines))
