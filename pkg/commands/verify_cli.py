# commands/verify_cli.py
from commands.paper_checks import verify_paper
from commands.reports import CommandOutcome, Report, add_common_flags
from config import settings


def register(subparsers):
    parser = subparsers.add_parser("verify-paper", help="re-check every published result against the fixtures")
    parser.add_argument("--fixtures", default=str(settings.PROJECT_ROOT / "fixtures"), help="fixture directory")
    parser.add_argument("--e6", action="store_true", help="also run the exceptional-type finite check (recorded)")
    parser.add_argument("--table", action="store_true", help="print a status table instead of the JSON report")
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def handle(args) -> CommandOutcome:
    summary = verify_paper(args.fixtures, include_e6=args.e6)
    report = Report(command="verify-paper", result=summary.to_json())
    exit_code = 0 if summary.passed else 1
    return CommandOutcome(report, exit_code=exit_code, text=summary.table() if args.table else None)
