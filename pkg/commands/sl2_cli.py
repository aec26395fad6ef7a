# commands/sl2_cli.py
from commands.reports import CommandOutcome, Report, add_common_flags
from surfaces.sl2 import sl2_classify, sl2_higgs_summary, surface_record


def register(subparsers):
    parser = subparsers.add_parser("sl2", help="SU(2) with N flavors: surface, verdict and Higgs summary")
    parser.add_argument("--flavors", type=int, required=True, metavar="N")
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def handle(args) -> CommandOutcome:
    n = args.flavors
    verdict = sl2_classify(n)
    result = {
        "surface": surface_record(n).to_json(),
        "classification": {
            "verdict": verdict.verdict.value,
            "min_value": verdict.min_value,
            "witness": None if verdict.witness is None else verdict.witness.to_json(),
            "witness_value": verdict.witness_value,
            "notes": list(verdict.notes),
        },
        "higgs": sl2_higgs_summary(n).to_json(),
    }
    return CommandOutcome(Report(command="sl2", input_digest=f"flavors={n}", result=result))
