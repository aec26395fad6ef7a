# commands/delta_cli.py
from typing import Optional

from pydantic import BaseModel

from commands.reports import CommandOutcome, Report, add_common_flags
from monopole.formula import (
    canonicalize,
    casimir_degrees,
    parse_coweight,
    two_delta,
    two_delta_quiver_closed_form,
)
from quiver.core import QuiverTheory
from utilities.read_theory_file import read_theory_file


class DeltaResult(BaseModel):
    charge: list[list[int]]
    canonical: list[list[int]]
    two_delta: int
    closed_form: Optional[int] = None
    casimir_degrees: list[int]


def register(subparsers):
    parser = subparsers.add_parser("delta", help="2*Delta of one magnetic charge")
    parser.add_argument("theory", help="theory JSON file")
    parser.add_argument("--charge", required=True, help='per-vertex entries, e.g. "1,0;2"')
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def handle(args) -> CommandOutcome:
    theory, digest = read_theory_file(args.theory)
    charge = parse_coweight(args.charge, theory)
    closed = two_delta_quiver_closed_form(theory, charge) if isinstance(theory, QuiverTheory) else None
    result = DeltaResult(
        charge=charge.to_json(),
        canonical=canonicalize(theory, charge).to_json(),
        two_delta=two_delta(theory, charge),
        closed_form=closed,
        casimir_degrees=casimir_degrees(theory, canonicalize(theory, charge)),
    )
    return CommandOutcome(Report(command="delta", input_digest=digest, result=result.model_dump()))
