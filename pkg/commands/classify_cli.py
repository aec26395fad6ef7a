# commands/classify_cli.py
from typing import Any, Optional

from pydantic import BaseModel

from commands.reports import CommandOutcome, Report, add_common_flags
from config.logger_config import setup_logger
from monopole.classify import brute_force_min, classify_theory
from quiver.core import describe_theory, theory_payload
from utilities.read_theory_file import read_theory_file

logger = setup_logger(__name__)


class ClassifyResult(BaseModel):
    theory: dict[str, Any]
    verdict: str
    witness: Optional[list[list[int]]] = None
    witness_value: Optional[int] = None
    min_value: Optional[int] = None
    certificate: dict[str, Any]
    notes: list[str] = []


class BruteForceResult(BaseModel):
    theory: dict[str, Any]
    radius: int
    min_value: Optional[int] = None
    witness: Optional[list[list[int]]] = None


def register(subparsers):
    parser = subparsers.add_parser("classify", help="Good / Ugly / Bad verdict with certificate")
    parser.add_argument("theory", help="theory JSON file")
    parser.add_argument("--dim-limit", type=int, default=None)
    parser.add_argument("--prescan-radius", type=int, default=None)
    parser.add_argument(
        "--brute-force", type=int, default=None, metavar="RADIUS",
        help="skip the chamber machinery and scan canonical charges up to RADIUS",
    )
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def handle(args) -> CommandOutcome:
    theory, digest = read_theory_file(args.theory)
    logger.info(f"classify: {describe_theory(theory)}")
    if args.brute_force is not None:
        value, witness = brute_force_min(theory, args.brute_force)
        result = BruteForceResult(
            theory=theory_payload(theory),
            radius=args.brute_force,
            min_value=value,
            witness=None if witness is None else witness.to_json(),
        )
        return CommandOutcome(Report(command="classify", input_digest=digest, result=result.model_dump()))

    verdict = classify_theory(
        theory,
        dim_limit=args.dim_limit,
        prescan_radius=args.prescan_radius,
        threads=args.threads,
    )
    result = ClassifyResult(
        theory=theory_payload(theory),
        verdict=verdict.verdict.value,
        witness=None if verdict.witness is None else verdict.witness.to_json(),
        witness_value=verdict.witness_value,
        min_value=verdict.min_value,
        certificate=verdict.certificate.to_json(),
        notes=list(verdict.notes),
    )
    return CommandOutcome(Report(command="classify", input_digest=digest, result=result.model_dump()))
