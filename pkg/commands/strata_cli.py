# commands/strata_cli.py
from commands.reports import CommandOutcome, Report, add_common_flags
from config.logger_config import setup_logger
from quiver.core import GraphClass, QuiverTheory, classify_graph
from strata.posets import (
    BijectionMap,
    StratumPoset,
    check_order_reversing_bijection,
    strata_affine_higgs,
    strata_affine_unframed,
    strata_framed_finite,
    to_dot,
)
from utilities.errors import PreconditionError
from utilities.read_theory_file import read_theory_file

logger = setup_logger(__name__)


def poset_payload(poset: StratumPoset) -> dict:
    return {
        "name": poset.name,
        "elements": [list(x) for x in poset.elements],
        "covers": [[list(x), list(y)] for x, y in poset.covers],
        "labels": [{"element": list(x), **label.to_json()} for x, label in poset.labels],
        "flags": [{"element": list(x), "flags": list(f)} for x, f in poset.flags],
    }


def register(subparsers):
    parser = subparsers.add_parser("strata", help="Coulomb and Higgs stratification posets")
    parser.add_argument("theory", help="theory JSON file")
    parser.add_argument("--dot", action="store_true", help="print a Hasse diagram in DOT format")
    parser.add_argument("--side", choices=["coulomb", "higgs"], default="coulomb")
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def build_both(theory) -> tuple[StratumPoset, StratumPoset, BijectionMap]:
    if not isinstance(theory, QuiverTheory):
        raise PreconditionError("strata need a quiver theory")
    kind = classify_graph(theory.quiver).kind
    if kind is GraphClass.FINITE:
        coulomb, higgs = strata_framed_finite(theory)
        return coulomb, higgs, BijectionMap.IDENTITY
    if kind is GraphClass.AFFINE:
        return strata_affine_unframed(theory), strata_affine_higgs(theory), BijectionMap.TRANSPOSE
    raise PreconditionError("strata are computed for finite and affine quivers only")


def handle(args) -> CommandOutcome:
    theory, digest = read_theory_file(args.theory)
    coulomb, higgs, mapping = build_both(theory)
    bijection = check_order_reversing_bijection(coulomb, higgs, mapping)
    if not bijection.is_order_reversing:
        logger.warning(f"{mapping.value} does not reverse the order: {bijection.mismatches[:3]}")
    result = {
        "coulomb": poset_payload(coulomb),
        "higgs": poset_payload(higgs),
        "bijection": bijection.to_json(),
    }
    report = Report(command="strata", input_digest=digest, result=result)
    if args.dot:
        return CommandOutcome(report, text=to_dot(coulomb if args.side == "coulomb" else higgs))
    return CommandOutcome(report)
