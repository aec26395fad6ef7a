# commands/ci_cli.py
from commands.reports import CommandOutcome, Report, add_common_flags
from higgs.complete_intersection import (
    PoolKind,
    ci_check_framed,
    ci_check_unframed,
    ci_check_weight_form,
    ci_fast_path_affine,
    ci_fast_path_finite,
)
from quiver.core import GraphClass, QuiverTheory, classify_graph
from utilities.errors import PreconditionError
from utilities.read_theory_file import read_theory_file


def register(subparsers):
    parser = subparsers.add_parser("ci", help="complete intersection test for the moment map fiber")
    parser.add_argument("theory", help="theory JSON file")
    parser.add_argument("--method", choices=["full", "fast", "weight-form"], default="full")
    parser.add_argument("--pool", choices=[p.value for p in PoolKind], default=None)
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def _run(theory: QuiverTheory, method: str, pool):
    if method == "weight-form":
        return ci_check_weight_form(theory)
    if method == "fast":
        kind = classify_graph(theory.quiver).kind
        if kind is GraphClass.FINITE:
            return ci_fast_path_finite(theory)
        if kind is GraphClass.AFFINE:
            return ci_fast_path_affine(theory)
        raise PreconditionError("fast paths exist for finite and affine quivers only")
    if theory.is_framed:
        return ci_check_framed(theory, pool=pool or PoolKind.VECTORS)
    return ci_check_unframed(theory, pool=pool or PoolKind.ROOTS)


def handle(args) -> CommandOutcome:
    theory, digest = read_theory_file(args.theory)
    if not isinstance(theory, QuiverTheory):
        raise PreconditionError("ci needs a quiver theory")
    pool = PoolKind(args.pool) if args.pool else None
    report = _run(theory, args.method, pool)
    return CommandOutcome(Report(command="ci", input_digest=digest, result=report.to_json()))
