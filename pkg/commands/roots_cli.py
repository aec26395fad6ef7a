# commands/roots_cli.py
from pydantic import BaseModel

from commands.reports import CommandOutcome, Report, add_common_flags
from quiver.core import (
    GraphClass,
    QuiverTheory,
    affine_vertex_index,
    cartan_matrix,
    classify_graph,
    standard_quiver,
)
from quiver.roots import positive_roots_bounded, positive_roots_finite
from utilities.errors import PreconditionError
from utilities.read_theory_file import read_theory_file


class RootRow(BaseModel):
    root: list[int]
    tag: str
    height: int


class RootsResult(BaseModel):
    graph_class: str
    delta: list[int] | None = None
    roots: list[RootRow]


def register(subparsers):
    parser = subparsers.add_parser("roots", help="positive roots as TSV: root, tag, height")
    parser.add_argument("theory", nargs="?", help="theory JSON file; its quiver is used")
    parser.add_argument("--kind", help="standard quiver: a, d, e, affine-a, affine-d, jordan")
    parser.add_argument("--rank", type=int, default=1)
    parser.add_argument("--bound", help='componentwise bound for affine types, e.g. "2,2"')
    parser.add_argument("--json", action="store_true", help="print the JSON report instead of TSV")
    add_common_flags(parser)
    parser.set_defaults(func=handle)


def handle(args) -> CommandOutcome:
    digest = None
    if args.theory:
        theory, digest = read_theory_file(args.theory)
        if not isinstance(theory, QuiverTheory):
            raise PreconditionError("roots needs a quiver theory")
        quiver, default_bound = theory.quiver, theory.v
    elif args.kind:
        quiver = standard_quiver(args.kind, args.rank)
        default_bound = None
    else:
        raise PreconditionError("give a theory file or --kind")

    graph = classify_graph(quiver)
    C = cartan_matrix(quiver)
    if graph.kind is GraphClass.FINITE:
        table = positive_roots_finite(C)
    elif graph.kind is GraphClass.AFFINE:
        if args.bound:
            try:
                bound = tuple(int(x) for x in args.bound.split(","))
            except ValueError:
                raise PreconditionError(f"--bound must be comma separated integers, got {args.bound!r}")
            if len(bound) != quiver.rank:
                raise PreconditionError(f"--bound needs {quiver.rank} entries")
        else:
            bound = default_bound or graph.delta
        table = positive_roots_bounded(C, bound, affine_vertex_index(quiver, graph.delta))
    else:
        raise PreconditionError("roots are tabulated for finite and affine quivers only")

    rows = [RootRow(root=list(beta), tag=tag.value, height=sum(beta)) for beta, tag in table.roots]
    result = RootsResult(
        graph_class=graph.kind.value,
        delta=None if graph.delta is None else list(graph.delta),
        roots=rows,
    )
    report = Report(command="roots", input_digest=digest, result=result.model_dump())
    if args.json:
        return CommandOutcome(report)
    lines = [f"{','.join(map(str, r.root))}\t{r.tag}\t{r.height}" for r in rows]
    return CommandOutcome(report, text="\n".join(lines))
