"""
Stratification posets of Coulomb and Higgs branches.

Order convention: x <= y when the stratum indexed by y lies in the closure of
the stratum indexed by x. The open stratum is therefore the minimum.

Two families are combinatorial. Framed finite quivers index strata by
dimension vectors v' <= v with w - Cv' dominant. Unframed affine quivers index
them by partitions nu with v - |nu| delta >= 0; the Coulomb side orders them by
row sums (merging parts or adding a part deepens a stratum) and the Higgs side by
column sums read backwards, so transposition exchanges the two orders.
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import accumulate, product
from typing import Callable, Hashable, Optional, Union

import networkx as nx
from sympy.utilities.iterables import partitions

from config.logger_config import setup_logger
from quiver.core import (
    DimVector,
    GaugeTheory,
    GraphClass,
    QuiverTheory,
    affine_vertex_index,
    apply_cartan,
    cartan_matrix,
    classify_graph,
    graded_key,
    leq,
    subtract,
    unit_vector,
)
from utilities.errors import PreconditionError

logger = setup_logger(__name__)

Partition = tuple[int, ...]

SPECIAL = "special"
ASSUMPTION = "assumes-genuine-calorons"


@dataclass(frozen=True, order=True)
class Component:
    kind: str  # "Q" or "Jordan"
    v: DimVector
    w: DimVector = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "v": list(self.v), "w": list(self.w)}


@dataclass(frozen=True)
class TheoryDescriptor:
    """A product of quiver gauge theories, compared as a multiset."""

    components: tuple[Component, ...]

    @classmethod
    def of(cls, components) -> "TheoryDescriptor":
        return cls(tuple(sorted(components)))

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]


@dataclass(frozen=True)
class StratumLabel:
    stratum: TheoryDescriptor
    slice: TheoryDescriptor

    def to_json(self) -> dict:
        return {"stratum": self.stratum.to_json(), "slice": self.slice.to_json()}


@dataclass(frozen=True)
class StratumPoset:
    name: str
    elements: tuple[Hashable, ...]
    covers: tuple[tuple[Hashable, Hashable], ...]
    labels: tuple[tuple[Hashable, StratumLabel], ...] = ()
    flags: tuple[tuple[Hashable, tuple[str, ...]], ...] = ()
    _closure: frozenset = field(default=frozenset(), compare=False, repr=False)

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.covers)
        return g

    def order_pairs(self) -> frozenset:
        """All strict pairs x < y."""
        return self._closure

    def leq(self, x, y) -> bool:
        return x == y or (x, y) in self._closure

    def label(self, x) -> Optional[StratumLabel]:
        return dict(self.labels).get(x)

    def flags_of(self, x) -> tuple[str, ...]:
        return dict(self.flags).get(x, ())


def build_poset(name: str, elements, relation: Callable, labels=None, flags=None) -> StratumPoset:
    """
    ``relation(x)`` yields elements strictly above x; the order is its
    transitive closure and the covers are the transitive reduction.
    """
    elements = tuple(elements)
    members = set(elements)
    g = nx.DiGraph()
    g.add_nodes_from(elements)
    for x in elements:
        for y in relation(x):
            if y in members and y != x:
                g.add_edge(x, y)
    if not nx.is_directed_acyclic_graph(g):
        raise PreconditionError(f"{name} relation has a cycle")
    position = {x: i for i, x in enumerate(elements)}
    covers = sorted(nx.transitive_reduction(g).edges, key=lambda e: (position[e[0]], position[e[1]]))
    closure = frozenset(nx.transitive_closure_dag(g).edges)
    return StratumPoset(
        name=name,
        elements=elements,
        covers=tuple(covers),
        labels=tuple((x, labels[x]) for x in elements) if labels else (),
        flags=tuple((x, flags[x]) for x in elements if flags and flags.get(x)),
        _closure=closure,
    )


def _framed_finite_theory(theory: GaugeTheory) -> QuiverTheory:
    if not isinstance(theory, QuiverTheory):
        raise PreconditionError("strata need a quiver theory")
    if classify_graph(theory.quiver).kind is not GraphClass.FINITE:
        raise PreconditionError("strata_framed_finite needs a finite-type quiver")
    if not theory.is_framed:
        raise PreconditionError("strata_framed_finite needs w != 0")
    return theory


def strata_framed_finite(theory: GaugeTheory) -> tuple[StratumPoset, StratumPoset]:
    theory = _framed_finite_theory(theory)
    C = cartan_matrix(theory.quiver)
    v, w = theory.v, theory.w

    def residual(u):
        return subtract(w, apply_cartan(C, u))

    index = sorted(
        (u for u in product(*(range(x + 1) for x in v)) if all(x >= 0 for x in residual(u))),
        key=graded_key,
    )
    coulomb_labels, higgs_labels = {}, {}
    for u in index:
        big = TheoryDescriptor.of([Component("Q", subtract(v, u), residual(u))])
        small = TheoryDescriptor.of([Component("Q", u, w)])
        coulomb_labels[u] = StratumLabel(stratum=big, slice=small)
        higgs_labels[u] = StratumLabel(stratum=small, slice=big)

    coulomb = build_poset(
        "coulomb", index, lambda x: (y for y in index if leq(x, y)), coulomb_labels
    )
    higgs = build_poset(
        "higgs", index, lambda x: (y for y in index if leq(y, x)), higgs_labels
    )
    logger.info(f"Framed strata: {len(index)} elements for v={list(v)} w={list(w)}")
    return coulomb, higgs


def partitions_of(n: int) -> list[Partition]:
    if n == 0:
        return [()]
    found = []
    for p in partitions(n):
        found.append(tuple(sorted((k for k, m in p.copy().items() for _ in range(m)), reverse=True)))
    return sorted(found, reverse=True)


def conjugate(nu: Partition) -> Partition:
    if not nu:
        return ()
    return tuple(sum(1 for part in nu if part > i) for i in range(nu[0]))


def multiplicities(nu: Partition) -> dict[int, int]:
    counts = {}
    for part in nu:
        counts[part] = counts.get(part, 0) + 1
    return dict(sorted(counts.items()))


def row_sums(nu: Partition, length: int) -> tuple[int, ...]:
    """Boxes in the first k rows, for k = 1..length."""
    return tuple(accumulate(nu[k] if k < len(nu) else 0 for k in range(length)))


def column_sums(nu: Partition, length: int) -> tuple[int, ...]:
    return row_sums(conjugate(nu), length)


def _affine_setup(theory: GaugeTheory):
    if not isinstance(theory, QuiverTheory):
        raise PreconditionError("strata need a quiver theory")
    graph = classify_graph(theory.quiver)
    if graph.kind is not GraphClass.AFFINE:
        raise PreconditionError("affine strata need an affine (or Jordan) quiver")
    if theory.is_framed:
        raise PreconditionError("affine strata need w = 0")
    delta = graph.delta
    jordan = theory.quiver.rank == 1
    if jordan:
        index = partitions_of(theory.v[0])
    else:
        top = min(x // d for x, d in zip(theory.v, delta))
        index = [nu for n in range(top + 1) for nu in partitions_of(n)]
    index.sort(key=lambda nu: (sum(nu), tuple(-p for p in nu)))
    base = unit_vector(theory.quiver.rank, affine_vertex_index(theory.quiver, delta))
    return theory, delta, jordan, index, base


def _affine_pieces(theory, delta, base, nu):
    rank = theory.quiver.rank
    zero = (0,) * rank
    remainder = subtract(theory.v, tuple(sum(nu) * d for d in delta))
    counts = multiplicities(nu)
    core = [Component("Q", remainder, zero)] if any(remainder) else []
    bubble_positions = core + [Component("Jordan", (m,)) for m in counts.values()]
    instanton_slices = [
        Component("Q", tuple(k * d for d in delta), base) for k, m in counts.items() for _ in range(m)
    ]
    higgs_strata = [Component("Q", tuple(m * d for d in delta), base) for m in counts.values()]
    higgs_slices = core + [Component("Jordan", (k,)) for k, m in counts.items() for _ in range(m)]
    return remainder, bubble_positions, instanton_slices, higgs_strata, higgs_slices


def _affine_flags(jordan, remainder, nu):
    flags = []
    if all(p == 1 for p in nu):
        flags.append(SPECIAL)
    if not jordan and any(remainder):
        flags.append(ASSUMPTION)
    return tuple(flags)


def strata_affine_unframed(theory: GaugeTheory) -> StratumPoset:
    """
    Coulomb branch strata. nu <= mu when every row sum of nu is at most that of
    mu; merging two parts and adding a part both move up.
    """
    theory, delta, jordan, index, base = _affine_setup(theory)
    labels, flags = {}, {}
    for nu in index:
        remainder, positions, slices, _, _ = _affine_pieces(theory, delta, base, nu)
        labels[nu] = StratumLabel(TheoryDescriptor.of(positions), TheoryDescriptor.of(slices))
        flags[nu] = _affine_flags(jordan, remainder, nu)
    length = max(map(sum, index))
    return build_poset(
        "coulomb",
        index,
        lambda nu: (mu for mu in index if leq(row_sums(nu, length), row_sums(mu, length))),
        labels,
        flags,
    )


def strata_affine_higgs(theory: GaugeTheory) -> StratumPoset:
    """
    Higgs branch strata. nu <= mu when every column sum of mu is at most that of
    nu; merging two parts and sending a part to the singular point both move up.
    """
    theory, delta, jordan, index, base = _affine_setup(theory)
    labels, flags = {}, {}
    for nu in index:
        remainder, _, _, strata, slices = _affine_pieces(theory, delta, base, nu)
        labels[nu] = StratumLabel(TheoryDescriptor.of(strata), TheoryDescriptor.of(slices))
        flags[nu] = _affine_flags(jordan, remainder, nu)
    length = max(map(sum, index))
    return build_poset(
        "higgs",
        index,
        lambda nu: (mu for mu in index if leq(column_sums(mu, length), column_sums(nu, length))),
        labels,
        flags,
    )


def dominance_poset(n: int) -> StratumPoset:
    """Partitions of n; x <= y when every partial sum of x is at most that of y."""
    index = partitions_of(n)[::-1]
    return build_poset(
        "dominance", index, lambda x: (y for y in index if leq(row_sums(x, n), row_sums(y, n)))
    )


class BijectionMap(str, Enum):
    IDENTITY = "identity"
    TRANSPOSE = "transpose"


@dataclass(frozen=True)
class BijectionReport:
    map_name: str
    is_order_reversing: bool
    is_anti_isomorphism: bool
    labels_match: Optional[bool]
    mismatches: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "map": self.map_name,
            "is_order_reversing": self.is_order_reversing,
            "is_anti_isomorphism": self.is_anti_isomorphism,
            "labels_match": self.labels_match,
            "mismatches": list(self.mismatches),
        }


def check_order_reversing_bijection(
    a: StratumPoset, b: StratumPoset, mapping: Union[BijectionMap, Callable] = BijectionMap.IDENTITY
) -> BijectionReport:
    if mapping is BijectionMap.IDENTITY:
        fn, name = (lambda x: x), "identity"
    elif mapping is BijectionMap.TRANSPOSE:
        fn, name = conjugate, "transpose"
    else:
        fn, name = mapping, getattr(mapping, "__name__", "custom")
    try:
        images = {x: fn(x) for x in a.elements}
    except (TypeError, IndexError):
        raise PreconditionError(f"{name} is not defined on the elements of {a.name}")
    if sorted(map(repr, images.values())) != sorted(map(repr, b.elements)) or len(set(images.values())) != len(images):
        raise PreconditionError(f"{name} is not a bijection from {a.name} onto {b.name}")

    mismatches = []
    reversing = True
    for x, y in sorted(a.order_pairs(), key=repr):
        if not b.leq(images[y], images[x]):
            reversing = False
            mismatches.append(f"order: {x} < {y} but {images[y]} is not below {images[x]}")
    inverse = {value: key for key, value in images.items()}
    reflecting = all(a.leq(inverse[q], inverse[p]) for p, q in b.order_pairs())

    labels_match = None
    if a.labels and b.labels:
        labels_match = True
        for x in a.elements:
            la, lb = a.label(x), b.label(images[x])
            if la.stratum != lb.slice or la.slice != lb.stratum:
                labels_match = False
                mismatches.append(f"labels: {x} -> {images[x]} do not exchange stratum and slice")
    return BijectionReport(name, reversing, reversing and reflecting, labels_match, tuple(mismatches))


def _dot_name(x) -> str:
    return '"' + (",".join(map(str, x)) if x else "empty") + '"'


def to_dot(poset: StratumPoset) -> str:
    """Hasse diagram in DOT format, one edge per cover."""
    lines = [f"digraph {poset.name} {{"]
    for x in poset.elements:
        extra = ' shape="box"' if SPECIAL in poset.flags_of(x) else ""
        lines.append(f"  {_dot_name(x)} [label={_dot_name(x)}{extra}];")
    for x, y in poset.covers:
        lines.append(f"  {_dot_name(x)} -> {_dot_name(y)};")
    lines.append("}")
    return "\n".join(lines)
