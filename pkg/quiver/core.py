"""
Quiver gauge theories: quivers, dimension vectors, Cartan matrices and the
theory documents that describe them.

Vertex order is the declared order everywhere. Dimension vectors and framing
vectors are plain integer tuples aligned with ``Quiver.vertices``.
"""
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Optional, Union

import networkx as nx
import sympy
from pydantic import BaseModel, ValidationError, model_validator

from config.logger_config import setup_logger
from utilities.errors import PreconditionError, TheoryValidationError

logger = setup_logger(__name__)

DimVector = tuple[int, ...]
CartanMatrix = tuple[tuple[int, ...], ...]


class Group(str, Enum):
    PROD_GL = "prod-gl"
    PROD_GL_MOD_CENTER = "prod-gl-mod-center"


class GraphClass(str, Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...] = ()
    affine_vertex: Optional[str] = None

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise TheoryValidationError("unique-vertices", "vertex identifiers repeat")
        position = {v: i for i, v in enumerate(vertices)}
        edges = []
        for tail, head in self.edges:
            tail, head = str(tail), str(head)
            if tail not in position or head not in position:
                raise TheoryValidationError(
                    "edge-endpoints", f"edge ({tail}, {head}) references an undeclared vertex"
                )
            # Edges are unoriented for everything computed here.
            if position[tail] > position[head]:
                tail, head = head, tail
            edges.append((tail, head))
        edges.sort(key=lambda e: (position[e[0]], position[e[1]]))
        if self.affine_vertex is not None and str(self.affine_vertex) not in position:
            raise TheoryValidationError("affine-vertex", f"{self.affine_vertex} is not a vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        if self.affine_vertex is not None:
            object.__setattr__(self, "affine_vertex", str(self.affine_vertex))
        self._check_loops()

    def _check_loops(self):
        for vertex in self.vertices:
            loops = sum(1 for a, b in self.edges if a == b == vertex)
            if not loops:
                continue
            others = sum(1 for a, b in self.edges if (a == vertex) != (b == vertex))
            if loops > 1 or others:
                raise TheoryValidationError(
                    "loops-only-on-jordan",
                    f"vertex {vertex} carries a loop but is not an isolated Jordan vertex",
                )

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self.vertices.index(str(vertex))
        except ValueError:
            raise PreconditionError(f"unknown vertex {vertex}")

    def loop_count(self, i: int) -> int:
        vertex = self.vertices[i]
        return sum(1 for a, b in self.edges if a == b == vertex)

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.rank))
        for a, b in self.edges:
            g.add_edge(self.index(a), self.index(b))
        return g

    def is_connected(self) -> bool:
        return self.rank > 0 and nx.is_connected(self.graph())

    def without_vertex(self, i: int) -> "Quiver":
        dropped = self.vertices[i]
        return Quiver(
            vertices=tuple(v for v in self.vertices if v != dropped),
            edges=tuple(e for e in self.edges if dropped not in e),
        )


@dataclass(frozen=True)
class QuiverTheory:
    quiver: Quiver
    v: DimVector
    w: DimVector
    group: Group = Group.PROD_GL

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        object.__setattr__(self, "group", Group(self.group))
        rank = self.quiver.rank
        if len(self.v) != rank or len(self.w) != rank:
            raise TheoryValidationError(
                "dimension-domain", "v and w must have one entry per vertex"
            )
        if any(x < 0 for x in self.v + self.w):
            raise TheoryValidationError("nonnegative-dimension", "dimensions must be >= 0")
        if self.group is Group.PROD_GL_MOD_CENTER:
            if any(self.w):
                raise TheoryValidationError(
                    "mod-center-requires-unframed", "dividing by the center needs w = 0"
                )
            if not any(self.v):
                raise TheoryValidationError("nonzero-v", "unframed theories need v != 0")
            if not connected_support(self.quiver, self.v):
                raise TheoryValidationError("support-connected", "support disconnected")
        elif not any(self.w) and not any(self.v):
            raise TheoryValidationError("nonzero-v", "unframed theories need v != 0")

    @property
    def is_framed(self) -> bool:
        return any(self.w)


@dataclass(frozen=True)
class Sl2Flavor:
    """SU(2) with ``n_flavors`` fundamental hypermultiplets."""

    n_flavors: int

    def __post_init__(self):
        if self.n_flavors < 0:
            raise TheoryValidationError("nonnegative-flavors", "flavor count must be >= 0")


@dataclass(frozen=True)
class U1Charges:
    """U(1) with one hypermultiplet per listed charge."""

    charges: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "charges", tuple(int(q) for q in self.charges))
        if 0 in self.charges:
            raise TheoryValidationError("nonzero-charges", "U(1) charges must be nonzero")


GaugeTheory = Union[QuiverTheory, Sl2Flavor, U1Charges]


def connected_support(quiver: Quiver, v: DimVector) -> bool:
    support = [i for i, x in enumerate(v) if x > 0]
    if not support:
        return False
    return nx.is_connected(quiver.graph().subgraph(support))


@lru_cache(maxsize=None)
def cartan_matrix(quiver: Quiver) -> CartanMatrix:
    """
    Symmetric generalized Cartan matrix: 2 - 2*loops on the diagonal and minus
    the number of edges between i and j off the diagonal.
    """
    n = quiver.rank
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2 - 2 * quiver.loop_count(i)
    for a, b in quiver.edges:
        i, j = quiver.index(a), quiver.index(b)
        if i != j:
            rows[i][j] -= 1
            rows[j][i] -= 1
    return tuple(tuple(r) for r in rows)


def apply_cartan(C: CartanMatrix, v: DimVector) -> DimVector:
    return tuple(sum(c * x for c, x in zip(row, v)) for row in C)


def cartan_pairing(a: DimVector, b: DimVector, C: CartanMatrix) -> int:
    return sum(x * y for x, y in zip(a, apply_cartan(C, b)))


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def leq(a: DimVector, b: DimVector) -> bool:
    return all(x <= y for x, y in zip(a, b))


def subtract(a: DimVector, b: DimVector) -> DimVector:
    return tuple(x - y for x, y in zip(a, b))


def unit_vector(rank: int, i: int) -> DimVector:
    return tuple(1 if k == i else 0 for k in range(rank))


def graded_key(v: DimVector):
    """Height first, then larger leading entries first."""
    return (sum(v), tuple(-x for x in v))


def _as_fraction(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    r = sympy.Rational(x)
    return Fraction(int(r.p), int(r.q))


def primitive_integer_vector(entries) -> tuple[int, ...]:
    fractions = [_as_fraction(x) for x in entries]
    scale = lcm(*(f.denominator for f in fractions)) if fractions else 1
    ints = [int(f * scale) for f in fractions]
    divisor = gcd(*ints) if ints else 0
    if divisor == 0:
        return tuple(ints)
    return tuple(x // divisor for x in ints)


@dataclass(frozen=True)
class GraphClassification:
    kind: GraphClass
    delta: Optional[DimVector] = None


@lru_cache(maxsize=None)
def classify_graph(quiver: Quiver) -> GraphClassification:
    """
    Finite if the Cartan matrix is positive definite, Affine if it is positive
    semidefinite with a one dimensional kernel spanned by a positive vector.
    """
    if not quiver.is_connected():
        raise PreconditionError("classify_graph needs a connected quiver")
    matrix = sympy.Matrix(cartan_matrix(quiver))
    if matrix.is_positive_definite:
        return GraphClassification(GraphClass.FINITE)
    if matrix.is_positive_semidefinite:
        kernel = matrix.nullspace()
        if len(kernel) == 1:
            delta = primitive_integer_vector(list(kernel[0]))
            if all(x <= 0 for x in delta):
                delta = tuple(-x for x in delta)
            if all(x > 0 for x in delta):
                return GraphClassification(GraphClass.AFFINE, delta)
    return GraphClassification(GraphClass.INDEFINITE)


def affine_vertex_index(quiver: Quiver, delta: DimVector) -> int:
    if quiver.affine_vertex is not None:
        return quiver.index(quiver.affine_vertex)
    for i, x in enumerate(delta):
        if x == 1:
            return i
    raise PreconditionError("no vertex with imaginary root entry 1")


def dynkin_family(quiver: Quiver) -> str:
    """'A', 'D' or 'E' for a finite-type quiver, read off the tree shape."""
    if classify_graph(quiver).kind is not GraphClass.FINITE:
        raise PreconditionError("dynkin_family needs a finite-type quiver")
    g = nx.Graph(quiver.graph())
    branch = [n for n in g.nodes if g.degree(n) == 3]
    if not branch:
        return "A"
    arms = sorted(
        len(nx.node_connected_component(g.subgraph(set(g.nodes) - {branch[0]}), nb))
        for nb in g.neighbors(branch[0])
    )
    return "D" if arms[:2] == [1, 1] else "E"


def standard_quiver(kind: str, rank: int) -> Quiver:
    """
    Named quivers: A, D, E (finite), affine-A, affine-D and jordan.
    Finite vertices are "1".."rank"; affine ones add vertex "0".
    """
    kind = kind.lower()
    names = [str(i) for i in range(1, rank + 1)]
    if kind == "a" and rank >= 1:
        return Quiver(tuple(names), tuple(zip(names, names[1:])))
    if kind == "d" and rank >= 4:
        chain = names[: rank - 1]
        edges = list(zip(chain, chain[1:])) + [(names[rank - 3], names[rank - 1])]
        return Quiver(tuple(names), tuple(edges))
    if kind == "e" and rank in (6, 7, 8):
        chain = names[: rank - 1]
        edges = list(zip(chain, chain[1:])) + [(names[2], names[rank - 1])]
        return Quiver(tuple(names), tuple(edges))
    if kind == "affine-a" and rank >= 1:
        ring = ["0"] + names
        if rank == 1:
            return Quiver(("0", "1"), (("0", "1"), ("0", "1")), affine_vertex="0")
        edges = list(zip(ring, ring[1:])) + [(ring[-1], ring[0])]
        return Quiver(tuple(ring), tuple(edges), affine_vertex="0")
    if kind == "affine-d" and rank >= 4:
        finite = standard_quiver("d", rank)
        return Quiver(("0",) + finite.vertices, (("0", "2"),) + finite.edges, affine_vertex="0")
    if kind == "jordan":
        return Quiver(("0",), (("0", "0"),), affine_vertex="0")
    raise PreconditionError(f"no standard quiver {kind} of rank {rank}")


class TheoryDocument(BaseModel):
    """JSON boundary model for theory files."""

    vertices: Optional[list[Union[str, int]]] = None
    edges: list[tuple[Union[str, int], Union[str, int]]] = []
    affine_vertex: Optional[Union[str, int]] = None
    v: Optional[dict[str, int]] = None
    w: dict[str, int] = {}
    group: Group = Group.PROD_GL
    sl2_flavors: Optional[int] = None
    u1_charges: Optional[list[int]] = None

    @model_validator(mode="after")
    def exactly_one_kind(self):
        kinds = [self.vertices is not None, self.sl2_flavors is not None, self.u1_charges is not None]
        if sum(kinds) != 1:
            raise ValueError("give exactly one of vertices, sl2_flavors, u1_charges")
        if self.vertices is not None and self.v is None:
            raise ValueError("quiver theories need a dimension vector v")
        return self


def _aligned(values: dict[str, int], quiver: Quiver, name: str) -> DimVector:
    unknown = set(values) - set(quiver.vertices)
    if unknown:
        raise TheoryValidationError(
            "dimension-domain", f"{name} mentions undeclared vertices {sorted(unknown)}"
        )
    return tuple(values.get(v, 0) for v in quiver.vertices)


def theory_from_document(doc: TheoryDocument) -> GaugeTheory:
    if doc.sl2_flavors is not None:
        return Sl2Flavor(doc.sl2_flavors)
    if doc.u1_charges is not None:
        return U1Charges(tuple(doc.u1_charges))
    quiver = Quiver(
        vertices=tuple(str(v) for v in doc.vertices),
        edges=tuple((str(a), str(b)) for a, b in doc.edges),
        affine_vertex=None if doc.affine_vertex is None else str(doc.affine_vertex),
    )
    return QuiverTheory(
        quiver=quiver,
        v=_aligned(doc.v, quiver, "v"),
        w=_aligned(doc.w, quiver, "w"),
        group=doc.group,
    )


def parse_theory(text: str) -> GaugeTheory:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise TheoryValidationError("malformed-document", f"invalid JSON: {e}")
    try:
        doc = TheoryDocument.model_validate(payload)
    except ValidationError as e:
        raise TheoryValidationError("malformed-document", str(e))
    theory = theory_from_document(doc)
    logger.debug(f"Parsed theory {describe_theory(theory)}")
    return theory


def theory_payload(theory: GaugeTheory) -> dict:
    if isinstance(theory, Sl2Flavor):
        return {"sl2_flavors": theory.n_flavors}
    if isinstance(theory, U1Charges):
        return {"u1_charges": list(theory.charges)}
    q = theory.quiver
    payload = {
        "vertices": list(q.vertices),
        "edges": [list(e) for e in q.edges],
        "v": dict(zip(q.vertices, theory.v)),
        "w": dict(zip(q.vertices, theory.w)),
        "group": theory.group.value,
    }
    if q.affine_vertex is not None:
        payload["affine_vertex"] = q.affine_vertex
    return payload


def serialize_theory(theory: GaugeTheory) -> str:
    """Canonical JSON: parse_theory(serialize_theory(t)) == t."""
    return json.dumps(theory_payload(theory), sort_keys=True)


def describe_theory(theory: GaugeTheory) -> str:
    if isinstance(theory, Sl2Flavor):
        return f"SU(2) with {theory.n_flavors} flavors"
    if isinstance(theory, U1Charges):
        return f"U(1) with charges {list(theory.charges)}"
    return f"quiver {list(theory.quiver.vertices)} v={list(theory.v)} w={list(theory.w)} {theory.group.value}"
