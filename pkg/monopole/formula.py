"""
Monopole dimension formula.

Charges live on a flat coordinate list: for a quiver theory one coordinate per
(vertex, k) with k < v_i, in vertex order; SU(2) and U(1) theories have a single
coordinate. Linear forms on the charge lattice are integer tuples over that
list. The value reported everywhere is 2*Delta, always an integer.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import groupby

from quiver.core import (
    DimVector,
    GaugeTheory,
    Group,
    QuiverTheory,
    Sl2Flavor,
    U1Charges,
    cartan_matrix,
    cartan_pairing,
    dot,
)
from utilities.errors import PreconditionError, TheoryValidationError

LinearForm = tuple[int, ...]


@dataclass(frozen=True)
class Coweight:
    """A magnetic charge: per-vertex entries, or a single entry for rank one groups."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def scalar(cls, n: int) -> "Coweight":
        return cls(((int(n),),))

    @classmethod
    def from_flat(cls, theory: GaugeTheory, flat) -> "Coweight":
        flat = list(flat)
        blocks, start = [], 0
        for size in coweight_shape(theory):
            blocks.append(tuple(int(x) for x in flat[start:start + size]))
            start += size
        return cls(tuple(blocks))

    def flat(self) -> tuple[int, ...]:
        return tuple(x for block in self.entries for x in block)

    def is_zero(self) -> bool:
        return not any(self.flat())

    def to_json(self):
        return [list(block) for block in self.entries]

    def __str__(self):
        return ";".join(",".join(str(x) for x in block) for block in self.entries)


@dataclass(frozen=True)
class WeightMultiset:
    items: tuple[tuple[LinearForm, int], ...]

    def as_counter(self) -> Counter:
        return Counter(dict(self.items))


def coweight_shape(theory: GaugeTheory) -> tuple[int, ...]:
    if isinstance(theory, QuiverTheory):
        return theory.v
    return (1,)


def coordinate_count(theory: GaugeTheory) -> int:
    return sum(coweight_shape(theory))


def vertex_offsets(theory: QuiverTheory) -> list[int]:
    offsets, running = [], 0
    for size in theory.v:
        offsets.append(running)
        running += size
    return offsets


def parse_coweight(text: str, theory: GaugeTheory) -> Coweight:
    """
    Parse a literal such as "1,0;2": vertex blocks split by ';', entries by ','.
    Rank one groups take a single integer.
    """
    try:
        blocks = [
            tuple(int(x) for x in block.split(",") if x.strip() != "")
            for block in text.strip().split(";")
        ]
    except ValueError:
        raise TheoryValidationError("coweight-literal", f"cannot read coweight {text!r}")
    shape = coweight_shape(theory)
    if isinstance(theory, QuiverTheory):
        # Vertices with v_i = 0 may be omitted from the literal.
        if len(blocks) != len(shape):
            nonzero = [i for i, size in enumerate(shape) if size]
            if len(blocks) == len(nonzero):
                padded = [()] * len(shape)
                for i, block in zip(nonzero, blocks):
                    padded[i] = block
                blocks = padded
    if tuple(len(b) for b in blocks) != tuple(shape):
        raise TheoryValidationError(
            "coweight-shape", f"coweight {text!r} does not match the gauge ranks {list(shape)}"
        )
    return Coweight(tuple(blocks))


def _unit(n: int, i: int, scale: int = 1) -> LinearForm:
    return tuple(scale if k == i else 0 for k in range(n))


def _difference(n: int, i: int, j: int) -> LinearForm:
    return tuple(1 if k == i else -1 if k == j else 0 for k in range(n))


@lru_cache(maxsize=None)
def vector_multiplet_forms(theory: GaugeTheory) -> tuple[LinearForm, ...]:
    """Positive roots of the gauge group as linear forms on the charges."""
    n = coordinate_count(theory)
    if isinstance(theory, Sl2Flavor):
        return ((2,),)
    if isinstance(theory, U1Charges):
        return ()
    forms = []
    for offset, size in zip(vertex_offsets(theory), theory.v):
        for k in range(size):
            for l in range(k + 1, size):
                forms.append(_difference(n, offset + k, offset + l))
    return tuple(forms)


@lru_cache(maxsize=None)
def weight_multiset(theory: GaugeTheory) -> WeightMultiset:
    """Weights of the hypermultiplet representation, with multiplicities."""
    n = coordinate_count(theory)
    counts = Counter()

    def add_pair(form, multiplicity=1):
        if multiplicity and any(form):
            counts[form] += multiplicity
            counts[tuple(-x for x in form)] += multiplicity

    if isinstance(theory, Sl2Flavor):
        add_pair((1,), 2 * theory.n_flavors)
    elif isinstance(theory, U1Charges):
        for q in theory.charges:
            add_pair((q,))
    else:
        q = theory.quiver
        offsets = vertex_offsets(theory)
        for a, b in q.edges:
            i, j = q.index(a), q.index(b)
            if i == j:
                for k in range(theory.v[i]):
                    for p in range(k + 1, theory.v[i]):
                        # ordered pairs (k, p) and (p, k) give the same +- pair twice
                        add_pair(_difference(n, offsets[i] + k, offsets[i] + p), 2)
                continue
            for k in range(theory.v[i]):
                for p in range(theory.v[j]):
                    add_pair(_difference(n, offsets[j] + p, offsets[i] + k))
        for i, framing in enumerate(theory.w):
            for k in range(theory.v[i]):
                add_pair(_unit(n, offsets[i] + k), framing)
    return WeightMultiset(tuple(sorted(counts.items())))


def _check_shape(theory: GaugeTheory, coweight: Coweight):
    if tuple(len(b) for b in coweight.entries) != tuple(coweight_shape(theory)):
        raise PreconditionError("coweight shape does not match the gauge group")


def two_delta_flat(theory: GaugeTheory, flat) -> int:
    vector_part = sum(abs(dot(alpha, flat)) for alpha in vector_multiplet_forms(theory))
    matter_part = sum(m * abs(dot(mu, flat)) for mu, m in weight_multiset(theory).items)
    delta = Fraction(-vector_part) + Fraction(matter_part, 4)
    doubled = 2 * delta
    if doubled.denominator != 1:
        raise ArithmeticError(f"2*Delta = {doubled} is not an integer")
    return int(doubled)


def two_delta(theory: GaugeTheory, coweight: Coweight) -> int:
    """2*Delta = -2 sum_{alpha>0} |alpha(l)| + 1/2 sum_{mu} |mu(l)|."""
    _check_shape(theory, coweight)
    return two_delta_flat(theory, coweight.flat())


def two_delta_quiver_closed_form(theory: QuiverTheory, coweight: Coweight) -> int:
    """The same value written out per vertex, per edge and per framing node."""
    if not isinstance(theory, QuiverTheory):
        raise PreconditionError("closed form applies to quiver theories only")
    _check_shape(theory, coweight)
    q, entries = theory.quiver, coweight.entries
    total = 0
    for i, block in enumerate(entries):
        total -= 2 * sum(abs(a - b) for k, a in enumerate(block) for b in block[k + 1:])
        total += theory.w[i] * sum(abs(a) for a in block)
    for a, b in q.edges:
        i, j = q.index(a), q.index(b)
        total += sum(abs(x - y) for x in entries[i] for y in entries[j])
    return total


def canonicalize(theory: GaugeTheory, coweight: Coweight) -> Coweight:
    """Weyl orbit and, for the mod-center group, translation representative."""
    _check_shape(theory, coweight)
    if isinstance(theory, Sl2Flavor):
        return Coweight.scalar(abs(coweight.entries[0][0]))
    if isinstance(theory, U1Charges):
        return coweight
    blocks = [tuple(sorted(block, reverse=True)) for block in coweight.entries]
    if theory.group is Group.PROD_GL_MOD_CENTER:
        low = min(x for block in blocks for x in block)
        blocks = [tuple(x - low for x in block) for block in blocks]
    return Coweight(tuple(blocks))


def witness_key(theory: GaugeTheory, coweight: Coweight):
    """Smallest L1 norm of the canonical form, then larger leading entries."""
    flat = canonicalize(theory, coweight).flat()
    return (sum(abs(x) for x in flat), tuple(-x for x in flat))


def block_coweight(theory: QuiverTheory, parts: list[DimVector], levels: list[int]) -> Coweight:
    """Charge taking value levels[k] on a block of size parts[k][i] at every vertex i."""
    if len(parts) != len(levels):
        raise PreconditionError("one level per part")
    if tuple(sum(col) for col in zip(*parts)) != theory.v:
        raise PreconditionError("parts must sum to v")
    blocks = []
    for i in range(theory.quiver.rank):
        block = []
        for part, level in zip(parts, levels):
            block.extend([level] * part[i])
        blocks.append(tuple(block))
    return Coweight(tuple(blocks))


def two_delta_from_decomposition(theory: QuiverTheory, parts: list[DimVector], levels: list[int]) -> int:
    """Block form of the formula: pairs of blocks interact through the Cartan pairing."""
    C = cartan_matrix(theory.quiver)
    total = 0
    for k in range(len(parts)):
        total += abs(levels[k]) * dot(parts[k], theory.w)
        for l in range(k + 1, len(parts)):
            total -= abs(levels[k] - levels[l]) * cartan_pairing(parts[k], parts[l], C)
    return total


def casimir_degrees(theory: GaugeTheory, coweight: Coweight) -> list[int]:
    """Degrees of the Casimirs of the residual gauge group fixing the charge."""
    _check_shape(theory, coweight)
    if isinstance(theory, Sl2Flavor):
        return [1] if coweight.entries[0][0] else [2]
    if isinstance(theory, U1Charges):
        return [1]
    degrees = []
    for block in coweight.entries:
        for _, run in groupby(sorted(block)):
            degrees.extend(range(1, len(list(run)) + 1))
    if theory.group is Group.PROD_GL_MOD_CENTER:
        degrees.remove(1)
    return sorted(degrees)
