"""
Reduced charge space and the chamber fan of the monopole formula.

2*Delta is piecewise linear: it is linear on every chamber of the hyperplane
arrangement cut out by the roots and the matter weights. Chambers are built by
splitting the dominant cone one hyperplane at a time; extreme rays come from
the double description method (pycddlib, exact fractions).
"""
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb
from typing import Callable, Iterator, Optional

import cdd

from config import settings
from config.logger_config import setup_logger
from monopole.formula import (
    Coweight,
    LinearForm,
    coordinate_count,
    vector_multiplet_forms,
    vertex_offsets,
    weight_multiset,
)
from quiver.core import (
    GaugeTheory,
    Group,
    QuiverTheory,
    Sl2Flavor,
    dot,
    primitive_integer_vector,
)
from utilities.errors import BudgetExceededError, DimensionLimitError

logger = setup_logger(__name__)


@dataclass(frozen=True)
class ChargeSpace:
    """
    Coordinates left after pinning one entry to zero (mod-center groups only).

    The pinned entry is the last entry of the last vertex with v_i > 0, so the
    Weyl ordering on that vertex reads as nonnegativity of its other entries.
    """

    theory: GaugeTheory
    full_dim: int
    pinned: Optional[int] = None

    @property
    def dim(self) -> int:
        return self.full_dim - (0 if self.pinned is None else 1)

    def reduce(self, form) -> tuple[int, ...]:
        return tuple(x for i, x in enumerate(form) if i != self.pinned)

    def lift(self, reduced) -> Coweight:
        flat = list(reduced)
        if self.pinned is not None:
            flat.insert(self.pinned, 0)
        return Coweight.from_flat(self.theory, flat)

    def weyl_rows(self) -> list[tuple[int, ...]]:
        if not isinstance(self.theory, QuiverTheory):
            return []
        rows = []
        for offset, size in zip(vertex_offsets(self.theory), self.theory.v):
            for k in range(size - 1):
                row = [0] * self.full_dim
                row[offset + k], row[offset + k + 1] = 1, -1
                rows.append(self.reduce(row))
        return rows


def charge_space(theory: GaugeTheory) -> ChargeSpace:
    n = coordinate_count(theory)
    if isinstance(theory, QuiverTheory) and theory.group is Group.PROD_GL_MOD_CENTER:
        last = max(i for i, size in enumerate(theory.v) if size)
        return ChargeSpace(theory, n, vertex_offsets(theory)[last] + theory.v[last] - 1)
    return ChargeSpace(theory, n)


def _nonincreasing(values: range, length: int) -> Iterator[tuple[int, ...]]:
    return combinations_with_replacement(values, length)


def _block_choices(space: ChargeSpace, radius: int) -> list[list[tuple[int, ...]]]:
    theory = space.theory
    if isinstance(theory, Sl2Flavor):
        return [[(n,) for n in range(radius, -1, -1)]]
    if not isinstance(theory, QuiverTheory):
        return [[(n,) for n in range(radius, -radius - 1, -1)]]
    choices = []
    for offset, size in zip(vertex_offsets(theory), theory.v):
        if space.pinned is not None and offset <= space.pinned < offset + size:
            choices.append([block + (0,) for block in _nonincreasing(range(radius, -1, -1), size - 1)])
        else:
            choices.append(list(_nonincreasing(range(radius, -radius - 1, -1), size)))
    return choices


def dominant_point_count(space: ChargeSpace, radius: int) -> int:
    theory = space.theory
    if not isinstance(theory, QuiverTheory):
        return radius + 1 if isinstance(theory, Sl2Flavor) else 2 * radius + 1
    total = 1
    for offset, size in zip(vertex_offsets(theory), theory.v):
        if space.pinned is not None and offset <= space.pinned < offset + size:
            total *= comb(radius + size - 1, size - 1)
        else:
            total *= comb(2 * radius + size, size)
    return total


def dominant_points(space: ChargeSpace, radius: int, budget: Optional[int] = None) -> Iterator[Coweight]:
    """Dominant pinned charges with sup norm at most ``radius``, zero included."""
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    count = dominant_point_count(space, radius)
    if count > budget:
        raise BudgetExceededError(
            f"{count} charges within radius {radius} exceed the budget of {budget}"
        )
    for blocks in product(*_block_choices(space, radius)):
        yield Coweight(tuple(blocks))


def cone_generators(inequalities: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """Primitive integer generators of the cone {x : row . x >= 0 for every row}."""
    rows = [[0, *row] for row in inequalities] or [[0] * (dim + 1)]
    mat = cdd.Matrix(rows, number_type="fraction")
    mat.rep_type = cdd.RepType.INEQUALITY
    generators = cdd.Polyhedron(mat).get_generators()
    rays = set()
    for idx in range(generators.row_size):
        row = generators[idx]
        if row[0] != 0:
            continue
        ray = primitive_integer_vector(row[1:])
        if not any(ray):
            continue
        rays.add(ray)
        if idx in generators.lin_set:
            rays.add(tuple(-x for x in ray))
    return sorted(rays)


def arrangement_forms(space: ChargeSpace) -> list[LinearForm]:
    forms = set()
    theory = space.theory
    every = list(vector_multiplet_forms(theory)) + [mu for mu, _ in weight_multiset(theory).items]
    for form in every:
        reduced = primitive_integer_vector(space.reduce(form))
        if not any(reduced):
            continue
        lead = next(x for x in reduced if x)
        if lead < 0:
            reduced = tuple(-x for x in reduced)
        forms.add(reduced)
    return sorted(forms)


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    rays: tuple[Coweight, ...]
    reduced_rays: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ChamberFan:
    space: ChargeSpace
    forms: tuple[LinearForm, ...]
    chambers: tuple[Chamber, ...]

    def all_rays(self) -> list[Coweight]:
        seen = {}
        for chamber in self.chambers:
            for reduced, ray in zip(chamber.reduced_rays, chamber.rays):
                seen[reduced] = ray
        return [seen[key] for key in sorted(seen)]


class RegionProbeHit(Exception):
    """Raised to stop refinement as soon as a probe reports a result."""

    def __init__(self, payload):
        self.payload = payload
        super().__init__("probe hit")


def refine_regions(
    space: ChargeSpace,
    forms: list[LinearForm],
    probe: Optional[Callable] = None,
    budget: Optional[int] = None,
) -> list[tuple[tuple, list]]:
    budget = settings.ENUMERATION_BUDGET if budget is None else budget

    def visit(inequalities):
        rays = cone_generators(list(inequalities), space.dim)
        if probe is not None:
            hit = probe(rays)
            if hit is not None:
                raise RegionProbeHit(hit)
        return inequalities, rays

    regions = [visit(tuple(space.weyl_rows()))]
    created = 1
    for form in forms:
        refined = []
        negated = tuple(-x for x in form)
        for inequalities, rays in regions:
            values = [dot(form, r) for r in rays]
            if any(x > 0 for x in values) and any(x < 0 for x in values):
                refined.append(visit(inequalities + (form,)))
                refined.append(visit(inequalities + (negated,)))
                created += 2
                if created > budget:
                    raise BudgetExceededError(f"chamber refinement passed {budget} regions")
            else:
                refined.append((inequalities, rays))
        regions = refined
    return regions


def chambers(
    theory: GaugeTheory,
    dim_limit: Optional[int] = None,
    budget: Optional[int] = None,
) -> ChamberFan:
    space = charge_space(theory)
    dim_limit = settings.DIMENSION_LIMIT if dim_limit is None else dim_limit
    if space.dim > dim_limit:
        raise DimensionLimitError(
            f"reduced charge space has dimension {space.dim} > {dim_limit}; use brute_force_min"
        )
    forms = arrangement_forms(space)
    if space.dim == 0:
        return ChamberFan(space, tuple(forms), ())
    result = []
    for _, rays in refine_regions(space, forms, budget=budget):
        signs = tuple(1 if max(dot(f, r) for r in rays) > 0 else -1 for f in forms)
        result.append(Chamber(signs, tuple(space.lift(r) for r in rays), tuple(rays)))
    result.sort(key=lambda c: tuple(-s for s in c.signs))
    logger.info(f"Built {len(result)} chambers in dimension {space.dim}")
    return ChamberFan(space, tuple(forms), tuple(result))
