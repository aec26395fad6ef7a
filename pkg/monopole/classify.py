"""
Good / Ugly / Bad classification of gauge theories.

A theory is Bad if some nonzero charge has 2*Delta <= 0, Ugly if the minimum
over nonzero charges is exactly 1 and Good otherwise. Chamber rays turn this
into a finite computation; brute force over a ball is kept as an oracle.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement, product, repeat
from typing import Optional

from config import settings
from config.logger_config import setup_logger
from monopole.chambers import (
    RegionProbeHit,
    arrangement_forms,
    charge_space,
    dominant_point_count,
    dominant_points,
    refine_regions,
)
from monopole.formula import (
    Coweight,
    block_coweight,
    canonicalize,
    two_delta,
    witness_key,
)
from quiver.core import (
    DimVector,
    GaugeTheory,
    GraphClass,
    Group,
    Quiver,
    QuiverTheory,
    Sl2Flavor,
    U1Charges,
    apply_cartan,
    cartan_matrix,
    classify_graph,
    connected_support,
    dynkin_family,
    subtract,
    unit_vector,
)
from quiver.roots import is_positive_root, positive_roots_finite
from utilities.errors import BudgetExceededError, DimensionLimitError, PreconditionError

logger = setup_logger(__name__)

# Scans with fewer charges run in-process.
PARALLEL_MIN_POINTS = 20_000

SL2_THREE_FLAVOR_NOTE = (
    "SU(2) with 3 flavors: Good under the 2*Delta grading (min 2); "
    "the Delta-normalized degree table gives deg x = 1, an ugly reading"
)


class Verdict(str, Enum):
    GOOD = "Good"
    UGLY = "Ugly"
    BAD = "Bad"


@dataclass(frozen=True)
class Certificate:
    kind: str
    ray_count: int = 0
    kappa: Optional[int] = None
    radius_bound: Optional[int] = None
    scanned_points: int = 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ray_count": self.ray_count,
            "kappa": self.kappa,
            "radius_bound": self.radius_bound,
            "scanned_points": self.scanned_points,
        }


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    witness: Optional[Coweight]
    witness_value: Optional[int]
    min_value: Optional[int]
    certificate: Certificate
    notes: tuple[str, ...] = field(default_factory=tuple)


def _best(theory: GaugeTheory, scored):
    """Smallest value, ties broken by the canonical witness order."""
    best = None
    for value, coweight in scored:
        key = (value, witness_key(theory, coweight))
        if best is None or key < best[0]:
            best = (key, value, coweight)
    return None if best is None else (best[1], best[2])


def _smallest(theory: GaugeTheory, scored):
    """Canonically smallest witness, regardless of value."""
    ordered = sorted(scored, key=lambda item: witness_key(theory, item[1]))
    return ordered[0] if ordered else None


def _score_chunk(theory: GaugeTheory, chunk: list[Coweight]):
    return _best(theory, ((two_delta(theory, c), c) for c in chunk if not c.is_zero()))


def scan_minimum(
    theory: GaugeTheory,
    points: list[Coweight],
    threads: int = 1,
    min_points: int = PARALLEL_MIN_POINTS,
):
    """
    Minimum of 2*Delta over the nonzero points, with its witness.

    The scoring is pure-Python Fraction arithmetic, so ``threads`` counts worker
    processes; scans shorter than ``min_points`` stay in this process.
    """
    if threads <= 1 or len(points) < max(min_points, 2 * threads):
        return _score_chunk(theory, points)
    size = -(-len(points) // threads)
    chunks = [points[i:i + size] for i in range(0, len(points), size)]
    logger.debug(f"Scanning {len(points)} charges in {len(chunks)} worker processes")
    with ProcessPoolExecutor(max_workers=threads) as pool:
        partial = [r for r in pool.map(_score_chunk, repeat(theory), chunks) if r is not None]
    return _best(theory, partial)


def prescan(theory: GaugeTheory, radius: int, budget: Optional[int] = None):
    """Cheap search for a charge with 2*Delta <= 0 in a small dominant ball."""
    space = charge_space(theory)
    if radius <= 0 or space.dim == 0:
        return None
    scored = [(two_delta(theory, c), c) for c in dominant_points(space, radius, budget) if not c.is_zero()]
    return _smallest(theory, [s for s in scored if s[0] <= 0])


def _notes(theory: GaugeTheory) -> tuple[str, ...]:
    if isinstance(theory, Sl2Flavor) and theory.n_flavors == 3:
        return (SL2_THREE_FLAVOR_NOTE,)
    return ()


def _bad(theory, value, witness, certificate) -> Classification:
    return Classification(
        verdict=Verdict.BAD,
        witness=canonicalize(theory, witness),
        witness_value=value,
        min_value=None,
        certificate=certificate,
        notes=_notes(theory),
    )


def classify_theory(
    theory: GaugeTheory,
    dim_limit: Optional[int] = None,
    budget: Optional[int] = None,
    prescan_radius: Optional[int] = None,
    threads: Optional[int] = None,
) -> Classification:
    """
    Exact verdict. Rays with 2*Delta <= 0 prove Bad; otherwise, with kappa the
    smallest ray value and R the largest ray sup norm, every charge with
    2*Delta <= kappa lies in the dominant ball of radius R, which is scanned.
    """
    dim_limit = settings.DIMENSION_LIMIT if dim_limit is None else dim_limit
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    prescan_radius = settings.PRESCAN_RADIUS if prescan_radius is None else prescan_radius
    threads = settings.THREADS if threads is None else threads

    space = charge_space(theory)
    if space.dim == 0:
        return Classification(Verdict.UGLY, None, None, None, Certificate("trivial"), _notes(theory))
    if space.dim > dim_limit:
        raise DimensionLimitError(
            f"reduced charge space has dimension {space.dim} > {dim_limit}; use brute_force_min"
        )

    if dominant_point_count(space, prescan_radius) <= budget:
        early = prescan(theory, prescan_radius, budget)
        if early is not None:
            logger.info(f"Prescan found 2*Delta = {early[0]} at {early[1]}")
            scanned = dominant_point_count(space, prescan_radius)
            return _bad(theory, early[0], early[1], Certificate("prescan", scanned_points=scanned))

    def probe(rays):
        scored = [(two_delta(theory, c), c) for c in map(space.lift, rays)]
        return _smallest(theory, [s for s in scored if s[0] <= 0])

    try:
        regions = refine_regions(space, arrangement_forms(space), probe=probe, budget=budget)
    except RegionProbeHit as hit:
        value, ray = hit.payload
        logger.info(f"Chamber ray {ray} has 2*Delta = {value}")
        return _bad(theory, value, ray, Certificate("bad_ray"))

    rays = sorted({r for _, region_rays in regions for r in region_rays})
    kappa = min(two_delta(theory, space.lift(r)) for r in rays)
    radius = max(max(abs(x) for x in r) for r in rays)
    points = list(dominant_points(space, radius, budget))
    value, witness = scan_minimum(theory, points, threads)
    certificate = Certificate(
        "chambers",
        ray_count=len(rays),
        kappa=kappa,
        radius_bound=radius,
        scanned_points=len(points),
    )
    verdict = Verdict.UGLY if value == 1 else Verdict.GOOD
    logger.info(f"Verdict {verdict.value}: min 2*Delta = {value}, kappa = {kappa}, R = {radius}")
    return Classification(verdict, canonicalize(theory, witness), value, value, certificate, _notes(theory))


def _canonical_choices(theory: GaugeTheory, radius: int):
    if isinstance(theory, Sl2Flavor):
        return [[(n,) for n in range(1, radius + 1)]]
    if isinstance(theory, U1Charges):
        return [[(n,) for n in range(radius, -radius - 1, -1) if n]]
    low = 0 if theory.group is Group.PROD_GL_MOD_CENTER else -radius
    return [list(combinations_with_replacement(range(radius, low - 1, -1), size)) for size in theory.v]


def brute_force_min(theory: GaugeTheory, radius: int, budget: Optional[int] = None):
    """
    Minimum of 2*Delta over nonzero canonical charges with sup norm <= radius.

    Returns (value, witness), or (None, None) when the ball holds no such charge.
    """
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    choices = _canonical_choices(theory, radius)
    count = 1
    for options in choices:
        count *= len(options)
    if count > budget:
        raise BudgetExceededError(f"{count} candidate charges exceed the budget of {budget}")
    mod_center = isinstance(theory, QuiverTheory) and theory.group is Group.PROD_GL_MOD_CENTER
    scored = []
    for blocks in product(*choices):
        coweight = Coweight(tuple(blocks))
        flat = coweight.flat()
        if not any(flat) or (mod_center and min(flat) != 0):
            continue
        scored.append((two_delta(theory, coweight), coweight))
    best = _best(theory, scored)
    return (None, None) if best is None else best


@dataclass(frozen=True)
class NeverGoodEntry:
    v: DimVector
    verdict: Verdict
    is_root: bool
    witness: Optional[Coweight]


@dataclass(frozen=True)
class NeverGoodReport:
    family: str
    entries: tuple[NeverGoodEntry, ...]
    all_non_good: bool
    root_rule_holds: Optional[bool]


def verify_never_good(quiver: Quiver, v_bound: DimVector, **options) -> NeverGoodReport:
    """
    Classify every unframed mod-center theory 0 < v <= v_bound with connected
    support. Types A and D must be Ugly exactly on positive roots; E is recorded.
    """
    if classify_graph(quiver).kind is not GraphClass.FINITE:
        raise PreconditionError("verify_never_good needs a finite ADE quiver")
    family = dynkin_family(quiver)
    table = positive_roots_finite(cartan_matrix(quiver))
    entries = []
    for v in product(*(range(b + 1) for b in v_bound)):
        if not any(v) or not connected_support(quiver, v):
            continue
        theory = QuiverTheory(quiver, v, (0,) * quiver.rank, Group.PROD_GL_MOD_CENTER)
        result = classify_theory(theory, **options)
        entries.append(NeverGoodEntry(tuple(v), result.verdict, is_positive_root(v, table), result.witness))
    all_non_good = all(e.verdict is not Verdict.GOOD for e in entries)
    rule = all((e.verdict is Verdict.UGLY) == e.is_root for e in entries)
    return NeverGoodReport(family, tuple(entries), all_non_good, None if family == "E" else rule)


def never_good_witness(theory: QuiverTheory) -> tuple[Coweight, int]:
    """
    Explicit charge with 2*Delta <= 1 for unframed finite-type theories.

    Some vertex i with v_i > 0 has (Cv)_i >= 1 because C is positive definite.
    Splitting v into (v - e_i) at level 0 and e_i at level 1 gives 2 - (Cv)_i.
    """
    if not isinstance(theory, QuiverTheory) or theory.is_framed:
        raise PreconditionError("never_good_witness needs an unframed quiver theory")
    if classify_graph(theory.quiver).kind is not GraphClass.FINITE:
        raise PreconditionError("never_good_witness needs a finite-type quiver")
    Cv = apply_cartan(cartan_matrix(theory.quiver), theory.v)
    for i, (size, pushed) in enumerate(zip(theory.v, Cv)):
        if size > 0 and pushed > 0:
            simple = unit_vector(theory.quiver.rank, i)
            coweight = block_coweight(theory, [subtract(theory.v, simple), simple], [0, 1])
            return coweight, two_delta(theory, coweight)
    raise PreconditionError("Cartan matrix is not positive definite on v")
