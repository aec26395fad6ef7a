"""
Complete intersection tests for the zero fiber of the hyperkahler moment map.

Unframed theories compare p(v) = 2 - <v, Cv> with sums of p over
decompositions of v into positive roots. Framed theories use the extra-vertex
form: <v, 2w - Cv> against <v0, 2w - Cv0> + sum p(beta) over splits
v = v0 + sum beta. Both maxima are found by dynamic programming over the
vectors below v, which visits every decomposition implicitly.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, Optional

from config import settings
from config.logger_config import setup_logger
from quiver.core import (
    DimVector,
    GaugeTheory,
    GraphClass,
    QuiverTheory,
    affine_vertex_index,
    apply_cartan,
    cartan_matrix,
    cartan_pairing,
    classify_graph,
    dot,
    graded_key,
    leq,
    subtract,
)
from quiver.roots import RootTable, positive_roots_bounded, positive_roots_finite
from utilities.errors import BudgetExceededError, PreconditionError

logger = setup_logger(__name__)


class PoolKind(str, Enum):
    ROOTS = "positive-roots"
    VECTORS = "positive-vectors"


class CiMethod(str, Enum):
    FULL = "full-enumeration"
    FAST_FINITE = "fast-path-finite"
    FAST_AFFINE = "fast-path-affine"
    WEIGHT_FORM = "weight-form"


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[DimVector, ...]
    remainder: Optional[DimVector] = None

    def to_json(self) -> dict:
        payload = {"parts": [list(p) for p in self.parts]}
        if self.remainder is not None:
            payload["remainder"] = list(self.remainder)
        return payload


@dataclass(frozen=True)
class CiReport:
    is_ci: bool
    method: CiMethod
    violation: Optional[Decomposition] = None
    slack: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "is_ci": self.is_ci,
            "method": self.method.value,
            "violation": None if self.violation is None else self.violation.to_json(),
            "slack": self.slack,
        }


def _below(target: DimVector) -> list[DimVector]:
    return sorted(product(*(range(x + 1) for x in target)), key=graded_key)


def root_table_for(theory: QuiverTheory, bound: DimVector) -> RootTable:
    C = cartan_matrix(theory.quiver)
    graph = classify_graph(theory.quiver)
    if graph.kind is GraphClass.FINITE:
        return positive_roots_finite(C)
    if graph.kind is GraphClass.AFFINE:
        return positive_roots_bounded(C, bound, affine_vertex_index(theory.quiver, graph.delta))
    raise PreconditionError("positive roots are only tabulated for finite and affine quivers")


def pool_parts(target: DimVector, pool: PoolKind, table: Optional[RootTable] = None) -> list[DimVector]:
    if pool is PoolKind.ROOTS:
        if table is None:
            raise PreconditionError("the root pool needs a root table")
        return sorted((b for b in table.vectors() if leq(b, target)), key=graded_key)
    return [u for u in _below(target) if any(u)]


def count_decompositions(target: DimVector, parts: list[DimVector]) -> int:
    memo = {}

    def count(remaining, start):
        if not any(remaining):
            return 1
        key = (remaining, start)
        if key not in memo:
            memo[key] = sum(
                count(subtract(remaining, parts[i]), i)
                for i in range(start, len(parts))
                if leq(parts[i], remaining)
            )
        return memo[key]

    return count(tuple(target), 0)


def decompositions(
    target: DimVector,
    pool: PoolKind = PoolKind.ROOTS,
    table: Optional[RootTable] = None,
    budget: Optional[int] = None,
) -> Iterator[Decomposition]:
    """Every multiset of pool parts summing to ``target``, each exactly once."""
    target = tuple(target)
    if any(x < 0 for x in target):
        raise PreconditionError("target must be >= 0")
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    parts = pool_parts(target, pool, table)
    total = count_decompositions(target, parts)
    if total > budget:
        raise BudgetExceededError(f"{total} decompositions exceed the budget of {budget}")

    def walk(remaining, start):
        if not any(remaining):
            yield ()
            return
        for i in range(start, len(parts)):
            if leq(parts[i], remaining):
                for rest in walk(subtract(remaining, parts[i]), i):
                    yield (parts[i],) + rest

    for chosen in walk(target, 0):
        yield Decomposition(chosen)


def _best_sums(target: DimVector, parts: list[DimVector], C, budget: int):
    """
    For every u <= target, the largest sum of p(beta) = 2 - <beta, C beta>
    over decompositions of u into ``parts``, preferring fewer parts on ties.
    """
    states = _below(target)
    if len(states) * max(len(parts), 1) > budget:
        raise BudgetExceededError(
            f"{len(states)} states x {len(parts)} parts exceed the budget of {budget}"
        )
    weight = {b: 2 - cartan_pairing(b, b, C) for b in parts}
    best = {states[0]: ((0, 0), None)}
    for u in states[1:]:
        choice = None
        for b in parts:
            if not leq(b, u):
                continue
            rest = best.get(subtract(u, b))
            if rest is None:
                continue
            score = (rest[0][0] + weight[b], rest[0][1] - 1)
            if choice is None or score > choice[0]:
                choice = (score, b)
        if choice is not None:
            best[u] = choice
    return best


def _unwind(best, u) -> tuple[DimVector, ...]:
    parts = []
    while any(u):
        b = best[u][1]
        parts.append(b)
        u = subtract(u, b)
    return tuple(sorted(parts, key=graded_key))


def _quiver_theory(theory: GaugeTheory) -> QuiverTheory:
    if not isinstance(theory, QuiverTheory):
        raise PreconditionError("complete intersection checks need a quiver theory")
    return theory


def ci_check_unframed(
    theory: GaugeTheory, pool: PoolKind = PoolKind.ROOTS, budget: Optional[int] = None
) -> CiReport:
    theory = _quiver_theory(theory)
    if theory.is_framed:
        raise PreconditionError("ci_check_unframed needs w = 0")
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    C = cartan_matrix(theory.quiver)
    v = theory.v
    table = root_table_for(theory, v) if pool is PoolKind.ROOTS else None
    best = _best_sums(v, pool_parts(v, pool, table), C, budget)
    lhs = 2 - cartan_pairing(v, v, C)
    if v not in best:
        return CiReport(True, CiMethod.FULL)
    (rhs, _), _ = best[v]
    slack = lhs - rhs
    logger.debug(f"Unframed check v={list(v)}: lhs={lhs} rhs={rhs}")
    if slack >= 0:
        return CiReport(True, CiMethod.FULL, slack=slack)
    return CiReport(False, CiMethod.FULL, Decomposition(_unwind(best, v)), slack)


def ci_check_framed(
    theory: GaugeTheory, pool: PoolKind = PoolKind.VECTORS, budget: Optional[int] = None
) -> CiReport:
    theory = _quiver_theory(theory)
    if not theory.is_framed:
        raise PreconditionError("ci_check_framed needs w != 0")
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    C = cartan_matrix(theory.quiver)
    v, w = theory.v, theory.w

    def framed_form(u):
        return dot(u, tuple(2 * a - b for a, b in zip(w, apply_cartan(C, u))))

    if not any(v):
        return CiReport(True, CiMethod.FULL)
    table = root_table_for(theory, v) if pool is PoolKind.ROOTS else None
    best = _best_sums(v, pool_parts(v, pool, table), C, budget)
    lhs = framed_form(v)
    worst = None
    for v0 in _below(v):
        rest = subtract(v, v0)
        if not any(rest) or rest not in best:
            continue
        (parts_sum, fewer), _ = best[rest]
        score = (framed_form(v0) + parts_sum, fewer)
        if worst is None or score > worst[0]:
            worst = (score, v0)
    (rhs, _), v0 = worst
    slack = lhs - rhs
    if slack >= 0:
        return CiReport(True, CiMethod.FULL, slack=slack)
    return CiReport(False, CiMethod.FULL, Decomposition(_unwind(best, subtract(v, v0)), v0), slack)


def ci_fast_path_finite(theory: GaugeTheory) -> CiReport:
    """<beta, w - Cv> >= -1 for every positive root beta <= v."""
    theory = _quiver_theory(theory)
    if classify_graph(theory.quiver).kind is not GraphClass.FINITE:
        raise PreconditionError("ci_fast_path_finite needs a finite-type quiver")
    C = cartan_matrix(theory.quiver)
    x = tuple(a - b for a, b in zip(theory.w, apply_cartan(C, theory.v)))
    for beta in positive_roots_finite(C).vectors():
        if leq(beta, theory.v) and dot(beta, x) < -1:
            violation = Decomposition((beta,), subtract(theory.v, beta))
            return CiReport(False, CiMethod.FAST_FINITE, violation, dot(beta, x) + 1)
    return CiReport(True, CiMethod.FAST_FINITE)


def ci_fast_path_affine(theory: GaugeTheory) -> CiReport:
    """
    For finite-part roots alpha: <alpha, w - Cv> >= -1 when alpha <= v, and
    <delta - alpha, w - Cv> >= -1 when delta - alpha <= v.
    """
    theory = _quiver_theory(theory)
    graph = classify_graph(theory.quiver)
    if graph.kind is not GraphClass.AFFINE:
        raise PreconditionError("ci_fast_path_affine needs an affine quiver")
    if not theory.is_framed:
        raise PreconditionError("ci_fast_path_affine needs w != 0")
    C = cartan_matrix(theory.quiver)
    delta = graph.delta
    x = tuple(a - b for a, b in zip(theory.w, apply_cartan(C, theory.v)))
    affine = affine_vertex_index(theory.quiver, delta)
    table = positive_roots_bounded(C, delta, affine)
    finite_part = [b for b in table.real_roots() if b[affine] == 0]
    candidates = []
    for alpha in finite_part:
        candidates.append(alpha)
        candidates.append(subtract(delta, alpha))
    for beta in sorted(set(candidates), key=graded_key):
        if leq(beta, theory.v) and dot(beta, x) < -1:
            violation = Decomposition((beta,), subtract(theory.v, beta))
            return CiReport(False, CiMethod.FAST_AFFINE, violation, dot(beta, x) + 1)
    return CiReport(True, CiMethod.FAST_AFFINE)


def ci_check_weight_form(theory: GaugeTheory) -> CiReport:
    """2 <beta, w - Cv> + <beta, C beta> >= 0 for every 0 < beta <= v."""
    theory = _quiver_theory(theory)
    kind = classify_graph(theory.quiver).kind
    if kind is GraphClass.INDEFINITE:
        raise PreconditionError("ci_check_weight_form needs a finite or affine quiver")
    if kind is GraphClass.AFFINE and not theory.is_framed:
        raise PreconditionError("ci_check_weight_form needs w != 0 on affine quivers")
    C = cartan_matrix(theory.quiver)
    x = tuple(a - b for a, b in zip(theory.w, apply_cartan(C, theory.v)))
    for beta in _below(theory.v):
        if not any(beta):
            continue
        value = 2 * dot(beta, x) + cartan_pairing(beta, beta, C)
        if value < 0:
            return CiReport(False, CiMethod.WEIGHT_FORM, Decomposition((beta,), subtract(theory.v, beta)), value)
    return CiReport(True, CiMethod.WEIGHT_FORM)


def affine_unframed_ci_rule(theory: QuiverTheory) -> bool:
    """Unframed affine: complete intersection exactly for v in {alpha, delta - alpha, delta}."""
    graph = classify_graph(theory.quiver)
    if graph.kind is not GraphClass.AFFINE:
        raise PreconditionError("affine_unframed_ci_rule needs an affine quiver")
    delta = graph.delta
    if theory.v == delta:
        return True
    table = positive_roots_bounded(cartan_matrix(theory.quiver), delta, affine_vertex_index(theory.quiver, delta))
    return theory.v in table.real_roots()
