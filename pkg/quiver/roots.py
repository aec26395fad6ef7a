"""
Positive roots of simply laced quivers.

Finite types are enumerated completely by closing the simple roots under
simple reflections. Affine types are listed below a componentwise bound from
the roots of the finite part: n*delta + alpha, n*delta - alpha and n*delta.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Optional

import sympy

from config.logger_config import setup_logger
from quiver.core import (
    CartanMatrix,
    DimVector,
    apply_cartan,
    cartan_pairing,
    connected_support,
    graded_key,
    leq,
    primitive_integer_vector,
    unit_vector,
)
from utilities.errors import PreconditionError

logger = setup_logger(__name__)


class RootTag(str, Enum):
    REAL = "Real"
    IMAGINARY = "Imaginary"


@dataclass(frozen=True)
class RootTable:
    roots: tuple[tuple[DimVector, RootTag], ...]
    delta: Optional[DimVector] = None
    bound: Optional[DimVector] = None
    complete: bool = False

    def vectors(self) -> list[DimVector]:
        return [beta for beta, _ in self.roots]

    def real_roots(self) -> list[DimVector]:
        return [beta for beta, tag in self.roots if tag is RootTag.REAL]

    def imaginary_roots(self) -> list[DimVector]:
        return [beta for beta, tag in self.roots if tag is RootTag.IMAGINARY]

    def tag_of(self, v: DimVector) -> Optional[RootTag]:
        for beta, tag in self.roots:
            if beta == tuple(v):
                return tag
        return None


def _definiteness(C: CartanMatrix) -> tuple[bool, bool]:
    matrix = sympy.Matrix(C)
    return bool(matrix.is_positive_definite), bool(matrix.is_positive_semidefinite)


def _sorted_table(found: dict, **kwargs) -> RootTable:
    ordered = sorted(found.items(), key=lambda item: graded_key(item[0]))
    return RootTable(roots=tuple(ordered), **kwargs)


def positive_roots_finite(C: CartanMatrix) -> RootTable:
    definite, _ = _definiteness(C)
    if not definite:
        raise PreconditionError("positive_roots_finite needs a finite-type Cartan matrix")
    rank = len(C)
    simple = [unit_vector(rank, i) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            image = apply_cartan(C, beta)
            for i in range(rank):
                reflected = tuple(
                    x - image[i] if k == i else x for k, x in enumerate(beta)
                )
                if any(x < 0 for x in reflected) or not any(reflected):
                    continue
                if reflected not in found:
                    found.add(reflected)
                    nxt.append(reflected)
        frontier = nxt
    logger.debug(f"Enumerated {len(found)} positive roots in rank {rank}")
    bound = tuple(max(beta[i] for beta in found) for i in range(rank)) if found else ()
    return _sorted_table(
        {beta: RootTag.REAL for beta in found}, bound=bound, complete=True
    )


def _null_vector(C: CartanMatrix) -> DimVector:
    kernel = sympy.Matrix(C).nullspace()
    delta = primitive_integer_vector(list(kernel[0]))
    if all(x <= 0 for x in delta):
        delta = tuple(-x for x in delta)
    return delta


def _drop_index(C: CartanMatrix, i: int) -> CartanMatrix:
    return tuple(
        tuple(c for k, c in enumerate(row) if k != i) for j, row in enumerate(C) if j != i
    )


def positive_roots_bounded(
    C: CartanMatrix, bound: DimVector, affine_index: Optional[int] = None
) -> RootTable:
    definite, semidefinite = _definiteness(C)
    if definite or not semidefinite or sympy.Matrix(C).rank() != len(C) - 1:
        raise PreconditionError("positive_roots_bounded needs an affine Cartan matrix")
    bound = tuple(bound)
    if any(x < 0 for x in bound):
        raise PreconditionError("bound must be >= 0")
    delta = _null_vector(C)
    rank = len(C)
    if affine_index is None:
        affine_index = delta.index(1)

    finite_part = []
    if rank > 1:
        for alpha in positive_roots_finite(_drop_index(C, affine_index)).vectors():
            embedded = list(alpha)
            embedded.insert(affine_index, 0)
            finite_part.append(tuple(embedded))

    # n*delta <= bound caps n; n*delta - alpha can reach one step further.
    n_max = min(b // d for b, d in zip(bound, delta)) + 1
    found = {}
    for n in range(n_max + 1):
        shift = tuple(n * d for d in delta)
        candidates = [(tuple(s + a for s, a in zip(shift, alpha)), RootTag.REAL) for alpha in finite_part]
        if n > 0:
            candidates += [(tuple(s - a for s, a in zip(shift, alpha)), RootTag.REAL) for alpha in finite_part]
            candidates.append((shift, RootTag.IMAGINARY))
        for beta, tag in candidates:
            if any(beta) and leq(beta, bound):
                found[beta] = tag
    return _sorted_table(found, delta=delta, bound=bound)


def is_positive_root(v: DimVector, table: RootTable) -> bool:
    v = tuple(v)
    if not table.complete and not leq(v, table.bound):
        raise PreconditionError(f"{list(v)} exceeds the table bound {list(table.bound)}")
    return table.tag_of(v) is not None


def is_dominant(weight) -> bool:
    return all(x >= 0 for x in weight)


def brute_force_roots(C: CartanMatrix, bound: DimVector, quiver=None) -> set:
    """Every 0 < beta <= bound with <beta, C beta> in {0, 2} and connected support."""
    found = set()
    for beta in product(*(range(b + 1) for b in bound)):
        if not any(beta):
            continue
        if cartan_pairing(beta, beta, C) not in (0, 2):
            continue
        if quiver is not None and not connected_support(quiver, beta):
            continue
        found.add(beta)
    return found
