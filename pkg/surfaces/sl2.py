"""
Coulomb branches of SU(2) with N fundamental flavors as affine surfaces.

    y^2 = x^2 z - z^(N-1)   (N >= 1)
    y^2 = x^2 z + x         (N = 0)

Polynomials are sympy Polys over the integers in the generators x, y, z.
"""
from dataclasses import dataclass
from typing import Optional

import sympy

from monopole.classify import Classification, classify_theory
from quiver.core import Sl2Flavor
from utilities.errors import PreconditionError

X, Y, Z = sympy.symbols("x y z")

BFN_NOTE = "N in {1, 2, 3}: the BFN construction is not known to reproduce this surface"


@dataclass(frozen=True)
class SurfaceDegrees:
    delta: tuple[int, int, int]
    doubled: tuple[int, int, int]
    conical: bool


@dataclass(frozen=True)
class HiggsSummary:
    n_flavors: int
    is_point: bool
    complete_intersection_dim: Optional[int]
    components: Optional[int]
    higgs_strata_count: int

    def to_json(self) -> dict:
        return {
            "n_flavors": self.n_flavors,
            "is_point": self.is_point,
            "complete_intersection_dim": self.complete_intersection_dim,
            "components": self.components,
            "higgs_strata_count": self.higgs_strata_count,
        }


@dataclass(frozen=True)
class SurfaceRecord:
    n_flavors: int
    equation: sympy.Poly
    degrees: SurfaceDegrees
    singular_points: tuple[tuple[sympy.Rational, ...], ...]
    strata_count: int
    conical: bool
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "n_flavors": self.n_flavors,
            "equation": f"{sympy.sstr(self.equation.as_expr())} = 0",
            "degrees": {"delta": list(self.degrees.delta), "doubled": list(self.degrees.doubled)},
            "singular_points": [[str(c) for c in p] for p in self.singular_points],
            "strata_count": self.strata_count,
            "conical": self.conical,
            "notes": list(self.notes),
        }


def _check(n: int):
    if n < 0:
        raise PreconditionError("the number of flavors must be >= 0")


def surface_equation(n: int) -> sympy.Poly:
    _check(n)
    if n == 0:
        return sympy.Poly(Y**2 - X**2 * Z - X, X, Y, Z, domain="ZZ")
    return sympy.Poly(Y**2 - X**2 * Z + Z ** (n - 1), X, Y, Z, domain="ZZ")


def surface_degrees(n: int) -> SurfaceDegrees:
    _check(n)
    delta = (n - 2, n - 1, 2)
    return SurfaceDegrees(delta, tuple(2 * d for d in delta), all(d > 0 for d in delta))


def weighted_degrees(poly: sympy.Poly, weights) -> set[int]:
    """Weighted degree of every monomial; a single value means quasi-homogeneous."""
    return {sum(e * w for e, w in zip(monomial, weights)) for monomial in poly.monoms()}


def surface_singular_points(n: int) -> list[tuple[sympy.Rational, ...]]:
    """
    Common zeros of f and its partials. f_y = 2y forces y = 0. For N >= 1,
    f_x = -2xz and f_z = -x^2 + (N-1) z^(N-2): x = 0 needs z = 0 (N >= 3),
    while z = 0 needs x^2 = 1 (N = 2) or x = 0.
    """
    _check(n)
    zero = sympy.Integer(0)
    if n in (0, 1):
        return []
    if n == 2:
        return [(sympy.Integer(-1), zero, zero), (sympy.Integer(1), zero, zero)]
    return [(zero, zero, zero)]


def is_singular_point(poly: sympy.Poly, point) -> bool:
    values = dict(zip((X, Y, Z), point))
    polys = [poly] + [poly.diff(g) for g in (X, Y, Z)]
    return all(p.as_expr().subs(values) == 0 for p in polys)


def sl2_classify(n: int) -> Classification:
    _check(n)
    return classify_theory(Sl2Flavor(n))


def sl2_higgs_summary(n: int) -> HiggsSummary:
    """Higgs side of SU(2) with N flavors, as a record of known facts."""
    _check(n)
    if n <= 1:
        return HiggsSummary(n, True, None, None, 1)
    components = 2 if n == 2 else 1
    return HiggsSummary(n, False, 4 * n - 3, components, 3 if n == 2 else 2)


def surface_record(n: int) -> SurfaceRecord:
    _check(n)
    degrees = surface_degrees(n)
    points = surface_singular_points(n)
    return SurfaceRecord(
        n_flavors=n,
        equation=surface_equation(n),
        degrees=degrees,
        singular_points=tuple(points),
        strata_count=1 + len(points),
        conical=degrees.conical,
        notes=(BFN_NOTE,) if n in (1, 2, 3) else (),
    )
