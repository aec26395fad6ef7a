"""
Truncated Hilbert series.

The monopole series sums t^(2 Delta(l)) times a dressing factor over dominant
charges l. Rational functions are expanded exactly for comparison.
"""
import math
from dataclasses import dataclass, field
from tokenize import TokenError
from typing import Optional

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from config import settings
from config.logger_config import setup_logger
from monopole.chambers import charge_space, dominant_points
from monopole.classify import Verdict, classify_theory
from monopole.formula import Coweight, casimir_degrees, two_delta
from quiver.core import GaugeTheory
from utilities.errors import PreconditionError, TheoryValidationError

logger = setup_logger(__name__)

T = sympy.Symbol("t")


@dataclass(frozen=True)
class TruncatedSeries:
    cutoff: int
    coeffs: tuple[int, ...]
    certified: bool = field(default=True, compare=False)

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)[: self.cutoff + 1]
        coeffs += (0,) * (self.cutoff + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def one(cls, cutoff: int) -> "TruncatedSeries":
        return cls(cutoff, (1,))

    @classmethod
    def geometric(cls, degree: int, cutoff: int) -> "TruncatedSeries":
        """1 / (1 - t^degree)."""
        if degree < 1:
            raise PreconditionError("denominator degrees must be >= 1")
        return cls(cutoff, tuple(1 if k % degree == 0 else 0 for k in range(cutoff + 1)))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cutoff = min(self.cutoff, other.cutoff)
        return TruncatedSeries(cutoff, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cutoff = min(self.cutoff, other.cutoff)
        out = [0] * (cutoff + 1)
        for i, a in enumerate(self.coeffs[: cutoff + 1]):
            if a:
                for j in range(cutoff + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(cutoff, tuple(out))

    def shift(self, degree: int) -> "TruncatedSeries":
        return TruncatedSeries(self.cutoff, (0,) * degree + self.coeffs)

    def uncertified(self) -> "TruncatedSeries":
        return TruncatedSeries(self.cutoff, self.coeffs, certified=False)


@dataclass(frozen=True)
class RationalSeriesSpec:
    """prod (1 +- t^d) over the numerator divided by prod (1 - t^d)."""

    numerator: tuple[tuple[int, int], ...] = ()
    denominator: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 1 for d in self.denominator):
            raise PreconditionError("denominator degrees must be >= 1")
        if any(sign not in (1, -1) for sign, _ in self.numerator):
            raise PreconditionError("numerator signs must be +1 or -1")


def expand_rational(spec: RationalSeriesSpec, cutoff: int) -> TruncatedSeries:
    result = TruncatedSeries.one(cutoff)
    for sign, degree in spec.numerator:
        factor = [0] * (cutoff + 1)
        factor[0] += 1
        if degree <= cutoff:
            factor[degree] += sign
        result = result * TruncatedSeries(cutoff, tuple(factor))
    for degree in spec.denominator:
        result = result * TruncatedSeries.geometric(degree, cutoff)
    return result


def expand_expression(text: str, cutoff: int) -> TruncatedSeries:
    """
    Expand a rational function of t given as text, e.g. "(1+t^3)/((1-t^2)(1-t^3))".
    The denominator must have constant term +1 or -1.
    """
    transformations = standard_transformations + (implicit_multiplication_application, convert_xor)
    try:
        expr = parse_expr(text, local_dict={"t": T}, transformations=transformations)
    except (SyntaxError, TypeError, sympy.SympifyError, TokenError) as e:
        raise TheoryValidationError("series-expression", f"cannot parse {text!r}: {e}")
    numerator, denominator = sympy.fraction(sympy.together(expr))
    try:
        num = sympy.Poly(numerator, T)
        den = sympy.Poly(denominator, T)
    except sympy.PolynomialError as e:
        raise TheoryValidationError("series-expression", f"{text!r} is not rational in t: {e}")
    a = [num.coeff_monomial(T**k) for k in range(cutoff + 1)]
    b = [den.coeff_monomial(T**k) for k in range(den.degree() + 1)]
    if b[0] not in (1, -1) or any(not c.is_integer for c in a + b):
        raise TheoryValidationError(
            "series-expression", "need integer coefficients and denominator constant term +-1"
        )
    out = []
    for k in range(cutoff + 1):
        acc = a[k] - sum(b[j] * out[k - j] for j in range(1, min(k, len(b) - 1) + 1))
        out.append(int(acc * b[0]))
    return TruncatedSeries(cutoff, tuple(out))


def dressing_factor(theory: GaugeTheory, coweight: Coweight, cutoff: int) -> TruncatedSeries:
    """prod over Casimir degrees d of the stabilizer of 1 / (1 - t^(2d))."""
    result = TruncatedSeries.one(cutoff)
    for d in casimir_degrees(theory, coweight):
        result = result * TruncatedSeries.geometric(2 * d, cutoff)
    return result


def charge_radius(theory: GaugeTheory, cutoff: int, **options) -> int:
    """Sup-norm radius holding every dominant charge with 2*Delta <= cutoff."""
    verdict = classify_theory(theory, **options)
    if verdict.verdict is Verdict.BAD:
        raise PreconditionError("Bad theory: the monopole series diverges")
    certificate = verdict.certificate
    if certificate.kind == "trivial":
        return 0
    return math.ceil(cutoff * certificate.radius_bound / certificate.kappa)


def monopole_series(
    theory: GaugeTheory,
    cutoff: int,
    radius: Optional[int] = None,
    budget: Optional[int] = None,
    **options,
) -> TruncatedSeries:
    """
    Sum of t^(2 Delta) times the dressing factor over dominant charges. With an
    explicit ``radius`` the charge scan is not backed by a classification and
    the result is marked uncertified.
    """
    if cutoff < 0:
        raise PreconditionError("cutoff must be >= 0")
    budget = settings.ENUMERATION_BUDGET if budget is None else budget
    certified = radius is None
    if certified:
        radius = charge_radius(theory, cutoff, budget=budget, **options)
    space = charge_space(theory)
    total = TruncatedSeries(cutoff, ())
    scanned = 0
    for coweight in dominant_points(space, radius, budget):
        scanned += 1
        value = two_delta(theory, coweight)
        if value < 0 or (value == 0 and not coweight.is_zero()):
            raise PreconditionError(f"2*Delta = {value} at {coweight}: the series diverges")
        if value <= cutoff:
            total = total + dressing_factor(theory, coweight, cutoff).shift(value)
    logger.info(f"Summed {scanned} charges within radius {radius} up to degree {cutoff}")
    return total if certified else total.uncertified()
