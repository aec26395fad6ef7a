"""Independent series used to cross-check the monopole formula."""
from hilbert.series import TruncatedSeries
from utilities.errors import PreconditionError


def molien_cyclic(order: int, weights: tuple[int, int], cutoff: int) -> TruncatedSeries:
    """
    Hilbert series of C[x, y] invariant under Z/order acting with the given
    weights, with x and y in degree 1: count the invariant monomials.
    """
    if order < 1:
        raise PreconditionError("the group order must be >= 1")
    w1, w2 = weights
    coeffs = []
    for degree in range(cutoff + 1):
        coeffs.append(sum(1 for a in range(degree + 1) if (a * w1 + (degree - a) * w2) % order == 0))
    return TruncatedSeries(cutoff, tuple(coeffs))
