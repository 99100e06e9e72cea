"""Shared test utilities."""

from fractions import Fraction
from itertools import product

from dispkit import Point, PointSet, SplitMix64


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpmath float (binary floats are dyadic)."""
    sign, man, exp, _ = x._mpf_
    value = Fraction(int(man)) * Fraction(2) ** exp
    return -value if sign else value


def full_grid(q: int, d: int) -> PointSet:
    """The complete interior grid {1/q, ..., (q-1)/q}^d."""
    axis = [Fraction(k, q) for k in range(1, q)]
    return PointSet(d, (Point(row) for row in product(axis, repeat=d)))


def random_point_set(rng: SplitMix64, n: int, d: int, denom: int = 8) -> PointSet:
    """Small random rational point set; coordinates k/denom, k in 0..denom.

    The coarse denominator produces coordinate collisions and boundary
    points on purpose, which stresses the open/closed logic.
    """
    return PointSet(
        d,
        (
            Point([Fraction(rng.randbelow(denom + 1), denom) for _ in range(d)])
            for _ in range(n)
        ),
    )
