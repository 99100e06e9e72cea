"""Covering certificates: finite, sound evidence that dispersion <= 1/q.

The certificate family
----------------------
Fix integers q >= 2 and d >= 1, and let r = 1/q. Any open box of volume
greater than r has every side longer than r, and at most

    M = floor(ln r / ln(1 - r))

sides of length at most 1 - r (more short sides would already push the
volume below r). Let M_eff = min(M, d). For every choice of M_eff indices
j_1 < ... < j_M_eff and values k_{j_l} in {1, ..., q-1} the family
contains the closed box with the degenerate interval {k_i/q} on the fixed
indices and [1/q, (q-1)/q] elsewhere.

Soundness: take any open box B of volume > r. Pick as fixed indices all
its short sides (at most M_eff of them, padded with long sides up to
M_eff). Every side of B is longer than 1/q and therefore contains a grid
multiple k/q with k in {1, ..., q-1}; choosing those multiples as the
fixed values produces a family box contained in B. The non-fixed sides
are all long (length > 1 - r = (q-1)/q), so they cover [1/q, (q-1)/q].
Hence a point set intersecting every family box intersects every open box
of volume > r, i.e. its dispersion is at most 1/q. The family has
C(d, M_eff) * (q-1)^M_eff boxes, at most (dq)^M_eff.

Capping M at d extends the construction to small dimensions (with all
coordinates fixed the same containment argument applies); the covering
stays sound, which the test suite also checks end to end against the
exact engine.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterator, NamedTuple

from mpmath import iv, mp, mpf

from .constructions import grid_point_stream
from .errors import BudgetExceededError
from .geometry import BoxNd, Interval, PointSet

DEFAULT_FAMILY_BUDGET = 10**7


class FamilySizeWarning(UserWarning):
    """The covering family is large; the full check may be slow."""


@dataclass(frozen=True)
class GridPattern:
    """One covering-family box, encoded by its fixed coordinates.

    `fixed_indices` are 1-based dimension indices, strictly increasing;
    `fixed_values` are the grid numerators k (the box pins coordinate j to
    k/q). Range checks against a concrete (q, d) happen in
    `pattern_to_box`.
    """

    fixed_indices: tuple[int, ...]
    fixed_values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.fixed_indices) != len(self.fixed_values):
            raise ValueError("indices and values must have equal length")
        if any(i < 1 for i in self.fixed_indices):
            raise ValueError("indices are 1-based")
        if any(a >= b for a, b in zip(self.fixed_indices, self.fixed_indices[1:])):
            raise ValueError("indices must be strictly increasing")
        if any(v < 1 for v in self.fixed_values):
            raise ValueError("values must be >= 1")

    def __str__(self) -> str:
        idx = ",".join(map(str, self.fixed_indices))
        val = ",".join(map(str, self.fixed_values))
        return f"({idx}):({val})"


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of a covering-certificate check."""

    q: int
    d: int
    holds: bool
    patterns_checked: int
    family_size: int
    first_violation: GridPattern | None

    def __post_init__(self) -> None:
        if self.holds != (self.first_violation is None):
            raise ValueError("holds must match the absence of a violation")
        if self.holds and self.patterns_checked != self.family_size:
            raise ValueError("a holding check must have examined the whole family")


def short_side_limit(r: Fraction) -> int:
    """floor(ln r / ln(1-r)): max count of sides <= 1-r in a box of volume > r.

    Computed exactly as the largest m with (1-r)^m >= r, so no floating
    point is involved and the floor is provably correct.
    """
    r = Fraction(r)
    if not (0 < r < 1):
        raise ValueError(f"r must lie in (0, 1), got {r}")
    one_minus = 1 - r
    m = 0
    power = Fraction(1)
    while True:
        power *= one_minus
        if power < r:
            return m
        m += 1


def effective_short_side_limit(r: Fraction, d: int) -> int:
    """short_side_limit capped at the dimension."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return min(short_side_limit(r), d)


def covering_family_size(q: int, d: int) -> int:
    """C(d, M_eff) * (q-1)^M_eff, exactly."""
    if q < 2 or d < 1:
        raise ValueError("need q >= 2 and d >= 1")
    m = effective_short_side_limit(Fraction(1, q), d)
    return comb(d, m) * (q - 1) ** m


def enumerate_patterns(q: int, d: int) -> Iterator[GridPattern]:
    """All covering-family patterns, lexicographic (indices major, values minor)."""
    if q < 2 or d < 1:
        raise ValueError("need q >= 2 and d >= 1")
    m = effective_short_side_limit(Fraction(1, q), d)
    for idx in combinations(range(1, d + 1), m):
        for vals in product(range(1, q), repeat=m):
            yield GridPattern(idx, vals)


def pattern_to_box(pattern: GridPattern, q: int, d: int) -> BoxNd:
    """The closed box a pattern encodes: {k_i/q} on fixed indices,
    [1/q, (q-1)/q] elsewhere."""
    if q < 2 or d < 1:
        raise ValueError("need q >= 2 and d >= 1")
    if pattern.fixed_indices and pattern.fixed_indices[-1] > d:
        raise ValueError(f"pattern index exceeds dimension {d}")
    if any(v > q - 1 for v in pattern.fixed_values):
        raise ValueError(f"pattern value exceeds q-1 = {q - 1}")
    fixed = dict(zip(pattern.fixed_indices, pattern.fixed_values))
    lo = Fraction(1, q)
    hi = Fraction(q - 1, q)
    intervals = []
    for j in range(1, d + 1):
        if j in fixed:
            intervals.append(Interval.singleton(Fraction(fixed[j], q)))
        else:
            intervals.append(Interval.closed(lo, hi))
    return BoxNd(intervals)


def _as_grid_numerators(points: PointSet, q: int) -> list[tuple[int, ...]] | None:
    """Points as integer grid numerators, or None when off the grid."""
    rows = []
    for p in points:
        row = []
        for c in p:
            scaled = c * q
            if scaled.denominator != 1 or not (1 <= scaled.numerator <= q - 1):
                return None
            row.append(scaled.numerator)
        rows.append(tuple(row))
    return rows


def certificate_check(
    points: PointSet,
    q: int,
    *,
    family_budget: int = DEFAULT_FAMILY_BUDGET,
) -> CertificateReport:
    """Check whether `points` hits every covering-family box.

    A holding report certifies dispersion(points) <= 1/q. When the check
    fails, `first_violation` is the lexicographically first unmet pattern
    and `patterns_checked` counts patterns examined up to and including
    it. Point sets lying entirely on the grid {1/q,...,(q-1)/q}^d use a
    fast path that only inspects the fixed coordinates (grid coordinates
    always lie inside [1/q, (q-1)/q]); anything else falls back to full
    closed-box membership. Warns when the family exceeds `family_budget`.
    """
    d = points.dim
    m = effective_short_side_limit(Fraction(1, q), d)
    family = covering_family_size(q, d)
    if family > family_budget:
        warnings.warn(
            f"covering family has {family} boxes (budget {family_budget}); "
            "this check may be slow",
            FamilySizeWarning,
            stacklevel=2,
        )

    grid_rows = _as_grid_numerators(points, q)
    checked = 0
    per_combo = (q - 1) ** m

    if grid_rows is not None:
        for idx in combinations(range(1, d + 1), m):
            present = {tuple(row[j - 1] for j in idx) for row in grid_rows}
            if len(present) == per_combo:
                checked += per_combo
                continue
            for vals in product(range(1, q), repeat=m):
                checked += 1
                if vals not in present:
                    return CertificateReport(
                        q=q,
                        d=d,
                        holds=False,
                        patterns_checked=checked,
                        family_size=family,
                        first_violation=GridPattern(idx, vals),
                    )
            raise AssertionError("unreachable: a value tuple was missing")
    else:
        for pat in enumerate_patterns(q, d):
            checked += 1
            box = pattern_to_box(pat, q, d)
            if not any(box.contains(p) for p in points):
                return CertificateReport(
                    q=q,
                    d=d,
                    holds=False,
                    patterns_checked=checked,
                    family_size=family,
                    first_violation=pat,
                )

    return CertificateReport(
        q=q,
        d=d,
        holds=True,
        patterns_checked=family,
        family_size=family,
        first_violation=None,
    )


def minimal_certified_n(
    q: int,
    d: int,
    seed: int,
    *,
    batch: int = 1,
    family_budget: int = DEFAULT_FAMILY_BUDGET,
) -> int:
    """First n at which the seeded grid draw passes the certificate.

    Draws grid points one at a time from `grid_point_stream(q, d, seed)`
    and re-runs `certificate_check` every `batch` draws; because adding
    points never breaks a holding certificate, a binary search inside the
    last batch recovers the exact first n, so the result does not depend
    on `batch`. Deterministic given the seed.
    """
    if batch < 1:
        raise ValueError("batch must be >= 1")
    family = covering_family_size(q, d)
    if family > family_budget:
        raise BudgetExceededError(
            f"covering family has {family} boxes (budget {family_budget})",
            required=family,
            budget=family_budget,
        )
    stream = grid_point_stream(q, d, seed)
    drawn: list = []
    while True:
        for _ in range(batch):
            drawn.append(next(stream))
        if certificate_check(
            PointSet(d, drawn), q, family_budget=family_budget
        ).holds:
            break
    lo = len(drawn) - batch  # certificate known to fail at lo (or lo == 0)
    hi = len(drawn)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if certificate_check(
            PointSet(d, drawn[:mid]), q, family_budget=family_budget
        ).holds:
            hi = mid
        else:
            lo = mid
    return hi


class UnionBoundCheck(NamedTuple):
    """Sign-certified evaluation of the random-draw failure exponent.

    log_failure_bound is M*ln(d*q) - n/q^M with M = short_side_limit(1/q):
    the log of (family size bound) * (per-box miss probability bound).
    bound_holds means it is <= 0, i.e. n draws suffice for the union bound
    to close and a certified set of n grid points to exist.
    """

    log_failure_bound: mpf
    bound_holds: bool


def union_bound_check(q: int, d: int, n: int) -> UnionBoundCheck:
    """Evaluate the union bound at (q, d) with sample size n.

    The exact term n/q^M is a rational; only M*ln(d*q) is transcendental,
    so the sign is certified by interval arithmetic at 128-bit precision
    and up (escalating until the interval excludes zero).
    """
    if q < 2 or d < 2:
        raise ValueError("need q >= 2 and d >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    m_exp = short_side_limit(Fraction(1, q))
    exact = Fraction(n, q**m_exp)
    holds = None
    for prec in (128, 256, 512, 1024, 2048):
        iv.prec = prec
        expr = m_exp * iv.ln(d * q) - iv.mpf(exact.numerator) / iv.mpf(
            exact.denominator
        )
        if expr.b < 0:
            holds = True
            break
        if expr.a > 0:
            holds = False
            break
    if holds is None:
        raise ArithmeticError("could not certify the union bound sign")
    with mp.workprec(128):
        value = m_exp * mp.ln(d * q) - mpf(exact.numerator) / mpf(exact.denominator)
    return UnionBoundCheck(log_failure_bound=value, bound_holds=holds)
