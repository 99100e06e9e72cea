"""Point-set constructions with provable dispersion guarantees.

Two constructions are built here, plus simple baselines:

* Diagonal construction, for target volume r in (1/4, 1): points on the
  main diagonal of the cube. For r >= 1/2 the single center point already
  blocks every open box of volume > 1/2. For r in (1/4, 1/2), with
  delta = r - 1/4 and k0 = floor(1/delta), the set
  {k*delta*(1,...,1) : k = 1..k0} plus the center point blocks every open
  box of volume > r, in every dimension d >= 2, using at most
  floor(1/(r - 1/4)) + 1 points (a dimension-free count).

* Random grid construction, for target volume r = 1/q with integer
  q >= 2: n independent uniform draws from the interior grid
  {1/q, ..., (q-1)/q}^d. With the sample size returned by
  `grid_sample_size` the draw succeeds with positive probability (see
  `dispkit.certificate.union_bound_check`); concrete draws are verified
  a posteriori with the covering certificate.

All randomness flows through SplitMix64 seeds, so every construction is
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, NamedTuple

from mpmath import iv, mp

from .errors import BudgetExceededError
from .geometry import Point, PointSet
from .rng import SplitMix64

DEFAULT_MATERIALIZE_BUDGET = 10**6

_QUARTER = Fraction(1, 4)
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DiagonalParams:
    """Inputs of the diagonal construction: target volume r and dimension."""

    r: Fraction
    d: int

    def __post_init__(self) -> None:
        if not (_QUARTER < self.r < 1):
            raise ValueError(f"r must lie in (1/4, 1), got {self.r}")
        if self.d < 2:
            raise ValueError("d must be >= 2")

    @property
    def delta(self) -> Fraction:
        return self.r - _QUARTER

    @property
    def k0(self) -> int:
        return int(1 / self.delta)  # floor: delta > 0


@dataclass(frozen=True)
class GridParams:
    """Inputs of the random grid construction."""

    q: int
    d: int
    n: int
    seed: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if self.n < 1:
            raise ValueError("n must be >= 1")


class SizeBound(NamedTuple):
    """Point budget of the diagonal construction.

    `value` is floor(1/(r - 1/4)) + 1; `one_point_suffices` flags r >= 1/2,
    where the single center point already achieves the guarantee.
    """

    value: int
    one_point_suffices: bool


def diagonal_set_size_bound(r: Fraction) -> SizeBound:
    """Dimension-free point budget for dispersion <= r, r in (1/4, 1)."""
    if not (_QUARTER < r < 1):
        raise ValueError(f"r must lie in (1/4, 1), got {r}")
    return SizeBound(value=int(1 / (r - _QUARTER)) + 1, one_point_suffices=r >= _HALF)


def diagonal_set(params: DiagonalParams) -> PointSet:
    """The diagonal point set guaranteeing dispersion <= r.

    For r >= 1/2: just the center point. Otherwise the k0 diagonal
    multiples of delta plus the center, duplicates removed (the center can
    coincide with a multiple), in increasing diagonal order.
    """
    d = params.d
    if params.r >= _HALF:
        return PointSet(d, (Point([_HALF] * d),))
    values = {params.delta * k for k in range(1, params.k0 + 1)}
    values.add(_HALF)
    return PointSet(d, (Point([v] * d) for v in sorted(values)))


def grid_point_stream(q: int, d: int, seed: int) -> Iterator[Point]:
    """Endless stream of uniform draws from the grid {1/q,...,(q-1)/q}^d.

    One point per step, coordinates drawn in dimension order, each as
    (1 + randbelow(q-1))/q from a single SplitMix64(seed) stream. The
    random grid construction and the empirical certificate search both
    consume exactly this stream, so their draws agree for equal seeds.
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    rng = SplitMix64(seed)
    while True:
        yield Point([Fraction(1 + rng.randbelow(q - 1), q) for _ in range(d)])


def random_grid_set(
    params: GridParams, *, max_points: int = DEFAULT_MATERIALIZE_BUDGET
) -> PointSet:
    """n independent uniform grid draws (with replacement), fixed seed.

    Refuses to materialize more than `max_points` points; for sample sizes
    at the analytic scale, use the covering-certificate workflow instead
    of materializing the set.
    """
    if params.n > max_points:
        raise BudgetExceededError(
            f"refusing to materialize {params.n} points (budget {max_points}); "
            "use the covering-certificate workflow for analytic sample sizes",
            required=params.n,
            budget=max_points,
        )
    stream = grid_point_stream(params.q, params.d, params.seed)
    return PointSet(params.d, (next(stream) for _ in range(params.n)))


def _certified_ceil(factor: int, log_terms) -> int:
    """ceil(factor * log_terms()) with interval arithmetic.

    `log_terms` evaluates the transcendental part under the ambient iv
    precision; precision is raised until both interval endpoints agree on
    the ceiling.
    """
    for prec in (96, 160, 320, 640, 1280):
        iv.prec = prec
        val = iv.mpf(factor) * log_terms()
        lo = mp.ceil(val.a)
        hi = mp.ceil(val.b)
        if lo == hi:
            return int(lo)
    raise ArithmeticError("could not certify ceiling; value too close to an integer")


def grid_sample_size(q: int, d: int) -> int:
    """Sample size ceil(q^(q^2+2) * (4*ln q + 1) * ln d) as an exact integer.

    Natural logarithms. The ceiling is certified by interval arithmetic,
    so the returned integer is exact despite the transcendental factors.
    Nondecreasing in both q and d; astronomically large for q >= 4.
    """
    if q < 2 or d < 2:
        raise ValueError("need q >= 2 and d >= 2")
    factor = q ** (q * q + 2)
    return _certified_ceil(factor, lambda: (4 * iv.ln(q) + 1) * iv.ln(d))


def baseline_set(kind: str, n: int, d: int, seed: int | None = None) -> PointSet:
    """Comparison baselines: 'uniform-random' or 'lattice'.

    uniform-random draws every coordinate as a 53-bit dyadic rational
    (requires a seed). lattice needs n = m^d and returns the centered grid
    {(2i-1)/(2m)}^d in lexicographic order; its seed is ignored.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if kind == "uniform-random":
        if seed is None:
            raise ValueError("uniform-random baseline requires a seed")
        rng = SplitMix64(seed)
        return PointSet(d, (Point([rng.unit53() for _ in range(d)]) for _ in range(n)))
    if kind == "lattice":
        m = round(n ** (1 / d))
        for cand in (m - 1, m, m + 1):
            if cand >= 1 and cand**d == n:
                axis = [Fraction(2 * i - 1, 2 * cand) for i in range(1, cand + 1)]
                return PointSet(d, (Point(row) for row in product(axis, repeat=d)))
        raise ValueError(f"lattice baseline needs n = m^d, got n={n}, d={d}")
    raise ValueError(f"unknown baseline kind {kind!r}")
