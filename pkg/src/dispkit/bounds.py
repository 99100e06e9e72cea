"""Closed-form dispersion bounds and the comparison table.

Bounds on the minimal dispersion over n-point sets in [0,1]^d and on its
inverse N(r, d), the fewest points hitting every open box of volume > r:

* pigeonhole: minimal dispersion >= 1/(n+1), from slicing the cube into
  n+1 slabs.
* Aistleitner-Hinrichs-Rudolf lower bounds: minimal dispersion >=
  log2(d) / (4 * (n + log2 d)), its inverse form N(r, d) >=
  ((1-4r)/(4r)) * log2(d) for r < 1/4, and N(1/4, d) >= log2(d+1).
* Larcher upper bound: minimal dispersion <= 2^(7d+1)/n.
* Rudolf upper bounds: minimal dispersion <= (4d/n) * ln(9n/d) and
  N(r, d) <= 8*d*q*ln(33*q) with q = 1/r, for r <= 1/4.
* The constants of this package's constructions: the diagonal point
  budget floor(1/(r-1/4)) + 1 for r > 1/4, and the log-d coefficient
  q^(q^2+2) * (4 ln q + 1), q = ceil(1/r), of the random grid sample
  size for r <= 1/4.

Log bases are part of each formula (log2 vs natural) and are used
literally. Real-valued results are mpmath floats evaluated under
REAL_PRECISION_BITS of mantissa, so values are identical across
platforms; exact results (pigeonhole) stay rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from mpmath import mp, mpf

from .constructions import diagonal_set_size_bound
from .geometry import format_scalar

REAL_PRECISION_BITS = 128

_QUARTER = Fraction(1, 4)


def _to_mpf(x: Fraction) -> mpf:
    return mpf(x.numerator) / mpf(x.denominator)


def format_real(x) -> str:
    """Platform-independent decimal rendering of a high-precision real."""
    return mp.nstr(x, 15)


def pigeonhole_lower(n: int) -> Fraction:
    """Exact 1/(n+1), valid for every n-point set."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(1, n + 1)


def aistleitner_lower(n: int, d: int) -> mpf:
    """log2(d) / (4 * (n + log2 d)), a lower bound on minimal dispersion."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    with mp.workprec(REAL_PRECISION_BITS):
        l2 = mp.log(d, 2)
        return l2 / (4 * (n + l2))


def aistleitner_inverse_lower(r: Fraction, d: int) -> mpf:
    """((1-4r)/(4r)) * log2(d), a lower bound on N(r, d) for r in (0, 1/4)."""
    r = Fraction(r)
    if not (0 < r < _QUARTER):
        raise ValueError(f"r must lie in (0, 1/4), got {r}")
    if d < 2:
        raise ValueError("d must be >= 2")
    coeff = (1 - 4 * r) / (4 * r)
    with mp.workprec(REAL_PRECISION_BITS):
        return _to_mpf(coeff) * mp.log(d, 2)


def aistleitner_quarter_lower(d: int) -> mpf:
    """log2(d+1), a lower bound on N(1/4, d)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    with mp.workprec(REAL_PRECISION_BITS):
        return mp.log(d + 1, 2)


def larcher_upper(n: int, d: int) -> mpf:
    """2^(7d+1) / n, an upper bound on minimal dispersion."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    with mp.workprec(REAL_PRECISION_BITS):
        return mpf(2) ** (7 * d + 1) / n


def rudolf_upper(n: int, d: int) -> mpf:
    """(4d/n) * ln(9n/d), an upper bound on minimal dispersion."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    if 9 * n <= d:
        raise ValueError("need 9n > d")
    with mp.workprec(REAL_PRECISION_BITS):
        return mpf(4 * d) / n * mp.ln(mpf(9 * n) / d)


def rudolf_inverse_upper(r: Fraction, d: int) -> mpf:
    """8*d*q*ln(33*q) with q = 1/r exactly, an upper bound on N(r, d)."""
    r = Fraction(r)
    if not (0 < r <= _QUARTER):
        raise ValueError(f"r must lie in (0, 1/4], got {r}")
    if d < 2:
        raise ValueError("d must be >= 2")
    q = 1 / r
    with mp.workprec(REAL_PRECISION_BITS):
        return 8 * d * _to_mpf(q) * mp.ln(_to_mpf(33 * q))


def grid_log_coefficient(r: Fraction) -> mpf:
    """q^(q^2+2) * (4*ln(q) + 1) with q = ceil(1/r): the log(d) coefficient
    in the random grid construction's sample size, for r in (0, 1/4]."""
    r = Fraction(r)
    if not (0 < r <= _QUARTER):
        raise ValueError(f"r must lie in (0, 1/4], got {r}")
    q = ceil(1 / r)
    with mp.workprec(REAL_PRECISION_BITS):
        return mpf(q ** (q * q + 2)) * (4 * mp.ln(q) + 1)


_NA = "NA"

CSV_HEADER = ",".join(
    [
        "n",
        "r",
        "d",
        "pigeonhole_lower",
        "aistleitner_lower",
        "larcher_upper",
        "rudolf_upper",
        "aistleitner_inverse_lower",
        "aistleitner_quarter_lower",
        "rudolf_inverse_upper",
        "diagonal_constant",
        "diagonal_one_point",
        "grid_log_coefficient",
    ]
)


@dataclass(frozen=True)
class BoundsReport:
    """One table row: every bound applicable to the given inputs."""

    d: int
    n: int | None = None
    r: Fraction | None = None
    pigeonhole_lower: Fraction | None = None
    aistleitner_lower: mpf | None = None
    larcher_upper: mpf | None = None
    rudolf_upper: mpf | None = None
    aistleitner_inverse_lower: mpf | None = None
    aistleitner_quarter_lower: mpf | None = None
    rudolf_inverse_upper: mpf | None = None
    diagonal_constant: int | None = None
    diagonal_one_point: bool | None = None
    grid_log_coefficient: mpf | None = None

    def to_csv_row(self) -> str:
        def real(x):
            return _NA if x is None else format_real(x)

        cells = [
            _NA if self.n is None else str(self.n),
            _NA if self.r is None else format_scalar(self.r),
            str(self.d),
            _NA if self.pigeonhole_lower is None else format_scalar(self.pigeonhole_lower),
            real(self.aistleitner_lower),
            real(self.larcher_upper),
            real(self.rudolf_upper),
            real(self.aistleitner_inverse_lower),
            real(self.aistleitner_quarter_lower),
            real(self.rudolf_inverse_upper),
            _NA if self.diagonal_constant is None else str(self.diagonal_constant),
            _NA
            if self.diagonal_one_point is None
            else str(self.diagonal_one_point).lower(),
            real(self.grid_log_coefficient),
        ]
        return ",".join(cells)


def bounds_table(
    d_values, *, n: int | None = None, r: Fraction | None = None
) -> list[BoundsReport]:
    """One BoundsReport per d, for fixed n (dispersion bounds) or fixed r
    (inverse-dispersion bounds and construction constants)."""
    if (n is None) == (r is None):
        raise ValueError("give exactly one of n or r")
    reports = []
    for d in d_values:
        if n is not None:
            reports.append(
                BoundsReport(
                    d=d,
                    n=n,
                    pigeonhole_lower=pigeonhole_lower(n),
                    aistleitner_lower=aistleitner_lower(n, d),
                    larcher_upper=larcher_upper(n, d),
                    rudolf_upper=rudolf_upper(n, d),
                )
            )
            continue
        r = Fraction(r)
        if not (0 < r < 1):
            raise ValueError(f"r must lie in (0, 1), got {r}")
        kwargs = {}
        if r < _QUARTER:
            kwargs["aistleitner_inverse_lower"] = aistleitner_inverse_lower(r, d)
        if r == _QUARTER:
            kwargs["aistleitner_quarter_lower"] = aistleitner_quarter_lower(d)
        if r <= _QUARTER:
            kwargs["rudolf_inverse_upper"] = rudolf_inverse_upper(r, d)
            kwargs["grid_log_coefficient"] = grid_log_coefficient(r)
        else:
            bound = diagonal_set_size_bound(r)
            kwargs["diagonal_constant"] = bound.value
            kwargs["diagonal_one_point"] = bound.one_point_suffices
        reports.append(BoundsReport(d=d, r=r, **kwargs))
    return reports
