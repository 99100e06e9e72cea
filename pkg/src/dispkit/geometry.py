"""Exact geometric primitives: rational scalars, points, intervals, boxes.

Every coordinate, interval endpoint and volume is a `fractions.Fraction`
(arbitrary-precision integers, always in lowest terms, denominator > 0),
so membership and volume comparisons are decided exactly. There is no
floating point anywhere in this module.

Point sets live in the unit cube [0,1]^d. Boxes are axis-aligned products
of one interval per dimension; each interval carries its own open/closed
endpoint flags, so the same type covers the open boxes used for dispersion
and the closed (possibly degenerate) boxes used by covering certificates.

Point CSV format
----------------
UTF-8 text, one point per line, coordinates comma-separated. Each token is
either a finite decimal ("0.25") or a fraction "p/q" with integers p >= 0,
q >= 1. Lines starting with '#' are comments; blank lines are ignored;
there is no header row. Decimals are converted to exact rationals
(0.25 -> 1/4), so parse -> serialize -> parse is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ParseError

# All real quantities (coordinates, interval lengths, volumes) use this type.
Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_DECIMAL_RE = re.compile(r"^[0-9]+(?:\.[0-9]+)?$")
_FRACTION_RE = re.compile(r"^([0-9]+)/([1-9][0-9]*)$")


def parse_scalar(token: str) -> Fraction:
    """Parse one coordinate token, either a finite decimal or "p/q".

    Raises ValueError for anything else (signs, exponents, empty tokens).
    """
    token = token.strip()
    m = _FRACTION_RE.match(token)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    if _DECIMAL_RE.match(token):
        return Fraction(token)
    raise ValueError(f"bad coordinate token {token!r}")


def format_scalar(x: Fraction) -> str:
    """Render a rational as "p" or "p/q", the inverse of parse_scalar."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Point:
    """A point in [0,1]^d with exact rational coordinates."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable) -> None:
        cs = tuple(_as_scalar(c) for c in coords)
        if not cs:
            raise ValueError("a point needs at least one coordinate")
        for c in cs:
            if not (ZERO <= c <= ONE):
                raise ValueError(f"coordinate {format_scalar(c)} outside [0,1]")
        object.__setattr__(self, "coords", cs)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(format_scalar(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Interval:
    """A sub-interval of [0,1] with independent open/closed endpoints.

    A degenerate interval (lo == hi) must be closed on both sides; an open
    empty interval is rejected at construction.
    """

    lo: Fraction
    hi: Fraction
    lo_open: bool = True
    hi_open: bool = True

    def __init__(self, lo, hi, lo_open: bool = True, hi_open: bool = True) -> None:
        lo = _as_scalar(lo)
        hi = _as_scalar(hi)
        if not (ZERO <= lo <= hi <= ONE):
            raise ValueError(
                f"need 0 <= lo <= hi <= 1, got [{format_scalar(lo)}, {format_scalar(hi)}]"
            )
        if lo == hi and (lo_open or hi_open):
            raise ValueError("a degenerate interval must be closed on both sides")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_open", bool(lo_open))
        object.__setattr__(self, "hi_open", bool(hi_open))

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def singleton(cls, x) -> "Interval":
        return cls(x, x, False, False)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        if self.lo_open:
            if not self.lo < x:
                return False
        elif not self.lo <= x:
            return False
        if self.hi_open:
            return x < self.hi
        return x <= self.hi

    def __str__(self) -> str:
        lb = "(" if self.lo_open else "["
        rb = ")" if self.hi_open else "]"
        return f"{lb}{format_scalar(self.lo)},{format_scalar(self.hi)}{rb}"


@dataclass(frozen=True)
class BoxNd:
    """An axis-aligned box, the product of one interval per dimension."""

    intervals: tuple[Interval, ...]

    def __init__(self, intervals: Iterable[Interval]) -> None:
        ivs = tuple(intervals)
        if not ivs:
            raise ValueError("a box needs at least one dimension")
        for iv in ivs:
            if not isinstance(iv, Interval):
                raise TypeError("BoxNd takes Interval components")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def open_box(cls, bounds: Iterable[tuple]) -> "BoxNd":
        """Build an open box from (lo, hi) pairs."""
        return cls(Interval.open(lo, hi) for lo, hi in bounds)

    @classmethod
    def closed_box(cls, bounds: Iterable[tuple]) -> "BoxNd":
        return cls(Interval.closed(lo, hi) for lo, hi in bounds)

    @classmethod
    def unit_cube(cls, d: int, open_: bool = True) -> "BoxNd":
        make = Interval.open if open_ else Interval.closed
        return cls(make(ZERO, ONE) for _ in range(d))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def volume(self) -> Fraction:
        """Exact product of interval lengths; openness does not matter."""
        v = ONE
        for iv in self.intervals:
            v *= iv.length
        return v

    def contains(self, p: Point) -> bool:
        """True iff every coordinate satisfies its interval's strictness."""
        if p.dim != self.dim:
            raise ValueError(f"dimension mismatch: box is {self.dim}-d, point is {p.dim}-d")
        return all(iv.contains(c) for iv, c in zip(self.intervals, p.coords))

    def endpoint_tuple(self) -> tuple[Fraction, ...]:
        """Flattened (lo_1, hi_1, ..., lo_d, hi_d), used for lexicographic ties."""
        out: list[Fraction] = []
        for iv in self.intervals:
            out.append(iv.lo)
            out.append(iv.hi)
        return tuple(out)

    def __str__(self) -> str:
        return " x ".join(str(iv) for iv in self.intervals)


@dataclass(frozen=True)
class PointSet:
    """A multiset of points in [0,1]^dim; duplicates are permitted."""

    dim: int
    points: tuple[Point, ...]

    def __init__(self, dim: int, points: Iterable[Point] = ()) -> None:
        pts = tuple(points)
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        for p in pts:
            if p.dim != dim:
                raise ValueError(f"point {p} has dimension {p.dim}, expected {dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], dim: int | None = None) -> "PointSet":
        pts = [Point(row) for row in rows]
        if dim is None:
            if not pts:
                raise ValueError("cannot infer dimension from an empty point list")
            dim = pts[0].dim
        return cls(dim, pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def distinct(self) -> tuple[Point, ...]:
        """Unique points in first-seen order."""
        seen = set()
        out = []
        for p in self.points:
            if p.coords not in seen:
                seen.add(p.coords)
                out.append(p)
        return tuple(out)

    def with_point(self, p: Point) -> "PointSet":
        if p.dim != self.dim:
            raise ValueError("dimension mismatch")
        return PointSet(self.dim, self.points + (p,))


def parse_points(text: str, dim: int | None = None) -> PointSet:
    """Parse the point CSV format into an exact PointSet.

    The dimension is inferred from the first data row; `dim` overrides the
    inference and is required information only when the input has no data
    rows (an empty input with dim=None yields the empty 1-d set).
    Errors report the offending 1-based line number.
    """
    points: list[Point] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split(",")
        coords = []
        for tok in tokens:
            try:
                c = parse_scalar(tok)
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from None
            if not (ZERO <= c <= ONE):
                raise ParseError(
                    f"coordinate {format_scalar(c)} outside [0,1]", line=lineno
                )
            coords.append(c)
        expected = dim if dim is not None else (points[0].dim if points else None)
        if expected is not None and len(coords) != expected:
            raise ParseError(
                f"expected {expected} coordinates, got {len(coords)}", line=lineno
            )
        points.append(Point(coords))
    if not points:
        return PointSet(dim if dim is not None else 1, ())
    return PointSet(points[0].dim, points)


def points_to_csv(ps: PointSet, comments: Sequence[str] = ()) -> str:
    """Serialize a PointSet to the point CSV format.

    `comments` become '#'-prefixed header lines. Coordinates are written
    as "p/q" (or a bare integer), so the output re-parses to an equal set.
    """
    lines = [f"# {c}" for c in comments]
    for p in ps:
        lines.append(",".join(format_scalar(c) for c in p))
    return "\n".join(lines) + ("\n" if lines else "")
