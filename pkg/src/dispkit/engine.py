"""Exact computation of the largest empty axis-aligned open box.

Correctness basis
-----------------
For a finite point set T in [0,1]^d, any empty open box can be pushed
outward, one face at a time, until every face rests on the cube boundary
or on a point coordinate; the enlarged box is still empty and at least as
large. Every inclusion-maximal empty box therefore has all endpoints in
the per-dimension grids

    G_j = {0, 1} union {x_j : x in T},

so maximizing volume over grid-endpoint open boxes that avoid T computes
the dispersion exactly over a finite family. Nothing here approximates:
all coordinates are rescaled to a common integer denominator per
dimension, so candidate volumes compare as plain integers.

Engine layout
-------------
* `dispersion_exact`: branch-and-bound over grid-endpoint boxes. The
  candidate space is partitioned by the first-dimension interval; each
  partition is searched independently (no shared mutable state), and the
  partition results are reduced by (max volume, then lexicographically
  smallest endpoint tuple). Both the reduction and each partition search
  are order-deterministic, so value, witness, and stats are identical for
  any thread count.
* `dispersion_brute_force`: the same candidate family enumerated with no
  pruning, no rescaling and no shortcuts; the independent oracle that the
  fast engine is tested against.
* `dispersion_lower_witness`: a randomized greedy grower producing an
  empty box, hence a certified lower bound on the dispersion. Also used
  (with a fixed constant seed) to prime the branch-and-bound with a good
  initial bound on large instances.

Determinism: all randomness comes from the SplitMix64 streams in
`dispkit.rng`; equal seeds give equal results on every platform.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from .errors import BudgetExceededError
from .geometry import ONE, ZERO, BoxNd, Point, PointSet, format_scalar
from .rng import SplitMix64

DEFAULT_ENUMERATION_BUDGET = 10**9

# Fixed stream used to prime the branch-and-bound; any constant works, it
# only affects speed, never results.
_PRIMING_SEED = 0x5EEDB0C5
_PRIMING_SAMPLES = 32
# Instances with at most this many candidate boxes skip the priming pass.
_PRIMING_THRESHOLD = 10**4


@dataclass(frozen=True)
class EngineStats:
    """Search effort counters.

    candidates_examined counts complete candidate boxes whose volume was
    evaluated (the pruned engine evaluates one box per surviving interval
    prefix, completed with the best final-dimension gap). pruned counts
    candidate interval choices discarded by the volume bound.
    """

    candidates_examined: int
    pruned: int


@dataclass(frozen=True)
class DispersionResult:
    """Exact dispersion value with an empty open witness box."""

    value: Fraction
    witness: BoxNd
    stats: EngineStats

    @staticmethod
    def csv_header(d: int) -> str:
        cols = ["value"]
        for j in range(1, d + 1):
            cols += [f"l{j}", f"u{j}"]
        cols += ["candidates_examined", "pruned"]
        return ",".join(cols)

    def csv_row(self) -> str:
        cells = [format_scalar(self.value)]
        for iv in self.witness.intervals:
            cells += [format_scalar(iv.lo), format_scalar(iv.hi)]
        cells += [str(self.stats.candidates_examined), str(self.stats.pruned)]
        return ",".join(cells)

    def describe(self) -> str:
        return (
            f"dispersion: {format_scalar(self.value)}\n"
            f"witness: {self.witness}\n"
            f"candidates examined: {self.stats.candidates_examined}, "
            f"pruned: {self.stats.pruned}"
        )


@dataclass(frozen=True)
class SearchConfig:
    """Heuristic search knobs; equal configs give equal results."""

    iterations: int
    restarts: int
    seed: int

    def __post_init__(self) -> None:
        if self.iterations < 1 or self.restarts < 1:
            raise ValueError("iterations and restarts must be >= 1")


def candidate_grid(points: PointSet) -> list[list[Fraction]]:
    """Per-dimension sorted candidate endpoints {0, 1} union coordinates."""
    grids = []
    for j in range(points.dim):
        vals = {ZERO, ONE}
        for p in points:
            vals.add(p[j])
        grids.append(sorted(vals))
    return grids


def _candidate_count(grids) -> int:
    count = 1
    for g in grids:
        count *= comb(len(g), 2)
    return count


def _check_budget(grids, budget: int) -> int:
    count = _candidate_count(grids)
    if count > budget:
        raise BudgetExceededError(
            f"instance too large for exact engine: {count} candidate boxes "
            f"exceed budget {budget}",
            required=count,
            budget=budget,
        )
    return count


class _State:
    __slots__ = ("best", "best_choice", "examined", "pruned")

    def __init__(self, best: int) -> None:
        self.best = best
        self.best_choice = None
        self.examined = 0
        self.pruned = 0


def _best_gap(coords, span: int) -> tuple[int, int]:
    """Largest gap between consecutive values of {0, span} union coords.

    Returns (length, lower endpoint); the earliest gap wins ties, which
    keeps witnesses lexicographically minimal.
    """
    vals = sorted({0, span, *coords})
    best_len = -1
    best_lo = 0
    prev = vals[0]
    for v in vals[1:]:
        g = v - prev
        if g > best_len:
            best_len = g
            best_lo = prev
        prev = v
    return best_len, best_lo


def dispersion_exact(
    points: PointSet,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    threads: int = 1,
) -> DispersionResult:
    """Exact dispersion of `points` with an empty open witness box.

    Among all maximal-volume empty boxes the witness is the one with the
    lexicographically smallest endpoint tuple (l1, u1, ..., ld, ud).
    Raises BudgetExceededError when the projected candidate count
    (product over dimensions of C(|G_j|, 2)) exceeds `budget`. Results,
    including stats, are independent of `threads`.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    grids = candidate_grid(points)
    count = _check_budget(grids, budget)
    d = points.dim

    denoms = [lcm(*(v.denominator for v in g)) for g in grids]
    gint = [[int(v * denoms[j]) for v in g] for j, g in enumerate(grids)]
    pts = sorted(
        {tuple(int(c * denoms[j]) for j, c in enumerate(p.coords)) for p in points}
    )

    # suffix[j] = product of full spans of dimensions j..d-1
    suffix = [1] * (d + 1)
    for j in range(d - 1, -1, -1):
        suffix[j] = suffix[j + 1] * denoms[j]
    total_den = suffix[0]

    if count > _PRIMING_THRESHOLD:
        prime_val, _ = dispersion_lower_witness(
            points, samples=_PRIMING_SAMPLES, seed=_PRIMING_SEED
        )
        scaled = prime_val * total_den
        assert scaled.denominator == 1
        init_best = int(scaled) - 1
    else:
        init_best = -1

    def search_range(depth, partial, alive, chosen, st):
        if depth == d - 1:
            st.examined += 1
            gap_len, gap_lo = _best_gap((p[depth] for p in alive), denoms[depth])
            total = partial * gap_len
            if total > st.best:
                st.best = total
                st.best_choice = tuple(chosen) + ((gap_lo, gap_lo + gap_len),)
            return
        g = gint[depth]
        m = len(g)
        sf = suffix[depth + 1]
        denom = partial * sf
        for ia in range(m - 1):
            a = g[ia]
            need = st.best // denom + 1
            ib = bisect_left(g, a + need, ia + 1)
            st.pruned += ib - (ia + 1)
            if ib >= m:
                rest = m - 2 - ia
                st.pruned += rest * (rest + 1) // 2
                break
            while ib < m:
                b = g[ib]
                if (b - a) * denom <= st.best:
                    st.pruned += 1
                    ib += 1
                    continue
                chosen.append((a, b))
                search_range(
                    depth + 1,
                    partial * (b - a),
                    [p for p in alive if a < p[depth] < b],
                    chosen,
                    st,
                )
                chosen.pop()
                ib += 1

    if d == 1:
        states = [_State(init_best)]
        search_range(0, 1, pts, [], states[0])
    else:
        g0 = gint[0]
        m0 = len(g0)
        pairs = [(ia, ib) for ia in range(m0 - 1) for ib in range(ia + 1, m0)]
        sf1 = suffix[1]

        def run_partition(k):
            ia, ib = pairs[k]
            a, b = g0[ia], g0[ib]
            st = _State(init_best)
            if (b - a) * sf1 <= st.best:
                st.pruned += 1
                return st
            alive = [p for p in pts if a < p[0] < b]
            search_range(1, b - a, alive, [(a, b)], st)
            return st

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                states = list(pool.map(run_partition, range(len(pairs))))
        else:
            states = [run_partition(k) for k in range(len(pairs))]

    best = init_best
    best_choice = None
    examined = 0
    pruned = 0
    for st in states:
        examined += st.examined
        pruned += st.pruned
        if st.best_choice is not None and st.best > best:
            best = st.best
            best_choice = st.best_choice
    assert best_choice is not None, "some candidate box always exists"

    witness = BoxNd.open_box(
        (Fraction(a, denoms[j]), Fraction(b, denoms[j]))
        for j, (a, b) in enumerate(best_choice)
    )
    return DispersionResult(
        value=Fraction(best, total_den),
        witness=witness,
        stats=EngineStats(candidates_examined=examined, pruned=pruned),
    )


def dispersion_brute_force(
    points: PointSet, *, budget: int = 10**7
) -> DispersionResult:
    """Unpruned reference enumeration; the independent test oracle.

    Walks every grid-endpoint open box in lexicographic endpoint order,
    tests emptiness point by point with exact rational comparisons, and
    keeps the maximal volume with the lexicographically smallest witness.
    Shares no search code with `dispersion_exact`.
    """
    grids = candidate_grid(points)
    _check_budget(grids, budget)
    per_dim_pairs = [
        [(g[i], g[k]) for i in range(len(g) - 1) for k in range(i + 1, len(g))]
        for g in grids
    ]
    best_val = None
    best_box = None
    examined = 0
    for bounds in itertools.product(*per_dim_pairs):
        box = BoxNd.open_box(bounds)
        examined += 1
        if any(box.contains(p) for p in points):
            continue
        v = box.volume()
        if (
            best_val is None
            or v > best_val
            or (v == best_val and box.endpoint_tuple() < best_box.endpoint_tuple())
        ):
            best_val = v
            best_box = box
    return DispersionResult(
        value=best_val, witness=best_box, stats=EngineStats(examined, 0)
    )


def _best_axis_slab(coord_tuples, d: int) -> tuple[Fraction, BoxNd]:
    """Best full-width slab: (0,1) everywhere except one max-gap dimension."""
    best_val = None
    best_box = None
    for j in range(d):
        vals = sorted({ZERO, ONE, *(p[j] for p in coord_tuples)})
        gap_lo, gap_hi = ZERO, ZERO
        for a, b in zip(vals, vals[1:]):
            if b - a > gap_hi - gap_lo:
                gap_lo, gap_hi = a, b
        if best_val is None or gap_hi - gap_lo > best_val:
            best_val = gap_hi - gap_lo
            bounds = [(ZERO, ONE)] * d
            bounds[j] = (gap_lo, gap_hi)
            best_box = BoxNd.open_box(bounds)
    return best_val, best_box


def dispersion_lower_witness(
    points: PointSet, samples: int, seed: int
) -> tuple[Fraction, BoxNd]:
    """Randomized greedy lower bound: (volume, empty open box).

    Each sample draws an interior location avoiding `points` (coordinates
    are dyadic rationals, drawn dimension by dimension, resampling on the
    astronomically rare exact collision) and grows a box around it: the 2d
    faces are visited in a shuffled order and each expands until blocked
    by a point or the cube boundary. The best box over all samples and a
    deterministic max-gap axis slab is returned, so the value never
    exceeds the true dispersion and the box is always empty.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    d = points.dim
    pts = [p.coords for p in points.distinct()]
    pt_set = set(pts)
    rng = SplitMix64(seed)

    best_val, best_box = _best_axis_slab(pts, d)

    for _ in range(samples):
        while True:
            x = tuple(rng.interior_unit() for _ in range(d))
            if x not in pt_set:
                break
        lo = list(x)
        hi = list(x)
        faces = [(j, up) for j in range(d) for up in (False, True)]
        rng.shuffle(faces)
        for j, up in faces:
            aligned = [
                p[j]
                for p in pts
                if all(lo[i] < p[i] < hi[i] for i in range(d) if i != j)
            ]
            if up:
                blockers = [c for c in aligned if c >= hi[j]]
                hi[j] = min(blockers) if blockers else ONE
            else:
                blockers = [c for c in aligned if c <= lo[j]]
                lo[j] = max(blockers) if blockers else ZERO
        if any(lo[j] == hi[j] for j in range(d)):
            continue
        vol = ONE
        for j in range(d):
            vol *= hi[j] - lo[j]
        if vol > best_val:
            best_val = vol
            best_box = BoxNd.open_box(zip(lo, hi))
    return best_val, best_box


def _centered_lattice(m: int, d: int) -> PointSet:
    axis = [Fraction(2 * i - 1, 2 * m) for i in range(1, m + 1)]
    rows = itertools.product(axis, repeat=d)
    return PointSet(d, (Point(r) for r in rows))


def _structured_start(n: int, d: int) -> PointSet:
    for m in range(1, n + 1):
        if m**d == n:
            return _centered_lattice(m, d)
        if m**d > n:
            break
    diag = [Point([Fraction(2 * i - 1, 2 * n)] * d) for i in range(1, n + 1)]
    return PointSet(d, diag)


def _move_targets(coords_j, current: Fraction) -> list[Fraction]:
    """Grid values of the other points plus midpoints of consecutive ones."""
    vals = sorted({ZERO, ONE, *coords_j})
    targets = set(vals[1:-1])
    for a, b in zip(vals, vals[1:]):
        targets.add((a + b) / 2)
    targets.discard(current)
    return sorted(targets)


def minimal_dispersion_search(
    n: int,
    d: int,
    cfg: SearchConfig,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> tuple[PointSet, Fraction]:
    """Heuristic upper bound on the minimal dispersion over n-point sets.

    Random restarts plus coordinate-wise moves: a move re-places one
    coordinate of one point onto the candidate grid of the remaining
    points or a midpoint between consecutive grid values, keeping the
    strictly best improvement. Restart 0 starts from a centered lattice
    (when n is a d-th power) or a centered diagonal, so known-good exact
    configurations are reachable. Returns (point set, exact dispersion);
    deterministic given cfg.seed; propagates the engine budget error.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    rng = SplitMix64(cfg.seed)
    best_set = None
    best_val = None
    for restart in range(cfg.restarts):
        sub = rng.split()
        if restart == 0:
            current = _structured_start(n, d)
        else:
            current = PointSet(
                d, (Point([sub.unit53() for _ in range(d)]) for _ in range(n))
            )
        value = dispersion_exact(current, budget=budget).value
        for _ in range(cfg.iterations):
            i = sub.randbelow(n)
            j = sub.randbelow(d)
            others = [p[j] for k, p in enumerate(current.points) if k != i]
            moved_val = value
            moved_set = None
            for target in _move_targets(others, current.points[i][j]):
                coords = list(current.points[i].coords)
                coords[j] = target
                trial = PointSet(
                    d,
                    current.points[:i] + (Point(coords),) + current.points[i + 1 :],
                )
                tv = dispersion_exact(trial, budget=budget).value
                if tv < moved_val:
                    moved_val = tv
                    moved_set = trial
            if moved_set is not None:
                current = moved_set
                value = moved_val
        if best_val is None or value < best_val:
            best_val = value
            best_set = current
    return best_set, best_val
