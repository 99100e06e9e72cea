"""Command-line surface: reproducible experiments with CSV artifacts.

Subcommands: disp, construct, certify, bounds, experiment. Every output
CSV starts with '#' metadata lines (tool version, canonical command line,
seed). The canonical command line omits --threads and --output: neither
affects content, so identical computations produce byte-identical CSV
regardless of thread count or destination.

Exit codes: 0 success, 2 usage or flag error, 3 point-file parse error,
4 resource budget exceeded.

All randomness is controlled by explicit --seed flags; there is no
implicit entropy anywhere.
"""

from __future__ import annotations

import functools
import sys
from fractions import Fraction

import click

from . import __version__
from .bounds import CSV_HEADER as BOUNDS_CSV_HEADER
from .bounds import bounds_table
from .certificate import (
    certificate_check,
    covering_family_size,
    effective_short_side_limit,
    minimal_certified_n,
    short_side_limit,
)
from .constructions import (
    DiagonalParams,
    GridParams,
    baseline_set,
    diagonal_set,
    diagonal_set_size_bound,
    grid_sample_size,
    random_grid_set,
)
from .engine import DispersionResult, dispersion_exact
from .errors import BudgetExceededError, ParseError
from .geometry import PointSet, format_scalar, parse_points, parse_scalar, points_to_csv

EXIT_PARSE = 3
EXIT_BUDGET = 4

DEFAULT_SWEEP_R = "13/50,3/10,7/20,2/5,9/20,1/2,3/4"
DEFAULT_SWEEP_D = "2,3"


def _with_exit_codes(fn):
    """Map domain errors onto the exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_PARSE)
        except BudgetExceededError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_BUDGET)
        except ValueError as exc:
            raise click.UsageError(str(exc))

    return wrapper


def _parse_fraction(text: str) -> Fraction:
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_int_list(spec: str) -> list[int]:
    """Integer list spec: "2,4,8" or "lo:hi" or "lo:hi:step", inclusive."""
    spec = spec.strip()
    try:
        if ":" in spec:
            parts = [int(p) for p in spec.split(":")]
            if len(parts) == 2:
                lo, hi, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                lo, hi, step = parts
            else:
                raise ValueError
            if step < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1, step))
        return [int(p) for p in spec.split(",") if p.strip()]
    except ValueError:
        raise click.UsageError(f"bad integer list {spec!r}; use 'a,b,c' or 'lo:hi[:step]'")


def _parse_fraction_list(spec: str) -> list[Fraction]:
    return [_parse_fraction(tok) for tok in spec.split(",") if tok.strip()]


def _metadata(command: str, seed: int | None) -> list[str]:
    return [
        f"# tool: dispkit {__version__}",
        f"# command: {command}",
        f"# seed: {'none' if seed is None else seed}",
    ]


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _read_points(path: str, dim: int | None) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_points(fh.read(), dim=dim)


@click.group()
@click.version_option(__version__, prog_name="dispkit")
def main() -> None:
    """Exact dispersion toolkit: largest empty axis-aligned boxes in [0,1]^d."""


@main.command("disp")
@click.argument("points_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--dim", type=int, default=None, help="Dimension override (needed for empty files).")
@click.option("--budget", type=int, default=10**9, show_default=True, help="Max candidate boxes.")
@click.option("--threads", type=int, default=1, show_default=True, help="Worker threads; never changes output.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Write a CSV report here.")
@_with_exit_codes
def cmd_disp(points_file, dim, budget, threads, output) -> None:
    """Exact dispersion of the point set in POINTS_FILE."""
    points = _read_points(points_file, dim)
    result = dispersion_exact(points, budget=budget, threads=threads)
    click.echo(result.describe())
    if output:
        command = f"disp {points_file}" + (f" --dim {dim}" if dim else "") + f" --budget {budget}"
        lines = _metadata(command, None)
        lines.append(DispersionResult.csv_header(points.dim))
        lines.append(result.csv_row())
        _emit(lines, output)


@main.group("construct")
def construct() -> None:
    """Emit a point-set construction as point CSV."""


def _emit_points(points: PointSet, comments: list[str], output: str | None) -> None:
    text = points_to_csv(points, comments=comments)
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@construct.command("diagonal")
@click.option("--r", "r_text", required=True, help="Target volume, e.g. 2/5.")
@click.option("--d", type=int, required=True, help="Dimension (>= 2).")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def construct_diagonal(r_text, d, output) -> None:
    """Diagonal construction with dispersion <= r, r in (1/4, 1)."""
    r = _parse_fraction(r_text)
    points = diagonal_set(DiagonalParams(r=r, d=d))
    comments = [
        f"tool: dispkit {__version__}",
        f"command: construct diagonal --r {format_scalar(r)} --d {d}",
        "construction: diagonal",
        f"r: {format_scalar(r)}",
        f"d: {d}",
        f"n: {len(points)}",
        "seed: none",
    ]
    _emit_points(points, comments, output)


@construct.command("random-grid")
@click.option("--q", type=int, required=True, help="Grid resolution (>= 2).")
@click.option("--d", type=int, required=True, help="Dimension (>= 2).")
@click.option("--n", type=int, required=True, help="Number of draws.")
@click.option("--seed", type=int, required=True, help="PRNG seed.")
@click.option("--max-points", type=int, default=10**6, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def construct_random_grid(q, d, n, seed, max_points, output) -> None:
    """n uniform draws from the grid {1/q,...,(q-1)/q}^d."""
    points = random_grid_set(GridParams(q=q, d=d, n=n, seed=seed), max_points=max_points)
    comments = [
        f"tool: dispkit {__version__}",
        f"command: construct random-grid --q {q} --d {d} --n {n} --seed {seed}",
        "construction: random-grid",
        f"q: {q}",
        f"d: {d}",
        f"n: {n}",
        f"seed: {seed}",
    ]
    _emit_points(points, comments, output)


@construct.command("baseline")
@click.option("--kind", type=click.Choice(["uniform-random", "lattice"]), required=True)
@click.option("--n", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--seed", type=int, default=None, help="Required for uniform-random.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def construct_baseline(kind, n, d, seed, output) -> None:
    """Comparison baselines: uniform-random or centered lattice."""
    points = baseline_set(kind, n, d, seed)
    comments = [
        f"tool: dispkit {__version__}",
        f"command: construct baseline --kind {kind} --n {n} --d {d}"
        + (f" --seed {seed}" if seed is not None else ""),
        f"construction: baseline-{kind}",
        f"n: {n}",
        f"d: {d}",
        f"seed: {'none' if seed is None else seed}",
    ]
    _emit_points(points, comments, output)


CERTIFY_CSV_HEADER = "q,d,M,M_eff,family_size,holds,first_violation,patterns_checked"


@main.command("certify")
@click.argument("points_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--q", type=int, required=True, help="Certify dispersion <= 1/q.")
@click.option("--dim", type=int, default=None, help="Dimension override (needed for empty files).")
@click.option("--family-budget", type=int, default=10**7, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def cmd_certify(points_file, q, dim, family_budget, output) -> None:
    """Covering-certificate check of POINTS_FILE against volume 1/q."""
    if q < 2:
        raise click.UsageError("--q must be >= 2")
    points = _read_points(points_file, dim)
    report = certificate_check(points, q, family_budget=family_budget)
    r = Fraction(1, q)
    row = ",".join(
        [
            str(q),
            str(points.dim),
            str(short_side_limit(r)),
            str(effective_short_side_limit(r, points.dim)),
            str(report.family_size),
            str(report.holds).lower(),
            "" if report.first_violation is None else str(report.first_violation),
            str(report.patterns_checked),
        ]
    )
    lines = _metadata(f"certify {points_file} --q {q}", None)
    lines.append(CERTIFY_CSV_HEADER)
    lines.append(row)
    _emit(lines, output)


@main.command("bounds")
@click.option("--r", "r_text", default=None, help="Fixed target volume, e.g. 1/8.")
@click.option("--n", type=int, default=None, help="Fixed point count.")
@click.option("--d-range", "d_range", required=True, help="Dimensions: 'a,b,c' or 'lo:hi[:step]'.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def cmd_bounds(r_text, n, d_range, output) -> None:
    """Closed-form bound table over a range of dimensions."""
    if (r_text is None) == (n is None):
        raise click.UsageError("give exactly one of --r or --n")
    d_values = _parse_int_list(d_range)
    if r_text is not None:
        r = _parse_fraction(r_text)
        reports = bounds_table(d_values, r=r)
        command = f"bounds --r {format_scalar(r)} --d-range {d_range}"
    else:
        reports = bounds_table(d_values, n=n)
        command = f"bounds --n {n} --d-range {d_range}"
    lines = _metadata(command, None)
    lines.append(BOUNDS_CSV_HEADER)
    lines.extend(rep.to_csv_row() for rep in reports)
    _emit(lines, output)


@main.group("experiment")
def experiment() -> None:
    """Reproducible multi-run experiments."""


DIAGONAL_SWEEP_HEADER = "r,d,n_points,size_bound,status,value,within_bound,witness"


@experiment.command("diagonal-sweep")
@click.option("--r-list", default=DEFAULT_SWEEP_R, show_default=True)
@click.option("--d-list", default=DEFAULT_SWEEP_D, show_default=True)
@click.option("--budget", type=int, default=10**9, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def experiment_diagonal_sweep(r_list, d_list, budget, threads, output) -> None:
    """Exact dispersion of the diagonal construction over an (r, d) grid.

    Verifies dispersion <= r for every in-budget combination; over-budget
    combinations get a deterministic 'budget' row instead of failing.
    """
    r_values = _parse_fraction_list(r_list)
    d_values = _parse_int_list(d_list)
    lines = _metadata(
        f"experiment diagonal-sweep --r-list {r_list} --d-list {d_list} --budget {budget}",
        None,
    )
    lines.append(DIAGONAL_SWEEP_HEADER)
    violations = []
    for r in r_values:
        bound = diagonal_set_size_bound(r)
        for d in d_values:
            points = diagonal_set(DiagonalParams(r=r, d=d))
            prefix = [format_scalar(r), str(d), str(len(points)), str(bound.value)]
            try:
                result = dispersion_exact(points, budget=budget, threads=threads)
            except BudgetExceededError:
                lines.append(",".join(prefix + ["budget", "NA", "NA", "NA"]))
                continue
            within = result.value <= r
            if not within:
                violations.append((r, d, result.value))
            witness = ";".join(
                f"{format_scalar(itv.lo)}:{format_scalar(itv.hi)}"
                for itv in result.witness.intervals
            )
            lines.append(
                ",".join(
                    prefix
                    + ["ok", format_scalar(result.value), str(within).lower(), witness]
                )
            )
    _emit(lines, output)
    if violations:
        click.echo(f"error: dispersion guarantee violated at {violations}", err=True)
        sys.exit(1)


@experiment.command("certify-sweep")
@click.option("--q", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--seeds", required=True, help="Seed list: 'a,b,c' or 'lo:hi[:step]'.")
@click.option("--family-budget", type=int, default=10**7, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def experiment_certify_sweep(q, d, seeds, family_budget, output) -> None:
    """Empirical first certified n across seeds."""
    if q < 2:
        raise click.UsageError("--q must be >= 2")
    seed_values = _parse_int_list(seeds)
    lines = _metadata(
        f"experiment certify-sweep --q {q} --d {d} --seeds {seeds}", None
    )
    lines.append("seed,certified_n")
    for seed in seed_values:
        n = minimal_certified_n(q, d, seed, family_budget=family_budget)
        lines.append(f"{seed},{n}")
    _emit(lines, output)


@experiment.command("minimal-n")
@click.option("--q", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--seeds", required=True, help="Seed list: 'a,b,c' or 'lo:hi[:step]'.")
@click.option("--family-budget", type=int, default=10**7, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_with_exit_codes
def experiment_minimal_n(q, d, seeds, family_budget, output) -> None:
    """Empirical certified n per seed, next to the analytic sample size."""
    if q < 2:
        raise click.UsageError("--q must be >= 2")
    seed_values = _parse_int_list(seeds)
    analytic = grid_sample_size(q, d)
    lines = _metadata(f"experiment minimal-n --q {q} --d {d} --seeds {seeds}", None)
    lines.append("q,d,seed,empirical_n,analytic_n")
    for seed in seed_values:
        n = minimal_certified_n(q, d, seed, family_budget=family_budget)
        lines.append(f"{q},{d},{seed},{n},{analytic}")
    _emit(lines, output)


if __name__ == "__main__":
    main()
