"""dispkit: exact dispersion of point sets in the unit cube.

Computes the largest empty axis-aligned open box for arbitrary finite
rational point sets, builds point-set constructions with provable
dispersion guarantees, verifies them with finite covering certificates,
and tabulates the known closed-form bounds.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundsReport,
    aistleitner_inverse_lower,
    aistleitner_lower,
    aistleitner_quarter_lower,
    bounds_table,
    grid_log_coefficient,
    larcher_upper,
    pigeonhole_lower,
    rudolf_inverse_upper,
    rudolf_upper,
)
from .certificate import (
    CertificateReport,
    GridPattern,
    UnionBoundCheck,
    certificate_check,
    covering_family_size,
    effective_short_side_limit,
    enumerate_patterns,
    minimal_certified_n,
    pattern_to_box,
    short_side_limit,
    union_bound_check,
)
from .constructions import (
    DiagonalParams,
    GridParams,
    SizeBound,
    baseline_set,
    diagonal_set,
    diagonal_set_size_bound,
    grid_point_stream,
    grid_sample_size,
    random_grid_set,
)
from .engine import (
    DEFAULT_ENUMERATION_BUDGET,
    DispersionResult,
    EngineStats,
    SearchConfig,
    candidate_grid,
    dispersion_brute_force,
    dispersion_exact,
    dispersion_lower_witness,
    minimal_dispersion_search,
)
from .errors import BudgetExceededError, ParseError
from .geometry import (
    BoxNd,
    Interval,
    Point,
    PointSet,
    Scalar,
    format_scalar,
    parse_points,
    parse_scalar,
    points_to_csv,
)
from .rng import SplitMix64

__all__ = [
    "__version__",
    "BoundsReport",
    "BoxNd",
    "BudgetExceededError",
    "CertificateReport",
    "DEFAULT_ENUMERATION_BUDGET",
    "DiagonalParams",
    "DispersionResult",
    "EngineStats",
    "GridParams",
    "GridPattern",
    "Interval",
    "ParseError",
    "Point",
    "PointSet",
    "Scalar",
    "SearchConfig",
    "SizeBound",
    "SplitMix64",
    "UnionBoundCheck",
    "aistleitner_inverse_lower",
    "aistleitner_lower",
    "aistleitner_quarter_lower",
    "baseline_set",
    "bounds_table",
    "candidate_grid",
    "certificate_check",
    "covering_family_size",
    "diagonal_set",
    "diagonal_set_size_bound",
    "dispersion_brute_force",
    "dispersion_exact",
    "dispersion_lower_witness",
    "effective_short_side_limit",
    "enumerate_patterns",
    "format_scalar",
    "grid_log_coefficient",
    "grid_point_stream",
    "grid_sample_size",
    "larcher_upper",
    "minimal_certified_n",
    "minimal_dispersion_search",
    "parse_points",
    "parse_scalar",
    "pattern_to_box",
    "pigeonhole_lower",
    "points_to_csv",
    "random_grid_set",
    "rudolf_inverse_upper",
    "rudolf_upper",
    "short_side_limit",
    "union_bound_check",
]
