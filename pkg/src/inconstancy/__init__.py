"""Inconstancy of curves and sequences: 2 * length / convex-hull perimeter."""

__version__ = "0.1.0"

from .crofton import LineParam, McEstimate, empirical_pn, estimate_crofton, intersect_count
from .entropy import (
    EntropyReport,
    curve_entropy,
    empirical_entropy,
    entropy_std_error,
    max_entropy,
    modified_entropy,
)
from .errors import DegenerateAbscissaError, EmptyEstimateError, NotPrimitiveError
from .frequencies import (
    BlockCounts,
    BlockFrequencies,
    IncidenceMatrix,
    asymptotic_inconstancy,
    count_blocks,
    empirical_frequencies,
    finite_binary_inconstancy,
    incidence_matrix,
    morphism_block_frequencies,
    named_constants,
    pair_morphism,
    perron_frequencies,
    periodic_inconstancy,
    prefix_inconstancy,
    sturmian_inconstancy,
)
from .geometry import (
    ConvexHull,
    CurveMetrics,
    Point2,
    Polyline,
    arc_length,
    convex_hull,
    hull_perimeter,
    inconstancy,
    polyline_from_points,
    polyline_from_sequence,
    polyline_from_values,
    sequence_inconstancy,
    two_segment_inconstancy,
)
from .metrics import (
    FluctuationReport,
    RegressionFit,
    fluctuation_report,
    max_distance,
    mse,
    predict_next,
    regression,
    rmse,
    total_variation,
)
from .sequences import (
    Morphism,
    SymbolSequence,
    code,
    fixed_point,
    paperfolding,
    periodic,
    random_binary,
    rudin_shapiro,
    rudin_shapiro_derived,
    sturmian,
    thue_morse,
)
