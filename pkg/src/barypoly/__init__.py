"""Weight-product dynamics of polygon averaging.

Iterated barycentric averaging of a polygon's vertices with per-vertex
weights induces a product map on the weights themselves.  This package
computes that map's stationary state and its instability certificate,
iterates the sorted conjugate state with saturation tracking, verifies the
qualitative structure (order preservation, two-step contraction, phase
alternation, even/odd boundary limits), and follows the dual sequence of
polygon limit points.
"""
from .analysis import (
    KNOWN_CHECKS,
    AlternationReport,
    CheckResult,
    ContractionCertificate,
    EvenOddVerdict,
    VerificationError,
    char_poly_residuals,
    check_comparison_domination,
    check_ratio_monotonicity,
    contraction_certificate,
    default_suite,
    detect_alternation,
    elementary_symmetric,
    elementary_symmetric_all,
    even_odd_limits,
    linearized_update_matrix,
    reliable_horizon,
    sequence_metric,
    spectral_check,
    trajectory_checks,
)
from .dynamics import (
    ConjugateTuple,
    Phase,
    SaturationError,
    TrajectoryRecord,
    WeightTuple,
    classify_phase,
    comparison_sequence,
    conjugate_of,
    conjugate_step,
    derived_step,
    run_trajectory,
    weights_of,
)
from .geometry import (
    DualSequenceRecord,
    PointSet,
    centroid,
    dual_sequence,
    dual_weight_trajectory,
    limit_point,
    polygon_step,
    weight_orders,
)
from .stationary import StationaryCertificate, alpha_residual, certificate, solve_alpha, stationary_weights

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "KNOWN_CHECKS",
    "AlternationReport",
    "CheckResult",
    "ConjugateTuple",
    "ContractionCertificate",
    "DualSequenceRecord",
    "EvenOddVerdict",
    "Phase",
    "PointSet",
    "SaturationError",
    "StationaryCertificate",
    "TrajectoryRecord",
    "VerificationError",
    "WeightTuple",
    "alpha_residual",
    "centroid",
    "certificate",
    "char_poly_residuals",
    "check_comparison_domination",
    "check_ratio_monotonicity",
    "classify_phase",
    "comparison_sequence",
    "conjugate_of",
    "conjugate_step",
    "contraction_certificate",
    "default_suite",
    "derived_step",
    "detect_alternation",
    "dual_sequence",
    "dual_weight_trajectory",
    "elementary_symmetric",
    "elementary_symmetric_all",
    "even_odd_limits",
    "limit_point",
    "linearized_update_matrix",
    "polygon_step",
    "reliable_horizon",
    "run_trajectory",
    "sequence_metric",
    "solve_alpha",
    "spectral_check",
    "stationary_weights",
    "trajectory_checks",
    "weight_orders",
    "weights_of",
]
