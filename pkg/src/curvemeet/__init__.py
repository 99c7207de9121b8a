"""Certified planar curve intersection.

Given two continuous corner-to-corner paths of the unit square, one from
(0,0) to (1,1) and one from (0,1) to (1,0), known only through rational
approximations with a continuity modulus, this package computes nested
rational parameter intervals certified to contain a crossing, using only
exact integer arithmetic in every decision.
"""

from .errors import (
    CurveMeetError,
    EffortExhausted,
    EndpointViolation,
    GridMismatch,
    InvariantViolation,
    NotConverged,
    NotSeparated,
    OutOfDomain,
    PreconditionViolated,
    SeparationInvariantError,
    SpecFileError,
)
from .exact_geom import (
    DistanceEnclosure,
    Interval,
    Line,
    Point,
    Rational,
    SegKind,
    SegRelation,
    Segment,
    classify_segment_pair,
    interval,
    orient,
    pow2,
    pt,
    rat,
    smallest_n_below,
    sq_dist_point_segment,
    sq_dist_segment_segment,
    sqrt_enclosure,
)
from .parity import (
    AlphaEnclosure,
    CrossingReport,
    alpha_enclosure,
    certify_alpha,
    crossing_count,
    function_parity,
)
from .paths import (
    ExtendedPath,
    PathOracle,
    PolylinePath,
    QuadBezierPath,
    Side,
    TablePath,
    curved_pair,
    diagonal_pair,
    dyadic_grid,
    extend,
    n_approximation,
    n_approximation_pair,
)
from .refine import (
    Certificate,
    PointApproximation,
    RefinementRecord,
    extract_point,
    refine_sequence,
    shrink_first,
    shrink_pair,
    verify_certificate,
)
from .track import (
    Track,
    eval_track,
    make_track,
    perturb_to_separated,
    sup_track_distance,
    weakly_separated,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaEnclosure",
    "Certificate",
    "CrossingReport",
    "CurveMeetError",
    "DistanceEnclosure",
    "EffortExhausted",
    "EndpointViolation",
    "ExtendedPath",
    "GridMismatch",
    "Interval",
    "InvariantViolation",
    "Line",
    "NotConverged",
    "NotSeparated",
    "OutOfDomain",
    "PathOracle",
    "Point",
    "PointApproximation",
    "PolylinePath",
    "PreconditionViolated",
    "QuadBezierPath",
    "Rational",
    "RefinementRecord",
    "SegKind",
    "SegRelation",
    "Segment",
    "SeparationInvariantError",
    "Side",
    "SpecFileError",
    "TablePath",
    "Track",
    "alpha_enclosure",
    "certify_alpha",
    "classify_segment_pair",
    "crossing_count",
    "curved_pair",
    "diagonal_pair",
    "dyadic_grid",
    "eval_track",
    "extend",
    "extract_point",
    "function_parity",
    "interval",
    "make_track",
    "n_approximation",
    "n_approximation_pair",
    "orient",
    "perturb_to_separated",
    "pow2",
    "pt",
    "rat",
    "refine_sequence",
    "shrink_first",
    "shrink_pair",
    "smallest_n_below",
    "sq_dist_point_segment",
    "sq_dist_segment_segment",
    "sqrt_enclosure",
    "sup_track_distance",
    "verify_certificate",
    "weakly_separated",
]
