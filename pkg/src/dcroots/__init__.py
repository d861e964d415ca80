"""Half-plane root counting, localization, and tracking for prod(z + c_k) = 1.

The equation arises as the characteristic equation of doubly cyclic
matrices after diagonal reduction; this package provides the reduction,
two independent counting methods, explicit localization regions, a
homotopy path to the all-gamma vector with root tracing, and
constructions achieving any odd right-half count up to the ideal
maximum.
"""

from .bounds import (
    IFTConstants,
    RegionSpec,
    box_region,
    epsilon_wall,
    ift_constants,
    improved_annulus,
    inner_radius,
    wall_region,
)
from .core import (
    CoefficientVector,
    CountReport,
    DCMatrix,
    DMultiset,
    from_multiset,
    geometric_mean,
    reduce_matrix,
    to_multiset,
)
from .errors import (
    CapacityError,
    ConstructionError,
    ContourError,
    DCRootsError,
    DomainError,
    MatchingError,
    SolverError,
    TheoremViolation,
    TracerError,
)
from .extremal import construct_nu_one, construct_with_count, matrix_with_count
from .homotopy import (
    CrossingEvent,
    PathPlan,
    Segment,
    Trajectory,
    counts_along_path,
    detect_crossings,
    eval_path,
    find_t_for_count,
    plan_full_path,
    plan_segment,
    trace_roots,
)
from .oracle import ideal_counts, ideal_roots, ideal_vector, maclaurin_chain
from .poly import eval_p, eval_p_minus_one, expand_coefficients
from .roots import (
    RootSet,
    classify,
    count_by_contour,
    count_right_half,
    imaginary_axis_modulus_root,
    positive_real_root,
    solve_all_roots,
)
from .sampling import random_matrix, random_vector, spawn_rng

__version__ = "0.1.0"

__all__ = [
    "CoefficientVector",
    "CountReport",
    "DCMatrix",
    "DMultiset",
    "RootSet",
    "RegionSpec",
    "IFTConstants",
    "PathPlan",
    "Segment",
    "Trajectory",
    "CrossingEvent",
    "DCRootsError",
    "DomainError",
    "CapacityError",
    "SolverError",
    "ContourError",
    "TracerError",
    "MatchingError",
    "ConstructionError",
    "TheoremViolation",
    "geometric_mean",
    "to_multiset",
    "from_multiset",
    "reduce_matrix",
    "eval_p",
    "eval_p_minus_one",
    "expand_coefficients",
    "solve_all_roots",
    "classify",
    "count_by_contour",
    "count_right_half",
    "positive_real_root",
    "imaginary_axis_modulus_root",
    "inner_radius",
    "epsilon_wall",
    "improved_annulus",
    "box_region",
    "wall_region",
    "ift_constants",
    "plan_segment",
    "eval_path",
    "plan_full_path",
    "trace_roots",
    "counts_along_path",
    "detect_crossings",
    "find_t_for_count",
    "construct_nu_one",
    "construct_with_count",
    "matrix_with_count",
    "ideal_vector",
    "ideal_roots",
    "ideal_counts",
    "maclaurin_chain",
    "random_vector",
    "random_matrix",
    "spawn_rng",
]
