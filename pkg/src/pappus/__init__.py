"""Marked-box dynamics on the real projective plane.

The package follows one pipeline: exact incidence geometry (projective),
the box calculus and its refinement orbit (boxes), the word-indexed matrix
family (group), and the sampled limit curve with its verification battery
(limitset).  io and render serialize and draw; cli wires it all to a
command line.
"""

from .boxes import (
    MarkedBox,
    OrbitNode,
    apply_box_op,
    apply_word,
    axis,
    default_seed,
    diameter,
    marks_diameter,
    orbit,
    pappus_triple,
    symmetric_seed,
    validate,
)
from .errors import PappusError, PrecisionFallbackWarning
from .group import (
    GroupElement,
    enumerate_group,
    find_disjoint_pair,
    find_loxodromics,
    finite_order_search,
    predicted_member,
    reduce_word,
    rho_hat,
)
from .limitset import (
    LimitSetApprox,
    VerifyConfig,
    VerifyReport,
    assert_nondegenerate,
    density_gap,
    depth_error_bound,
    fixed_structure_check,
    general_position_census,
    hermitian_invariant_search,
    invariant_line_search,
    invariant_point_search,
    kulkarni_distance,
    orbit_cluster_check,
    pseudo_sequence_check,
    sample_curve,
    select_general_position,
    verify_all,
)
from .projective import (
    HLine,
    HPoint,
    ProjMap,
    complexify,
    dist,
    dist_point_line,
    incident,
    join,
    map_from_correspondence,
    meet,
    pseudo_limit_data,
    same_line,
    same_point,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "MarkedBox", "OrbitNode", "apply_box_op", "apply_word", "axis",
    "default_seed", "diameter", "marks_diameter", "orbit", "pappus_triple",
    "symmetric_seed", "validate", "PappusError", "PrecisionFallbackWarning",
    "GroupElement", "enumerate_group", "find_disjoint_pair",
    "find_loxodromics", "finite_order_search", "predicted_member",
    "reduce_word", "rho_hat", "LimitSetApprox", "VerifyConfig",
    "VerifyReport", "assert_nondegenerate", "density_gap",
    "depth_error_bound", "fixed_structure_check", "general_position_census",
    "hermitian_invariant_search", "invariant_line_search",
    "invariant_point_search", "kulkarni_distance", "orbit_cluster_check",
    "pseudo_sequence_check", "sample_curve", "select_general_position",
    "verify_all", "HLine", "HPoint", "ProjMap", "complexify", "dist",
    "dist_point_line", "incident", "join", "map_from_correspondence", "meet",
    "pseudo_limit_data", "same_line", "same_point", "spectrum", "__version__",
]
