"""Hypercube 2-segmentation (H2S) toolkit.

Solvers for the two equivalent H2S objectives, Sylvester Hadamard codes
with their subset-sum norm bounds, max-cut utilities, and the
graph-to-H2S reduction together with a harness that verifies its value
bounds on concrete instances.
"""

from .core import (
    BlockMeta,
    CenterPair,
    H2SInstance,
    agree,
    cluster_sum,
    l1_norm,
    majority_center,
    partition_agreement,
    score_agreement,
    score_l1,
    voronoi_assign,
)
from .hadamard import HadamardCode, subset_sum_l1, sylvester, verify_orthogonality
from .io import FormatError, load_graph, load_instance, save_instance
from .maxcut import (
    Graph,
    cut_value,
    fractional_cut_value,
    maxcut_exact,
    maxcut_local,
    round_fractional,
)
from .reduction import (
    OrientedGraph,
    ReductionReport,
    fractional_cut_from_partition,
    min_valid_M,
    orient_edges,
    partition_from_cut,
    reduce_graph,
    sufficient_M,
    upper_bound,
    verify_instance_bounds,
    yes_bound,
)
from .solvers import (
    SolveResult,
    SolveStats,
    local_improve,
    solve_center_pairs,
    solve_exact,
    solve_local,
)

__version__ = "0.1.0"

__all__ = [
    "BlockMeta", "CenterPair", "H2SInstance", "agree", "cluster_sum", "l1_norm",
    "majority_center", "partition_agreement", "score_agreement", "score_l1",
    "voronoi_assign",
    "HadamardCode", "subset_sum_l1", "sylvester", "verify_orthogonality",
    "FormatError", "load_graph", "load_instance", "save_instance",
    "Graph", "cut_value", "fractional_cut_value", "maxcut_exact", "maxcut_local",
    "round_fractional",
    "OrientedGraph", "ReductionReport", "fractional_cut_from_partition",
    "min_valid_M", "orient_edges", "partition_from_cut", "reduce_graph",
    "sufficient_M", "upper_bound", "verify_instance_bounds", "yes_bound",
    "SolveResult", "SolveStats", "local_improve", "solve_center_pairs",
    "solve_exact", "solve_local",
    "HypercubeSegmentation",
]


def __getattr__(name):
    # lazy import so CLI startup does not pay for scikit-learn
    if name == "HypercubeSegmentation":
        from .estimator import HypercubeSegmentation

        return HypercubeSegmentation
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
