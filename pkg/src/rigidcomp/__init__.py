"""Rigid-component toolkit: (2,3)-pebble game decomposition, generic
rigidity oracles, probability-bound certification, and Monte Carlo
experiments on sparse random graphs."""

__version__ = "0.1.0"

from .graphs import (
    DuplicateEdgeError,
    EdgeListParseError,
    Graph,
    GraphError,
    SelfLoopError,
    VertexRangeError,
    count_triangles,
    new_graph,
    read_edge_list,
    sample_gnp,
    write_edge_list,
)
from .pebble import (
    RigidComponent,
    RigidDecomposition,
    henneberg1_extend,
    is_rigid,
    is_sparse_23,
    is_tight_23,
    largest_component_size,
    rigid_components,
)
from .oracle import (
    OracleLimitError,
    OracleVerdict,
    brute_components,
    brute_is_rigid,
    brute_is_sparse,
    density_scan,
    rank_is_rigid,
)
from .bounds import (
    BoundReport,
    appendix_log_expr,
    certify,
    chernoff_upper,
    component_prob_bound,
    exact_binomial_tail,
    expected_components_bound,
    per_vertex_rate,
    per_vertex_rate_eps,
    prdense_bound,
    simplified_rate_at_tenth,
    t_threshold,
)
from .experiments import (
    ExperimentConfig,
    TrialRecord,
    coupled_largest_spans,
    dichotomy_check,
    emergence_scan,
    run_sweep,
    run_trial,
    uniqueness_stat,
)
