"""sawcount: deterministic approximate counting for the hard-core and
monomer-dimer models via truncated self-avoiding-walk-tree recurrences,
with the accompanying correlation-decay analysis and connective-constant
estimation machinery."""

from .counting import oracle_Z, oracle_marginal, partition_hc, partition_md
from .decay import (
    DecayReport,
    choose_exponents_hc,
    choose_exponents_md,
    decay_factor_hc,
    decay_factor_md,
    delta_c,
    gap_bound,
    hc_message_bounds,
    lambda_c,
    md_message_bounds,
    ptilde,
    symmetrize_check,
    xtilde,
)
from .graph import (
    Graph,
    degree_stats,
    delete_vertex,
    gen_graph,
    graph_from_edge_list,
    graph_from_edges,
    graph_to_edge_list,
)
from .recurrence import (
    ALL_MAX,
    ALL_ZERO,
    HARDCORE,
    MONOMERDIMER,
    AdaptiveBudgetError,
    ApproxResult,
    ModelParams,
    eval_hc,
    eval_md,
    hardcore,
    marginal_adaptive,
    marginal_interval,
    monomerdimer,
    sandwich_values,
)
from .sawtree import (
    BoundaryCondition,
    NodeBudgetError,
    SawNode,
    SawTree,
    expand_saw_tree,
    saw_counts,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_MAX",
    "ALL_ZERO",
    "AdaptiveBudgetError",
    "ApproxResult",
    "BoundaryCondition",
    "DecayReport",
    "Graph",
    "HARDCORE",
    "MONOMERDIMER",
    "ModelParams",
    "NodeBudgetError",
    "SawNode",
    "SawTree",
    "choose_exponents_hc",
    "choose_exponents_md",
    "decay_factor_hc",
    "decay_factor_md",
    "degree_stats",
    "delete_vertex",
    "delta_c",
    "eval_hc",
    "eval_md",
    "expand_saw_tree",
    "gap_bound",
    "gen_graph",
    "graph_from_edge_list",
    "graph_from_edges",
    "graph_to_edge_list",
    "hardcore",
    "hc_message_bounds",
    "lambda_c",
    "marginal_adaptive",
    "marginal_interval",
    "md_message_bounds",
    "monomerdimer",
    "oracle_Z",
    "oracle_marginal",
    "partition_hc",
    "partition_md",
    "ptilde",
    "sandwich_values",
    "saw_counts",
    "symmetrize_check",
    "xtilde",
]
