"""Multi-color forcing on graphs: propagation engine, contraction, and
end-state classifiers for cyclic three-color networks."""

from . import errors
from .classifiers import (
    CYCLIC3,
    LINEAR_R1,
    EndStatePrediction,
    classify_complete,
    classify_complete_bipartite,
    classify_linear_r1,
    classify_path,
    classify_three_color_conditions,
    classify_two_color,
    predict,
)
from .contraction import ContractionMap, color_contract, lift_end_state
from .core import (
    ColoredGraph,
    ForcingNetwork,
    Rule,
    StateLabel,
    is_acyclic,
    is_connected,
    validate_colored_graph,
    validate_network,
)
from .corpora import (
    DEFAULT_BUDGET,
    GraphSkeleton,
    connected_graphs,
    enumerate_colorings,
    generate_family,
    labeled_trees,
    random_connected_graph,
    random_network,
    random_tree,
    tree_from_pruefer,
)
from .engine import (
    ForcingTrace,
    NonTerminating,
    RoundEvent,
    Terminated,
    default_max_fs,
    end_state,
    forcing_round,
    propagating_step,
    run_with_propagation,
    run_without_propagation,
)
from .lab import (
    CLAIMS,
    Counterexample,
    ExtremalInstance,
    SearchResult,
    VerificationReport,
    graph_diameter,
    search_extremal,
    verify_claim,
)

__version__ = "0.1.0"

__all__ = [
    "CLAIMS",
    "CYCLIC3",
    "ColoredGraph",
    "ContractionMap",
    "Counterexample",
    "DEFAULT_BUDGET",
    "EndStatePrediction",
    "ExtremalInstance",
    "ForcingNetwork",
    "ForcingTrace",
    "GraphSkeleton",
    "LINEAR_R1",
    "NonTerminating",
    "RoundEvent",
    "Rule",
    "SearchResult",
    "StateLabel",
    "Terminated",
    "VerificationReport",
    "classify_complete",
    "classify_complete_bipartite",
    "classify_linear_r1",
    "classify_path",
    "classify_three_color_conditions",
    "classify_two_color",
    "color_contract",
    "connected_graphs",
    "default_max_fs",
    "end_state",
    "enumerate_colorings",
    "errors",
    "forcing_round",
    "generate_family",
    "graph_diameter",
    "is_acyclic",
    "is_connected",
    "labeled_trees",
    "lift_end_state",
    "predict",
    "propagating_step",
    "random_connected_graph",
    "random_network",
    "random_tree",
    "search_extremal",
    "tree_from_pruefer",
    "validate_colored_graph",
    "validate_network",
    "verify_claim",
    "__version__",
]
