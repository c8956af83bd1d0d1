"""graphlens: weighted low-dimensional views over directed labeled graphs.

The package decomposes a vertex-labeled directed graph into weighted views
(one vertex per chosen label carrier, edges weighted by shared bridge
vertices) and drives them through selection / expansion / navigation
operators with a recorded navigation history, exposed over an HTTP session
API and a CLI.
"""

from .core import (
    Filter,
    LabeledGraph,
    SchemaGraph,
    derive_schema,
    filter_labels,
    graph_to_text,
    ingest_graph,
    parse_graph_text,
    restrict_filter,
)
from .matching import Match, enumerate_matches, terminal_path_endpoints
from .patterns import GraphPattern, PatternPair, generate_pattern_pairs, is_pair, steiner_tree_pattern
from .session import (
    NavGraph,
    NavState,
    OpKind,
    enumerate_nav_states,
    expand,
    make_state,
    nav_state_count,
    navigate,
    parse_history,
    select,
)
from .views import View, WeightedView, gen_view, minimal_view, vis_equivalent, weigh

__version__ = "0.1.0"

__all__ = [
    "Filter",
    "GraphPattern",
    "LabeledGraph",
    "Match",
    "NavGraph",
    "NavState",
    "OpKind",
    "PatternPair",
    "SchemaGraph",
    "View",
    "WeightedView",
    "derive_schema",
    "enumerate_matches",
    "enumerate_nav_states",
    "expand",
    "filter_labels",
    "gen_view",
    "generate_pattern_pairs",
    "graph_to_text",
    "ingest_graph",
    "is_pair",
    "make_state",
    "minimal_view",
    "nav_state_count",
    "navigate",
    "parse_graph_text",
    "parse_history",
    "restrict_filter",
    "select",
    "steiner_tree_pattern",
    "terminal_path_endpoints",
    "vis_equivalent",
    "weigh",
]
