"""Country co-authorship network: construction, analytics, interchange formats."""

from .centrality import betweenness
from .community import louvain, modularity
from .graph import CountryGraph, build_graph, filter_by_degree
from .layout import (
    NonPositiveIterations,
    fit_unit_square,
    initial_positions,
    kamada_kawai_layout,
    stress,
)
from .netio import (
    IoFailure,
    export_network,
    parse_pajek,
    render_dot,
    render_graphml,
    render_pajek,
)

__all__ = [
    "CountryGraph",
    "IoFailure",
    "NonPositiveIterations",
    "betweenness",
    "build_graph",
    "export_network",
    "filter_by_degree",
    "fit_unit_square",
    "initial_positions",
    "kamada_kawai_layout",
    "louvain",
    "modularity",
    "parse_pajek",
    "render_dot",
    "render_graphml",
    "render_pajek",
    "stress",
]
