"""Vertex betweenness centrality (Brandes' algorithm over unweighted paths)."""

from __future__ import annotations

from ..kernels import betweenness_csr
from .graph import CountryGraph


def betweenness(graph: CountryGraph) -> dict[str, float]:
    """Unnormalized shortest-path betweenness, halved for undirectedness.

    Disconnected graphs are fine: pairs in different components have no
    geodesics and contribute nothing.
    """
    n = graph.n_vertices
    if n == 0:
        return {}
    indptr, indices, _ = graph.adjacency_csr()
    scores = betweenness_csr(n, indptr, indices)
    return {v: scores[i] for i, v in enumerate(graph.vertices)}
