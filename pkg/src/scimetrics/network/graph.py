"""Country co-authorship graph: construction, degrees, filtering."""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field, replace
from itertools import combinations

from ..corpus import BiblioRecord


@dataclass
class CountryGraph:
    """Weighted undirected simple graph over country codes.

    Edge keys are sorted pairs; weights count co-authored papers. Analytics
    results (betweenness, community, position) are attached once computed.
    """

    vertices: tuple[str, ...]
    edges: dict[tuple[str, str], int]
    betweenness: dict[str, float] = field(default_factory=dict)
    community: dict[str, int] = field(default_factory=dict)
    position: dict[str, tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = tuple(sorted(self.vertices))
        for (a, b), w in self.edges.items():
            if a == b:
                raise ValueError(f"self-loop on {a}")
            if a > b:
                raise ValueError(f"edge key {(a, b)} not sorted")
            if w < 1:
                raise ValueError(f"edge {(a, b)} weight {w} < 1")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: str) -> int:
        """Number of incident links; weights do not count here."""
        return sum(1 for a, b in self.edges if v in (a, b))

    def degrees(self) -> dict[str, int]:
        out = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            out[a] += 1
            out[b] += 1
        return out

    def neighbors(self, v: str) -> list[str]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def adjacency_csr(self) -> tuple[array, array, array]:
        """CSR arrays (indptr, indices, weights) over sorted vertex indices."""
        index = {v: i for i, v in enumerate(self.vertices)}
        adj: list[list[tuple[int, float]]] = [[] for _ in self.vertices]
        for (a, b), w in self.edges.items():
            adj[index[a]].append((index[b], float(w)))
            adj[index[b]].append((index[a], float(w)))
        indptr = array("q", [0])
        indices = array("q")
        weights = array("d")
        for row in adj:
            row.sort()
            for j, w in row:
                indices.append(j)
                weights.append(w)
            indptr.append(len(indices))
        return indptr, indices, weights

    def connected_components(self) -> list[list[str]]:
        index = {v: i for i, v in enumerate(self.vertices)}
        adj: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[index[a]].append(index[b])
            adj[index[b]].append(index[a])
        seen = [False] * len(self.vertices)
        components = []
        for start in range(len(self.vertices)):
            if seen[start]:
                continue
            seen[start] = True
            queue = deque([start])
            comp = []
            while queue:
                v = queue.popleft()
                comp.append(self.vertices[v])
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            components.append(sorted(comp))
        return components


def build_graph(records: list[BiblioRecord]) -> CountryGraph:
    """Each record's distinct-country set contributes +1 to every pair.

    Vertices cover every country appearing on any record, including countries
    that never co-author internationally.
    """
    vertices: set[str] = set()
    weights: dict[tuple[str, str], int] = {}
    for rec in records:
        countries = sorted(rec.distinct_countries())
        vertices.update(countries)
        for pair in combinations(countries, 2):
            weights[pair] = weights.get(pair, 0) + 1
    return CountryGraph(vertices=tuple(sorted(vertices)), edges=weights)


def filter_by_degree(graph: CountryGraph, min_degree: int) -> CountryGraph:
    """Keep vertices whose degree in the ORIGINAL graph >= min_degree.

    Single pass: induced edges only, no iterative core pruning.
    """
    if min_degree < 0:
        raise ValueError("min_degree must be >= 0")
    degrees = graph.degrees()
    keep = {v for v in graph.vertices if degrees[v] >= min_degree}
    edges = {e: w for e, w in graph.edges.items() if e[0] in keep and e[1] in keep}
    return CountryGraph(vertices=tuple(sorted(keep)), edges=edges)


def subgraph(graph: CountryGraph, keep: set[str]) -> CountryGraph:
    edges = {e: w for e, w in graph.edges.items() if e[0] in keep and e[1] in keep}
    return CountryGraph(vertices=tuple(sorted(keep)), edges=edges)


def with_attributes(graph: CountryGraph, **attrs) -> CountryGraph:
    return replace(graph, **attrs)
