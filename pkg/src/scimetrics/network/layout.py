"""Force-directed layout by stress minimization against graph distances.

Energy: E = sum_{i<j} k_ij (||p_i - p_j|| - L*d_ij)^2 with d_ij the shortest
path length, k_ij = K/d_ij^2, and L the desired length of a single edge
(chosen as 1/diameter so a component spans roughly a unit box). One vertex
moves at a time - the one whose energy gradient is largest - via damped
Newton steps, so the energy never increases.
"""

from __future__ import annotations

import random
from array import array
from collections import deque

from ..kernels import kk_minimize
from .graph import CountryGraph

EPSILON = 1e-4
COMPONENT_GAP = 0.3


class NonPositiveIterations(ValueError):
    pass


def _bfs_distances(graph: CountryGraph) -> dict[str, dict[str, int]]:
    index = {v: i for i, v in enumerate(graph.vertices)}
    adj: list[list[int]] = [[] for _ in graph.vertices]
    for a, b in graph.edges:
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    for row in adj:
        row.sort()
    out: dict[str, dict[str, int]] = {}
    for s, sv in enumerate(graph.vertices):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        out[sv] = {graph.vertices[t]: d for t, d in dist.items()}
    return out


def initial_positions(graph: CountryGraph, seed: int) -> dict[str, tuple[float, float]]:
    """Per-component circle with small seeded jitter; the layout starts here."""
    from math import cos, pi, sin

    rng = random.Random(seed)
    positions: dict[str, tuple[float, float]] = {}
    for comp in graph.connected_components():
        m = len(comp)
        for i, v in enumerate(comp):
            angle = 2.0 * pi * i / m
            positions[v] = (
                0.5 * cos(angle) + rng.uniform(-0.01, 0.01),
                0.5 * sin(angle) + rng.uniform(-0.01, 0.01),
            )
    return positions


def stress(graph: CountryGraph, positions: dict[str, tuple[float, float]],
           L0: float = 1.0, K: float = 1.0) -> float:
    """Total layout energy; pairs in different components do not interact."""
    from math import hypot

    dists = _bfs_distances(graph)
    total = 0.0
    for comp in graph.connected_components():
        diameter = max(
            (dists[a][b] for a in comp for b in comp if b in dists[a]), default=0
        )
        if diameter == 0:
            continue
        L = L0 / diameter
        for i, a in enumerate(comp):
            for b in comp[i + 1:]:
                d = dists[a][b]
                k = K / (d * d)
                (xa, ya), (xb, yb) = positions[a], positions[b]
                diff = hypot(xa - xb, ya - yb) - L * d
                total += k * diff * diff
    return total


def kamada_kawai_layout(
    graph: CountryGraph,
    seed: int = 0,
    max_iter: int = 10000,
    epsilon: float = EPSILON,
    L0: float = 1.0,
    K: float = 1.0,
) -> dict[str, tuple[float, float]]:
    """Layout every component independently, then pack them along the x axis."""
    if max_iter <= 0:
        raise NonPositiveIterations(f"max_iter must be positive, got {max_iter}")
    if graph.n_vertices == 0:
        return {}
    positions = initial_positions(graph, seed)
    dists = _bfs_distances(graph)
    packed: dict[str, tuple[float, float]] = {}
    offset_x = 0.0
    for comp in graph.connected_components():
        m = len(comp)
        if m == 1:
            packed[comp[0]] = (offset_x, 0.0)
            offset_x += COMPONENT_GAP * L0
            continue
        diameter = max(dists[a][b] for a in comp for b in comp)
        L = L0 / diameter
        flat = array("d", [0.0]) * (m * m)
        for i, a in enumerate(comp):
            for j, b in enumerate(comp):
                if i != j:
                    flat[i * m + j] = float(dists[a][b])
        xs = array("d", (positions[v][0] for v in comp))
        ys = array("d", (positions[v][1] for v in comp))
        kk_minimize(m, flat, xs, ys, L, K, epsilon, max_iter)
        min_x = min(xs)
        for i, v in enumerate(comp):
            packed[v] = (xs[i] - min_x + offset_x, ys[i])
        offset_x += (max(xs) - min_x) + COMPONENT_GAP * L0
    return packed


def fit_unit_square(positions: dict[str, tuple[float, float]]) -> dict[str, tuple[float, float]]:
    """Affine-rescale into [0,1]x[0,1] preserving aspect ratio."""
    if not positions:
        return {}
    xs = [p[0] for p in positions.values()]
    ys = [p[1] for p in positions.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    if span == 0.0:
        return {v: (0.5, 0.5) for v in positions}
    scale = 1.0 / span
    off_x = (1.0 - (max(xs) - min(xs)) * scale) / 2.0
    off_y = (1.0 - (max(ys) - min(ys)) * scale) / 2.0
    return {
        v: ((x - min(xs)) * scale + off_x, (y - min(ys)) * scale + off_y)
        for v, (x, y) in positions.items()
    }
