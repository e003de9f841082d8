"""Community detection: greedy multi-level modularity optimization (Louvain).

Deterministic for a given seed: vertex visit order comes from a seeded
generator, and the returned community ids are canonicalized by each
community's smallest member label.
"""

from __future__ import annotations

import random
from array import array
from collections import defaultdict

from ..kernels import louvain_pass
from .graph import CountryGraph

GAIN_THRESHOLD = 1e-7


def modularity(graph: CountryGraph, partition: dict[str, int]) -> float:
    """Newman modularity of a vertex partition over the weighted graph."""
    two_m = 2.0 * sum(graph.edges.values())
    if two_m == 0.0:
        return 0.0
    k: dict[str, float] = defaultdict(float)
    for (a, b), w in graph.edges.items():
        k[a] += w
        k[b] += w
    internal: dict[int, float] = defaultdict(float)
    tot: dict[int, float] = defaultdict(float)
    for v in graph.vertices:
        tot[partition[v]] += k[v]
    for (a, b), w in graph.edges.items():
        if partition[a] == partition[b]:
            internal[partition[a]] += w
    q = 0.0
    for com, t in tot.items():
        q += 2.0 * internal[com] / two_m - (t / two_m) ** 2
    return q


class _Level:
    """One aggregation level: nodes 0..n-1, pair weights, self-loop weights."""

    def __init__(self, n: int, pair_w: dict[tuple[int, int], float], self_w: list[float]):
        self.n = n
        self.pair_w = pair_w
        self.self_w = self_w

    def csr(self):
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for (i, j), w in self.pair_w.items():
            adj[i].append((j, w))
            adj[j].append((i, w))
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

    def degrees(self) -> list[float]:
        k = [0.0] * self.n
        for (i, j), w in self.pair_w.items():
            k[i] += w
            k[j] += w
        for i in range(self.n):
            k[i] += 2.0 * self.self_w[i]
        return k


def _aggregate(level: _Level, node_com) -> tuple[_Level, dict[int, int]]:
    """Collapse communities into nodes; returns the new level and label -> node id."""
    labels = sorted(set(node_com))
    renum = {c: i for i, c in enumerate(labels)}
    n = len(labels)
    self_w = [0.0] * n
    pair_w: dict[tuple[int, int], float] = {}
    for i in range(level.n):
        self_w[renum[node_com[i]]] += level.self_w[i]
    for (i, j), w in level.pair_w.items():
        ci, cj = renum[node_com[i]], renum[node_com[j]]
        if ci == cj:
            self_w[ci] += w
        else:
            key = (ci, cj) if ci < cj else (cj, ci)
            pair_w[key] = pair_w.get(key, 0.0) + w
    return _Level(n, pair_w, self_w), renum


def _louvain_once(
    graph: CountryGraph, rng: random.Random, initial: list[int] | None = None
) -> tuple[list[int], float]:
    """One full multi-level run; returns (membership per sorted vertex, modularity).

    ``initial`` seeds the level-0 partition (default: singletons); restarts use
    random initial partitions to explore different basins.
    """
    n = graph.n_vertices
    index = {v: i for i, v in enumerate(graph.vertices)}
    level = _Level(
        n,
        {(index[a], index[b]): float(w) for (a, b), w in graph.edges.items()},
        [0.0] * n,
    )
    membership = list(initial) if initial is not None else list(range(n))
    levelnode = list(range(n))  # vertex index -> node of the current level
    current_q = modularity(graph, {v: membership[index[v]] for v in graph.vertices})
    first_level = True

    while True:
        indptr, indices, weights = level.csr()
        k = level.degrees()
        two_m = sum(k)
        if two_m == 0.0:
            break
        if first_level:
            # level-0 nodes are vertex indices; seed their community labels
            node_com = array("q", membership)
            com_tot = array("d", [0.0]) * level.n
            for i in range(level.n):
                com_tot[node_com[i]] += k[i]
            first_level = False
        else:
            node_com = array("q", range(level.n))
            com_tot = array("d", k)
        k_arr = array("d", k)
        order = list(range(level.n))
        rng.shuffle(order)
        order_arr = array("q", order)
        while louvain_pass(level.n, indptr, indices, weights, k_arr, order_arr,
                           node_com, com_tot, two_m):
            pass
        raw = [node_com[levelnode[v]] for v in range(n)]
        new_q = modularity(graph, {v: raw[index[v]] for v in graph.vertices})
        if new_q - current_q < GAIN_THRESHOLD:
            if new_q > current_q:
                membership = raw
            break
        membership = raw
        current_q = new_q
        next_level, renum = _aggregate(level, node_com)
        levelnode = [renum[c] for c in raw]
        membership = list(levelnode)
        if next_level.n == level.n:
            break
        level = next_level
    return membership, current_q


def _merge_pass(n, pair_w, node_com, com_tot, two_m) -> bool:
    """Greedily merge community pairs while any merge increases modularity."""
    merged_any = False
    while True:
        between: dict[tuple[int, int], float] = defaultdict(float)
        for (i, j), w in pair_w.items():
            ci, cj = node_com[i], node_com[j]
            if ci != cj:
                between[(min(ci, cj), max(ci, cj))] += w
        best_gain = 1e-12
        best_pair = None
        for (c1, c2), w in sorted(between.items()):
            gain = 2.0 * w / two_m - 2.0 * com_tot[c1] * com_tot[c2] / (two_m * two_m)
            if gain > best_gain:
                best_gain = gain
                best_pair = (c1, c2)
        if best_pair is None:
            return merged_any
        c1, c2 = best_pair
        for i in range(n):
            if node_com[i] == c2:
                node_com[i] = c1
        com_tot[c1] += com_tot[c2]
        com_tot[c2] = 0.0
        merged_any = True


def _kl_round(n, adj, k, two_m, node_com, com_tot, com_size, order) -> bool:
    """One Kernighan-Lin sweep: chain best single moves (negative allowed) with
    vertex locking, then keep the best prefix. Returns True on improvement.

    Move values are gain scores scaled by two_m/2, monotone in the true
    modularity delta, so prefix comparison is exact. ``order`` sets the scan
    order and thereby the tie-breaking, diversifying repeated rounds.
    """
    snapshot = list(node_com)
    locked = [False] * n
    trail: list[tuple[int, int]] = []
    running = 0.0
    best_sum = 0.0
    best_step = -1
    for step in range(n):
        best = None  # (delta, vertex, target_com)
        for v in order:
            if locked[v]:
                continue
            a = node_com[v]
            w_to: dict[int, float] = defaultdict(float)
            for u, w in adj[v]:
                w_to[node_com[u]] += w
            com_tot[a] -= k[v]
            score_a = w_to[a] - k[v] * com_tot[a] / two_m
            candidates = [c for c in range(n) if com_size[c] > 0 and c != a]
            if com_size[a] > 1:  # fresh singleton, reuse the lowest empty label
                for c in range(n):
                    if com_size[c] == 0:
                        candidates.append(c)
                        break
            for c in candidates:
                delta = (w_to[c] - k[v] * com_tot[c] / two_m) - score_a
                if best is None or delta > best[0] + 1e-15:
                    best = (delta, v, c)
            com_tot[a] += k[v]
        if best is None:
            break
        delta, v, c = best
        a = node_com[v]
        com_tot[a] -= k[v]
        com_tot[c] += k[v]
        com_size[a] -= 1
        com_size[c] += 1
        node_com[v] = c
        locked[v] = True
        trail.append((v, c))
        running += delta
        if running > best_sum + 1e-12:
            best_sum = running
            best_step = step
    # rewind to the best prefix (possibly all the way back)
    for i in range(n):
        node_com[i] = snapshot[i]
    for i in range(n):
        com_tot[i] = 0.0
        com_size[i] = 0
    for i in range(n):
        com_tot[node_com[i]] += k[i]
        com_size[node_com[i]] += 1
    for v, c in trail[: best_step + 1]:
        a = node_com[v]
        com_tot[a] -= k[v]
        com_tot[c] += k[v]
        com_size[a] -= 1
        com_size[c] += 1
        node_com[v] = c
    return best_step >= 0


def _refine(graph: CountryGraph, membership: list[int], rng: random.Random) -> list[int]:
    """Escape aggregation lock-in: relocation sweeps, merges, and KL rounds."""
    n = graph.n_vertices
    index = {v: i for i, v in enumerate(graph.vertices)}
    pair_w = {(index[a], index[b]): float(w) for (a, b), w in graph.edges.items()}
    level = _Level(n, pair_w, [0.0] * n)
    indptr, indices, weights = level.csr()
    k = level.degrees()
    two_m = sum(k)
    k_arr = array("d", k)
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (i, j), w in pair_w.items():
        adj[i].append((j, w))
        adj[j].append((i, w))
    for row in adj:
        row.sort()
    node_com = array("q", membership)
    com_tot = array("d", [0.0]) * n
    com_size = [0] * n
    for i in range(n):
        com_tot[node_com[i]] += k[i]
        com_size[node_com[i]] += 1
    def recount_sizes():
        for i in range(n):
            com_size[i] = 0
        for i in range(n):
            com_size[node_com[i]] += 1

    while True:
        changed = False
        order = list(range(n))
        rng.shuffle(order)
        order_arr = array("q", order)
        while louvain_pass(n, indptr, indices, weights, k_arr, order_arr,
                           node_com, com_tot, two_m):
            changed = True
        if changed:  # relocation passes do not maintain com_size
            recount_sizes()
        if _merge_pass(n, pair_w, node_com, com_tot, two_m):
            recount_sizes()
            changed = True
        for _ in range(6):  # several KL chains; different scan orders, stop on gain
            kl_order = list(range(n))
            rng.shuffle(kl_order)
            if _kl_round(n, adj, k, two_m, node_com, com_tot, com_size, kl_order):
                changed = True
                break
        if not changed:
            return list(node_com)


def louvain(graph: CountryGraph, seed: int = 0, restarts: int = 16) -> dict[str, int]:
    """Partition vertices into communities; ids are 0..k-1 ordered by smallest member.

    The greedy optimizer is visit-order sensitive, so each seeded run is
    followed by an original-level refinement (relocations + exact community
    merges) and several restarts are drawn from the one generator, keeping the
    best-modularity partition (first found wins ties). Deterministic for a
    given (graph, seed).
    """
    n = graph.n_vertices
    if n == 0:
        return {}
    if not graph.edges:
        return {v: i for i, v in enumerate(graph.vertices)}
    index = {v: i for i, v in enumerate(graph.vertices)}
    rng = random.Random(seed)
    best: list[int] | None = None
    best_q = float("-inf")
    for r in range(max(1, restarts)):
        # canonical singleton start first, random partitions for later basins
        initial = None if r == 0 else [rng.randrange(n) for _ in range(n)]
        membership, _ = _louvain_once(graph, rng, initial)
        membership = _refine(graph, membership, rng)
        q = modularity(graph, {v: membership[index[v]] for v in graph.vertices})
        if q > best_q + 1e-12:
            best, best_q = membership, q

    # canonical ids: communities ordered by their smallest member label
    groups: dict[int, list[str]] = defaultdict(list)
    for v in graph.vertices:
        groups[best[index[v]]].append(v)
    ordered = sorted(groups.values(), key=lambda vs: min(vs))
    out: dict[str, int] = {}
    for cid, members in enumerate(ordered):
        for v in members:
            out[v] = cid
    return out
