#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-Python twins.

Usage: python3 benchmarks/bench_kernels.py [--repeat 3]

Also asserts bit-identical results between backends on every workload, so a
speedup never comes at the cost of the determinism guarantees.
"""

from __future__ import annotations

import argparse
import random
import time
from array import array
from collections import deque

from scimetrics import _kernels_py

try:
    from scimetrics import _kernels as compiled
except ImportError:
    compiled = None


def random_csr(rng, n, avg_degree=8.0):
    p = min(1.0, avg_degree / max(1, n - 1))
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                w = float(rng.randint(1, 5))
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


def bench(label, fn_pure, fn_compiled, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        result_pure = fn_pure()
    pure = (time.perf_counter() - t0) / repeat
    if compiled is None:
        print(f"{label:<28} pure {pure*1e3:9.2f} ms   (compiled kernels unavailable)")
        return
    t0 = time.perf_counter()
    for _ in range(repeat):
        result_compiled = fn_compiled()
    fast = (time.perf_counter() - t0) / repeat
    match = "ok" if result_pure == result_compiled else "MISMATCH"
    print(
        f"{label:<28} pure {pure*1e3:9.2f} ms   compiled {fast*1e3:8.2f} ms"
        f"   speedup {pure/fast:6.1f}x   parity {match}"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    rng = random.Random(7)

    values = array("d", (rng.uniform(0, 1000) for _ in range(4000)))
    bench(
        "gini pair sums (n=4000)",
        lambda: _kernels_py.abs_diff_total(values),
        lambda: compiled.abs_diff_total(values),
        args.repeat,
    )

    n = 400
    indptr, indices, weights = random_csr(rng, n)
    bench(
        f"betweenness (n={n})",
        lambda: list(_kernels_py.betweenness_csr(n, indptr, indices)),
        lambda: list(compiled.betweenness_csr(n, indptr, indices)),
        args.repeat,
    )

    k = array("d", [0.0]) * n
    for i in range(n):
        for ei in range(indptr[i], indptr[i + 1]):
            k[i] += weights[ei]
    two_m = sum(k)
    order = array("q", range(n))

    def one_sweep(module):
        node_com = array("q", range(n))
        com_tot = array("d", k)
        moves = module.louvain_pass(
            n, indptr, indices, weights, k, order, node_com, com_tot, two_m
        )
        return moves, list(node_com)

    bench(
        f"louvain sweep (n={n})",
        lambda: one_sweep(_kernels_py),
        lambda: one_sweep(compiled),
        args.repeat,
    )

    raw_indptr, raw_indices, _ = random_csr(rng, 140, avg_degree=4.0)
    seen = {0}
    queue = deque([0])
    while queue:  # largest-ish component: the one holding vertex 0
        v = queue.popleft()
        for ei in range(raw_indptr[v], raw_indptr[v + 1]):
            w = raw_indices[ei]
            if w not in seen:
                seen.add(w)
                queue.append(w)
    comp = sorted(seen)
    remap = {v: i for i, v in enumerate(comp)}
    m = len(comp)
    dist = array("d", [0.0]) * (m * m)
    for s in comp:
        level = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for ei in range(raw_indptr[v], raw_indptr[v + 1]):
                w = raw_indices[ei]
                if w in remap and w not in level:
                    level[w] = level[v] + 1
                    queue.append(w)
        for t, d in level.items():
            dist[remap[s] * m + remap[t]] = float(d)
    diameter = max(dist)
    xs0 = array("d", (rng.uniform(-1, 1) for _ in range(m)))
    ys0 = array("d", (rng.uniform(-1, 1) for _ in range(m)))

    def layout(module):
        xs = array("d", xs0)
        ys = array("d", ys0)
        its = module.kk_minimize(m, dist, xs, ys, 1.0 / diameter, 1.0, 1e-4, 3000)
        return its, list(xs), list(ys)

    bench(
        f"kamada-kawai (n={m})",
        lambda: layout(_kernels_py),
        lambda: layout(compiled),
        args.repeat,
    )


if __name__ == "__main__":
    main()
