"""Pure-Python kernels: the fallback twin of the compiled ``_kernels`` module.

Every function here mirrors its Cython counterpart operation-for-operation
(same arithmetic, same iteration order) so that both backends produce
bit-identical doubles. Keep the two files in sync when editing either.

Graphs arrive in CSR form: ``indptr`` (n+1 entries) and ``indices`` hold the
sorted adjacency of vertices 0..n-1.
"""

from __future__ import annotations

from array import array
from math import sqrt

BACKEND = "python"


def abs_diff_total(values) -> float:
    """Sum of |x_i - x_j| over all ordered pairs (the Gini numerator)."""
    n = len(values)
    total = 0.0
    for i in range(n):
        xi = values[i]
        for j in range(n):
            d = xi - values[j]
            total += d if d >= 0.0 else -d
    return total


def betweenness_csr(n: int, indptr, indices):
    """Unnormalized shortest-path betweenness (Brandes), halved for undirectedness."""
    bc = array("d", [0.0]) * n
    dist = [0] * n
    sigma = [0.0] * n
    delta = [0.0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    stack = [0] * n
    queue = [0] * n
    for s in range(n):
        for v in range(n):
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
            preds[v].clear()
        dist[s] = 0
        sigma[s] = 1.0
        head = tail = 0
        queue[tail] = s
        tail += 1
        top = 0
        while head < tail:
            v = queue[head]
            head += 1
            stack[top] = v
            top += 1
            for ei in range(indptr[v], indptr[v + 1]):
                w = indices[ei]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        while top > 0:
            top -= 1
            w = stack[top]
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    for v in range(n):
        bc[v] = bc[v] / 2.0
    return bc


def louvain_pass(n: int, indptr, indices, weights, k, order, node_com, com_tot,
                 two_m: float) -> int:
    """One local-move sweep over ``order``; mutates node_com/com_tot, returns moves.

    Gain score for community C (up to the constant factor 1/m):
    w_{i->C} - k_i * tot_C / 2m, evaluated after removing i from its community.
    Ties keep the current community; among neighbors, first-touched wins.
    """
    neigh_w = [0.0] * n
    touched = [0] * n
    moves = 0
    for oi in range(n):
        i = order[oi]
        ki = k[i]
        c_old = node_com[i]
        com_tot[c_old] = com_tot[c_old] - ki
        n_touched = 0
        for ei in range(indptr[i], indptr[i + 1]):
            j = indices[ei]
            if j == i:
                continue
            cj = node_com[j]
            if neigh_w[cj] == 0.0:
                touched[n_touched] = cj
                n_touched += 1
            neigh_w[cj] += weights[ei]
        best_com = c_old
        best_gain = neigh_w[c_old] - ki * com_tot[c_old] / two_m
        for ti in range(n_touched):
            c = touched[ti]
            if c == c_old:
                continue
            gain = neigh_w[c] - ki * com_tot[c] / two_m
            if gain > best_gain:
                best_gain = gain
                best_com = c
        for ti in range(n_touched):
            neigh_w[touched[ti]] = 0.0
        com_tot[best_com] = com_tot[best_com] + ki
        node_com[i] = best_com
        if best_com != c_old:
            moves += 1
    return moves


def _kk_gradient(m, n, dist, xs, ys, L, K):
    gx = 0.0
    gy = 0.0
    xm = xs[m]
    ym = ys[m]
    for i in range(n):
        if i == m:
            continue
        dx = xm - xs[i]
        dy = ym - ys[i]
        euclid = sqrt(dx * dx + dy * dy)
        if euclid > 0.0:
            d = dist[m * n + i]
            kc = K / (d * d)
            ln = L * d
            coef = 2.0 * kc * (1.0 - ln / euclid)
            gx += coef * dx
            gy += coef * dy
    return gx, gy


def _kk_local_energy(m, n, dist, xs, ys, L, K, xm, ym):
    e = 0.0
    for i in range(n):
        if i == m:
            continue
        dx = xm - xs[i]
        dy = ym - ys[i]
        euclid = sqrt(dx * dx + dy * dy)
        d = dist[m * n + i]
        kc = K / (d * d)
        ln = L * d
        diff = euclid - ln
        e += kc * diff * diff
    return e


def _kk_move(m, n, dist, xs, ys, L, K, eps, max_inner: int) -> bool:
    moved = False
    for _ in range(max_inner):
        gx, gy = _kk_gradient(m, n, dist, xs, ys, L, K)
        if sqrt(gx * gx + gy * gy) < eps:
            break
        hxx = 0.0
        hyy = 0.0
        hxy = 0.0
        xm = xs[m]
        ym = ys[m]
        for i in range(n):
            if i == m:
                continue
            dx = xm - xs[i]
            dy = ym - ys[i]
            d2 = dx * dx + dy * dy
            euclid = sqrt(d2)
            if euclid > 0.0:
                cube = euclid * d2
                d = dist[m * n + i]
                kc = K / (d * d)
                ln = L * d
                hxx += 2.0 * kc * (1.0 - ln * dy * dy / cube)
                hyy += 2.0 * kc * (1.0 - ln * dx * dx / cube)
                hxy += 2.0 * kc * (ln * dx * dy / cube)
        det = hxx * hyy - hxy * hxy
        if det == 0.0:
            break
        step_x = (-gx * hyy + gy * hxy) / det
        step_y = (gx * hxy - gy * hxx) / det
        e0 = _kk_local_energy(m, n, dist, xs, ys, L, K, xm, ym)
        t = 1.0
        accepted = False
        for _ in range(40):
            nx = xm + t * step_x
            ny = ym + t * step_y
            if _kk_local_energy(m, n, dist, xs, ys, L, K, nx, ny) < e0:
                xs[m] = nx
                ys[m] = ny
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        moved = True
    return moved


def kk_minimize(n: int, dist, xs, ys, L: float, K: float, eps: float,
                max_outer: int, max_inner: int = 50) -> int:
    """Stress-minimize positions in place; returns outer iterations used.

    Each outer iteration picks the vertex with the largest gradient norm
    (lowest index on ties) and Newton-steps it, halving rejected steps so the
    local (hence total) energy never increases.
    """
    it = 0
    while it < max_outer:
        best = -1
        best_norm2 = 0.0
        for m in range(n):
            gx, gy = _kk_gradient(m, n, dist, xs, ys, L, K)
            norm2 = gx * gx + gy * gy
            if norm2 > best_norm2:
                best_norm2 = norm2
                best = m
        if best < 0 or sqrt(best_norm2) < eps:
            break
        it += 1
        if not _kk_move(best, n, dist, xs, ys, L, K, eps, max_inner):
            break
    return it
