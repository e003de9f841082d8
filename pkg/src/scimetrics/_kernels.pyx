# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: the hot-loop twin of ``_kernels_py``.

Operation-for-operation identical to the pure-Python module so both backends
yield bit-identical doubles; edit the two files together. Compiled without
FMA contraction (see setup.py) to keep IEEE semantics aligned with CPython.
"""

from array import array as _pyarray

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc

BACKEND = "c"


def abs_diff_total(double[:] values):
    """Sum of |x_i - x_j| over all ordered pairs (the Gini numerator)."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t i, j
    cdef double total = 0.0
    cdef double xi, d
    for i in range(n):
        xi = values[i]
        for j in range(n):
            d = xi - values[j]
            total += d if d >= 0.0 else -d
    return total


def betweenness_csr(Py_ssize_t n, long long[:] indptr, long long[:] indices):
    """Unnormalized shortest-path betweenness (Brandes), halved for undirectedness."""
    bc_arr = _pyarray("d", [0.0]) * n
    if n == 0:
        return bc_arr
    cdef double[:] bc = bc_arr
    cdef long long *dist = <long long *> malloc(n * sizeof(long long))
    cdef double *sigma = <double *> malloc(n * sizeof(double))
    cdef double *delta = <double *> malloc(n * sizeof(double))
    cdef Py_ssize_t *stack = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t *queue = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t m = indices.shape[0]
    # predecessor slots: preds of w live at pred_slots[indptr[w] .. ], capped by degree(w)
    cdef Py_ssize_t *pred_slots = <Py_ssize_t *> malloc((m if m > 0 else 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *pred_count = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t s, v, w, ei, head, tail, top, pi
    cdef double coeff
    try:
        for s in range(n):
            for v in range(n):
                dist[v] = -1
                sigma[v] = 0.0
                delta[v] = 0.0
                pred_count[v] = 0
            dist[s] = 0
            sigma[s] = 1.0
            head = 0
            tail = 0
            queue[tail] = s
            tail += 1
            top = 0
            while head < tail:
                v = queue[head]
                head += 1
                stack[top] = v
                top += 1
                for ei in range(indptr[v], indptr[v + 1]):
                    w = <Py_ssize_t> indices[ei]
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue[tail] = w
                        tail += 1
                    if dist[w] == dist[v] + 1:
                        sigma[w] += sigma[v]
                        pred_slots[indptr[w] + pred_count[w]] = v
                        pred_count[w] += 1
            while top > 0:
                top -= 1
                w = stack[top]
                coeff = (1.0 + delta[w]) / sigma[w]
                for pi in range(pred_count[w]):
                    v = pred_slots[indptr[w] + pi]
                    delta[v] += sigma[v] * coeff
                if w != s:
                    bc[w] += delta[w]
        for v in range(n):
            bc[v] = bc[v] / 2.0
    finally:
        free(dist)
        free(sigma)
        free(delta)
        free(stack)
        free(queue)
        free(pred_slots)
        free(pred_count)
    return bc_arr


def louvain_pass(Py_ssize_t n, long long[:] indptr, long long[:] indices,
                 double[:] weights, double[:] k, long long[:] order,
                 long long[:] node_com, double[:] com_tot, double two_m):
    """One local-move sweep over ``order``; mutates node_com/com_tot, returns moves."""
    cdef double *neigh_w = <double *> malloc(n * sizeof(double))
    cdef Py_ssize_t *touched = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t oi, i, j, ei, ti, n_touched
    cdef long long c_old, cj, best_com, c
    cdef double ki, best_gain, gain
    cdef long long moves = 0
    try:
        for i in range(n):
            neigh_w[i] = 0.0
        for oi in range(n):
            i = <Py_ssize_t> order[oi]
            ki = k[i]
            c_old = node_com[i]
            com_tot[c_old] = com_tot[c_old] - ki
            n_touched = 0
            for ei in range(indptr[i], indptr[i + 1]):
                j = <Py_ssize_t> indices[ei]
                if j == i:
                    continue
                cj = node_com[j]
                if neigh_w[cj] == 0.0:
                    touched[n_touched] = <Py_ssize_t> cj
                    n_touched += 1
                neigh_w[cj] += weights[ei]
            best_com = c_old
            best_gain = neigh_w[c_old] - ki * com_tot[c_old] / two_m
            for ti in range(n_touched):
                c = <long long> touched[ti]
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
    finally:
        free(neigh_w)
        free(touched)
    return moves


cdef void _kk_gradient(Py_ssize_t m, Py_ssize_t n, double[:] dist,
                       double[:] xs, double[:] ys, double L, double K,
                       double *out_gx, double *out_gy) noexcept:
    cdef double gx = 0.0
    cdef double gy = 0.0
    cdef double xm = xs[m]
    cdef double ym = ys[m]
    cdef Py_ssize_t i
    cdef double dx, dy, euclid, d, kc, ln, coef
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
    out_gx[0] = gx
    out_gy[0] = gy


cdef double _kk_local_energy(Py_ssize_t m, Py_ssize_t n, double[:] dist,
                             double[:] xs, double[:] ys, double L, double K,
                             double xm, double ym) noexcept:
    cdef double e = 0.0
    cdef Py_ssize_t i
    cdef double dx, dy, euclid, d, kc, ln, diff
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


cdef bint _kk_move(Py_ssize_t m, Py_ssize_t n, double[:] dist,
                   double[:] xs, double[:] ys, double L, double K,
                   double eps, int max_inner) noexcept:
    cdef bint moved = 0
    cdef bint accepted
    cdef int inner, bt
    cdef Py_ssize_t i
    cdef double gx, gy, hxx, hyy, hxy, xm, ym
    cdef double dx, dy, d2, euclid, cube, d, kc, ln
    cdef double det, step_x, step_y, e0, t, nx, ny
    for inner in range(max_inner):
        _kk_gradient(m, n, dist, xs, ys, L, K, &gx, &gy)
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
        accepted = 0
        for bt in range(40):
            nx = xm + t * step_x
            ny = ym + t * step_y
            if _kk_local_energy(m, n, dist, xs, ys, L, K, nx, ny) < e0:
                xs[m] = nx
                ys[m] = ny
                accepted = 1
                break
            t *= 0.5
        if not accepted:
            break
        moved = 1
    return moved


def kk_minimize(Py_ssize_t n, double[:] dist, double[:] xs, double[:] ys,
                double L, double K, double eps, long long max_outer,
                int max_inner=50):
    """Stress-minimize positions in place; returns outer iterations used."""
    cdef long long it = 0
    cdef Py_ssize_t m, best
    cdef double gx, gy, norm2, best_norm2
    while it < max_outer:
        best = -1
        best_norm2 = 0.0
        for m in range(n):
            _kk_gradient(m, n, dist, xs, ys, L, K, &gx, &gy)
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
