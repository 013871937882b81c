"""Numba-compiled inner loops.

Everything here is plain array code so the public modules stay readable;
each kernel has a pure-Python twin in the test suite that it is checked
against. Kernels release the GIL so threaded trial sweeps scale.
"""

import numpy as np
from numba import njit

# pgf family tags shared with branching.py
PGF_NONE = 0
PGF_DETERMINISTIC = 1
PGF_POISSON = 2
PGF_COEFFS = 3


@njit(cache=True, nogil=True)
def greedy_scan(indptr, indices, order):
    """Sequential greedy over `order`; returns the occupied mask."""
    n = order.shape[0]
    occupied = np.zeros(n, np.bool_)
    blocked = np.zeros(n, np.bool_)
    for i in range(n):
        v = order[i]
        if not blocked[v]:
            occupied[v] = True
            for j in range(indptr[v], indptr[v + 1]):
                blocked[indices[j]] = True
    return occupied


@njit(cache=True, nogil=True)
def parallel_sweep(indptr, indices, labels):
    """Sink-removal rounds; returns (occupied mask, round count)."""
    n = labels.shape[0]
    occupied = np.zeros(n, np.bool_)
    alive = np.ones(n, np.bool_)
    alive_list = np.arange(n)
    n_alive = n
    sinks = np.empty(n, np.int64)
    rounds = 0
    while n_alive > 0:
        rounds += 1
        n_sinks = 0
        for i in range(n_alive):
            v = alive_list[i]
            is_sink = True
            for j in range(indptr[v], indptr[v + 1]):
                u = indices[j]
                if alive[u] and labels[u] < labels[v]:
                    is_sink = False
                    break
            if is_sink:
                sinks[n_sinks] = v
                n_sinks += 1
        # a global label minimum among alive vertices is always a sink
        for i in range(n_sinks):
            v = sinks[i]
            occupied[v] = True
            alive[v] = False
            for j in range(indptr[v], indptr[v + 1]):
                alive[indices[j]] = False
        k = 0
        for i in range(n_alive):
            v = alive_list[i]
            if alive[v]:
                alive_list[k] = v
                k += 1
        n_alive = k
    return occupied, rounds


@njit(cache=True, nogil=True)
def longest_decreasing_all(indptr, indices, labels, order):
    """Length of the longest strictly label-decreasing path from every vertex.

    `order` must sort vertices by increasing label; the decreasing-path
    relation is then a DAG processed in one pass.
    """
    n = labels.shape[0]
    depth = np.zeros(n, np.int64)
    for i in range(n):
        v = order[i]
        best = 0
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if labels[u] < labels[v] and depth[u] + 1 > best:
                best = depth[u] + 1
        depth[v] = best
    return depth


@njit(cache=True, nogil=True)
def prufer_decode_edges(seq, n, edges):
    """Decode one Pruefer sequence into `edges` (shape (n-1, 2))."""
    deg = np.ones(n, np.int64)
    for i in range(n - 2):
        deg[seq[i]] += 1
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(n - 2):
        s = seq[i]
        edges[i, 0] = leaf
        edges[i, 1] = s
        deg[s] -= 1
        if deg[s] == 1 and s < ptr:
            leaf = s
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges[n - 2, 0] = leaf
    edges[n - 2, 1] = n - 1


@njit(cache=True, nogil=True)
def prufer_decode_batch(seqs, n, edges_out):
    """Decode a batch of Pruefer sequences (rows of `seqs`)."""
    for b in range(seqs.shape[0]):
        prufer_decode_edges(seqs[b], n, edges_out[b])


@njit(cache=True, nogil=True)
def tree_canonical_batch(edges_batch, n, codes_out):
    """Canonical parenthesis codes (AHU rooted at the center) for a batch of
    trees given as edge arrays; every code is exactly 2n bytes. Matches the
    byte strings produced by graphs.canonical_code."""
    n_trees = edges_batch.shape[0]
    nbr = np.empty((n, n), np.int64)
    deg = np.empty(n, np.int64)
    work = np.empty(n, np.int64)
    layer = np.empty(n, np.int64)
    nxt = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    bfs = np.empty(n, np.int64)
    buf = np.empty((n, 2 * n), np.uint8)
    blen = np.empty(n, np.int64)
    child = np.empty(n, np.int64)
    best = np.empty(2 * n, np.uint8)
    cur = np.empty(2 * n, np.uint8)
    for t in range(n_trees):
        deg[:] = 0
        for e in range(n - 1):
            u = edges_batch[t, e, 0]
            v = edges_batch[t, e, 1]
            nbr[u, deg[u]] = v
            nbr[v, deg[v]] = u
            deg[u] += 1
            deg[v] += 1
        # centers by leaf peeling
        work[:n] = deg[:n]
        n_layer = 0
        for v in range(n):
            if work[v] <= 1:
                layer[n_layer] = v
                n_layer += 1
        peeled = n_layer
        while peeled < n:
            n_next = 0
            for i in range(n_layer):
                v = layer[i]
                for j in range(deg[v]):
                    u = nbr[v, j]
                    work[u] -= 1
                    if work[u] == 1:
                        nxt[n_next] = u
                        n_next += 1
                work[v] = 0
            peeled += n_next
            for i in range(n_next):
                layer[i] = nxt[i]
            n_layer = n_next
        n_centers = n_layer
        for c_idx in range(n_centers):
            root = layer[c_idx]
            # BFS order, then code children-first in reverse order
            parent[root] = -1
            bfs[0] = root
            head, tail = 0, 1
            while head < tail:
                v = bfs[head]
                head += 1
                for j in range(deg[v]):
                    u = nbr[v, j]
                    if u != parent[v]:
                        parent[u] = v
                        bfs[tail] = u
                        tail += 1
            for i in range(n - 1, -1, -1):
                v = bfs[i]
                n_child = 0
                for j in range(deg[v]):
                    u = nbr[v, j]
                    if u != parent[v]:
                        child[n_child] = u
                        n_child += 1
                # insertion sort of children by code bytes
                for a in range(1, n_child):
                    key = child[a]
                    b = a - 1
                    while b >= 0 and _code_less(buf, blen, key, child[b]):
                        child[b + 1] = child[b]
                        b -= 1
                    child[b + 1] = key
                pos = 0
                buf[v, pos] = 0x28  # (
                pos += 1
                for a in range(n_child):
                    u = child[a]
                    for b in range(blen[u]):
                        buf[v, pos] = buf[u, b]
                        pos += 1
                buf[v, pos] = 0x29  # )
                blen[v] = pos + 1
            if c_idx == 0:
                best[:] = buf[root]
            else:
                cur[:] = buf[root]
                for b in range(2 * n):
                    if cur[b] < best[b]:
                        best[:] = cur
                        break
                    if cur[b] > best[b]:
                        break
        codes_out[t, :] = best


@njit(cache=True, nogil=True)
def _code_less(buf, blen, i, j):
    la, lb = blen[i], blen[j]
    m = min(la, lb)
    for b in range(m):
        if buf[i, b] != buf[j, b]:
            return buf[i, b] < buf[j, b]
    return la < lb


@njit(cache=True, nogil=True)
def _pgf_eval(kind, param, coeffs, z):
    if kind == PGF_NONE:
        return 1.0
    if kind == PGF_DETERMINISTIC:
        acc = 1.0
        c = int(param)
        for _ in range(c):
            acc *= z
        return acc
    if kind == PGF_POISSON:
        return np.exp(param * (z - 1.0))
    # finite coefficient list, Horner
    acc = 0.0
    for i in range(coeffs.shape[0] - 1, -1, -1):
        acc = acc * z + coeffs[i]
    return acc


@njit(cache=True, nogil=True)
def _branching_rhs(kinds, params, cptr, cdata, y, out):
    k_types = kinds.shape[0]
    for k in range(k_types):
        acc = 1.0
        for j in range(k_types):
            kind = kinds[k, j]
            if kind != PGF_NONE:
                coeffs = cdata[cptr[k * k_types + j]:cptr[k * k_types + j + 1]]
                acc *= _pgf_eval(kind, params[k, j], coeffs, 1.0 - y[j])
        out[k] = acc


@njit(cache=True, nogil=True)
def rk4_branching(kinds, params, cptr, cdata, m_steps):
    """Classical RK4 on y_k' = prod_j G_kj(1 - y_j) over [0, 1].

    Returns (trajectories of shape (m_steps + 1, K), failed_step) where
    failed_step is -1 on success and the offending step index if a
    component leaves [0, x + 10 h].
    """
    k_types = kinds.shape[0]
    h = 1.0 / m_steps
    y = np.zeros(k_types)
    traj = np.zeros((m_steps + 1, k_types))
    k1 = np.empty(k_types)
    k2 = np.empty(k_types)
    k3 = np.empty(k_types)
    k4 = np.empty(k_types)
    tmp = np.empty(k_types)
    for step in range(m_steps):
        _branching_rhs(kinds, params, cptr, cdata, y, k1)
        for k in range(k_types):
            tmp[k] = y[k] + 0.5 * h * k1[k]
        _branching_rhs(kinds, params, cptr, cdata, tmp, k2)
        for k in range(k_types):
            tmp[k] = y[k] + 0.5 * h * k2[k]
        _branching_rhs(kinds, params, cptr, cdata, tmp, k3)
        for k in range(k_types):
            tmp[k] = y[k] + h * k3[k]
        _branching_rhs(kinds, params, cptr, cdata, tmp, k4)
        x_next = (step + 1) * h
        for k in range(k_types):
            y[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k])
            traj[step + 1, k] = y[k]
            if y[k] < -1e-12 or y[k] > x_next + 10.0 * h:
                return traj, step
    return traj, -1
