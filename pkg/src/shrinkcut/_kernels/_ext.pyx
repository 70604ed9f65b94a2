# Compiled hot loops: statevector evolution, exhaustive enumeration,
# hill climbing and SDP coordinate descent.  Must stay semantically
# identical to shrinkcut._kernels.pure (same tie-breaking, same outputs).

import numpy as np

from libc.math cimport cos, sin, sqrt


def cost_diagonal(int n, us, vs, ws):
    cdef long long size = 1LL << n
    cdef long long[::1] cu = np.ascontiguousarray(us, dtype=np.int64)
    cdef long long[::1] cv = np.ascontiguousarray(vs, dtype=np.int64)
    cdef double[::1] cw = np.ascontiguousarray(ws, dtype=np.float64)
    cdef long long m = cu.shape[0]
    out = np.zeros(size, dtype=np.float64)
    cdef double[::1] values = out
    cdef long long idx, e
    cdef double acc
    for idx in range(size):
        acc = 0.0
        for e in range(m):
            if ((idx >> cu[e]) ^ (idx >> cv[e])) & 1LL:
                acc += cw[e]
        values[idx] = acc
    return out


def phase_apply(double complex[::1] amps, unsigned int[::1] inv_idx,
                double complex[::1] table):
    cdef long long i, size = amps.shape[0]
    for i in range(size):
        amps[i] = amps[i] * table[inv_idx[i]]


def mixer_apply(double complex[::1] amps, int n, double beta):
    cdef double c = cos(beta)
    cdef double s = sin(beta)
    cdef long long size = amps.shape[0]
    cdef long long stride, base, off, b
    cdef double complex a0, a1
    cdef double complex ic = -1j * s
    for b in range(n):
        stride = 1LL << b
        base = 0
        while base < size:
            for off in range(base, base + stride):
                a0 = amps[off]
                a1 = amps[off + stride]
                amps[off] = c * a0 + ic * a1
                amps[off + stride] = c * a1 + ic * a0
            base += 2 * stride
    return None


def expectation(double complex[::1] amps, double[::1] cost):
    cdef long long i, size = amps.shape[0]
    cdef double total = 0.0
    cdef double re, im
    for i in range(size):
        re = amps[i].real
        im = amps[i].imag
        total += (re * re + im * im) * cost[i]
    return total


def zz_all(double complex[::1] amps, us, vs, int n):
    cdef long long[::1] cu = np.ascontiguousarray(us, dtype=np.int64)
    cdef long long[::1] cv = np.ascontiguousarray(vs, dtype=np.int64)
    cdef long long m = cu.shape[0]
    out = np.zeros(m, dtype=np.float64)
    cdef double[::1] acc = out
    cdef long long i, e, size = amps.shape[0]
    cdef double p, re, im
    for i in range(size):
        re = amps[i].real
        im = amps[i].imag
        p = re * re + im * im
        for e in range(m):
            if ((i >> cu[e]) ^ (i >> cv[e])) & 1LL:
                acc[e] -= p
            else:
                acc[e] += p
    return out


def gray_maxcut(int n, us, vs, ws):
    """Gray-code walk over all patterns with node n-1 fixed to +1."""
    cdef long long[::1] cu = np.ascontiguousarray(us, dtype=np.int64)
    cdef long long[::1] cv = np.ascontiguousarray(vs, dtype=np.int64)
    cdef double[::1] cw = np.ascontiguousarray(ws, dtype=np.float64)
    cdef long long m = cu.shape[0]

    # CSR adjacency over node positions for O(deg) flip deltas.
    indptr_np = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] deg = indptr_np
    cdef long long e
    for e in range(m):
        deg[cu[e] + 1] += 1
        deg[cv[e] + 1] += 1
    cdef long long i
    for i in range(n):
        deg[i + 1] += deg[i]
    nbr_np = np.zeros(2 * m, dtype=np.int64)
    wadj_np = np.zeros(2 * m, dtype=np.float64)
    cdef long long[::1] nbr = nbr_np
    cdef double[::1] wadj = wadj_np
    fill_np = indptr_np.copy()
    cdef long long[::1] fill = fill_np
    for e in range(m):
        nbr[fill[cu[e]]] = cv[e]
        wadj[fill[cu[e]]] = cw[e]
        fill[cu[e]] += 1
        nbr[fill[cv[e]]] = cu[e]
        wadj[fill[cv[e]]] = cw[e]
        fill[cv[e]] += 1

    labels_np = np.ones(n, dtype=np.int8)
    cdef signed char[::1] x = labels_np
    cdef long long half = 1LL << (n - 1) if n >= 1 else 1
    cdef long long t, b, k
    cdef unsigned long long mask = 0, best_mask = 0
    cdef double cur = 0.0, best = 0.0, delta
    for t in range(1, half):
        b = 0
        while not (t >> b) & 1LL:
            b += 1
        delta = 0.0
        for k in range(deg[b], deg[b + 1]):
            delta += wadj[k] * x[nbr[k]] * x[b]
        cur += delta
        x[b] = -x[b]
        mask ^= 1ULL << b
        if cur > best:
            best = cur
            best_mask = mask
    for i in range(n - 1):
        if (best_mask >> i) & 1ULL:
            labels_np[i] = -1
        else:
            labels_np[i] = 1
    labels_np[n - 1] = 1
    return best, labels_np


def local_search(indptr, indices, weights, starts):
    cdef long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef long long[::1] nbr = np.ascontiguousarray(indices, dtype=np.int64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef signed char[:, ::1] st = np.ascontiguousarray(starts, dtype=np.int8)
    cdef long long n = ip.shape[0] - 1
    cdef long long r, u, v, k, bestv
    cdef double cur, g, gold
    cdef double best_val = -np.inf

    x_np = np.ones(n, dtype=np.float64)
    gains_np = np.zeros(n, dtype=np.float64)
    best_np = np.ones(n, dtype=np.int8)
    cdef double[::1] x = x_np
    cdef double[::1] gains = gains_np
    cdef signed char[::1] best_labels = best_np

    for r in range(st.shape[0]):
        for u in range(n):
            x[u] = st[r, u]
        cur = 0.0
        for u in range(n):
            g = 0.0
            for k in range(ip[u], ip[u + 1]):
                v = nbr[k]
                if u < v and x[u] != x[v]:
                    cur += w[k]
                g += w[k] * x[v]
            gains[u] = x[u] * g
        while True:
            bestv = 0
            g = gains[0]
            for u in range(1, n):
                if gains[u] > g:
                    g = gains[u]
                    bestv = u
            if g <= 0.0:
                break
            cur += g
            gold = gains[bestv]
            for k in range(ip[bestv], ip[bestv + 1]):
                v = nbr[k]
                gains[v] -= 2.0 * w[k] * x[v] * x[bestv]
            x[bestv] = -x[bestv]
            gains[bestv] = -gold
        if cur > best_val:
            best_val = cur
            for u in range(n):
                best_labels[u] = <signed char> x[u]
    return best_val, best_np


def sdp_sweep(double[:, ::1] vecs, indptr, indices, weights):
    cdef long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef long long[::1] nbr = np.ascontiguousarray(indices, dtype=np.int64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef long long n = vecs.shape[0]
    cdef long long dim = vecs.shape[1]
    cdef long long i, k, j, d
    cdef double norm
    buf_np = np.zeros(dim, dtype=np.float64)
    cdef double[::1] s = buf_np
    for i in range(n):
        if ip[i] == ip[i + 1]:
            continue
        for d in range(dim):
            s[d] = 0.0
        for k in range(ip[i], ip[i + 1]):
            j = nbr[k]
            for d in range(dim):
                s[d] -= w[k] * vecs[j, d]
        norm = 0.0
        for d in range(dim):
            norm += s[d] * s[d]
        norm = sqrt(norm)
        if norm < 1e-12:
            continue
        for d in range(dim):
            vecs[i, d] = s[d] / norm
    return None


def sdp_objective(double[:, ::1] vecs, us, vs, ws):
    cdef long long[::1] cu = np.ascontiguousarray(us, dtype=np.int64)
    cdef long long[::1] cv = np.ascontiguousarray(vs, dtype=np.int64)
    cdef double[::1] cw = np.ascontiguousarray(ws, dtype=np.float64)
    cdef long long e, d, m = cu.shape[0], dim = vecs.shape[1]
    cdef double total = 0.0, dot
    for e in range(m):
        dot = 0.0
        for d in range(dim):
            dot += vecs[cu[e], d] * vecs[cv[e], d]
        total += cw[e] * (1.0 - dot)
    return 0.5 * total
