"""Pure-numpy kernels; the fallback when the compiled extension is absent.

Semantics (including tie-breaking) match ``_ext`` exactly so that the two
backends are interchangeable; only speed differs.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 20


def cost_diagonal(n: int, us, vs, ws) -> np.ndarray:
    """Cut value of every basis bitstring; bit b = 1 means node b is -1."""
    size = 1 << n
    values = np.zeros(size, dtype=np.float64)
    for start in range(0, size, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, size), dtype=np.uint64)
        acc = np.zeros(idx.shape[0], dtype=np.float64)
        for u, v, w in zip(us, vs, ws):
            parity = ((idx >> np.uint64(u)) ^ (idx >> np.uint64(v))) & np.uint64(1)
            acc += w * parity
        values[start : start + idx.shape[0]] = acc
    return values


def phase_apply(amps: np.ndarray, inv_idx: np.ndarray, table: np.ndarray) -> None:
    """In-place ``amps[i] *= table[inv_idx[i]]``."""
    amps *= table[inv_idx]


def mixer_apply(amps: np.ndarray, n: int, beta: float) -> None:
    """Apply the single-qubit rotation exp(-i*beta*X) to every qubit, in place."""
    c = np.cos(beta)
    s = np.sin(beta)
    for b in range(n):
        view = amps.reshape(-1, 2, 1 << b)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 - 1j * s * a1
        view[:, 1, :] = c * a1 - 1j * s * a0


def expectation(amps: np.ndarray, cost: np.ndarray) -> float:
    p = amps.real**2 + amps.imag**2
    return float(p @ cost)


def zz_all(amps: np.ndarray, us, vs, n: int) -> np.ndarray:
    """Per-pair expectation of the product of the two nodes' signs."""
    p = amps.real**2 + amps.imag**2
    total = float(p.sum())
    size = 1 << n
    out = np.empty(len(us), dtype=np.float64)
    idx = np.arange(size, dtype=np.uint64)
    for e, (u, v) in enumerate(zip(us, vs)):
        parity = ((idx >> np.uint64(u)) ^ (idx >> np.uint64(v))) & np.uint64(1)
        out[e] = total - 2.0 * float(p @ parity)
    return out


def gray_maxcut(n: int, us, vs, ws):
    """Exhaustive max cut over all sign patterns with node n-1 fixed to +1.

    Walks assignments in Gray-code order and returns the first maximizer
    (value, labels) encountered, labels as an int8 array of +-1 per node.
    """
    half = 1 << (n - 1) if n >= 1 else 1
    best_val = -np.inf
    best_mask = 0
    us64 = [np.uint64(u) for u in us]
    vs64 = [np.uint64(v) for v in vs]
    for start in range(0, half, _CHUNK):
        t = np.arange(start, min(start + _CHUNK, half), dtype=np.uint64)
        mask = t ^ (t >> np.uint64(1))
        acc = np.zeros(t.shape[0], dtype=np.float64)
        for u, v, w in zip(us64, vs64, ws):
            acc += w * (((mask >> u) ^ (mask >> v)) & np.uint64(1))
        k = int(np.argmax(acc))
        if acc[k] > best_val:
            best_val = float(acc[k])
            best_mask = int(mask[k])
    labels = np.ones(n, dtype=np.int8)
    for b in range(n - 1):
        if (best_mask >> b) & 1:
            labels[b] = -1
    return best_val, labels


def local_search(indptr, indices, weights, starts):
    """Best-improvement 1-flip hill climbing from each start row.

    Returns (best value, labels of the first start achieving it).
    """
    n = indptr.shape[0] - 1
    dense = np.zeros((n, n), dtype=np.float64)
    for u in range(n):
        lo, hi = indptr[u], indptr[u + 1]
        dense[u, indices[lo:hi]] = weights[lo:hi]
    total = dense.sum() / 2.0
    best_val = -np.inf
    best_labels = None
    for row in starts:
        x = row.astype(np.float64)
        # cut = (total - sum_{u<v} w x_u x_v) / 2; flipping v changes it by
        # sum_u w_uv x_u x_v, which is exactly gains[v].
        cur = 0.5 * (total - float(x @ (dense @ x)) / 2.0)
        gains = x * (dense @ x)
        while True:
            v = int(np.argmax(gains))
            g = gains[v]
            if g <= 0.0:
                break
            cur += g
            gold = gains[v]
            gains -= 2.0 * dense[:, v] * x * x[v]
            x[v] = -x[v]
            gains[v] = -gold
        if cur > best_val:
            best_val = cur
            best_labels = x.astype(np.int8)
    return float(best_val), best_labels


def sdp_sweep(vecs: np.ndarray, indptr, indices, weights) -> None:
    """One in-place coordinate-descent sweep over all rows, ascending order.

    Each row moves to the unit vector minimizing its weighted alignment with
    its neighbors; rows with a near-zero neighbor sum are left untouched.
    """
    n = vecs.shape[0]
    for i in range(n):
        lo, hi = indptr[i], indptr[i + 1]
        if lo == hi:
            continue
        s = -(weights[lo:hi, None] * vecs[indices[lo:hi]]).sum(axis=0)
        norm = np.sqrt(float(s @ s))
        if norm < 1e-12:
            continue
        vecs[i] = s / norm


def sdp_objective(vecs: np.ndarray, us, vs, ws) -> float:
    dots = np.einsum("ij,ij->i", vecs[us], vecs[vs])
    return float(0.5 * np.sum(ws * (1.0 - dots)))
