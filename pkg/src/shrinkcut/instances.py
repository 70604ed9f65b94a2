"""Random instance ensembles: Erdos-Renyi and random k-regular graphs."""

from __future__ import annotations

import numpy as np

from .errors import GenerationFailedError
from .graph import Graph, build_graph

_PAIRING_ATTEMPTS = 1000


def gen_erdos_renyi(n: int, d: float, seed: int) -> Graph:
    """Each of the n(n-1)/2 node pairs appears with probability d, weight 1."""
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {d}")
    rng = np.random.default_rng(seed)
    edges = []
    for u in range(n):
        if u + 1 < n:
            draws = rng.random(n - u - 1)
            for k, v in enumerate(range(u + 1, n)):
                if draws[k] < d:
                    edges.append((u, v, 1.0))
    return build_graph(edges, nodes=range(n))


def gen_random_regular(n: int, k: int, seed: int) -> Graph:
    """Uniform-ish k-regular simple graph via the pairing model.

    Each node contributes k stubs; a random perfect matching of the stubs is
    resampled until it contains no self-loop or repeated pair (cap 1000
    attempts).
    """
    if n * k % 2 != 0:
        raise ValueError(f"n*k must be even, got n={n}, k={k}")
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), k)
    for _ in range(_PAIRING_ATTEMPTS):
        perm = rng.permutation(stubs)
        pairs = perm.reshape(-1, 2)
        seen: set[tuple[int, int]] = set()
        ok = True
        for u, v in pairs:
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if key in seen:
                ok = False
                break
            seen.add(key)
        if ok:
            edges = [(int(u), int(v), 1.0) for u, v in sorted(seen)]
            return build_graph(edges, nodes=range(n))
    raise GenerationFailedError(
        f"pairing model failed {_PAIRING_ATTEMPTS} times for n={n}, k={k}"
    )
