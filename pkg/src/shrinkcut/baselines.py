"""Reference solvers: exhaustive enumeration and multi-start local search.

The exact solver stands in for a branch-and-bound reference at desk scale
(n <= 24); beyond that the heuristic baseline is a seeded best-improvement
hill climber, so ratios against it may exceed 1 and are recorded as-is.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .engine import CorrelationSet
from .errors import TooLargeError
from .graph import Assignment, Graph

EXACT_CAP = 24


def exact_maxcut(g: Graph) -> tuple[float, Assignment]:
    """Maximum cut by Gray-code enumeration of all 2^(n-1) sign patterns."""
    n = g.n
    if n > EXACT_CAP:
        raise TooLargeError(f"exact enumeration capped at {EXACT_CAP} nodes, got {n}")
    if n == 0:
        return 0.0, {}
    order, us, vs, ws = g.to_arrays()
    if n == 1:
        return 0.0, {order[0]: 1}
    value, labels = _kernels.gray_maxcut(n, us, vs, ws)
    return float(value), {node: int(labels[i]) for i, node in enumerate(order)}


def local_search_baseline(g: Graph, restarts: int, seed: int) -> float:
    """Best cut over ``restarts`` hill-climbing runs from random labels."""
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    n = g.n
    if n == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    starts = rng.choice(np.array([-1, 1], dtype=np.int8), size=(restarts, n))
    if g.m == 0:
        return 0.0
    _, indptr, indices, weights = g.to_csr()
    value, _ = _kernels.local_search(indptr, indices, weights, starts)
    return float(value)


class OptimalCorrelationOracle:
    """Correlations read off an exact optimum of the current graph.

    Every edge gets the product of its endpoint labels in a maximum cut, so
    all magnitudes are 1 and the engine's tie-breaking consumes them in
    random order.  Shrinking with these correlations provably returns an
    optimal cut; used by tests and as a sanity baseline.
    """

    name = "optimal"

    def compute_correlations(self, g: Graph, rng) -> CorrelationSet:
        _, best = exact_maxcut(g)
        entries = [((u, v), float(best[u] * best[v])) for u, v, _ in g.edges()]
        return CorrelationSet(entries)
