"""Weighted-graph core: cut evaluation, edge shrinking, and solution rebuild.

A MaxCut instance is a simple weighted undirected graph.  Solving by
shrinking repeatedly merges a node pair under a fixed relative sign, which
keeps the instance a valid (smaller) MaxCut problem.  This module owns the
graph value type, the single-merge transformation, the bookkeeping needed to
push correlations through past merges, and the reverse pass that turns a
solution of the shrunk graph back into one of the original graph.

An assignment is a plain ``dict`` mapping node id to +1 or -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DuplicateEdgeError,
    IncompleteHistoryError,
    MissingLabelError,
    NodeNotLiveError,
    NonFiniteWeightError,
    SamePairError,
    SelfLoopError,
)

Assignment = dict[int, int]


class Graph:
    """Simple undirected graph with real edge weights and stable integer ids.

    Instances are immutable after construction; shrinking returns new graphs.
    Node ids removed by shrinking are never reused, so merge histories stay
    unambiguous.
    """

    __slots__ = ("_adj", "_m")

    def __init__(self, adj: dict[int, dict[int, float]], m: int):
        self._adj = adj
        self._m = m

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def nodes(self) -> list[int]:
        """Live node ids in ascending order."""
        return sorted(self._adj)

    def has_node(self, u: int) -> bool:
        return u in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def weight(self, u: int, v: int) -> float:
        return self._adj[u][v]

    def neighbors(self, u: int) -> dict[int, float]:
        """Neighbor -> weight map of ``u`` (do not mutate)."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield (u, v, w) with u < v, in ascending (u, v) order."""
        for u in sorted(self._adj):
            row = self._adj[u]
            for v in sorted(row):
                if u < v:
                    yield u, v, row[v]

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges())

    def to_arrays(self):
        """Return (order, us, vs, ws): node order and positional edge arrays.

        ``order`` is the ascending node-id list; ``us``/``vs`` hold positions
        into it.  Used by the numeric kernels.
        """
        import numpy as np

        order = self.nodes()
        pos = {u: i for i, u in enumerate(order)}
        us, vs, ws = [], [], []
        for u, v, w in self.edges():
            us.append(pos[u])
            vs.append(pos[v])
            ws.append(w)
        return (
            order,
            np.asarray(us, dtype=np.int64),
            np.asarray(vs, dtype=np.int64),
            np.asarray(ws, dtype=np.float64),
        )

    def to_csr(self):
        """Return (order, indptr, indices, weights) adjacency in CSR layout."""
        import numpy as np

        order = self.nodes()
        pos = {u: i for i, u in enumerate(order)}
        indptr = [0]
        indices: list[int] = []
        weights: list[float] = []
        for u in order:
            row = self._adj[u]
            for v in sorted(row):
                indices.append(pos[v])
                weights.append(row[v])
            indptr.append(len(indices))
        return (
            order,
            np.asarray(indptr, dtype=np.int64),
            np.asarray(indices, dtype=np.int64),
            np.asarray(weights, dtype=np.float64),
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(
    edge_list: Iterable[tuple[int, int, float]],
    nodes: Iterable[int] = (),
) -> Graph:
    """Build a graph from (u, v, w) triples plus optional isolated nodes.

    Self-loops and duplicate unordered pairs are errors, as are non-finite
    weights.
    """
    adj: dict[int, dict[int, float]] = {int(u): {} for u in nodes}
    m = 0
    for u, v, w in edge_list:
        u, v, w = int(u), int(v), float(w)
        if u == v:
            raise SelfLoopError(f"self-loop at node {u}")
        if not math.isfinite(w):
            raise NonFiniteWeightError(f"weight {w!r} on edge ({u}, {v})")
        if u in adj and v in adj[u]:
            raise DuplicateEdgeError(f"edge ({u}, {v}) given twice")
        adj.setdefault(u, {})[v] = w
        adj.setdefault(v, {})[u] = w
        m += 1
    return Graph(adj, m)


def cut_value(g: Graph, a: Assignment) -> float:
    """Total weight of edges whose endpoints carry opposite labels."""
    total = 0.0
    adj = g._adj
    for u in adj:
        if u not in a:
            raise MissingLabelError(f"assignment misses node {u}")
    for u, v, w in g.edges():
        if a[u] != a[v]:
            total += w
    return total


@dataclass(frozen=True)
class ShrinkStep:
    """One merge: ``removed`` collapsed onto ``kept`` with relative sign.

    ``sign`` relates the labels (removed = sign * kept).  ``offset`` is the
    cut-value constant released by the merge; ``abs_corr`` records the
    magnitude of the correlation that drove the step (bookkeeping).
    """

    kept: int
    removed: int
    sign: int
    offset: float = 0.0
    abs_corr: float = 0.0


class ShrinkHistory:
    """Ordered merge record plus a map resolving dead nodes to live ones."""

    def __init__(self) -> None:
        self.steps: list[ShrinkStep] = []
        # removed node -> (kept node at merge time, sign at merge time)
        self.merge_map: dict[int, tuple[int, int]] = {}

    def append(self, step: ShrinkStep) -> None:
        self.steps.append(step)
        self.merge_map[step.removed] = (step.kept, step.sign)

    def resolve(self, u: int) -> tuple[int, int]:
        """Follow the merge chain of ``u`` to its live representative.

        Returns (representative, sign) where sign is the product of the
        per-step signs along the chain; (u, +1) if ``u`` was never merged.
        """
        sign = 1
        while u in self.merge_map:
            u, s = self.merge_map[u]
            sign *= s
        return u, sign

    def __len__(self) -> int:
        return len(self.steps)


class _Degenerate:
    """Marker: both endpoints of a remapped pair hit the same live node."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "DEGENERATE"


DEGENERATE = _Degenerate()


def shrink_edge(g: Graph, pair: tuple[int, int], sign: int) -> tuple[Graph, float]:
    """Merge node ``i`` onto node ``j`` under the given relative sign.

    For every neighbor k of i (other than j) the weight of jk gains
    sign * w_ik, creating the edge when absent; all other weights are kept.
    Returns the smaller graph and the cut-value offset released by the merge
    (the total weight incident to i when sign is -1, zero otherwise), so that
    for any assignment ``a2`` of the new graph and its lift ``a`` (label of i
    set to sign times the label of j):

        cut_value(g, a) == cut_value(g2, a2) + offset

    Merged weights that cancel to zero stay in the edge map: the pair remains
    visible to oracles that assign per-edge correlations.
    """
    i, j = pair
    if i == j:
        raise SamePairError(f"cannot shrink pair ({i}, {i})")
    if not g.has_node(i) or not g.has_node(j):
        raise NodeNotLiveError(f"pair ({i}, {j}) has a dead endpoint")
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")

    old = g._adj
    adj: dict[int, dict[int, float]] = {
        u: dict(row) for u, row in old.items() if u != i
    }
    offset = 0.0
    for k, w_ik in old[i].items():
        if sign == -1:
            offset += w_ik
        if k == j:
            continue
        adj[k].pop(i, None)
        merged = adj[j].get(k, 0.0) + sign * w_ik
        adj[j][k] = merged
        adj[k][j] = merged
    adj[j].pop(i, None)
    m = sum(len(row) for row in adj.values()) // 2
    return Graph(adj, m), offset


def remap_correlation(
    h: ShrinkHistory, pair: tuple[int, int], value: float
):
    """Push a correlation entry through past merges.

    Each dead endpoint is replaced by its live representative and the value
    picks up the accumulated sign of every replaced endpoint.  If both
    endpoints land on the same live node the entry carries no usable
    information and ``DEGENERATE`` is returned; callers skip such entries.
    """
    s, u = pair
    rs, sign_s = h.resolve(s)
    ru, sign_u = h.resolve(u)
    if rs == ru:
        return DEGENERATE
    return (rs, ru), value * sign_s * sign_u


def reconstruct(h: ShrinkHistory, terminal: Assignment) -> Assignment:
    """Undo all merges, mapping a terminal assignment back to the original.

    Steps are unwound in reverse order; each removed node receives
    sign * (label of its kept node).
    """
    labels = dict(terminal)
    for step in reversed(h.steps):
        if step.kept not in labels:
            raise IncompleteHistoryError(
                f"kept node {step.kept} unlabeled while undoing a merge"
            )
        labels[step.removed] = step.sign * labels[step.kept]
    return labels
