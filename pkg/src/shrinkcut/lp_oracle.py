"""Odd-cycle LP relaxation of MaxCut, solved by cutting planes.

Variables y_e in [0, 1] say how strongly edge e is cut; every cycle of a true
cut crosses the partition an even number of times, which the odd-cycle
inequalities enforce:

    sum_{e in Q} y_e  -  sum_{e in C\\Q} y_e  <=  |Q| - 1      (|Q| odd)

for any closed walk C and odd-cardinality subset Q of it.  Violated
inequalities are found by shortest paths in a two-layer auxiliary graph:
same-layer copies of an edge cost y_e, layer-crossing copies cost 1 - y_e,
and a walk from a node's layer-0 copy to its layer-1 copy shorter than 1
crosses layers an odd number of times, spelling out a violated inequality
(the crossing edges form Q).

Correlations fall out of the optimum by the affine map 1 - 2*y, so edges the
relaxation firmly cuts (y near 1) get correlations near -1.  The bare-LP
baseline rounds y to a cut along a maximum-weight spanning forest.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field

import numpy as np

from .engine import CorrelationSet
from .errors import ShrinkcutError
from .graph import Assignment, Graph
from .simplex import IncrementalLp

VIOLATION_TOL = 1e-7
MAX_ROUNDS = 200

EdgeVector = dict[tuple[int, int], float]


@dataclass(frozen=True)
class OddCycleInequality:
    """A closed walk with an odd subset of crossing edges.

    Edges are (u, v) pairs with u < v; both tuples are multisets (an edge may
    be traversed more than once, the inequality stays valid).
    """

    odd_subset: tuple[tuple[int, int], ...]
    rest: tuple[tuple[int, int], ...]

    @property
    def cycle(self) -> tuple[tuple[int, int], ...]:
        return self.odd_subset + self.rest

    def violation(self, y: EdgeVector) -> float:
        lhs = sum(y[e] for e in self.odd_subset) - sum(y[e] for e in self.rest)
        return lhs - (len(self.odd_subset) - 1)

    def row(self, var_of: dict[tuple[int, int], int]) -> tuple[dict[int, float], float]:
        coefs: dict[int, float] = {}
        for e in self.odd_subset:
            j = var_of[e]
            coefs[j] = coefs.get(j, 0.0) + 1.0
        for e in self.rest:
            j = var_of[e]
            coefs[j] = coefs.get(j, 0.0) - 1.0
        return coefs, float(len(self.odd_subset) - 1)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def separate_odd_cycles(
    g: Graph, y: EdgeVector, tol: float = VIOLATION_TOL
) -> list[OddCycleInequality]:
    """Violated odd-cycle inequalities, at most one per root node, deduplicated."""
    order = g.nodes()
    pos = {u: i for i, u in enumerate(order)}
    n = len(order)

    # Two-layer graph: node (i, layer) encoded as 2*i + layer.
    adj: list[list[tuple[int, float, int, int]]] = [[] for _ in range(2 * n)]
    for u, v, _ in g.edges():
        ye = min(1.0, max(0.0, y[(u, v)]))
        same, cross = ye, 1.0 - ye
        iu, iv = pos[u], pos[v]
        for layer in (0, 1):
            a, b = 2 * iu + layer, 2 * iv + layer
            adj[a].append((b, same, iu, iv))
            adj[b].append((a, same, iu, iv))
            c = 2 * iv + (1 - layer)
            adj[2 * iu + layer].append((c, cross, iu, iv))
            adj[c].append((2 * iu + layer, cross, iu, iv))

    found: list[OddCycleInequality] = []
    seen: set[tuple] = set()
    for root in range(n):
        source, target = 2 * root, 2 * root + 1
        dist = [np.inf] * (2 * n)
        prev: list[tuple[int, int, int] | None] = [None] * (2 * n)
        dist[source] = 0.0
        heap = [(0.0, source)]
        while heap:
            d, node = heapq.heappop(heap)
            if d > dist[node] + 1e-15:
                continue
            if node == target:
                break
            for nxt, length, eu, ev in adj[node]:
                nd = d + length
                if nd < dist[nxt] - 1e-15:
                    dist[nxt] = nd
                    prev[nxt] = (node, eu, ev)
                    heapq.heappush(heap, (nd, nxt))
        if dist[target] >= 1.0 - tol:
            continue
        # Walk back: layer-crossing hops form the odd subset.
        odd: list[tuple[int, int]] = []
        rest: list[tuple[int, int]] = []
        node = target
        while node != source:
            back = prev[node]
            if back is None:
                break
            pnode, eu, ev = back
            key = _edge_key(order[eu], order[ev])
            if (pnode & 1) != (node & 1):
                odd.append(key)
            else:
                rest.append(key)
            node = pnode
        else:
            sig = (tuple(sorted(odd)), tuple(sorted(rest)))
            if sig not in seen:
                seen.add(sig)
                found.append(
                    OddCycleInequality(tuple(sorted(odd)), tuple(sorted(rest)))
                )
    return found


@dataclass
class RelaxationResult:
    y: EdgeVector
    bound: float
    rounds: int
    converged: bool
    bound_history: list[float] = field(default_factory=list)
    rows: list[OddCycleInequality] = field(default_factory=list)

    def debug_json(self, g: Graph) -> str:
        payload = {
            "objective": [[u, v, w] for u, v, w in g.edges()],
            "rows": [
                {"odd_subset": list(map(list, r.odd_subset)),
                 "rest": list(map(list, r.rest))}
                for r in self.rows
            ],
            "y": {f"{u},{v}": val for (u, v), val in sorted(self.y.items())},
            "bound": self.bound,
            "converged": self.converged,
        }
        return json.dumps(payload, indent=2)


class _TableauBackend:
    """Inner solver on the in-repo simplex, kept warm between rounds."""

    def __init__(self, weights: np.ndarray):
        self._lp = IncrementalLp(weights, np.zeros(len(weights)), np.ones(len(weights)))
        self._lp.optimize()

    def add_rows(self, rows) -> None:
        self._lp.append_rows(rows)
        self._lp.optimize()

    def solution(self) -> tuple[np.ndarray, float]:
        return self._lp.solution(), self._lp.objective_value()


class _HighsBackend:
    """Inner solver on scipy's HiGHS; each round re-solves the grown LP.

    Tableau pivoting bogs down in degenerate pivots on large dense
    instances, so cut generation rides on a production LP code when scipy is
    present.  Results are interchangeable: both return optimal basic
    solutions of the same LP.
    """

    def __init__(self, weights: np.ndarray):
        from scipy.optimize import linprog  # deferred; optional dependency
        from scipy.sparse import csr_matrix

        self._linprog = linprog
        self._csr = csr_matrix
        self._w = weights
        self._data: list[float] = []
        self._ri: list[int] = []
        self._ci: list[int] = []
        self._rhs: list[float] = []
        self._x = np.where(weights > 0, 1.0, 0.0)

    def add_rows(self, rows) -> None:
        for coefs, rhs in rows:
            i = len(self._rhs)
            for j, v in coefs.items():
                self._ri.append(i)
                self._ci.append(j)
                self._data.append(v)
            self._rhs.append(rhs)
        nv = len(self._w)
        a = self._csr(
            (self._data, (self._ri, self._ci)), shape=(len(self._rhs), nv)
        )
        res = self._linprog(
            -self._w, A_ub=a, b_ub=np.asarray(self._rhs), bounds=(0.0, 1.0),
            method="highs",
        )
        if res.status != 0:
            raise ShrinkcutError(f"inner LP solver failed (status {res.status})")
        self._x = res.x

    def solution(self) -> tuple[np.ndarray, float]:
        return self._x, float(self._w @ self._x)


def _make_backend(weights: np.ndarray, backend: str):
    if backend == "simplex":
        return _TableauBackend(weights)
    if backend == "highs":
        return _HighsBackend(weights)
    if backend == "auto":
        try:
            return _HighsBackend(weights)
        except ImportError:
            return _TableauBackend(weights)
    raise ValueError(f"unknown LP backend {backend!r}")


def solve_odd_cycle_relaxation(
    g: Graph,
    max_rounds: int = MAX_ROUNDS,
    tol: float = VIOLATION_TOL,
    backend: str = "auto",
) -> RelaxationResult:
    """Cutting-plane loop: bounds-only LP, then add violated rows until none.

    The returned bound is an upper bound on the maximum cut.  If the round
    cap is hit the best bound so far comes back with ``converged=False``.
    """
    edges = [(u, v) for u, v, _ in g.edges()]
    weights = np.array([w for _, _, w in g.edges()], dtype=np.float64)
    var_of = {e: j for j, e in enumerate(edges)}
    if not edges:
        return RelaxationResult(y={}, bound=0.0, rounds=0, converged=True,
                                bound_history=[0.0])

    lp = _make_backend(weights, backend)
    x, obj = lp.solution()
    history = [obj]
    added: list[OddCycleInequality] = []
    converged = False
    rounds = 0
    while rounds < max_rounds:
        y = {e: float(x[j]) for e, j in var_of.items()}
        cuts = separate_odd_cycles(g, y, tol)
        if not cuts:
            converged = True
            break
        rounds += 1
        lp.add_rows([c.row(var_of) for c in cuts])
        added.extend(cuts)
        x, obj = lp.solution()
        history.append(obj)
    y = {e: float(min(1.0, max(0.0, x[j]))) for e, j in var_of.items()}
    return RelaxationResult(
        y=y,
        bound=history[-1],
        rounds=rounds,
        converged=converged,
        bound_history=history,
        rows=added,
    )


def lp_correlations(y: EdgeVector) -> CorrelationSet:
    """Correlation 1 - 2*y per edge: y=0 -> +1 (uncut), y=1 -> -1 (cut)."""
    return CorrelationSet([(e, 1.0 - 2.0 * v) for e, v in y.items()])


def integral_cut_assignment(
    g: Graph, y: EdgeVector, tol: float = VIOLATION_TOL
) -> Assignment | None:
    """If y is integral (within tol) and consistent, the cut it encodes.

    Only meaningful for a converged relaxation: with no violated odd-cycle
    inequality an integral y is parity-consistent on every cycle, so the
    labeling below never conflicts.  Returns None when y is fractional.
    """
    if any(min(v, 1.0 - v) > tol for v in y.values()):
        return None
    labels: Assignment = {}
    for root in g.nodes():
        if root in labels:
            continue
        labels[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                flip = -1 if y[_edge_key(u, v)] > 0.5 else 1
                want = labels[u] * flip
                if v in labels:
                    if labels[v] != want:
                        return None
                else:
                    labels[v] = want
                    stack.append(v)
    return labels


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, u):
        while self.parent[u] != u:
            self.parent[u] = self.parent[self.parent[u]]
            u = self.parent[u]
        return u

    def union(self, u, v) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        self.parent[rv] = ru
        return True


def spanning_tree_round(g: Graph, y: EdgeVector) -> Assignment:
    """Round a fractional y to a cut along a maximum-weight spanning forest.

    Tree edges are picked greedily by |1 - 2*y_e| (the correlation strength),
    each component root gets +1, and labels propagate so that every tree edge
    follows the sign of its correlation (sign 0 counts as +1).
    """
    ranked = sorted(
        ((u, v) for u, v, _ in g.edges()),
        key=lambda e: -abs(1.0 - 2.0 * y[e]),
    )
    uf = _UnionFind(g.nodes())
    tree: dict[int, list[int]] = {u: [] for u in g.nodes()}
    for u, v in ranked:
        if uf.union(u, v):
            tree[u].append(v)
            tree[v].append(u)
    labels: Assignment = {}
    for root in g.nodes():
        if root in labels:
            continue
        labels[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v in tree[u]:
                if v in labels:
                    continue
                corr = 1.0 - 2.0 * y[_edge_key(u, v)]
                sign = 1 if corr >= 0 else -1
                labels[v] = labels[u] * sign
                stack.append(v)
    return labels


class LpOracle:
    """Correlations from the odd-cycle relaxation of the current graph."""

    name = "lp"

    def __init__(self, max_rounds: int = MAX_ROUNDS):
        self.max_rounds = max_rounds

    def compute_correlations(self, g: Graph, rng) -> CorrelationSet:
        res = solve_odd_cycle_relaxation(g, max_rounds=self.max_rounds)
        cs = lp_correlations(res.y)
        cs.meta.update(
            {"bound": res.bound, "rounds": res.rounds, "converged": res.converged}
        )
        return cs


def lp_tree_solution(g: Graph) -> tuple[Assignment, RelaxationResult]:
    """The bare-LP baseline: relaxation plus spanning-tree rounding."""
    res = solve_odd_cycle_relaxation(g)
    return spanning_tree_round(g, res.y), res
