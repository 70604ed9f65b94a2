"""The recursive shrinking loop.

One run repeatedly asks an oracle for per-edge correlations, consumes them in
descending magnitude, merges the corresponding node pair under the sign of
the correlation, and recalculates the correlations on the shrunk graph every
``recalc_interval`` counted steps.  After ``n - 2`` merges the two-node rest
is solved directly and the solution is rebuilt through the merge history.

Entries whose endpoints have already collapsed onto the same node are skipped
and do not count as steps.  If the queue runs dry early (disconnected graphs,
many skips) the engine forces an immediate recalculation; if even that yields
nothing the graph has no edges left and the two lowest ids are merged with a
positive sign, which is optimal for edgeless components.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import IO, Protocol

import numpy as np

from .errors import EmptyGraphError, WrongSizeError
from .graph import (
    DEGENERATE,
    Assignment,
    Graph,
    ShrinkHistory,
    ShrinkStep,
    cut_value,
    reconstruct,
    remap_correlation,
    shrink_edge,
)

_CLAMP_SLACK = 1e-9


class CorrelationSet:
    """Per-edge correlation values in [-1, 1] with a consumption order.

    Entries are (pair, value) tuples sorted by descending absolute value
    (stable).  Values may exceed 1 in magnitude by at most a numerical slack
    of 1e-9 and are clamped.  ``meta`` carries optional oracle diagnostics
    (e.g. the relaxation bound, or the cut value of a rounding step) that the
    engine copies into the trace.
    """

    __slots__ = ("entries", "meta")

    def __init__(
        self,
        entries: list[tuple[tuple[int, int], float]],
        meta: dict | None = None,
    ):
        checked = []
        for pair, value in entries:
            if abs(value) > 1.0 + _CLAMP_SLACK:
                raise ValueError(f"correlation {value!r} on {pair} out of range")
            checked.append((pair, min(1.0, max(-1.0, value))))
        checked.sort(key=lambda e: -abs(e[1]))
        self.entries = checked
        self.meta = meta or {}

    def __len__(self) -> int:
        return len(self.entries)


class Oracle(Protocol):
    """A correlation source: pure given the graph and the RNG stream."""

    name: str

    def compute_correlations(
        self, g: Graph, rng: np.random.Generator
    ) -> CorrelationSet: ...


@dataclass
class EngineConfig:
    oracle: Oracle
    recalc_interval: float = 1
    seed: int = 0

    def __post_init__(self) -> None:
        r = self.recalc_interval
        if not (r == math.inf or (float(r).is_integer() and r >= 1)):
            raise ValueError(f"recalc_interval must be a positive integer or inf, got {r!r}")


@dataclass
class TraceStep:
    step: int
    pair: tuple[int, int]  # (removed, kept)
    sigma: int
    abs_b: float
    recalculated: bool
    skipped_count: int
    offset: float

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "pair": list(self.pair),
            "sigma": self.sigma,
            "abs_b": self.abs_b,
            "recalculated": self.recalculated,
            "skipped_count": self.skipped_count,
            "offset": self.offset,
        }


@dataclass
class Trace:
    seed: int
    steps: list[TraceStep] = field(default_factory=list)
    oracle_meta: list[dict] = field(default_factory=list)
    recalculations: int = 0
    terminal_nodes: tuple[int, int] | None = None

    @property
    def total_offset(self) -> float:
        return sum(s.offset for s in self.steps)

    def write_jsonl(self, fh: IO[str]) -> None:
        for step in self.steps:
            fh.write(json.dumps(step.to_dict()) + "\n")


class CorrelationQueue:
    """Consumption order over a correlation set.

    Entries come out in descending |value|; blocks of exactly equal |value|
    are shuffled with the engine RNG the first time the block is reached, so
    ties are broken uniformly at random under the run seed.
    """

    def __init__(self, correlations: CorrelationSet):
        self._entries = list(correlations.entries)
        self._pos = 0
        self._block_end = 0
        self.skipped = 0

    def pop(self, rng: np.random.Generator):
        if self._pos >= len(self._entries):
            return None
        if self._pos >= self._block_end:
            key = abs(self._entries[self._pos][1])
            end = self._pos + 1
            while end < len(self._entries) and abs(self._entries[end][1]) == key:
                end += 1
            if end - self._pos > 1:
                block = self._entries[self._pos : end]
                rng.shuffle(block)
                self._entries[self._pos : end] = block
            self._block_end = end
        entry = self._entries[self._pos]
        self._pos += 1
        return entry


def select_step(
    queue: CorrelationQueue, h: ShrinkHistory, rng: np.random.Generator
) -> ShrinkStep | None:
    """Pop the strongest usable correlation and turn it into a merge step.

    Degenerate entries (both endpoints already on the same live node) are
    consumed and counted on ``queue.skipped``.  Returns None when the queue
    is exhausted.  A correlation of exactly zero merges with sign +1.
    """
    while True:
        entry = queue.pop(rng)
        if entry is None:
            return None
        result = remap_correlation(h, entry[0], entry[1])
        if result is DEGENERATE:
            queue.skipped += 1
            continue
        (a, b), value = result
        sign = 1 if value >= 0 else -1
        return ShrinkStep(kept=b, removed=a, sign=sign, abs_corr=abs(value))


def solve_terminal(g: Graph) -> Assignment:
    """Optimal labels for a two-node graph; ties cut (labels differ)."""
    if g.n != 2:
        raise WrongSizeError(f"terminal solve needs 2 nodes, got {g.n}")
    a, b = g.nodes()
    w = g.weight(a, b) if g.has_edge(a, b) else 0.0
    if w < 0:
        return {a: 1, b: 1}
    return {a: 1, b: -1}


def run(g: Graph, cfg: EngineConfig) -> tuple[Assignment, Trace]:
    """Shrink ``g`` to two nodes, solve, reconstruct.

    Performs exactly ``n - 2`` counted steps; recalculates correlations at
    counted indices 0, r, 2r, ... (the initial computation is the index-0
    recalculation) plus forced recalculations on queue exhaustion.
    """
    if g.n < 2:
        raise EmptyGraphError(f"need at least 2 nodes, got {g.n}")
    rng = np.random.default_rng(cfg.seed)
    r = cfg.recalc_interval
    need = g.n - 2
    cur = g
    history = ShrinkHistory()
    trace = Trace(seed=cfg.seed)
    queue: CorrelationQueue | None = None

    def recalc() -> CorrelationQueue:
        cs = cfg.oracle.compute_correlations(cur, rng)
        trace.oracle_meta.append(dict(cs.meta))
        trace.recalculations += 1
        return CorrelationQueue(cs)

    for counted in range(need):
        recalculated = False
        scheduled = queue is None or (not math.isinf(r) and counted % int(r) == 0)
        if scheduled:
            queue = recalc()
            recalculated = True
        skipped_this = -queue.skipped
        step = select_step(queue, history, rng)
        skipped_this += queue.skipped
        if step is None and not recalculated:
            queue = recalc()
            recalculated = True
            skipped_this -= queue.skipped
            step = select_step(queue, history, rng)
            skipped_this += queue.skipped
        if step is None:
            # No edges remain anywhere; any relative sign is optimal.
            low = sorted(cur.nodes())[:2]
            step = ShrinkStep(kept=low[0], removed=low[1], sign=1, abs_corr=0.0)
        cur, offset = shrink_edge(cur, (step.removed, step.kept), step.sign)
        step = replace(step, offset=offset)
        history.append(step)
        trace.steps.append(
            TraceStep(
                step=counted,
                pair=(step.removed, step.kept),
                sigma=step.sign,
                abs_b=step.abs_corr,
                recalculated=recalculated,
                skipped_count=skipped_this,
                offset=offset,
            )
        )

    terminal = solve_terminal(cur)
    trace.terminal_nodes = tuple(cur.nodes())
    assignment = reconstruct(history, terminal)
    return assignment, trace


def run_cut_value(g: Graph, cfg: EngineConfig) -> float:
    """Convenience wrapper: run the engine and evaluate the cut it found."""
    assignment, _ = run(g, cfg)
    return cut_value(g, assignment)
