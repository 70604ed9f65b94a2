"""Line-based instance file format.

    c optional comment lines
    p maxcut <n> <m>
    e <u> <v> <w>     (m lines, 0-based integer ids, decimal weight)

Node ids 0..n-1 all exist, including isolated ones.  Self-loops and repeated
pairs are rejected.
"""

from __future__ import annotations

import os
from typing import IO

from .errors import DuplicateEdgeError, InstanceParseError, SelfLoopError
from .graph import Graph, build_graph


def parse_instance(text: str) -> Graph:
    n = None
    m = None
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise InstanceParseError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] != "maxcut":
                raise InstanceParseError(f"line {lineno}: expected 'p maxcut <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise InstanceParseError(f"line {lineno}: bad counts") from exc
            if n < 0 or m < 0:
                raise InstanceParseError(f"line {lineno}: negative counts")
        elif parts[0] == "e":
            if n is None:
                raise InstanceParseError(f"line {lineno}: edge before problem line")
            if len(parts) != 4:
                raise InstanceParseError(f"line {lineno}: expected 'e <u> <v> <w>'")
            try:
                u, v, w = int(parts[1]), int(parts[2]), float(parts[3])
            except ValueError as exc:
                raise InstanceParseError(f"line {lineno}: bad edge fields") from exc
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceParseError(f"line {lineno}: node id out of range")
            edges.append((u, v, w))
        else:
            raise InstanceParseError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise InstanceParseError("missing problem line")
    if len(edges) != m:
        raise InstanceParseError(f"declared {m} edges, found {len(edges)}")
    try:
        return build_graph(edges, nodes=range(n))
    except (SelfLoopError, DuplicateEdgeError) as exc:
        raise InstanceParseError(str(exc)) from exc


def load_instance(path: str | os.PathLike) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read())


def write_instance(g: Graph, fh: IO[str], comment: str | None = None) -> None:
    nodes = g.nodes()
    if nodes and (nodes[0] != 0 or nodes[-1] != len(nodes) - 1):
        # Shrunk graphs have gaps in their id range; compact before writing.
        pos = {u: i for i, u in enumerate(nodes)}
    else:
        pos = {u: u for u in nodes}
    if comment:
        for line in comment.splitlines():
            fh.write(f"c {line}\n")
    fh.write(f"p maxcut {g.n} {g.m}\n")
    for u, v, w in g.edges():
        fh.write(f"e {pos[u]} {pos[v]} {w:.12g}\n")


def save_instance(g: Graph, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w", encoding="ascii") as fh:
        write_instance(g, fh, comment)
