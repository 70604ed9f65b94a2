"""MaxCut by recursive graph shrinking.

The toolkit couples a shrinking engine (merge the node pair with the
strongest correlation, repeat, reconstruct) with three interchangeable
correlation oracles: an odd-cycle LP relaxation, a low-rank SDP with
Goemans-Williamson style rounding, and exact statevector QAOA.  A benchmark
harness generates random instances, computes baselines and aggregates
approximation ratios.
"""

from .engine import CorrelationSet, EngineConfig, Trace, run, solve_terminal
from .errors import ShrinkcutError
from .graph import (
    DEGENERATE,
    Assignment,
    Graph,
    ShrinkHistory,
    ShrinkStep,
    build_graph,
    cut_value,
    reconstruct,
    remap_correlation,
    shrink_edge,
)

__all__ = [
    "Assignment",
    "CorrelationSet",
    "DEGENERATE",
    "EngineConfig",
    "Graph",
    "ShrinkHistory",
    "ShrinkStep",
    "ShrinkcutError",
    "Trace",
    "build_graph",
    "cut_value",
    "reconstruct",
    "remap_correlation",
    "run",
    "shrink_edge",
    "solve_terminal",
]

__version__ = "0.1.0"
