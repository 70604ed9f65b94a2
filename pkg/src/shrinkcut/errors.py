"""Exception types shared across the toolkit."""


class ShrinkcutError(Exception):
    """Base class for all toolkit errors."""


class SelfLoopError(ShrinkcutError):
    """An edge connects a node to itself."""


class DuplicateEdgeError(ShrinkcutError):
    """The same unordered node pair appears twice in an edge list."""


class NonFiniteWeightError(ShrinkcutError):
    """An edge weight is NaN or infinite."""


class MissingLabelError(ShrinkcutError):
    """An assignment does not cover every node of the graph."""


class NodeNotLiveError(ShrinkcutError):
    """An operation referenced a node that is not in the graph."""


class SamePairError(ShrinkcutError):
    """A shrink was requested for a pair (i, i)."""


class IncompleteHistoryError(ShrinkcutError):
    """Reconstruction hit a step whose kept node has no label."""


class EmptyGraphError(ShrinkcutError):
    """The engine needs at least two nodes to run."""


class WrongSizeError(ShrinkcutError):
    """The terminal solver expects exactly two nodes."""


class OracleFailure(ShrinkcutError):
    """A correlation oracle failed; propagated unchanged by the engine."""


class InfeasibleError(ShrinkcutError):
    """The LP has no feasible point (defensive; well-formed relaxations are feasible)."""


class UnboundedError(ShrinkcutError):
    """The LP objective is unbounded (defensive)."""


class RankMismatchError(ShrinkcutError):
    """A hyperplane normal does not match the vector solution's rank."""


class TooManyQubitsError(ShrinkcutError):
    """Statevector simulation is capped at 24 qubits."""


class TooLargeError(ShrinkcutError):
    """Exhaustive enumeration is capped at 24 nodes."""


class GenerationFailedError(ShrinkcutError):
    """The pairing model exceeded its resampling cap."""


class ZeroBaselineError(ShrinkcutError):
    """Approximation ratios are undefined for a non-positive baseline cut."""


class ConfigError(ShrinkcutError):
    """An experiment configuration is invalid."""


class InstanceParseError(ShrinkcutError):
    """An instance file is malformed."""
