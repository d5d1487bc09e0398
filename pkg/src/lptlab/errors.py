"""Exception taxonomy shared by all lptlab modules."""


class LptLabError(Exception):
    """Base class for all package errors."""


class GraphConstructionError(LptLabError):
    """Edge list references a vertex out of range or contains a loop."""


class Graph6Error(LptLabError):
    """Malformed graph6 record.  Carries the byte offset of the problem."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedSizeError(LptLabError):
    """Input size outside the exact-computation envelope of an operation."""


class PathValidationError(LptLabError):
    """Vertex sequence is not a simple path of the given graph."""


class PreconditionError(LptLabError):
    """Documented precondition of an operation violated by the caller."""


class NotChordalError(LptLabError):
    """Operation requires a chordal graph."""


class NotBipartiteError(LptLabError):
    """Operation requires a bipartite graph (an odd cycle was found)."""


class DisconnectedError(LptLabError):
    """Operation is defined for connected graphs only."""


class BudgetExceededError(LptLabError):
    """Search exceeded its node-expansion budget; never a silent truncation."""

    def __init__(self, message, expansions):
        super().__init__(f"{message} (after {expansions} node expansions)")
        self.expansions = expansions


class InfeasibleError(LptLabError):
    """Hitting-set instance contains an empty set."""


class StructureError(LptLabError):
    """A host structure (decomposition tree, host tree) is not a tree."""


class ValidationError(LptLabError):
    """A structured value violates its documented invariants."""


class InternalInconsistencyError(LptLabError):
    """A machine-checked statement with a proof failed.

    This is either a bug in the package or a falsification event; suites
    must abort loudly when it is raised.
    """


class FixtureIntegrityError(LptLabError):
    """A named fixture failed its encoded sanity checks."""


class ConfigError(LptLabError):
    """Invalid suite configuration."""
