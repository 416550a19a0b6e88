"""Shared exception types.  The CLI maps these onto exit codes:
domain errors -> 1, budget exhaustion -> 2, parse/IO errors -> 3."""


class DomainError(ValueError):
    """Invalid parameters or inputs for a domain operation."""


class NonPositiveParams(DomainError):
    """Vertex count or uniformity outside the allowed range."""


class OutOfRangeVertex(DomainError):
    """A vertex id falls outside 1..n."""


class WrongEdgeSize(DomainError):
    """A hyperedge does not have exactly r distinct vertices."""


class InvalidParams(DomainError):
    """Construction or formula parameters violate their invariants."""


class ExtraEdgeAlreadyPresent(InvalidParams):
    """The extra hyperedge of a plus variant is already implied by the base."""


class UnknownEdgeId(DomainError):
    """A witness references a hyperedge that is not in the hypergraph."""


class LimitExceeded(DomainError):
    """Requested enumeration exceeds the configured desk-scale limit."""


class BudgetExhausted(RuntimeError):
    """Search hit its node budget; any partial result is a lower bound only."""


class ParseError(ValueError):
    """Malformed .hg / witness / certificate input."""
