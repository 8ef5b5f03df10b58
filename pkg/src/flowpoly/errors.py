"""Exceptions and default resource bounds shared across the package."""

# Enumerations (flows, tensions, colorings, conformal subsets) refuse to
# start once the state count exceeds this.
DEFAULT_STATE_BOUND = 2**20

# Polynomial accumulators refuse to grow past this many terms.
DEFAULT_TERM_BOUND = 2**22


class FlowPolyError(Exception):
    """Base class for package errors."""


class GraphFormatError(FlowPolyError):
    """Malformed graph / map / polynomial input.

    Carries the 1-based line number when raised by the text parsers.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BoundExceeded(FlowPolyError):
    """An enumeration or polynomial operation would exceed its bound."""


class EmbeddingError(FlowPolyError):
    """Rotation system inconsistent with the graph, or not a plane embedding."""


class PreconditionError(FlowPolyError):
    """An operation's documented precondition does not hold for the input."""


class VerificationError(FlowPolyError):
    """Two routes that must agree produced different answers."""
