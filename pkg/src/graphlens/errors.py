"""Exception taxonomy.

Every error carries a stable machine-readable ``code`` so the HTTP layer
and the CLI can map failures without string matching.
"""

from __future__ import annotations


class GraphLensError(Exception):
    """Base class for all graphlens errors."""

    code = "internal"


class DuplicateNodeId(GraphLensError):
    code = "duplicate_node_id"


class UnknownEndpoint(GraphLensError):
    code = "unknown_endpoint"


class UnknownLabel(GraphLensError):
    code = "unknown_label"


class UnknownVertex(GraphLensError):
    code = "unknown_vertex"


class ParseError(GraphLensError):
    code = "parse_error"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Unconnectable(GraphLensError):
    """No tree links the requested terminals under the direction mode."""

    code = "unconnectable"


class DisjointnessViolation(GraphLensError):
    code = "disjoint_labels"


class EmptyLabelSet(GraphLensError):
    code = "empty_label_set"


class SelectionOutsideView(GraphLensError):
    code = "selection_outside_view"


class IllegalStep(GraphLensError):
    code = "illegal_step"


class PreconditionViolation(GraphLensError):
    code = "precondition_violation"


class TooLarge(GraphLensError):
    code = "too_large"


class UnknownGraph(GraphLensError):
    code = "unknown_graph"


class UnknownSession(GraphLensError):
    code = "unknown_session"
