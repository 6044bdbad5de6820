"""Domain errors raised across the package.

Every error the library raises deliberately derives from :class:`GraphError`,
so callers (and the CLI) can separate domain failures from programming bugs.
"""

from __future__ import annotations


class GraphError(Exception):
    """Base class for all chaingraph domain errors."""


class SelfLoopError(GraphError):
    def __init__(self, vertex: str, detail: str | None = None):
        self.vertex = vertex
        super().__init__(detail or f"self-loop on vertex {vertex!r}")


class UnknownVertexError(GraphError):
    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")


class SemiDirectedCycleError(GraphError):
    """The graph contains a semi-directed cycle.

    ``cycle`` is a closed vertex walk (first element repeated last) in which
    every consecutive pair is an edge and at least one step is an arrow.
    """

    def __init__(self, cycle: tuple[str, ...], rendered: str | None = None):
        self.cycle = tuple(cycle)
        super().__init__(rendered or "semi-directed cycle: " + " ".join(self.cycle))


class OverlapError(GraphError):
    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} appears in more than one of the sets A, B, S")


class NotUndirectedError(GraphError):
    def __init__(self, message: str = "graph has directed edges"):
        super().__init__(message)


class NotAdgError(GraphError):
    def __init__(self, message: str = "graph has undirected edges"):
        super().__init__(message)


class VertexMismatchError(GraphError):
    def __init__(self, message: str = "graphs have different vertex sets"):
        super().__init__(message)


class TooLargeError(GraphError):
    def __init__(self, size: int, limit: int, what: str = "vertex count"):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} {size} exceeds the supported limit {limit}")


class NumericalFailureError(GraphError):
    def __init__(self, message: str = "symmetric factorization failed"):
        super().__init__(message)


class ParseError(GraphError):
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")
