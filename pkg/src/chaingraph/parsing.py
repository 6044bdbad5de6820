"""Graph file format.

One statement per line.  ``#`` starts a comment.  ``vertex <id>`` declares an
isolated vertex; ``<id> -> <id>`` a directed edge and ``<id> -- <id>`` an
undirected one.  Identifiers are alphanumeric plus underscore; edge endpoints
are declared implicitly.  Serialization round-trips: parsing the output of
:func:`serialize_graph` reproduces the graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, SelfLoopError, SemiDirectedCycleError
from .graphs import ChainGraph, build_graph

_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")
_VERTEX_LINE = re.compile(r"\s*vertex\s+([A-Za-z0-9_]+)\s*\Z")
_EDGE_LINE = re.compile(r"\s*([A-Za-z0-9_]+)\s*(->|--)\s*([A-Za-z0-9_]+)\s*\Z")


@dataclass(frozen=True)
class EdgeStatement:
    tail: str
    head: str
    directed: bool
    line: int
    col: int

    def involves(self, v: str, w: str) -> bool:
        if self.directed:
            return (self.tail, self.head) == (v, w)
        return {self.tail, self.head} == {v, w}


@dataclass(frozen=True)
class GraphDocument:
    """Parsed source text with statement positions for diagnostics."""

    text: str
    vertex_declarations: tuple[tuple[str, int], ...]
    edge_statements: tuple[EdgeStatement, ...]


def parse_document(text: str) -> GraphDocument:
    declarations: list[tuple[str, int]] = []
    statements: list[EdgeStatement] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0]
        if not code.strip():
            continue
        col = len(code) - len(code.lstrip()) + 1
        match = _VERTEX_LINE.match(code)
        if match:
            declarations.append((match.group(1), lineno))
            continue
        match = _EDGE_LINE.match(code)
        if match:
            tail, op, head = match.groups()
            statements.append(
                EdgeStatement(tail, head, op == "->", lineno, match.start(1) + 1)
            )
            continue
        raise ParseError(
            lineno,
            col,
            "expected 'vertex <id>', '<id> -> <id>', or '<id> -- <id>'",
        )
    return GraphDocument(text, tuple(declarations), tuple(statements))


def build_from_document(document: GraphDocument) -> ChainGraph:
    names = {name for name, _ in document.vertex_declarations}
    directed = []
    undirected = []
    for stmt in document.edge_statements:
        names.add(stmt.tail)
        names.add(stmt.head)
        (directed if stmt.directed else undirected).append((stmt.tail, stmt.head))
    try:
        return build_graph(sorted(names), directed, undirected)
    except SelfLoopError as exc:
        where = next(
            stmt
            for stmt in document.edge_statements
            if stmt.tail == stmt.head == exc.vertex
        )
        raise SelfLoopError(
            exc.vertex, f"self-loop on vertex {exc.vertex!r} (line {where.line})"
        ) from None
    except SemiDirectedCycleError as exc:
        lines = _cycle_statement_lines(document, exc.cycle)
        detail = str(exc)
        if lines:
            detail += " (" + ", ".join(f"line {n}" for n in lines) + ")"
        raise SemiDirectedCycleError(exc.cycle, detail) from None


def _cycle_statement_lines(document: GraphDocument, cycle: tuple[str, ...]) -> list[int]:
    lines: set[int] = set()
    for v, w in zip(cycle, cycle[1:]):
        for stmt in document.edge_statements:
            if stmt.involves(v, w) or stmt.involves(w, v):
                lines.add(stmt.line)
    return sorted(lines)


def parse_graph(text: str) -> ChainGraph:
    """Parse graph source text into a validated chain graph."""
    return build_from_document(parse_document(text))


def serialize_graph(graph: ChainGraph) -> str:
    """Emit source text that parses back to an equal graph."""
    used: set[str] = set()
    for v, w in graph.edges:
        used.add(v)
        used.add(w)
    out = [f"vertex {v}" for v in graph.vertices if v not in used]
    out.extend(f"{u} -- {w}" for u, w in sorted(graph.lines))
    out.extend(f"{v} -> {w}" for v, w in sorted(graph.arrows))
    return "\n".join(out) + ("\n" if out else "")
