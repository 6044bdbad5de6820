"""Structural features of chain graphs and the derived undirected graphs.

Detects flags, double flags, and minimal complexes; builds the augmented and
moral graphs and the extended/spanned subgraphs that feed the two separation
criteria.  All functions are pure and operate on immutable graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graphs import (
    ChainGraph,
    an_closure,
    at_closure,
    co_closure,
    graph_union,
    induced_subgraph,
    parents,
    undirected_graph,
    undirected_part,
    vertex_subset,
)

IMMORALITY = "immorality"
ARROW_LINE = "arrow_line"
LINE_ARROW = "line_arrow"

FLAG_KINDS = (IMMORALITY, ARROW_LINE, LINE_ARROW)


@dataclass(frozen=True)
class Flag:
    """Ordered triple (a, c, b) with center c and non-adjacent ends a, b.

    kind distinguishes the three edge patterns at the center:
    immorality ``a -> c <- b``, arrow_line ``a -> c -- b``, and line_arrow
    ``a -- c <- b``.  Detection emits canonical records only: immoralities
    with a < b and every one-arrow flag in its arrow_line orientation.
    """

    a: str
    c: str
    b: str
    kind: str

    def mirrored(self) -> "Flag":
        """The same configuration read from the other end."""
        swap = {ARROW_LINE: LINE_ARROW, LINE_ARROW: ARROW_LINE, IMMORALITY: IMMORALITY}
        return Flag(self.b, self.c, self.a, swap[self.kind])

    def canonical(self) -> "Flag":
        if self.kind == LINE_ARROW:
            return self.mirrored()
        if self.kind == IMMORALITY and self.b < self.a:
            return self.mirrored()
        return self

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.kind, self.a, self.c, self.b)


@dataclass(frozen=True)
class DoubleFlag:
    """Quadruple (a, c, d, b) with a -> c -- d <- b, a,d and b,c non-adjacent.

    The ends a and b may be in any adjacency state.  Stored with the
    lexicographically smaller of (a, c, d, b) and (b, d, c, a).
    """

    a: str
    c: str
    d: str
    b: str

    @classmethod
    def canonical(cls, a: str, c: str, d: str, b: str) -> "DoubleFlag":
        return cls(*min((a, c, d, b), (b, d, c, a)))

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.a, self.c, self.d, self.b)


@dataclass(frozen=True)
class MinimalComplex:
    """Triple (a, path, b): a chordless line path bracketed by two arrows.

    ``path`` lists the vertices c1 .. ck of a single chain component in path
    order, with a -> c1 and b -> ck the only edges from the non-adjacent pair
    a, b into the path.  Stored with a < b.
    """

    a: str
    path: tuple[str, ...]
    b: str

    @property
    def vertex_span(self) -> frozenset[str]:
        return frozenset(self.path)

    def sort_key(self) -> tuple[str, str, tuple[str, ...]]:
        return (self.a, self.b, self.path)


# ---------------------------------------------------------------------------
# feature detection


def flags(graph: ChainGraph) -> frozenset[Flag]:
    """All flags of the graph, one canonical record per configuration."""
    out: set[Flag] = set()
    for center in graph.vertices:
        arrow_ends = sorted(graph.parent_map[center])
        line_ends = sorted(graph.neighbor_map[center])
        for a, b in combinations(arrow_ends, 2):
            if not graph.is_adjacent(a, b):
                out.add(Flag(a, center, b, IMMORALITY))
        for a in arrow_ends:
            for b in line_ends:
                if not graph.is_adjacent(a, b):
                    out.add(Flag(a, center, b, ARROW_LINE))
    return frozenset(out)


def immoralities(graph: ChainGraph) -> frozenset[Flag]:
    return frozenset(f for f in flags(graph) if f.kind == IMMORALITY)


def double_flags(graph: ChainGraph) -> frozenset[DoubleFlag]:
    out: set[DoubleFlag] = set()
    for c, d in graph.lines:
        for first, second in ((c, d), (d, c)):
            for a in graph.parent_map[first]:
                for b in graph.parent_map[second]:
                    if b == a:
                        continue
                    if graph.is_adjacent(a, second) or graph.is_adjacent(b, first):
                        continue
                    out.add(DoubleFlag.canonical(a, first, second, b))
    return frozenset(out)


def minimal_complexes(graph: ChainGraph) -> frozenset[MinimalComplex]:
    """All minimal complexes, as chordless-path searches inside components.

    A minimal complex looks like a chordless undirected path through one
    chain component whose two ends receive exactly one arrow each from a
    non-adjacent vertex pair; the search walks induced paths between children
    of the two candidate parents, excluding the adjacencies that pattern
    forbids.  Worst case is exponential in the component size, which is
    acceptable at the intended input scale.
    """
    out: set[MinimalComplex] = set()
    structure = graph.components
    for comp in structure.components:
        bd = sorted(parents(graph, comp))
        if len(bd) < 2:
            continue
        members = comp
        for a, b in combinations(bd, 2):
            if graph.is_adjacent(a, b):
                continue
            into_a = graph.child_map[a] & members
            into_b = graph.child_map[b] & members
            for c in sorted(into_a & into_b):
                out.add(MinimalComplex(a, (c,), b))
            for start in sorted(into_a - into_b):
                out.update(
                    MinimalComplex(a, path, b)
                    for path in _induced_paths(graph, start, into_a, into_b)
                )
    return frozenset(out)


def _induced_paths(
    graph: ChainGraph,
    start: str,
    blocked_after_start: frozenset[str],
    targets: frozenset[str],
) -> Iterable[tuple[str, ...]]:
    """Chordless line paths from start to a target, avoiding the given sets.

    Vertices after the start must avoid ``blocked_after_start``; interior
    vertices must also avoid ``targets``; the path ends at its first target.
    """
    stack: list[tuple[tuple[str, ...], frozenset[str]]] = [((start,), frozenset((start,)))]
    while stack:
        path, used = stack.pop()
        last = path[-1]
        forbidden = used | frozenset().union(
            *(graph.neighbor_map[v] for v in path[:-1])
        )
        for nxt in sorted(graph.neighbor_map[last]):
            if nxt in forbidden or nxt in blocked_after_start:
                continue
            if nxt in targets:
                yield path + (nxt,)
            else:
                stack.append((path + (nxt,), used | {nxt}))


# ---------------------------------------------------------------------------
# derived undirected graphs


def augmented(graph: ChainGraph) -> ChainGraph:
    """Skeleton plus the closing line of every flag and double flag."""
    pairs = set(graph.skeleton_pairs)
    for f in flags(graph):
        pairs.add(_pair(f.a, f.b))
    for df in double_flags(graph):
        pairs.add(_pair(df.a, df.d))
        pairs.add(_pair(df.b, df.c))
        pairs.add(_pair(df.a, df.b))
    return undirected_graph(graph.vertices, pairs)


def moral(graph: ChainGraph) -> ChainGraph:
    """Skeleton plus a line for every minimal complex.

    Uses the boundary shortcut: a, b gain a line exactly when they are
    non-adjacent and both lie on the boundary of one chain component, since
    the whole component is then a complex containing a minimal one, and every
    minimal complex sits inside some component boundary.  This keeps
    moralization polynomial and independent of complex enumeration.
    """
    pairs = set(graph.skeleton_pairs)
    for comp in graph.components.components:
        bd = sorted(parents(graph, comp))
        for a, b in combinations(bd, 2):
            if not graph.is_adjacent(a, b):
                pairs.add(_pair(a, b))
    return undirected_graph(graph.vertices, pairs)


def _pair(v: str, w: str) -> tuple[str, str]:
    return (v, w) if v < w else (w, v)


# ---------------------------------------------------------------------------
# separation substrates


def extended_subgraph(graph: ChainGraph, subset: Iterable[str]) -> ChainGraph:
    """Subgraph induced on the ancestral closure, joined with the undirected
    part of the subgraph induced on that closure's coherent closure; arrows
    therefore survive only inside the ancestral closure.  The substrate of
    the augmentation criterion."""
    target = vertex_subset(graph, subset)
    ancestral = an_closure(graph, target)
    coherent = co_closure(graph, ancestral)
    return graph_union(
        induced_subgraph(graph, ancestral),
        undirected_part(induced_subgraph(graph, coherent)),
    )


def spanned_subgraph(graph: ChainGraph, subset: Iterable[str]) -> ChainGraph:
    """Induced subgraph on the anterior closure; the substrate of the
    moralization criterion."""
    return induced_subgraph(graph, at_closure(graph, subset))
