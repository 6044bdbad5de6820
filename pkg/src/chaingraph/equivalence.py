"""Markov equivalence of chain graphs and small-graph enumeration.

Equivalence is decided structurally: two graphs are equivalent under a
criterion exactly when they share a skeleton and the criterion's feature set
(immoralities for ADGs, minimal complexes for the moralization criterion,
flags for the augmentation criterion).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from string import ascii_lowercase
from typing import Iterator

from .errors import NotAdgError, TooLargeError, VertexMismatchError
from .graphs import ChainGraph
from .structures import IMMORALITY, Flag, flags, immoralities, minimal_complexes

ADG = "adg"
EQUIV_CRITERIA = ("adg", "lwf", "amp")

ENUMERATION_LIMIT = 5


@dataclass(frozen=True)
class EquivFingerprint:
    """Skeleton plus canonical feature set; equal fingerprints mean
    Markov-equivalent graphs under the chosen criterion."""

    skeleton: frozenset[tuple[str, str]]
    features: frozenset

    def feature_difference(self, other: "EquivFingerprint") -> tuple[frozenset, frozenset]:
        return (self.features - other.features, other.features - self.features)


def flag_positions(graph: ChainGraph) -> frozenset[tuple[frozenset[str], str]]:
    """Unordered flag locations: ({end, end}, center), the kind forgotten.

    The three flag forms at one location define the same independences, so
    equivalence compares locations only; two graphs may realize the same
    location with different forms and still be Markov equivalent.
    """
    return frozenset((frozenset((f.a, f.b)), f.c) for f in flags(graph))


def fingerprint(graph: ChainGraph, criterion: str) -> EquivFingerprint:
    if criterion == "amp":
        features: frozenset = flag_positions(graph)
    elif criterion == "lwf":
        features = frozenset(
            (c.a, c.vertex_span, c.b) for c in minimal_complexes(graph)
        )
    elif criterion == "adg":
        features = immoralities(graph)
    else:
        raise ValueError(f"criterion must be one of {EQUIV_CRITERIA}, got {criterion!r}")
    return EquivFingerprint(graph.skeleton_pairs, features)


def _require_same_vertices(first: ChainGraph, second: ChainGraph) -> None:
    if first.vertex_set != second.vertex_set:
        raise VertexMismatchError()


def same_skeleton(first: ChainGraph, second: ChainGraph) -> bool:
    _require_same_vertices(first, second)
    return first.skeleton_pairs == second.skeleton_pairs


def adg_equivalent(first: ChainGraph, second: ChainGraph) -> bool:
    """Same skeleton and same immoralities; inputs must be ADGs."""
    _require_same_vertices(first, second)
    if not first.is_directed or not second.is_directed:
        raise NotAdgError()
    return fingerprint(first, "adg") == fingerprint(second, "adg")


def lwf_equivalent(first: ChainGraph, second: ChainGraph) -> bool:
    """Same skeleton and same minimal complexes."""
    _require_same_vertices(first, second)
    return fingerprint(first, "lwf") == fingerprint(second, "lwf")


def amp_equivalent(first: ChainGraph, second: ChainGraph) -> bool:
    """Same skeleton and same flags."""
    _require_same_vertices(first, second)
    return fingerprint(first, "amp") == fingerprint(second, "amp")


def lwf_amp_coincide(graph: ChainGraph) -> bool:
    """True when every flag is an immorality, i.e. the two criteria agree."""
    return all(f.kind == IMMORALITY for f in flags(graph))


def coincidence_witness(graph: ChainGraph) -> Flag | None:
    """Some flag that is not an immorality, or None."""
    offenders = sorted(
        (f for f in flags(graph) if f.kind != IMMORALITY), key=Flag.sort_key
    )
    return offenders[0] if offenders else None


# ---------------------------------------------------------------------------
# enumeration

# Pair states: 0 absent, 1 line, 2 arrow low->high, 3 arrow high->low.
_STATES = (0, 1, 2, 3)


def enumerate_chain_graphs(n: int) -> Iterator[ChainGraph]:
    """Every labeled chain graph on n vertices, in deterministic order.

    Candidates assign one of four states to each vertex pair and are filtered
    by the component-contraction acyclicity test.
    """
    if n < 0 or n > ENUMERATION_LIMIT:
        raise TooLargeError(n, ENUMERATION_LIMIT)
    names = tuple(ascii_lowercase[:n])
    pairs = list(combinations(range(n), 2))
    for states in product(_STATES, repeat=len(pairs)):
        if not _adicyclic(n, pairs, states):
            continue
        edges: set[tuple[str, str]] = set()
        for (i, j), state in zip(pairs, states):
            if state == 0:
                continue
            if state != 3:
                edges.add((names[i], names[j]))
            if state != 2:
                edges.add((names[j], names[i]))
        yield ChainGraph(names, frozenset(edges))


def _adicyclic(n: int, pairs: list[tuple[int, int]], states: tuple[int, ...]) -> bool:
    root = list(range(n))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    arrows: list[tuple[int, int]] = []
    for (i, j), state in zip(pairs, states):
        if state == 1:
            root[find(i)] = find(j)
        elif state == 2:
            arrows.append((i, j))
        elif state == 3:
            arrows.append((j, i))

    children: dict[int, set[int]] = {}
    indeg: dict[int, int] = {}
    for i, j in arrows:
        ci, cj = find(i), find(j)
        if ci == cj:
            return False
        kids = children.setdefault(ci, set())
        if cj not in kids:
            kids.add(cj)
            indeg[cj] = indeg.get(cj, 0) + 1
            indeg.setdefault(ci, 0)

    # Kahn's algorithm on the contracted digraph.
    pending = [c for c in indeg if indeg[c] == 0]
    removed = 0
    while pending:
        node = pending.pop()
        removed += 1
        for child in children.get(node, ()):
            indeg[child] -= 1
            if indeg[child] == 0:
                pending.append(child)
    return removed == len(indeg)
