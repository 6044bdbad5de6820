"""Separation queries and block-recursive independence statements.

Two global criteria are supported for chain graphs: the moralization (LWF)
criterion answers A _||_ B | S by separating in the moral graph of the
subgraph spanned by A+B+S, and the augmentation (AMP) criterion separates in
the augmented extended subgraph instead.  Both reduce to plain vertex
separation in an undirected graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Mapping

from .errors import NotAdgError, NotUndirectedError, OverlapError, TooLargeError
from .graphs import ChainGraph, induced_subgraph, parents, vertex_subset
from .structures import augmented, extended_subgraph, moral, spanned_subgraph

LWF = "lwf"
AMP = "amp"
CRITERIA = (LWF, AMP)

SOURCE_LWF_GLOBAL = "lwf_global"
SOURCE_AMP_GLOBAL = "amp_global"
SOURCE_UDG_GLOBAL = "udg_global"
SOURCE_ADG_LOCAL = "adg_local"
SOURCE_BLOCK_A = "block_a"
SOURCE_BLOCK_B = "block_b"
SOURCE_BLOCK_B_STAR = "block_b_star"
SOURCE_BLOCK_C = "block_c"

PAIRWISE_GUARD = 8
FULL_GUARD = 5


@dataclass(frozen=True)
class CIQuery:
    """A conditional-independence triple (A, B, S) of pairwise disjoint sets."""

    a: tuple[str, ...]
    b: tuple[str, ...]
    s: tuple[str, ...]

    def __post_init__(self):
        _check_disjoint(frozenset(self.a), frozenset(self.b), frozenset(self.s))

    @classmethod
    def make(cls, a: Iterable[str], b: Iterable[str], s: Iterable[str] = ()) -> "CIQuery":
        return cls(
            tuple(sorted({str(v) for v in a})),
            tuple(sorted({str(v) for v in b})),
            tuple(sorted({str(v) for v in s})),
        )

    def key(self) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
        return (self.a, self.b, self.s)


@dataclass(frozen=True)
class CIStatement:
    """A query plus the tag of the defining clause that produced it."""

    query: CIQuery
    source: str


def _check_disjoint(a: frozenset[str], b: frozenset[str], s: frozenset[str]) -> None:
    for overlap in (a & b, a & s, b & s):
        if overlap:
            raise OverlapError(min(overlap))


def _check_criterion(criterion: str) -> None:
    if criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got {criterion!r}")


# ---------------------------------------------------------------------------
# separation


def _reaches(
    adjacency: Mapping[str, frozenset[str]],
    start: frozenset[str],
    goal: frozenset[str],
    blocked: frozenset[str],
) -> bool:
    seen = set(start)
    stack = list(start)
    while stack:
        v = stack.pop()
        if v in goal:
            return True
        for w in adjacency[v]:
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return False


def udg_separated(
    graph: ChainGraph,
    a: Iterable[str],
    b: Iterable[str],
    s: Iterable[str] = (),
) -> bool:
    """True when every path between A and B meets S in the undirected graph.

    Vacuously true when A or B is empty.
    """
    if not graph.is_undirected:
        raise NotUndirectedError()
    sa = vertex_subset(graph, a)
    sb = vertex_subset(graph, b)
    ss = vertex_subset(graph, s)
    _check_disjoint(sa, sb, ss)
    if not sa or not sb:
        return True
    return not _reaches(graph.neighbor_map, sa, sb, ss)


def _lwf_substrate(graph: ChainGraph, joint: frozenset[str]) -> ChainGraph:
    return moral(spanned_subgraph(graph, joint))


def _amp_substrate(graph: ChainGraph, joint: frozenset[str]) -> ChainGraph:
    return augmented(extended_subgraph(graph, joint))


_SUBSTRATES = {LWF: _lwf_substrate, AMP: _amp_substrate}


def separation_substrate(graph: ChainGraph, criterion: str, joint: Iterable[str]) -> ChainGraph:
    """The undirected graph a criterion separates in, for a given A+B+S."""
    _check_criterion(criterion)
    return _SUBSTRATES[criterion](graph, vertex_subset(graph, joint))


def lwf_separated(graph, a, b, s=()) -> bool:
    """Moralization criterion: separate in the moral graph of the subgraph
    spanned by A+B+S."""
    sa = vertex_subset(graph, a)
    sb = vertex_subset(graph, b)
    ss = vertex_subset(graph, s)
    _check_disjoint(sa, sb, ss)
    return udg_separated(_lwf_substrate(graph, sa | sb | ss), sa, sb, ss)


def amp_separated(graph, a, b, s=()) -> bool:
    """Augmentation criterion: separate in the augmented extended subgraph
    of A+B+S."""
    sa = vertex_subset(graph, a)
    sb = vertex_subset(graph, b)
    ss = vertex_subset(graph, s)
    _check_disjoint(sa, sb, ss)
    return udg_separated(_amp_substrate(graph, sa | sb | ss), sa, sb, ss)


def separation_tester(graph: ChainGraph, criterion: str) -> Callable[..., bool]:
    """A (A, B, S) -> bool closure that caches substrates per A+B+S union.

    Useful when many triples over one graph are queried; substrates repeat
    across triples with the same union.
    """
    _check_criterion(criterion)
    builder = _SUBSTRATES[criterion]
    cache: dict[frozenset[str], Mapping[str, frozenset[str]]] = {}

    def test(a: frozenset[str], b: frozenset[str], s: frozenset[str]) -> bool:
        if not a or not b:
            return True
        joint = a | b | s
        adjacency = cache.get(joint)
        if adjacency is None:
            adjacency = builder(graph, joint).neighbor_map
            cache[joint] = adjacency
        return not _reaches(adjacency, a, b, s)

    return test


# ---------------------------------------------------------------------------
# statement generation


def adg_local_statements(graph: ChainGraph) -> list[CIStatement]:
    """One statement per vertex: v _||_ nondescendants-minus-parents | parents."""
    if not graph.is_directed:
        raise NotAdgError()
    out: list[CIStatement] = []
    for v in graph.vertices:
        descendants: set[str] = set()
        stack = [v]
        while stack:
            for w in graph.child_map[stack.pop()]:
                if w not in descendants:
                    descendants.add(w)
                    stack.append(w)
        pa = graph.parent_map[v]
        rest = graph.vertex_set - descendants - {v} - pa
        if rest:
            out.append(
                CIStatement(CIQuery.make((v,), rest, pa), SOURCE_ADG_LOCAL)
            )
    return out


def block_recursive_statements(graph: ChainGraph, variant: str) -> list[CIStatement]:
    """Vertex-level statements of the block-recursive property.

    Clause (a) runs the component ADG's local property; clause (b) or (b*)
    frees each subset of a component from the non-parent part of the
    component's parents, conditioning additionally on the rest of the
    component only in the lwf variant; clause (c) lifts separations inside a
    component, conditioned on the component's parents.  Component symbols are
    expanded to vertex unions, and statements with an empty side are dropped.
    """
    _check_criterion(variant)
    structure = graph.components
    comps = structure.components
    union = _component_union(comps)

    out: list[CIStatement] = []
    seen: set[tuple] = set()

    def emit(a: frozenset[str], b: frozenset[str], s: frozenset[str], source: str) -> None:
        if not a or not b:
            return
        statement = CIStatement(CIQuery.make(a, b, s), source)
        key = (source, statement.query.key())
        if key not in seen:
            seen.add(key)
            out.append(statement)

    for index in structure.topological_order:
        tau = comps[index]
        pa_comp = union(structure.dag_parents[index])
        below = structure.descendant_components(index)
        nd_comp = union(
            j for j in range(len(comps)) if j != index and j not in below
        )
        emit(tau, nd_comp - pa_comp, pa_comp, SOURCE_BLOCK_A)

        members = sorted(tau)
        for r in range(1, len(members) + 1):
            for sigma in combinations(members, r):
                sig = frozenset(sigma)
                pa_sigma = parents(graph, sig)
                freed = pa_comp - pa_sigma
                if variant == LWF:
                    emit(sig, freed, pa_sigma | (tau - sig), SOURCE_BLOCK_B)
                else:
                    emit(sig, freed, pa_sigma, SOURCE_BLOCK_B_STAR)

        inner = induced_subgraph(graph, tau)
        for sigma1, sigma2, inner_s in _separated_triples_in_udg(inner):
            emit(sigma1, sigma2, inner_s | pa_comp, SOURCE_BLOCK_C)
    return out


def _component_union(comps: tuple[frozenset[str], ...]):
    def union(indices: Iterable[int]) -> frozenset[str]:
        out: set[str] = set()
        for i in indices:
            out |= comps[i]
        return frozenset(out)

    return union


def _separated_triples_in_udg(graph: ChainGraph):
    """All (A, B, S) with nonempty A < B separated in an undirected graph."""
    members = graph.vertices
    for assignment in product(range(4), repeat=len(members)):
        a = frozenset(v for v, side in zip(members, assignment) if side == 1)
        b = frozenset(v for v, side in zip(members, assignment) if side == 2)
        if not a or not b or tuple(sorted(a)) > tuple(sorted(b)):
            continue
        s = frozenset(v for v, side in zip(members, assignment) if side == 3)
        if not _reaches(graph.neighbor_map, a, b, s):
            yield a, b, s


# ---------------------------------------------------------------------------
# triple enumeration


def enumerate_triples(
    graph: ChainGraph,
    criterion: str,
    mode: str = "pairwise",
    max_vertices_guard: int | None = None,
) -> list[CIQuery]:
    """All separated triples under one criterion, in deterministic order.

    Pairwise mode enumerates singleton pairs against every conditioning set;
    full mode enumerates every disjoint pair of nonempty sets, canonicalized
    so the lexicographically smaller side comes first.
    """
    _check_criterion(criterion)
    if mode not in ("pairwise", "full"):
        raise ValueError(f"mode must be 'pairwise' or 'full', got {mode!r}")
    guard = max_vertices_guard
    if guard is None:
        guard = PAIRWISE_GUARD if mode == "pairwise" else FULL_GUARD
    if len(graph.vertices) > guard:
        raise TooLargeError(len(graph.vertices), guard)

    test = separation_tester(graph, criterion)
    found: list[CIQuery] = []
    members = graph.vertices
    if mode == "pairwise":
        for v, w in combinations(members, 2):
            rest = [x for x in members if x != v and x != w]
            for r in range(len(rest) + 1):
                for s in combinations(rest, r):
                    if test(frozenset((v,)), frozenset((w,)), frozenset(s)):
                        found.append(CIQuery((v,), (w,), s))
    else:
        for assignment in product(range(4), repeat=len(members)):
            a = tuple(v for v, side in zip(members, assignment) if side == 1)
            b = tuple(v for v, side in zip(members, assignment) if side == 2)
            if not a or not b or a > b:
                continue
            s = tuple(v for v, side in zip(members, assignment) if side == 3)
            if test(frozenset(a), frozenset(b), frozenset(s)):
                found.append(CIQuery(a, b, s))
    found.sort(key=CIQuery.key)
    return found
