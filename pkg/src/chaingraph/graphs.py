"""Mixed-graph core: chain-graph validation, subgraphs, vertex-relative sets,
chain components, and the coherent/ancestral/anterior closures.

A mixed graph is stored as a single set of ordered vertex pairs.  A pair
(v, w) whose opposite (w, v) is also present encodes the line ``v -- w``; a
pair without its opposite encodes the arrow ``v -> w``.  A chain graph is a
mixed graph with no semi-directed cycle, i.e. no cycle that follows edges
forward and takes at least one arrow step.

All values are immutable after construction and safe to share between
threads.  Vertex identifiers are opaque strings ordered lexicographically;
every derived vertex collection is emitted in that order when serialized.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import SelfLoopError, SemiDirectedCycleError, UnknownVertexError

Edge = tuple[str, str]


@dataclass(frozen=True)
class ChainGraph:
    """Immutable mixed graph over string vertex identifiers.

    Construct through :func:`build_graph` (or any function in this package),
    which validate chain-graph structure.  The raw constructor performs no
    adicyclicity check and is intended for internal use on edge sets already
    known to be valid.
    """

    vertices: tuple[str, ...]
    edges: frozenset[Edge]

    def __repr__(self) -> str:  # deterministic, unlike frozenset repr
        return (
            f"ChainGraph({len(self.vertices)} vertices, "
            f"{len(self.lines)} lines, {len(self.arrows)} arrows)"
        )

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def lines(self) -> frozenset[Edge]:
        """One (u, w) pair per undirected edge, with u < w."""
        return frozenset(
            (v, w) for (v, w) in self.edges if v < w and (w, v) in self.edges
        )

    @cached_property
    def arrows(self) -> frozenset[Edge]:
        """(tail, head) pairs of the strictly directed edges."""
        return frozenset(
            (v, w) for (v, w) in self.edges if (w, v) not in self.edges
        )

    @cached_property
    def neighbor_map(self) -> Mapping[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, w in self.lines:
            out[u].add(w)
            out[w].add(u)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def parent_map(self) -> Mapping[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for tail, head in self.arrows:
            out[head].add(tail)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def child_map(self) -> Mapping[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for tail, head in self.arrows:
            out[tail].add(head)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def adjacency_map(self) -> Mapping[str, frozenset[str]]:
        """Skeleton adjacency: neighbors, parents, and children together."""
        return {
            v: self.neighbor_map[v] | self.parent_map[v] | self.child_map[v]
            for v in self.vertices
        }

    @cached_property
    def skeleton_pairs(self) -> frozenset[Edge]:
        """Unordered adjacency pairs, each stored as (u, w) with u < w."""
        return frozenset(
            (v, w) if v < w else (w, v) for (v, w) in self.edges
        )

    def has_edge(self, v: str, w: str) -> bool:
        return (v, w) in self.edges

    def is_line(self, v: str, w: str) -> bool:
        return (v, w) in self.edges and (w, v) in self.edges

    def is_arrow(self, v: str, w: str) -> bool:
        return (v, w) in self.edges and (w, v) not in self.edges

    def is_adjacent(self, v: str, w: str) -> bool:
        return (v, w) in self.edges or (w, v) in self.edges

    @property
    def is_undirected(self) -> bool:
        return not self.arrows

    @property
    def is_directed(self) -> bool:
        return not self.lines

    @cached_property
    def components(self) -> "ComponentStructure":
        return _component_structure(self)


@dataclass(frozen=True, eq=True)
class ComponentStructure:
    """Partition of the vertices into chain components plus the component ADG.

    Components are indexed in order of their smallest member; ``component_dag``
    holds (i, j) index pairs, one per pair of components joined by at least one
    arrow from component i into component j.
    """

    components: tuple[frozenset[str], ...]
    component_of: Mapping[str, int]
    component_dag: frozenset[tuple[int, int]]

    @cached_property
    def dag_children(self) -> Mapping[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.components))}
        for i, j in sorted(self.component_dag):
            out[i].append(j)
        return {i: tuple(js) for i, js in out.items()}

    @cached_property
    def dag_parents(self) -> Mapping[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.components))}
        for i, j in sorted(self.component_dag):
            out[j].append(i)
        return {j: tuple(ins) for j, ins in out.items()}

    def descendant_components(self, index: int) -> frozenset[int]:
        seen: set[int] = set()
        stack = [index]
        while stack:
            for child in self.dag_children[stack.pop()]:
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return frozenset(seen)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Deterministic topological order of the component ADG."""
        indeg = {i: len(self.dag_parents[i]) for i in range(len(self.components))}
        ready = sorted(i for i, d in indeg.items() if d == 0)
        order: list[int] = []
        while ready:
            node = ready.pop(0)
            order.append(node)
            for child in self.dag_children[node]:
                indeg[child] -= 1
                if indeg[child] == 0:
                    # insertion keeps `ready` sorted; component counts are small
                    lo = 0
                    while lo < len(ready) and ready[lo] < child:
                        lo += 1
                    ready.insert(lo, child)
        if len(order) != len(self.components):
            raise SemiDirectedCycleError((), "component digraph is cyclic")
        return tuple(order)


# ---------------------------------------------------------------------------
# validation


def _line_adjacency(vertices: Iterable[str], edges: frozenset[Edge]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for v, w in edges:
        if (w, v) in edges:
            adj[v].append(w)
    for v in adj:
        adj[v].sort()
    return adj


def _component_labels(vertices: Iterable[str], line_adj: dict[str, list[str]]) -> dict[str, str]:
    label: dict[str, str] = {}
    for root in vertices:
        if root in label:
            continue
        label[root] = root
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in line_adj[v]:
                if w not in label:
                    label[w] = root
                    queue.append(w)
    return label


def _line_path(line_adj: dict[str, list[str]], start: str, goal: str) -> list[str]:
    """Shortest undirected path from start to goal, endpoints included."""
    if start == goal:
        return [start]
    parent: dict[str, str | None] = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in line_adj[v]:
            if w in parent:
                continue
            parent[w] = v
            if w == goal:
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])  # type: ignore[arg-type]
                path.reverse()
                return path
            queue.append(w)
    raise AssertionError(f"{start!r} and {goal!r} are not line-connected")


def _digraph_cycle(nodes: list[str], children: dict[str, set[str]]) -> list[str] | None:
    """Return some cycle of the digraph as a node list, or None."""
    color = dict.fromkeys(nodes, 0)  # 0 unseen, 1 active, 2 done
    for root in nodes:
        if color[root]:
            continue
        color[root] = 1
        path = [root]
        stack = [iter(sorted(children.get(root, ())))]
        while stack:
            advanced = False
            for nxt in stack[-1]:
                if color[nxt] == 1:
                    return path[path.index(nxt):]
                if color[nxt] == 0:
                    color[nxt] = 1
                    path.append(nxt)
                    stack.append(iter(sorted(children.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                color[path.pop()] = 2
                stack.pop()
    return None


def find_semi_directed_cycle(
    vertices: Iterable[str], edges: frozenset[Edge]
) -> tuple[str, ...] | None:
    """Return a semi-directed cycle as a closed vertex walk, or None.

    Works by contracting the undirected components and looking for a directed
    cycle among them; any cycle found there is lifted back to a vertex walk by
    stitching the witnessing arrows together with undirected paths inside the
    components they enter.
    """
    vertices = list(vertices)
    line_adj = _line_adjacency(vertices, edges)
    label = _component_labels(vertices, line_adj)
    arrows = sorted((v, w) for (v, w) in edges if (w, v) not in edges)

    # An arrow within a single undirected component closes a cycle directly.
    for v, w in arrows:
        if label[v] == label[w]:
            back = _line_path(line_adj, w, v)
            return tuple([v] + back)

    comp_children: dict[str, set[str]] = {}
    rep_arrow: dict[tuple[str, str], Edge] = {}
    for v, w in arrows:
        cv, cw = label[v], label[w]
        comp_children.setdefault(cv, set()).add(cw)
        rep_arrow.setdefault((cv, cw), (v, w))

    cycle = _digraph_cycle(sorted(set(label.values())), comp_children)
    if cycle is None:
        return None

    k = len(cycle)
    tails = []
    heads = []
    for i in range(k):
        v, w = rep_arrow[(cycle[i], cycle[(i + 1) % k])]
        tails.append(v)
        heads.append(w)
    walk = [tails[0]]
    for i in range(k):
        walk.append(heads[i])
        seg = _line_path(line_adj, heads[i], tails[(i + 1) % k])
        walk.extend(seg[1:])
    return tuple(walk)


def render_walk(graph: ChainGraph, walk: tuple[str, ...]) -> str:
    """Format a vertex walk with the edge glyph between each step."""
    parts = [walk[0]]
    for v, w in zip(walk, walk[1:]):
        parts.append("--" if graph.is_line(v, w) else "->")
        parts.append(w)
    return " ".join(parts)


def _validated(vertices: tuple[str, ...], edges: frozenset[Edge]) -> ChainGraph:
    graph = ChainGraph(vertices, edges)
    cycle = find_semi_directed_cycle(vertices, edges)
    if cycle is not None:
        raise SemiDirectedCycleError(
            cycle, "semi-directed cycle: " + render_walk(graph, cycle)
        )
    return graph


# ---------------------------------------------------------------------------
# construction


def build_graph(
    vertices: Iterable[str],
    directed_edges: Iterable[tuple[str, str]] = (),
    undirected_edges: Iterable[tuple[str, str]] = (),
) -> ChainGraph:
    """Build and validate a chain graph.

    Undirected inputs become symmetric ordered pairs; duplicates merge
    idempotently.  Supplying both v -> w and w -> v yields the line v -- w,
    which is what the pair-set encoding makes of it.
    """
    names = sorted({str(v) for v in vertices})
    known = set(names)
    pairs: set[Edge] = set()

    def checked(v: str, w: str) -> Edge:
        if v == w:
            raise SelfLoopError(v)
        if v not in known:
            raise UnknownVertexError(v)
        if w not in known:
            raise UnknownVertexError(w)
        return (v, w)

    for v, w in directed_edges:
        pairs.add(checked(str(v), str(w)))
    for v, w in undirected_edges:
        edge = checked(str(v), str(w))
        pairs.add(edge)
        pairs.add((edge[1], edge[0]))
    return _validated(tuple(names), frozenset(pairs))


def graph_union(first: ChainGraph, second: ChainGraph) -> ChainGraph:
    """Union of vertex and edge sets, revalidated.

    Unions of chain graphs need not be chain graphs, so this may raise
    :class:`SemiDirectedCycleError`.
    """
    names = sorted(set(first.vertices) | set(second.vertices))
    return _validated(tuple(names), first.edges | second.edges)


def skeleton(graph: ChainGraph) -> ChainGraph:
    """Every adjacency becomes a line."""
    pairs: set[Edge] = set()
    for v, w in graph.edges:
        pairs.add((v, w))
        pairs.add((w, v))
    return ChainGraph(graph.vertices, frozenset(pairs))


def undirected_part(graph: ChainGraph) -> ChainGraph:
    """Arrows removed, lines kept."""
    pairs = frozenset(
        (v, w) for (v, w) in graph.edges if (w, v) in graph.edges
    )
    return ChainGraph(graph.vertices, pairs)


def induced_subgraph(graph: ChainGraph, subset: Iterable[str]) -> ChainGraph:
    keep = vertex_subset(graph, subset)
    edges = frozenset(
        (v, w) for (v, w) in graph.edges if v in keep and w in keep
    )
    return ChainGraph(tuple(sorted(keep)), edges)


def undirected_graph(vertices: Iterable[str], line_pairs: Iterable[Edge]) -> ChainGraph:
    """Assemble a UDG from unordered line pairs (no validation needed)."""
    pairs: set[Edge] = set()
    for v, w in line_pairs:
        pairs.add((v, w))
        pairs.add((w, v))
    return ChainGraph(tuple(sorted(set(vertices))), frozenset(pairs))


# ---------------------------------------------------------------------------
# vertex-relative sets


def vertex_subset(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    """Normalize an iterable of identifiers to a checked frozenset."""
    out = frozenset(str(v) for v in subset)
    unknown = out - graph.vertex_set
    if unknown:
        raise UnknownVertexError(min(unknown))
    return out


def parents(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    target = vertex_subset(graph, subset)
    out: set[str] = set()
    for v in target:
        out |= graph.parent_map[v]
    return frozenset(out - target)


def neighbors(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    target = vertex_subset(graph, subset)
    out: set[str] = set()
    for v in target:
        out |= graph.neighbor_map[v]
    return frozenset(out - target)


def children(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    target = vertex_subset(graph, subset)
    out: set[str] = set()
    for v in target:
        out |= graph.child_map[v]
    return frozenset(out - target)


def boundary(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    """Vertices outside the set with an edge pointing into it."""
    return parents(graph, subset) | neighbors(graph, subset)


def closure(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    return boundary(graph, subset) | vertex_subset(graph, subset)


# ---------------------------------------------------------------------------
# chain components


def _component_structure(graph: ChainGraph) -> ComponentStructure:
    component_of: dict[str, int] = {}
    comps: list[frozenset[str]] = []
    for root in graph.vertices:  # sorted, so components come in min-member order
        if root in component_of:
            continue
        members = {root}
        queue = deque([root])
        component_of[root] = len(comps)
        while queue:
            v = queue.popleft()
            for w in graph.neighbor_map[v]:
                if w not in members:
                    members.add(w)
                    component_of[w] = len(comps)
                    queue.append(w)
        comps.append(frozenset(members))
    dag = set()
    for tail, head in graph.arrows:
        ct, ch = component_of[tail], component_of[head]
        if ct != ch:
            dag.add((ct, ch))
    return ComponentStructure(tuple(comps), component_of, frozenset(dag))


def chain_components(graph: ChainGraph) -> ComponentStructure:
    """Connected components of the undirected part, plus the component ADG."""
    return graph.components


def terminal_components(graph: ChainGraph) -> tuple[frozenset[str], ...]:
    """Chain components with no children."""
    structure = graph.components
    return tuple(
        comp
        for i, comp in enumerate(structure.components)
        if not structure.dag_children[i]
    )


# ---------------------------------------------------------------------------
# closures


def co_closure(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    """Smallest coherent superset: union of the components the set meets."""
    target = vertex_subset(graph, subset)
    structure = graph.components
    hit = {structure.component_of[v] for v in target}
    out: set[str] = set()
    for i in hit:
        out |= structure.components[i]
    return frozenset(out)


def _reverse_reachable(
    graph: ChainGraph, target: frozenset[str], directed_only: bool
) -> frozenset[str]:
    seen = set(target)
    stack = list(target)
    while stack:
        v = stack.pop()
        pred = graph.parent_map[v]
        if not directed_only:
            pred = pred | graph.neighbor_map[v]
        for w in pred:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def an_closure(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    """Smallest ancestral superset: close under directed paths into the set."""
    return _reverse_reachable(graph, vertex_subset(graph, subset), directed_only=True)


def at_closure(graph: ChainGraph, subset: Iterable[str]) -> frozenset[str]:
    """Smallest anterior superset: close under arbitrary paths into the set."""
    return _reverse_reachable(graph, vertex_subset(graph, subset), directed_only=False)


def is_coherent(graph: ChainGraph, subset: Iterable[str]) -> bool:
    return not neighbors(graph, subset)


def is_ancestral(graph: ChainGraph, subset: Iterable[str]) -> bool:
    return not parents(graph, subset)


def is_anterior(graph: ChainGraph, subset: Iterable[str]) -> bool:
    return not boundary(graph, subset)
