"""Plain undirected graphs plus the component/degree primitives everything else uses.

Vertex ids are dense integers 0..n-1.  Graphs are immutable after
construction; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadVertex, DuplicateEdge, EmptyGraph, InvalidEdge, ParseError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]  # sorted pairs (u < v); may repeat in multi mode
    simple: bool = True
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    @property
    def _edge_set(self) -> frozenset[Edge]:
        cached = self.__dict__.get("_edge_set_cache")
        if cached is None:
            cached = frozenset(self.edges)
            self.__dict__["_edge_set_cache"] = cached
        return cached


def build_graph(n: int, edge_list: Iterable[Sequence[int]], simple: bool = True) -> Graph:
    """Build a graph on vertices 0..n-1, rejecting loops and (in simple mode) duplicates."""
    if n < 0:
        raise BadVertex(f"negative vertex count {n}")
    seen: set[Edge] = set()
    edges: list[Edge] = []
    for pair in edge_list:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise BadVertex(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise InvalidEdge(f"loop at vertex {u}")
        if u > v:
            u, v = v, u
        if simple:
            if (u, v) in seen:
                raise DuplicateEdge(f"repeated edge ({u},{v})")
            seen.add((u, v))
        edges.append((u, v))
    return Graph(n, tuple(sorted(edges)), simple=simple)


def _check_subset(g: Graph, s: Iterable[int]) -> frozenset[int]:
    members = frozenset(s)
    for v in members:
        if not (0 <= v < g.n):
            raise BadVertex(f"vertex {v} out of range for n={g.n}")
    return members


def components(g: Graph, removed: frozenset[int] = frozenset()) -> list[tuple[int, ...]]:
    """Connected components of g minus `removed`, each sorted, ordered by smallest member."""
    seen: set[int] = set(removed)
    out: list[tuple[int, ...]] = []
    for start in range(g.n):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = [start]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def odd_components(g: Graph, s: Iterable[int]) -> tuple[int, list[tuple[int, ...]]]:
    """Components of g \\ s; returns (number of odd-size components, all components)."""
    members = _check_subset(g, s)
    comps = components(g, members)
    count = sum(1 for c in comps if len(c) % 2 == 1)
    return count, comps


def is_independent(g: Graph, t: Iterable[int]) -> bool:
    members = _check_subset(g, t)
    return not any(u in members and v in members for u, v in g.edges)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise EmptyGraph("min_degree of an empty graph")
    return min(len(a) for a in g.adj)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on `keep`; returns it plus the old-id -> new-id map."""
    kept = sorted(_check_subset(g, keep))
    remap = {old: new for new, old in enumerate(kept)}
    edges = [
        (remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap
    ]
    return build_graph(len(kept), edges, simple=g.simple), remap


# --- edge-list text format ------------------------------------------------
#
# First line `graph <n> <m>`, then m lines `e <u> <v>` with u < v,
# ordered by (u, v); ASCII, LF line endings.


def write_graph(g: Graph) -> str:
    lines = [f"graph {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_graph(text: str, simple: bool = True) -> Graph:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "graph":
        raise ParseError(f"bad header: {lines[0]!r}")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ParseError(f"bad header: {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges: list[Edge] = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "e":
            raise ParseError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ParseError(f"bad edge line: {ln!r}") from exc
        if u >= v:
            raise ParseError(f"edge line not ascending: {ln!r}")
        edges.append((u, v))
    try:
        return build_graph(n, edges, simple=simple)
    except (BadVertex, InvalidEdge, DuplicateEdge) as exc:
        raise ParseError(str(exc)) from exc
