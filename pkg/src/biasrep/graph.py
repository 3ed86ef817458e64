"""Finite multigraphs with links and half edges.

Loops and loose edges are not supported. Node and edge ids are strings and
are kept in lexicographic order so that every enumeration is deterministic.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .errors import CapExceeded, DomainError, InputError

DEFAULT_CIRCLE_CAP = 10**6
RESERVED_LABEL = "e0"


@dataclass(frozen=True)
class Link:
    id: str
    u: str
    v: str

    @property
    def ends(self) -> tuple:
        return (self.u, self.v)

    def other(self, x: str) -> str:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class HalfEdge:
    id: str
    v: str

    @property
    def ends(self) -> tuple:
        return (self.v,)


@dataclass(frozen=True)
class Circle:
    """Edge set of a simple closed path, stored as a cyclic sequence.

    ``nodes[i]`` is the node at which ``edges[i]`` is entered, so edge i runs
    from ``nodes[i]`` to ``nodes[i + 1]`` (cyclically).
    """

    edges: tuple
    nodes: tuple

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, eid) -> bool:
        return eid in self.edge_set

    def steps(self) -> Iterator[tuple]:
        """(edge id, tail, head) in traversal order."""
        k = len(self.edges)
        for i in range(k):
            yield self.edges[i], self.nodes[i], self.nodes[(i + 1) % k]

    def rotated(self, start: int, reverse: bool = False) -> "Circle":
        k = len(self.edges)
        if not reverse:
            edges = self.edges[start:] + self.edges[:start]
            nodes = self.nodes[start:] + self.nodes[:start]
            return Circle(edges, nodes)
        # Reversed traversal beginning with edge `start`, entered at its head.
        edges = tuple(self.edges[(start - i) % k] for i in range(k))
        nodes = tuple(self.nodes[(start + 1 - i) % k] for i in range(k))
        return Circle(edges, nodes)


def _canonical_circle(edges: list, nodes: list) -> Circle:
    k = len(edges)
    i = min(range(k), key=lambda j: edges[j])
    fwd = Circle(tuple(edges), tuple(nodes)).rotated(i)
    rev = Circle(tuple(edges), tuple(nodes)).rotated(i, reverse=True)
    return min(fwd, rev, key=lambda c: c.edges)


class Graph:
    def __init__(self, nodes: Iterable[str], edges: Iterable[Link | HalfEdge]):
        nodes = [str(n) for n in nodes]
        if len(set(nodes)) != len(nodes):
            raise InputError("duplicate node ids")
        self.nodes = tuple(sorted(nodes))
        node_set = set(self.nodes)
        norm = []
        seen = set()
        for e in edges:
            if e.id in seen:
                raise InputError(f"duplicate edge id {e.id!r}")
            if e.id == RESERVED_LABEL:
                raise InputError(f"edge id {RESERVED_LABEL!r} is reserved")
            seen.add(e.id)
            for x in e.ends:
                if x not in node_set:
                    raise InputError(f"edge {e.id!r} has unknown endpoint {x!r}")
            if isinstance(e, Link):
                if e.u == e.v:
                    raise InputError(f"edge {e.id!r} is a loop; loops are not supported")
                if e.v < e.u:
                    e = Link(e.id, e.v, e.u)
            elif not isinstance(e, HalfEdge):
                raise InputError(f"unsupported edge record {e!r}")
            norm.append(e)
        self.edges = tuple(sorted(norm, key=lambda e: e.id))
        self._by_id = {e.id: e for e in self.edges}
        self.bit = {e.id: 1 << i for i, e in enumerate(self.edges)}

    @classmethod
    def build(cls, nodes, links=(), half_edges=()) -> "Graph":
        """Shorthand: ``links`` as (id, u, v), ``half_edges`` as (id, v)."""
        edges = [Link(i, str(u), str(v)) for i, u, v in links]
        edges += [HalfEdge(i, str(v)) for i, v in half_edges]
        return cls(nodes, edges)

    def __repr__(self) -> str:
        return f"Graph(nodes={len(self.nodes)}, edges={len(self.edges)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.nodes, self.edges))

    @property
    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: str) -> Link | HalfEdge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid!r}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    @cached_property
    def links(self) -> tuple:
        return tuple(e for e in self.edges if isinstance(e, Link))

    @cached_property
    def half_edges(self) -> tuple:
        return tuple(e for e in self.edges if isinstance(e, HalfEdge))

    def is_link(self, eid: str) -> bool:
        return isinstance(self.edge(eid), Link)

    def edge_set(self, s: Iterable[str] | None) -> frozenset:
        """Validate an edge subset; ``None`` means all edges."""
        if s is None:
            return frozenset(self._by_id)
        s = frozenset(s)
        for eid in s:
            if eid not in self._by_id:
                raise InputError(f"unknown edge id {eid!r}")
        return s

    def mask(self, s: Iterable[str]) -> int:
        m = 0
        for eid in s:
            m |= self.bit[eid]
        return m

    def nodes_of(self, s: Iterable[str]) -> frozenset:
        out = set()
        for eid in s:
            out.update(self.edge(eid).ends)
        return frozenset(out)

    def is_ordinary(self) -> bool:
        return not self.half_edges

    def is_simple(self) -> bool:
        if self.half_edges:
            return False
        pairs = [e.ends for e in self.links]
        return len(pairs) == len(set(pairs))

    def parallel_classes(self) -> dict:
        out = defaultdict(list)
        for e in self.links:
            out[e.ends].append(e.id)
        return dict(out)

    def incidence(self) -> dict:
        inc = {v: [] for v in self.nodes}
        for e in self.edges:
            for x in e.ends:
                inc[x].append(e.id)
        return inc

    def with_edges(self, extra: Iterable[Link | HalfEdge]) -> "Graph":
        return Graph(self.nodes, list(self.edges) + list(extra))

    def restrict(self, s: Iterable[str]) -> "Graph":
        s = self.edge_set(s)
        return Graph(self.nodes, [e for e in self.edges if e.id in s])

    @cached_property
    def _circles(self) -> tuple:
        return tuple(_enumerate_circles(self, DEFAULT_CIRCLE_CAP))

    @cached_property
    def _thetas(self) -> tuple:
        return tuple(_enumerate_thetas(self, self._circles))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(g: Graph, s: Iterable[str] | None = None) -> tuple[int, list[frozenset]]:
    """c(S) and the node partition of the spanning subgraph (N, S)."""
    s = g.edge_set(s)
    uf = _UnionFind(g.nodes)
    for eid in s:
        e = g.edge(eid)
        if isinstance(e, Link):
            uf.union(e.u, e.v)
    groups = defaultdict(list)
    for v in g.nodes:
        groups[uf.find(v)].append(v)
    parts = sorted((frozenset(vs) for vs in groups.values()), key=lambda p: min(p))
    return len(parts), parts


def _enumerate_circles(g: Graph, cap: int) -> list[Circle]:
    links = g.links
    adj = defaultdict(list)
    for idx, e in enumerate(links):
        adj[e.u].append((idx, e))
        adj[e.v].append((idx, e))
    out = []

    for idx0, e0 in enumerate(links):
        # circles whose least edge is e0, traversed e0.u -> e0.v -> ... -> e0.u
        start, target = e0.u, e0.v
        path_edges = [e0.id]
        path_nodes = [start]
        on_path = {start}

        def dfs(x):
            for idx, e in adj[x]:
                if idx <= idx0:
                    continue
                y = e.other(x)
                if y == start:
                    out.append(_canonical_circle(path_edges + [e.id], path_nodes + [x]))
                    if len(out) > cap:
                        raise CapExceeded("circle enumeration", cap)
                    continue
                if y in on_path:
                    continue
                on_path.add(y)
                path_edges.append(e.id)
                path_nodes.append(x)
                dfs(y)
                path_edges.pop()
                path_nodes.pop()
                on_path.discard(y)

        on_path.add(target)
        dfs(target)
    out.sort(key=lambda c: (len(c), c.edges))
    return out


def circles(g: Graph, cap: int = DEFAULT_CIRCLE_CAP) -> list[Circle]:
    """Every circle of ``g``; half edges never occur in circles."""
    if cap != DEFAULT_CIRCLE_CAP:
        return _enumerate_circles(g, cap)
    return list(g._circles)


def _is_theta_union(g: Graph, edge_ids: frozenset) -> bool:
    deg = defaultdict(int)
    for eid in edge_ids:
        for x in g.edge(eid).ends:
            deg[x] += 1
    threes = [v for v, d in deg.items() if d == 3]
    return len(threes) == 2 and all(d in (2, 3) for d in deg.values())


def _enumerate_thetas(g: Graph, circs) -> list[tuple]:
    by_set = {c.edge_set: c for c in circs}
    out = []
    seen = set()
    for c1, c2 in combinations(circs, 2):
        common = c1.edge_set & c2.edge_set
        if not common:
            continue
        c3 = by_set.get(c1.edge_set ^ c2.edge_set)
        if c3 is None:
            continue
        key = frozenset((c1.edge_set, c2.edge_set, c3.edge_set))
        if key in seen:
            continue
        if not _is_theta_union(g, c1.edge_set | c2.edge_set):
            continue
        seen.add(key)
        out.append(tuple(sorted((c1, c2, c3), key=lambda c: (len(c), c.edges))))
    return out


def theta_subgraphs(g: Graph) -> list[tuple]:
    """Every theta subgraph, each as its triple of circles."""
    return list(g._thetas)


def graphic_rank(g: Graph, s: Iterable[str] | None = None) -> int:
    s = g.edge_set(s)
    for eid in s:
        if not g.is_link(eid):
            raise DomainError(f"half edge {eid!r} is not an element of the graphic matroid")
    c, _ = components(g, s)
    return len(g.nodes) - c


def graphic_closure(g: Graph, s: Iterable[str]) -> frozenset:
    """Closure in the graphic matroid of the whole graph.

    Half edges never change c(S), so they behave as matroid loops and lie
    in every closure.
    """
    s = g.edge_set(s)
    uf = _UnionFind(g.nodes)
    for eid in s:
        e = g.edge(eid)
        if isinstance(e, Link):
            uf.union(e.u, e.v)
    out = set(s)
    for e in g.edges:
        if isinstance(e, HalfEdge) or uf.find(e.u) == uf.find(e.v):
            out.add(e.id)
    return frozenset(out)


def is_connected(g: Graph) -> bool:
    c, _ = components(g)
    return c <= 1


def is_inseparable(g: Graph) -> bool:
    """Connected with no separating node.

    Node v separates when the edges fall into two or more classes once edges
    meeting only at v are no longer considered adjacent.
    """
    if not is_connected(g):
        return False
    for v in g.nodes:
        uf = _UnionFind([e.id for e in g.edges])
        by_node = defaultdict(list)
        for e in g.edges:
            for x in e.ends:
                if x != v:
                    by_node[x].append(e.id)
        for ids in by_node.values():
            for other in ids[1:]:
                uf.union(ids[0], other)
        if len({uf.find(e.id) for e in g.edges}) > 1:
            return False
    return True


def simple_paths(g: Graph, a: str, b: str, avoid_nodes: frozenset = frozenset(), cap: int = DEFAULT_CIRCLE_CAP):
    """Edge sets of simple a-b paths (a != b) whose interior avoids ``avoid_nodes``."""
    adj = defaultdict(list)
    for e in g.links:
        adj[e.u].append(e)
        adj[e.v].append(e)
    out = []
    on_path = {a}
    path = []

    def dfs(x):
        for e in adj[x]:
            y = e.other(x)
            if y == b:
                out.append(frozenset(path + [e.id]))
                if len(out) > cap:
                    raise CapExceeded("path enumeration", cap)
                continue
            if y in on_path or y in avoid_nodes:
                continue
            on_path.add(y)
            path.append(e.id)
            dfs(y)
            path.pop()
            on_path.discard(y)

    dfs(a)
    return out


def complete_graph(nodes: Iterable[str]) -> Graph:
    nodes = sorted(str(n) for n in nodes)
    links = [(f"{u}{v}" if len(u) == len(v) == 1 else f"{u}-{v}", u, v) for u, v in combinations(nodes, 2)]
    return Graph.build(nodes, links)


def cycle_graph(n: int) -> Graph:
    nodes = [str(i) for i in range(1, n + 1)]
    links = []
    for i in range(n):
        u, v = nodes[i], nodes[(i + 1) % n]
        links.append((f"e{u}{v}", u, v))
    return Graph.build(nodes, links)
