"""Biased graphs: a graph together with a linear class of balanced circles."""

from __future__ import annotations

from collections import defaultdict
from functools import cached_property
from typing import Iterable

from .errors import InputError, LinearClassError
from .graph import Circle, Graph, HalfEdge, Link, _UnionFind, circles, theta_subgraphs


def _as_edge_set(c) -> frozenset:
    if isinstance(c, Circle):
        return c.edge_set
    if isinstance(c, str):
        raise InputError(f"circle given as a bare string {c!r}; use a list of edge ids")
    return frozenset(c)


def linear_class_violation(g: Graph, balanced: Iterable) -> tuple | None:
    """First theta (in enumeration order) with exactly two balanced circles."""
    bal = {_as_edge_set(c) for c in balanced}
    for theta in theta_subgraphs(g):
        if sum(c.edge_set in bal for c in theta) == 2:
            return theta
    return None


class BiasedGraph:
    def __init__(self, graph: Graph, balanced: Iterable = (), validate: bool = True):
        self.graph = graph
        bal = frozenset(_as_edge_set(c) for c in balanced)
        by_set = {c.edge_set: c for c in circles(graph)}
        for s in bal:
            if s not in by_set:
                raise InputError(f"{sorted(s)} is not a circle of the graph")
        self.balanced = bal
        if validate:
            theta = linear_class_violation(graph, bal)
            if theta is not None:
                raise LinearClassError(theta)

    def __repr__(self) -> str:
        return f"BiasedGraph({self.graph!r}, balanced={len(self.balanced)})"

    @property
    def nodes(self) -> tuple:
        return self.graph.nodes

    @property
    def edge_ids(self) -> tuple:
        return self.graph.edge_ids

    def is_balanced_circle(self, c) -> bool:
        return _as_edge_set(c) in self.balanced

    def balanced_circles(self) -> list[Circle]:
        return [c for c in circles(self.graph) if c.edge_set in self.balanced]

    @cached_property
    def _circle_masks(self) -> tuple:
        g = self.graph
        return tuple((g.mask(c.edges), c.edge_set in self.balanced, c.nodes[0]) for c in circles(g))

    @cached_property
    def _unbalanced_masks(self) -> tuple:
        return tuple((m, v) for m, b, v in self._circle_masks if not b)

    @cached_property
    def _half_mask(self) -> int:
        return self.graph.mask(e.id for e in self.graph.half_edges)

    def components_info(self, mask: int) -> tuple[_UnionFind, set]:
        """Union-find over nodes for the edges in ``mask`` and the roots of
        unbalanced components."""
        g = self.graph
        uf = _UnionFind(g.nodes)
        for e in g.links:
            if mask & g.bit[e.id]:
                uf.union(e.u, e.v)
        bad = set()
        for e in g.half_edges:
            if mask & g.bit[e.id]:
                bad.add(uf.find(e.v))
        for m, v in self._unbalanced_masks:
            if m & mask == m:
                bad.add(uf.find(v))
        return uf, bad

    def is_balanced_mask(self, mask: int) -> bool:
        if mask & self._half_mask:
            return False
        return not any(m & mask == m for m, _ in self._unbalanced_masks)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiasedGraph) and self.graph == other.graph and self.balanced == other.balanced

    def __hash__(self) -> int:
        return hash((self.graph, self.balanced))


def validate_linear_class(g: Graph, balanced: Iterable) -> BiasedGraph:
    """Build the biased graph or raise LinearClassError with the offending theta."""
    return BiasedGraph(g, balanced, validate=True)


def is_balanced_set(omega: BiasedGraph, s: Iterable[str]) -> bool:
    s = omega.graph.edge_set(s)
    return omega.is_balanced_mask(omega.graph.mask(s))


def balanced_components(omega: BiasedGraph, s: Iterable[str] | None = None) -> tuple[int, frozenset]:
    """(b(S), N0(S)): the number of balanced components of (N, S) and the
    nodes of its unbalanced components."""
    g = omega.graph
    s = g.edge_set(s)
    uf, bad = omega.components_info(g.mask(s))
    roots = {uf.find(v) for v in g.nodes}
    n0 = frozenset(v for v in g.nodes if uf.find(v) in bad)
    return len(roots) - len(bad), n0


def balance_closure(omega: BiasedGraph, s: Iterable[str]) -> frozenset:
    """One application of bcl: add e when some balanced circle C has e in C ⊆ S+e."""
    g = omega.graph
    s = g.edge_set(s)
    out = set(s)
    for c in omega.balanced:
        missing = c - s
        if len(missing) == 1:
            out |= missing
    return frozenset(out)


def structural_predicates(omega: BiasedGraph) -> dict:
    g = omega.graph
    simply = not any(len(c) == 2 for c in omega.balanced)
    counts = defaultdict(int)
    for e in g.links:
        counts[e.ends] += 1
    thick = simply and all(k >= 2 for k in counts.values())
    has_half = {e.v for e in g.half_edges}
    full = all(v in has_half for v in g.nodes)
    return {"is_simply_biased": simply, "is_thick": thick, "is_full": full}


def fullify_graph(g: Graph) -> Graph:
    has_half = {e.v for e in g.half_edges}
    extra = []
    taken = set(g.edge_ids)
    for v in g.nodes:
        if v in has_half:
            continue
        eid = f"h{v}"
        while eid in taken or eid == "e0":
            eid += "'"
        taken.add(eid)
        extra.append(HalfEdge(eid, v))
    return g.with_edges(extra) if extra else g


def fullify(omega: BiasedGraph) -> BiasedGraph:
    """Adjoin a half edge (id ``h<node>``) at every node lacking one."""
    g2 = fullify_graph(omega.graph)
    if g2 is omega.graph:
        return omega
    return BiasedGraph(g2, omega.balanced, validate=False)


def subgraph(omega: BiasedGraph, s: Iterable[str]) -> BiasedGraph:
    """Edge-induced subgraph on all nodes with the restricted bias."""
    s = omega.graph.edge_set(s)
    return BiasedGraph(omega.graph.restrict(s), [c for c in omega.balanced if c <= s], validate=False)


def is_isomorphic_identity(a: BiasedGraph, b: BiasedGraph, edge_map: dict | None = None) -> bool:
    """Check that ``edge_map`` (identity by default) with identity on nodes is
    a biased-graph isomorphism from ``a`` to ``b``."""
    if edge_map is None:
        edge_map = {e: e for e in a.edge_ids}
    if a.nodes != b.nodes or set(edge_map) != set(a.edge_ids) or set(edge_map.values()) != set(b.edge_ids):
        return False
    for eid, fid in edge_map.items():
        ea, eb = a.graph.edge(eid), b.graph.edge(fid)
        if type(ea) is not type(eb) or set(ea.ends) != set(eb.ends):
            return False
    mapped = {frozenset(edge_map[e] for e in c) for c in a.balanced}
    return mapped == set(b.balanced)


__all__ = [
    "BiasedGraph",
    "Link",
    "HalfEdge",
    "validate_linear_class",
    "linear_class_violation",
    "is_balanced_set",
    "balanced_components",
    "balance_closure",
    "structural_predicates",
    "fullify",
    "subgraph",
]
