"""Gain graphs, switching, group and biased expansions, and gain searches."""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Mapping

from .biased import BiasedGraph
from .errors import CapExceeded, DomainError, InputError
from .graph import Circle, Graph, HalfEdge, Link, _UnionFind, circles, is_inseparable
from .groups import Group

DEFAULT_SEARCH_CAP = 10**6


class GainGraph:
    """A graph with gains on its links.

    ``gains[e]`` is the gain of link e read from ``e.u`` to ``e.v`` (the
    lexicographically smaller endpoint first); the reverse reading is the
    inverse. Half edges carry no gain.
    """

    def __init__(self, graph: Graph, group: Group, gains: Mapping[str, object]):
        self.graph = graph
        self.group = group
        out = {}
        for e in graph.links:
            if e.id not in gains:
                raise InputError(f"link {e.id!r} has no gain")
            x = gains[e.id]
            if not group.contains(x):
                raise InputError(f"gain {x!r} of {e.id!r} is not in {group.name}")
            out[e.id] = x
        for eid in gains:
            if not graph.has_edge(eid):
                raise InputError(f"gain given for unknown edge {eid!r}")
            if not graph.is_link(eid):
                raise InputError(f"half edge {eid!r} cannot carry a gain")
        self.gains = out

    @classmethod
    def from_directed(cls, graph: Graph, group: Group, directed: Mapping[str, tuple]) -> "GainGraph":
        """Gains given as ``{edge: (tail, value)}`` read from ``tail``."""
        gains = {}
        for eid, (tail, value) in directed.items():
            e = graph.edge(eid)
            if not isinstance(e, Link):
                raise InputError(f"half edge {eid!r} cannot carry a gain")
            if tail not in e.ends:
                raise InputError(f"{tail!r} is not an endpoint of {eid!r}")
            value = group.parse(value) if isinstance(value, str) else value
            gains[eid] = value if tail == e.u else group.inv(value)
        return cls(graph, group, gains)

    def __repr__(self) -> str:
        return f"GainGraph({self.graph!r}, group={self.group.name})"

    def gain(self, eid: str, tail: str | None = None):
        e = self.graph.edge(eid)
        if not isinstance(e, Link):
            raise DomainError(f"half edge {eid!r} has no gain")
        g = self.gains[eid]
        if tail is None or tail == e.u:
            return g
        if tail != e.v:
            raise InputError(f"{tail!r} is not an endpoint of {eid!r}")
        return self.group.inv(g)


def circle_gain(phi: GainGraph, c: Circle, start: str | None = None, reverse: bool = False):
    """Gain product of ``c`` traversed from edge ``start`` in the stored or reversed direction."""
    for eid in c.edges:
        if not phi.graph.is_link(eid):
            raise DomainError(f"half edge {eid!r} in a circle")
    i = c.edges.index(start) if start is not None else 0
    walk = c.rotated(i, reverse=reverse)
    grp = phi.group
    acc = grp.identity
    for eid, tail, _ in walk.steps():
        acc = grp.mul(acc, phi.gain(eid, tail))
    return acc


def balanced_circle_sets(phi: GainGraph) -> list[frozenset]:
    one = phi.group.identity
    return [c.edge_set for c in circles(phi.graph) if circle_gain(phi, c) == one]


def to_biased(phi: GainGraph, validate: bool = True) -> BiasedGraph:
    """The biased graph whose balanced circles have identity gain."""
    return BiasedGraph(phi.graph, balanced_circle_sets(phi), validate=validate)


def switch(phi: GainGraph, zeta: Mapping[str, object]) -> GainGraph:
    """phi^zeta(e_uv) = zeta(u)^-1 phi(e_uv) zeta(v)."""
    grp = phi.group
    missing = [v for v in phi.graph.nodes if v not in zeta]
    if missing:
        raise InputError(f"switching function undefined at {missing}")
    new = {}
    for e in phi.graph.links:
        new[e.id] = grp.mul(grp.mul(grp.inv(zeta[e.u]), phi.gains[e.id]), zeta[e.v])
    return GainGraph(phi.graph, grp, new)


def spanning_forest(g: Graph, preferred: Iterable[str] = ()) -> list[str]:
    """Link ids of a spanning forest, trying ``preferred`` links first, then id order."""
    uf = _UnionFind(g.nodes)
    tree = []
    seen = set()
    order = [g.edge(e) for e in preferred] + list(g.links)
    for e in order:
        if e.id in seen or not isinstance(e, Link):
            continue
        seen.add(e.id)
        if uf.union(e.u, e.v):
            tree.append(e.id)
    return tree


def normalizing_switch(phi: GainGraph, tree: Iterable[str] | None = None) -> dict:
    """A switching function that makes every gain on ``tree`` the identity."""
    g = phi.graph
    grp = phi.group
    tree = spanning_forest(g) if tree is None else list(tree)
    adj = defaultdict(list)
    for eid in tree:
        e = g.edge(eid)
        adj[e.u].append(e)
        adj[e.v].append(e)
    zeta = {}
    for root in g.nodes:
        if root in zeta:
            continue
        zeta[root] = grp.identity
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in adj[x]:
                y = e.other(x)
                if y in zeta:
                    continue
                # zeta(x)^-1 phi(x->y) zeta(y) = 1
                zeta[y] = grp.mul(grp.inv(phi.gain(e.id, x)), zeta[x])
                queue.append(y)
    return zeta


def expansion_edge_id(base_id: str, group: Group, g) -> str:
    return f"{base_id}:{group.format(g)}"


def group_expansion(group: Group, delta: Graph, full: bool = False) -> GainGraph:
    """One link per (element, base edge) carrying that gain in the base edge's
    direction; with ``full`` a half edge ``h<node>`` at every node."""
    if delta.half_edges:
        raise DomainError("the base graph must have links only")
    if not delta.is_simple():
        raise DomainError("the base graph must be simple")
    edges = []
    gains = {}
    for e in delta.links:
        for x in group.elements():
            eid = expansion_edge_id(e.id, group, x)
            edges.append(Link(eid, e.u, e.v))
            gains[eid] = x
    if full:
        edges += [HalfEdge(f"h{v}", v) for v in delta.nodes]
    return GainGraph(Graph(delta.nodes, edges), group, gains)


@dataclass
class ExpansionProjection:
    omega: BiasedGraph
    base: Graph
    edge_map: dict = dc_field(default_factory=dict)


def natural_projection(omega: BiasedGraph, base: Graph) -> ExpansionProjection:
    """Map every link to the base edge with the same endpoints (base must be simple)."""
    if not base.is_simple():
        raise DomainError("the base graph must be simple")
    by_ends = {e.ends: e.id for e in base.links}
    emap = {}
    for e in omega.graph.links:
        if e.ends not in by_ends:
            raise InputError(f"link {e.id!r} has no base edge between {e.ends}")
        emap[e.id] = by_ends[e.ends]
    return ExpansionProjection(omega, base, emap)


@dataclass
class ExpansionCheck:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_biased_expansion(omega: BiasedGraph, proj: ExpansionProjection) -> ExpansionCheck:
    """Check unique balanced completion over every circle of the base graph.

    Half edges of ``omega`` are ignored; they lie over no base edge.
    """
    base = proj.base
    if base.half_edges or not base.is_simple():
        raise DomainError("the base graph must be simple")
    if set(base.nodes) != set(omega.nodes):
        raise InputError("projection must be the identity on nodes")
    fibers = defaultdict(list)
    for e in omega.graph.links:
        if e.id not in proj.edge_map:
            raise InputError(f"link {e.id!r} is not mapped")
        b = base.edge(proj.edge_map[e.id])
        if set(b.ends) != set(e.ends):
            raise InputError(f"projection moves the endpoints of {e.id!r}")
        fibers[b.id].append(e.id)
    for b in base.links:
        if not fibers[b.id]:
            return ExpansionCheck(False, {"reason": "not surjective", "edge": b.id})
    for c in circles(base):
        fib = [sorted(fibers[eid]) for eid in c.edges]
        k = len(fib)
        counts = [defaultdict(int) for _ in range(k)]
        for lift in itertools.product(*fib):
            if frozenset(lift) in omega.balanced:
                for i in range(k):
                    counts[i][lift[:i] + lift[i + 1:]] += 1
        for i in range(k):
            others = fib[:i] + fib[i + 1:]
            for partial in itertools.product(*others):
                n = counts[i].get(partial, 0)
                if n != 1:
                    return ExpansionCheck(
                        False,
                        {"circle": list(c.edges), "position": i, "partial": list(partial), "completions": n},
                    )
    return ExpansionCheck(True)


def _circle_walks(g: Graph):
    """Each circle with its (link, forward?) steps, forward meaning tail == link.u."""
    out = []
    for c in circles(g):
        steps = tuple((eid, g.edge(eid).u == tail) for eid, tail, _ in c.steps())
        out.append((c, steps))
    return out


def iter_gain_candidates(omega: BiasedGraph, group: Group, cap: int = DEFAULT_SEARCH_CAP) -> Iterator[GainGraph]:
    """Tree-normalized gain assignments on the links of ``omega``, in
    lexicographic order of (non-tree link, element) choices."""
    g = omega.graph.restrict(e.id for e in omega.graph.links)
    tree = set(spanning_forest(g))
    free = [e.id for e in g.links if e.id not in tree]
    els = group.elements()
    total = len(els) ** len(free)
    if total > cap:
        raise CapExceeded(f"{total} gain candidates", cap)
    for choice in itertools.product(els, repeat=len(free)):
        gains = {eid: group.identity for eid in tree}
        gains.update(zip(free, choice))
        yield GainGraph(g, group, gains)


def gain_realizability_search(omega: BiasedGraph, group: Group, cap: int = DEFAULT_SEARCH_CAP) -> GainGraph | None:
    """First tree-normalized gain assignment whose balanced circles are
    exactly those of ``omega``, or None.

    Every gain graph switches to one with identity gains on a fixed spanning
    forest, and switching preserves balance, so this search is complete.
    Half edges are ignored; the returned gain graph lives on the links.
    """
    g = omega.graph.restrict(e.id for e in omega.graph.links)
    tree = set(spanning_forest(g))
    free = [e.id for e in g.links if e.id not in tree]
    els = group.elements()
    total = len(els) ** len(free)
    if total > cap:
        raise CapExceeded(f"{total} gain candidates", cap)
    walks = [(steps, c.edge_set in omega.balanced) for c, steps in _circle_walks(g)]
    # circles come shortest first, and short ones reject candidates fastest
    one = group.identity
    for choice in itertools.product(els, repeat=len(free)):
        gains = {eid: one for eid in tree}
        gains.update(zip(free, choice))
        for steps, want in walks:
            acc = one
            for eid, fwd in steps:
                x = gains[eid]
                acc = group.mul(acc, x if fwd else group.inv(x))
            if (acc == one) != want:
                break
        else:
            return GainGraph(g, group, gains)
    return None


def example_I_5_8() -> BiasedGraph:
    """The doubled quadrilateral 2C4 with three balanced circles; it admits no gains."""
    nodes = ["1", "2", "3", "4"]
    links = []
    for i in range(1, 5):
        a, b = str(i), str(i % 4 + 1)
        links.append((f"e{a}{b}", a, b))
        links.append((f"f{a}{b}", a, b))
    g = Graph.build(nodes, links)
    balanced = [
        ["e12", "e23", "e34", "e41"],
        ["f12", "f23", "f34", "f41"],
        ["f12", "f23", "e34", "e41"],
    ]
    return BiasedGraph(g, balanced)


def is_subgroup_expansion(phi: GainGraph, delta: Graph):
    """The subgroup H with phi a switching of H·delta, or None.

    Requires delta simple, inseparable, of order at least 3, and
    to_biased(phi) a biased expansion of delta under the natural projection.
    """
    if delta.half_edges or not delta.is_simple():
        raise DomainError("hypothesis failed: base graph must be simple")
    if len(delta.nodes) < 3:
        raise DomainError("hypothesis failed: base graph must have order at least 3")
    if not is_inseparable(delta):
        raise DomainError("hypothesis failed: base graph must be inseparable")
    links_only = GainGraph(phi.graph.restrict(e.id for e in phi.graph.links), phi.group, phi.gains)
    omega = to_biased(links_only, validate=False)
    proj = natural_projection(omega, delta)
    check = is_biased_expansion(omega, proj)
    if not check:
        raise DomainError(f"hypothesis failed: not a biased expansion of the base graph ({check.witness})")
    fibers = defaultdict(list)
    for eid, b in sorted(proj.edge_map.items()):
        fibers[b].append(eid)
    tree_base = spanning_forest(delta)
    tree = [fibers[b][0] for b in tree_base]
    normal = switch(links_only, normalizing_switch(links_only, tree))
    sets = {b: frozenset(normal.gains[e] for e in fibers[b]) for b in fibers}
    values = set(sets.values())
    if len(values) != 1:
        return None
    h = values.pop()
    if not phi.group.is_subgroup(h):
        return None
    return h
