"""Frame and lift matroids of a biased graph.

Ranks come straight from the balanced-component counts; circuits are
produced from the structural catalogue (balanced circles, contrabalanced
thetas, handcuffs) and can be cross-checked against the minimal dependent
sets of the rank oracles.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .biased import BiasedGraph, balance_closure, balanced_components
from .errors import InputError
from .graph import (
    DEFAULT_CIRCLE_CAP,
    RESERVED_LABEL,
    Graph,
    components,
    graphic_closure,
    graphic_rank,
    simple_paths,
    theta_subgraphs,
)
from .oracle import Comparison, RankOracle, lex_subsets, rank_oracle_equal

E0 = RESERVED_LABEL


def _split_e0(omega: BiasedGraph, s: Iterable[str], extended: bool) -> tuple[frozenset, bool]:
    s = set(s)
    has_e0 = E0 in s
    if has_e0 and not extended:
        raise InputError(f"{E0} is only an element of the extended lift matroid")
    s.discard(E0)
    return omega.graph.edge_set(s), has_e0


def frame_rank(omega: BiasedGraph, s: Iterable[str] | None = None) -> int:
    b, _ = balanced_components(omega, s)
    return len(omega.nodes) - b


def frame_rank_local(omega: BiasedGraph, s: Iterable[str] | None = None) -> int:
    """#N(S) - b(N(S), S), counting components only on the nodes S touches."""
    g = omega.graph
    s = g.edge_set(s)
    touched = g.nodes_of(s)
    b, n0 = balanced_components(omega, s)
    _, parts = components(g, s)
    isolated = sum(1 for p in parts if not (p & touched))
    return len(touched) - (b - isolated)


def frame_closure(omega: BiasedGraph, s: Iterable[str]) -> frozenset:
    """E:N0(S) ∪ bcl S, which is bcl S when S is balanced."""
    g = omega.graph
    s = g.edge_set(s)
    _, n0 = balanced_components(omega, s)
    out = set(balance_closure(omega, s))
    for e in g.edges:
        if all(x in n0 for x in e.ends):
            out.add(e.id)
    return frozenset(out)


def lift_rank(omega: BiasedGraph, s: Iterable[str] | None = None, extended: bool = False) -> int:
    if s is None:
        s = list(omega.edge_ids) + ([E0] if extended else [])
    edges, has_e0 = _split_e0(omega, s, extended)
    c, _ = components(omega.graph, edges)
    r = len(omega.nodes) - c
    if has_e0 or not omega.is_balanced_mask(omega.graph.mask(edges)):
        r += 1
    return r


def lift_closure(omega: BiasedGraph, s: Iterable[str], extended: bool = False) -> frozenset:
    edges, has_e0 = _split_e0(omega, s, extended)
    g = omega.graph
    if not has_e0 and omega.is_balanced_mask(g.mask(edges)):
        return balance_closure(omega, edges)
    out = set(graphic_closure(g, edges))
    if extended:
        out.add(E0)
    return frozenset(out)


def _mask_rank_frame(omega: BiasedGraph):
    n = len(omega.nodes)
    g = omega.graph

    def rank(labels):
        uf, bad = omega.components_info(g.mask(labels))
        roots = {uf.find(v) for v in g.nodes}
        return n - (len(roots) - len(bad))

    return rank


def _mask_rank_lift(omega: BiasedGraph, extended: bool):
    n = len(omega.nodes)
    g = omega.graph

    def rank(labels):
        has_e0 = E0 in labels
        mask = g.mask(x for x in labels if x != E0)
        uf, bad = omega.components_info(mask)
        c = len({uf.find(v) for v in g.nodes})
        return n - c + (1 if has_e0 or bad else 0)

    return rank


def frame_oracle(omega: BiasedGraph) -> RankOracle:
    return RankOracle(omega.edge_ids, _mask_rank_frame(omega), kind="frame")


def lift_oracle(omega: BiasedGraph, extended: bool = False) -> RankOracle:
    ground = omega.edge_ids + ((E0,) if extended else ())
    return RankOracle(ground, _mask_rank_lift(omega, extended), kind="lift0" if extended else "lift")


def graphic_oracle(g: Graph) -> RankOracle:
    return RankOracle(tuple(e.id for e in g.links), lambda labels: graphic_rank(g, labels), kind="graphic")


class FrameMatroid:
    def __init__(self, omega: BiasedGraph):
        self.omega = omega
        self.ground = omega.edge_ids
        self.oracle = frame_oracle(omega)

    def rank(self, s=None) -> int:
        return self.oracle.rank(s)

    def closure(self, s) -> frozenset:
        return frame_closure(self.omega, s)

    def circuits(self, cap: int = DEFAULT_CIRCLE_CAP) -> list[frozenset]:
        return frame_circuits(self.omega, cap)


class LiftMatroid:
    def __init__(self, omega: BiasedGraph, extended: bool = False):
        self.omega = omega
        self.extended = extended
        self.oracle = lift_oracle(omega, extended)
        self.ground = self.oracle.ground

    def rank(self, s=None) -> int:
        return self.oracle.rank(s)

    def closure(self, s) -> frozenset:
        return lift_closure(self.omega, s, self.extended)

    def circuits(self, cap: int = DEFAULT_CIRCLE_CAP) -> list[frozenset]:
        return lift_circuits(self.omega, self.extended, cap)


def unbalanced_figures(omega: BiasedGraph) -> list[tuple[frozenset, frozenset]]:
    """(edge set, node set) of every half edge and every unbalanced circle."""
    g = omega.graph
    out = [(frozenset([e.id]), frozenset([e.v])) for e in g.half_edges]
    for c in g._circles:
        if c.edge_set not in omega.balanced:
            out.append((c.edge_set, frozenset(c.nodes)))
    return out


def _common_circuits(omega: BiasedGraph) -> set:
    found = {c for c in omega.balanced}
    for theta in theta_subgraphs(omega.graph):
        if not any(c.edge_set in omega.balanced for c in theta):
            found.add(theta[0].edge_set | theta[1].edge_set)
    return found


def _sorted_circuits(found) -> list[frozenset]:
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def frame_circuits(omega: BiasedGraph, cap: int = DEFAULT_CIRCLE_CAP) -> list[frozenset]:
    """Balanced circles, contrabalanced thetas, tight and loose handcuffs."""
    g = omega.graph
    found = _common_circuits(omega)
    figs = unbalanced_figures(omega)
    for (e1, n1), (e2, n2) in combinations(figs, 2):
        common = n1 & n2
        if len(common) == 1:
            found.add(e1 | e2)
        elif not common:
            avoid = n1 | n2
            for a in sorted(n1):
                for b in sorted(n2):
                    for p in simple_paths(g, a, b, avoid, cap):
                        found.add(e1 | e2 | p)
    return _sorted_circuits(found)


def lift_circuits(omega: BiasedGraph, extended: bool = False, cap: int = DEFAULT_CIRCLE_CAP) -> list[frozenset]:
    """Balanced circles, contrabalanced thetas, pairs of unbalanced figures
    meeting in at most one node, and (extended) a figure together with e0."""
    found = _common_circuits(omega)
    figs = unbalanced_figures(omega)
    for (e1, n1), (e2, n2) in combinations(figs, 2):
        if len(n1 & n2) <= 1:
            found.add(e1 | e2)
    if extended:
        for e, _ in figs:
            found.add(e | {E0})
    return _sorted_circuits(found)


def frame_vs_lift(omega: BiasedGraph) -> Comparison:
    return rank_oracle_equal(frame_oracle(omega), lift_oracle(omega))


__all__ = [
    "E0",
    "Comparison",
    "FrameMatroid",
    "LiftMatroid",
    "RankOracle",
    "frame_rank",
    "frame_rank_local",
    "frame_closure",
    "frame_circuits",
    "lift_rank",
    "lift_closure",
    "lift_circuits",
    "frame_oracle",
    "lift_oracle",
    "graphic_oracle",
    "rank_oracle_equal",
    "lex_subsets",
    "unbalanced_figures",
]
