"""Geometric representations of gain graphs and the maps back to biased graphs.

Frame side: Menelaean points on the edge lines of a basis, and Cevian
hyperplanes. Lift side: orthographic points with the extra point e0, and
affinographic hyperplanes x_v - x_u = gain.

Points are stored as unnormalized vectors and compared up to scalars.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Mapping, Sequence

from .biased import BiasedGraph
from .errors import CapExceeded, DomainError, InputError
from .fields import Field, parse_field
from .gains import GainGraph, group_expansion
from .graph import Graph, HalfEdge, Link, circles, complete_graph
from .groups import FieldAdditive, FieldMultiplicative
from .linalg import (
    LIFT_INDEX,
    Covector,
    LinearMatroid,
    ProjectivePoint,
    Vector,
    affine_consistency,
    annihilator,
    in_span,
    intersect_spans,
    left_kernel,
    linear_rank_oracle,
    rank,
    span_signature,
)
from .matroids import E0
from .oracle import RankOracle, rank_oracle_equal

DEFAULT_FLAT_CAP = 200_000


@dataclass
class PointRepresentation:
    kind: str
    field: Field
    index: tuple
    points: dict
    e0: Vector | None = None
    basis: dict | None = None
    source: object = dc_field(default=None, repr=False, compare=False)

    def elements(self) -> dict:
        out = dict(self.points)
        if self.e0 is not None:
            out[E0] = self.e0
        return out

    def oracle(self) -> RankOracle:
        return linear_rank_oracle(LinearMatroid(self.elements(), self.field), kind=self.kind)

    def projective(self) -> dict:
        return {label: ProjectivePoint(v) for label, v in self.points.items()}

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "field": self.field.name,
            "index": list(self.index),
            "points": {k: v.to_json()["coords"] for k, v in self.points.items()},
        }
        if self.basis is not None:
            out["basis"] = {k: v.to_json()["coords"] for k, v in self.basis.items()}
        if self.e0 is not None:
            out["e0"] = self.e0.to_json()["coords"]
        return out


@dataclass
class HyperplaneRepresentation:
    kind: str
    field: Field
    index: tuple
    covectors: dict
    infinity: Covector | None = None
    source: object = dc_field(default=None, repr=False, compare=False)

    @property
    def is_affine(self) -> bool:
        return any(h.is_affine for h in self.covectors.values())

    def elements(self) -> dict:
        out = dict(self.covectors)
        if self.infinity is not None:
            out[E0] = self.infinity
        return out

    def oracle(self) -> RankOracle:
        """Rank of a set = codimension of the common kernel of its covectors."""
        if self.is_affine:
            raise DomainError("projectivize an affine arrangement before taking its matroid")
        return linear_rank_oracle(LinearMatroid(self.elements(), self.field), kind=self.kind)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "field": self.field.name,
            "index": list(self.index),
            "covectors": {k: _covector_json(h) for k, h in self.covectors.items()},
        }
        if self.infinity is not None:
            out["infinity"] = _covector_json(self.infinity)
        return out


def _covector_json(h: Covector) -> dict:
    out = {"coords": h.form.to_json()["coords"]}
    if h.constant is not None:
        out["constant"] = h.form.field.format(h.constant)
    return out


def _field_of(phi: GainGraph, kind) -> Field:
    if not isinstance(phi.group, kind):
        want = "multiplicative" if kind is FieldMultiplicative else "additive"
        raise InputError(f"gains must lie in the {want} group of a field, not {phi.group.name}")
    return phi.group.field


def node_basis(nodes: Sequence[str], field, index: Sequence[str] | None = None) -> dict:
    field = parse_field(field)
    index = tuple(index or nodes)
    return {v: Vector.unit(field, index, v) for v in nodes}


def menelaean_points(phi: GainGraph) -> PointRepresentation:
    """Link u<v with gain g goes to h_u - g h_v; a half edge at v to h_v."""
    f = _field_of(phi, FieldMultiplicative)
    nodes = phi.graph.nodes
    basis = node_basis(nodes, f)
    pts = {}
    for e in phi.graph.edges:
        if isinstance(e, HalfEdge):
            pts[e.id] = basis[e.v]
        else:
            pts[e.id] = basis[e.u] - basis[e.v].scale(phi.gains[e.id])
    return PointRepresentation("menelaean", f, nodes, pts, basis=basis, source=phi)


def cevian_apex(phi: GainGraph, eid: str) -> Vector:
    """g h_u + h_v for the link u<v with gain g."""
    f = _field_of(phi, FieldMultiplicative)
    e = phi.graph.edge(eid)
    if not isinstance(e, Link):
        raise DomainError(f"half edge {eid!r} has no apex")
    basis = node_basis(phi.graph.nodes, f)
    return basis[e.u].scale(phi.gains[eid]) + basis[e.v]


def cevian_hyperplanes(phi: GainGraph) -> HyperplaneRepresentation:
    """Link u<v with gain g goes to the covector (1 at u, -g at v); a half
    edge at v to the coordinate covector at v."""
    f = _field_of(phi, FieldMultiplicative)
    nodes = phi.graph.nodes
    basis = node_basis(nodes, f)
    cov = {}
    for e in phi.graph.edges:
        if isinstance(e, HalfEdge):
            cov[e.id] = Covector(basis[e.v])
        else:
            cov[e.id] = Covector(basis[e.u] - basis[e.v].scale(phi.gains[e.id]))
    return HyperplaneRepresentation("cevian", f, nodes, cov, source=phi)


def cevian_hyperplane_by_elimination(phi: GainGraph, eid: str) -> Covector:
    """The hyperplane spanned by the apex and every basis point off the
    edge's ends, found by solving for its annihilator."""
    f = phi.group.field
    nodes = phi.graph.nodes
    basis = node_basis(nodes, f)
    e = phi.graph.edge(eid)
    if isinstance(e, HalfEdge):
        spanning = [basis[v] for v in nodes if v != e.v]
    else:
        spanning = [basis[v] for v in nodes if v not in e.ends] + [cevian_apex(phi, eid)]
    if not spanning:
        raise DomainError("a single node has no hyperplane through other points")
    ker = annihilator(spanning)
    if len(ker) != 1:
        raise DomainError(f"points for {eid!r} do not span a hyperplane")
    return Covector(ker[0])


def orthographic_points(phi: GainGraph) -> PointRepresentation:
    """Link u<v with gain g goes to (g, h_v - h_u); half edges and e0 to (1, 0)."""
    f = _field_of(phi, FieldAdditive)
    nodes = phi.graph.nodes
    if LIFT_INDEX in nodes:
        raise InputError(f"node name {LIFT_INDEX!r} is reserved for the lift coordinate")
    index = (LIFT_INDEX,) + tuple(nodes)
    e0 = Vector.unit(f, index, LIFT_INDEX)
    base = standard_graphic_rep(phi.graph.restrict(e.id for e in phi.graph.links), f, index=index)
    pts = {}
    for e in phi.graph.edges:
        if isinstance(e, HalfEdge):
            pts[e.id] = e0
        else:
            pts[e.id] = base.points[e.id] + e0.scale(phi.gains[e.id])
    return PointRepresentation("orthographic", f, index, pts, e0=e0, source=phi)


def affinographic_arrangement(phi: GainGraph) -> HyperplaneRepresentation:
    """Link u<v with gain g goes to the affine hyperplane x_v - x_u = g."""
    f = _field_of(phi, FieldAdditive)
    if phi.graph.half_edges:
        raise DomainError("affinographic arrangements need links only")
    nodes = phi.graph.nodes
    base = standard_graphic_rep(phi.graph, f)
    cov = {e.id: Covector(base.points[e.id], phi.gains[e.id]) for e in phi.graph.links}
    return HyperplaneRepresentation("affinographic", f, nodes, cov, source=phi)


def projectivize(arr: HyperplaneRepresentation) -> HyperplaneRepresentation:
    """Homogenize a.x = c to a.x - c x0 = 0 and add the ideal hyperplane x0 = 0 as e0."""
    f = arr.field
    if LIFT_INDEX in arr.index:
        raise InputError(f"coordinate {LIFT_INDEX!r} is reserved for homogenizing")
    index = (LIFT_INDEX,) + tuple(arr.index)
    cov = {}
    for label, h in arr.covectors.items():
        c = f.coerce(h.constant if h.constant is not None else 0)
        cov[label] = Covector(Vector(f, index, (f.neg(c),) + h.form.coords))
    inf = Covector(Vector.unit(f, index, LIFT_INDEX))
    return HyperplaneRepresentation(arr.kind + "-projective", f, index, cov, infinity=inf, source=arr.source)


def standard_graphic_rep(delta: Graph, field="Q", index: Sequence[str] | None = None) -> PointRepresentation:
    """Link u<v goes to h_v - h_u. With ``index`` containing the lift
    coordinate the vectors sit in the hyperplane x0 = 0."""
    if delta.half_edges:
        raise DomainError("the graphic representation needs links only")
    index = tuple(index or delta.nodes)
    f = parse_field(field)
    pts = {}
    for e in delta.links:
        pts[e.id] = Vector.unit(f, index, e.v) - Vector.unit(f, index, e.u)
    return PointRepresentation("graphic", f, index, pts, source=delta)


def full_frame_points(nodes: Sequence[str], field) -> PointRepresentation:
    """Every point of every edge line of the standard basis over a finite field:
    the Menelaean image of the full multiplicative expansion of K_n."""
    f = parse_field(field)
    if not f.is_finite():
        raise DomainError("full fibers need a finite field")
    return menelaean_points(group_expansion(FieldMultiplicative(f), complete_graph(nodes), full=True))


# reconstruction


def _check_common(points: Mapping[str, Vector], extra: Sequence[Vector]):
    vecs = list(points.values()) + list(extra)
    if not vecs:
        return None, None
    f, idx = vecs[0].field, vecs[0].index
    for v in vecs:
        if v.field != f or v.index != idx:
            raise InputError("points and reference vectors must share field and coordinates")
    return f, idx


def _bias_from_spans(g: Graph, points: Mapping[str, Vector], is_balanced_span) -> BiasedGraph:
    bal = []
    for c in circles(g):
        if is_balanced_span([points[e] for e in c.edges]):
            bal.append(c.edge_set)
    return BiasedGraph(g, bal, validate=False)


def reconstruct_frame(basis: Mapping[str, Vector], points: Mapping[str, Vector]) -> tuple[BiasedGraph, dict]:
    """Biased graph of points on the edge lines of an independent basis.

    Returns the biased graph and the assignment label -> endpoint tuple.
    A circle is balanced iff the span of its points contains no basis point.
    """
    nodes = sorted(basis)
    _check_common(points, [basis[v] for v in nodes])
    bvecs = [basis[v] for v in nodes]
    if rank(bvecs) != len(bvecs):
        raise InputError("frame basis points are not independent")
    bpoints = {ProjectivePoint(basis[v]): v for v in nodes}
    edges, assign = [], {}
    for label in sorted(points):
        p = points[label]
        if p.is_zero():
            raise InputError(f"point {label!r} is the zero vector")
        pp = ProjectivePoint(p)
        if pp in bpoints:
            v = bpoints[pp]
            edges.append(HalfEdge(label, v))
            assign[label] = (v,)
            continue
        found = [(u, v) for u, v in combinations(nodes, 2) if in_span(p, [basis[u], basis[v]])]
        if not found:
            raise InputError(f"point {label!r} lies on no edge line of the basis")
        # with an independent basis two edge lines meet only in a basis point
        assert len(found) == 1, (label, found)
        u, v = found[0]
        edges.append(Link(label, u, v))
        assign[label] = (u, v)
    g = Graph(nodes, edges)

    def balanced(vecs):
        return not any(in_span(b, vecs) for b in bvecs)

    return _bias_from_spans(g, points, balanced), assign


def _ambient_base(base_rep, index: tuple, f: Field) -> dict:
    out = {}
    for label, v in base_rep.points.items():
        if v.index == index:
            out[label] = Vector(f, index, tuple(f.coerce(c) for c in v.coords))
            continue
        if (LIFT_INDEX,) + tuple(v.index) != index:
            raise InputError("base representation coordinates do not match the points")
        out[label] = Vector(f, index, (f.zero(),) + tuple(f.coerce(c) for c in v.coords))
    return out


def validate_base_rep(base_rep: PointRepresentation, delta: Graph) -> None:
    """Raise unless ``base_rep`` represents the graphic matroid of ``delta``."""
    from .matroids import graphic_oracle

    if set(base_rep.points) != {e.id for e in delta.links}:
        raise InputError("base representation labels differ from the base graph's edges")
    cmp = rank_oracle_equal(linear_rank_oracle(LinearMatroid(base_rep.points, base_rep.field)), graphic_oracle(delta))
    if not cmp.equal:
        raise InputError(f"base representation is not graphic on {cmp.witness}")


def reconstruct_ortho(
    points: Mapping[str, Vector],
    e0: Vector,
    delta: Graph,
    base_rep: PointRepresentation | None = None,
) -> tuple[BiasedGraph, dict]:
    """Biased graph of points on the lines joining e0 to a graphic
    representation of ``delta``; balanced circles have spans avoiding e0.

    Returns the biased graph and the projection label -> base edge.
    """
    f, index = _check_common(points, [e0])
    if f is None:
        f, index = e0.field, e0.index
    if base_rep is None:
        base_rep = standard_graphic_rep(delta, f)
    else:
        validate_base_rep(base_rep, delta)
    base = _ambient_base(base_rep, index, f)
    if in_span(e0, list(base.values())):
        raise InputError("e0 lies in the span of the base representation")
    nodes = delta.nodes
    e0p = ProjectivePoint(e0)
    edges, proj = [], {}
    for label in sorted(points):
        p = points[label]
        if p.is_zero():
            raise InputError(f"point {label!r} is the zero vector")
        if ProjectivePoint(p) == e0p:
            raise InputError(f"point {label!r} coincides with e0")
        found = [b.id for b in delta.links if in_span(p, [base[b.id], e0])]
        if not found:
            raise InputError(f"point {label!r} lies on no line through e0 and a base edge")
        assert len(found) == 1, (label, found)
        b = delta.edge(found[0])
        edges.append(Link(label, b.u, b.v))
        proj[label] = b.id
    g = Graph(nodes, edges)

    def balanced(vecs):
        return not in_span(e0, vecs)

    return _bias_from_spans(g, points, balanced), proj


def reconstruct_affino(arr: HyperplaneRepresentation, delta: Graph, parallel_map: Mapping[str, str]) -> BiasedGraph:
    """One link per hyperplane over its base edge; a circle is balanced iff
    its hyperplanes have a common point.

    ``parallel_map`` sends each hyperplane to the base edge carrying its
    ideal part; the ideal part must be a multiple of x_v - x_u.
    """
    if not arr.is_affine and arr.covectors:
        raise InputError("reconstruct_affino needs affine hyperplanes")
    f = arr.field
    edges = []
    for label in sorted(arr.covectors):
        h = arr.covectors[label]
        if label not in parallel_map:
            raise InputError(f"hyperplane {label!r} has no base edge")
        b = delta.edge(parallel_map[label])
        if not isinstance(b, Link):
            raise InputError("base edges must be links")
        ideal = Vector.unit(f, arr.index, b.v) - Vector.unit(f, arr.index, b.u)
        if rank([h.form, ideal]) != 1:
            raise InputError(f"ideal part of {label!r} does not match base edge {b.id!r}")
        edges.append(Link(label, b.u, b.v))
    g = Graph(delta.nodes, edges)
    bal = [c.edge_set for c in circles(g) if affine_consistency([arr.covectors[e] for e in c.edges])]
    return BiasedGraph(g, bal, validate=False)


# gains recovered from geometry


def _coefficients(target: Vector, pair: Sequence[Vector]) -> tuple:
    """(a, b) with target = a*pair[0] + b*pair[1]."""
    f = target.field
    ker = left_kernel([pair[0].coords, pair[1].coords, target.coords], f)
    sol = [c for c in ker if c[2] != 0]
    if not sol:
        raise InputError("vector is not on the given line")
    c = sol[0]
    scale = f.neg(f.inv(c[2]))
    return f.mul(c[0], scale), f.mul(c[1], scale)


def menelaean_gains(basis: Mapping[str, Vector], points: Mapping[str, Vector], omega: BiasedGraph) -> GainGraph:
    """Gains read off points a*h_u + b*h_v as -b/a (multiplicative)."""
    f = next(iter(basis.values())).field
    grp = FieldMultiplicative(f)
    gains = {}
    for e in omega.graph.links:
        a, b = _coefficients(points[e.id], [basis[e.u], basis[e.v]])
        if a == 0 or b == 0:
            raise InputError(f"point {e.id!r} is a basis point, not a link")
        gains[e.id] = f.neg(f.div(b, a))
    return GainGraph(omega.graph.restrict(e.id for e in omega.graph.links), grp, gains)


def ortho_gains(
    points: Mapping[str, Vector],
    e0: Vector,
    omega: BiasedGraph,
    projection: Mapping[str, str],
    delta: Graph,
    base_rep: PointRepresentation | None = None,
) -> GainGraph:
    """Gains read off points a*z(e) + b*e0 as b/a (additive)."""
    f = e0.field
    if base_rep is None:
        base_rep = standard_graphic_rep(delta, f)
    base = _ambient_base(base_rep, e0.index, f)
    gains = {}
    for e in omega.graph.links:
        b_edge = delta.edge(projection[e.id])
        a, b = _coefficients(points[e.id], [base[b_edge.id], e0])
        if a == 0:
            raise InputError(f"point {e.id!r} coincides with e0")
        # base edges carry the direction of the base graph; links share endpoints
        gains[e.id] = f.div(b, a)
    return GainGraph(omega.graph, FieldAdditive(f), gains)


def affino_gains(arr: HyperplaneRepresentation, omega: BiasedGraph) -> GainGraph:
    """Gain c/s of the hyperplane s*(x_v - x_u) = c."""
    f = arr.field
    gains = {}
    for e in omega.graph.links:
        h = arr.covectors[e.id]
        s = h.form[e.v]
        gains[e.id] = f.div(f.coerce(h.constant), s)
    return GainGraph(omega.graph, FieldAdditive(f), gains)


# geometric balance tests


def span_avoids_basis(basis: Mapping[str, Vector], vecs: Sequence[Vector]) -> bool:
    vecs = list(vecs)
    if not vecs:
        return True
    return not any(in_span(b, vecs) for b in basis.values())


def span_avoids(point: Vector, vecs: Sequence[Vector]) -> bool:
    vecs = list(vecs)
    return not vecs or not in_span(point, vecs)


# cross-closure


@dataclass
class FrameContext:
    """Cross-flats avoid every basis point; edge lines join two basis points."""

    basis: dict

    def edge_line(self, delta: Graph, eid: str) -> list:
        e = delta.edge(eid)
        return [self.basis[e.u], self.basis[e.v]]

    def is_cross(self, vecs) -> bool:
        return span_avoids_basis(self.basis, vecs)


@dataclass
class OrthoContext:
    """Cross-flats avoid e0; edge lines join e0 to a base representation point."""

    e0: Vector
    base: dict = None

    def edge_line(self, delta: Graph, eid: str) -> list:
        base = self.base
        if base is None:
            base = _ambient_base(standard_graphic_rep(delta, self.e0.field), self.e0.index, self.e0.field)
            self.base = base
        return [base[eid], self.e0]

    def is_cross(self, vecs) -> bool:
        return span_avoids(self.e0, vecs)


@dataclass
class CrossCheck:
    ok: bool
    witness: dict | None = None
    flats: int = 0

    def __bool__(self) -> bool:
        return self.ok


def is_cross_closed(context, points: Mapping[str, Vector], delta: Graph, cap: int = DEFAULT_FLAT_CAP) -> CrossCheck:
    """Check that every cross-flat spanned by points meets each edge line of
    ``delta`` only in given points.

    Flats are spans of independent subsets of size at most the rank,
    visited in lexicographic order of labels and deduplicated by their
    reduced echelon form. The first violation is returned as a witness.
    """
    labels = sorted(points)
    if not labels:
        return CrossCheck(True)
    present = {ProjectivePoint(v) for v in points.values()}
    lines = [(b.id, context.edge_line(delta, b.id)) for b in delta.links]
    r = rank([points[x] for x in labels])
    seen = set()
    visited = 0
    for k in range(1, r + 1):
        for combo in combinations(labels, k):
            visited += 1
            if visited > cap:
                raise CapExceeded("cross-flat subsets", cap)
            vecs = [points[x] for x in combo]
            if rank(vecs) < k:
                continue
            sig = span_signature(vecs)
            if sig in seen:
                continue
            seen.add(sig)
            if not context.is_cross(vecs):
                continue
            for eid, line in lines:
                meet = intersect_spans(vecs, line)
                if len(meet) != 1:
                    continue
                q = meet[0]
                if ProjectivePoint(q) not in present:
                    return CrossCheck(
                        False,
                        {"flat": list(combo), "edge": eid, "point": q.to_json()["coords"]},
                        len(seen),
                    )
    return CrossCheck(True, None, len(seen))


__all__ = [
    "PointRepresentation",
    "HyperplaneRepresentation",
    "FrameContext",
    "OrthoContext",
    "CrossCheck",
    "node_basis",
    "menelaean_points",
    "cevian_apex",
    "cevian_hyperplanes",
    "cevian_hyperplane_by_elimination",
    "orthographic_points",
    "affinographic_arrangement",
    "projectivize",
    "standard_graphic_rep",
    "full_frame_points",
    "reconstruct_frame",
    "reconstruct_ortho",
    "reconstruct_affino",
    "validate_base_rep",
    "menelaean_gains",
    "ortho_gains",
    "affino_gains",
    "span_avoids_basis",
    "span_avoids",
    "is_cross_closed",
]
