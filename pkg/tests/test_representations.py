from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from biasrep.biased import is_balanced_set
from biasrep.errors import DomainError, InputError
from biasrep.fields import PrimeField, Q
from biasrep.gains import GainGraph, group_expansion, is_biased_expansion, natural_projection, to_biased
from biasrep.graph import Graph, Link, complete_graph, graphic_rank
from biasrep.groups import FieldAdditive, FieldMultiplicative
from biasrep.linalg import Covector, ProjectivePoint, Vector, in_span, rank
from biasrep.matroids import frame_oracle, lift_oracle
from biasrep.oracle import rank_oracle_equal
from biasrep.representations import (
    FrameContext,
    OrthoContext,
    affino_gains,
    affinographic_arrangement,
    cevian_apex,
    cevian_hyperplane_by_elimination,
    cevian_hyperplanes,
    full_frame_points,
    is_cross_closed,
    menelaean_gains,
    menelaean_points,
    node_basis,
    orthographic_points,
    ortho_gains,
    projectivize,
    reconstruct_affino,
    reconstruct_frame,
    reconstruct_ortho,
    standard_graphic_rep,
)

from conftest import graph

K3 = complete_graph("123")
EDGE = graph("12", [("a", "1", "2")])


def mult(field, g, gains):
    return GainGraph(g, FieldMultiplicative(field), gains)


def add(field, g, gains):
    return GainGraph(g, FieldAdditive(field), gains)


def coords(v):
    return tuple(v.coords)


def test_menelaean_examples():
    rep = menelaean_points(mult("GF(5)", K3, {"12": 2, "13": 1, "23": 1}))
    assert coords(rep.points["12"]) == (1, 3, 0)
    rep = menelaean_points(mult("Q", K3, {"12": Fraction(1), "13": Fraction(1), "23": Fraction(1)}))
    assert coords(rep.points["12"]) == (1, -1, 0)
    g = graph("123", [("12", "1", "2")], [("h", "2")])
    rep = menelaean_points(mult("Q", g, {"12": Fraction(3)}))
    assert coords(rep.points["h"]) == (0, 1, 0)


def test_cevian_examples():
    phi = mult("Q", K3, {"12": Fraction(2), "13": Fraction(1), "23": Fraction(1)})
    cov = cevian_hyperplanes(phi).covectors["12"]
    assert coords(cov.form) == (1, -2, 0)
    # the apex 2h1 + h2 lies on it
    assert cov.form.dot(cevian_apex(phi, "12")) == 0
    neg = mult("Q", K3, {"12": Fraction(-1), "13": Fraction(1), "23": Fraction(1)})
    assert coords(cevian_hyperplanes(neg).covectors["12"].form) == (1, 1, 0)
    assert coords(cevian_apex(neg, "12")) == (-1, 1, 0)
    g = graph("123", [("12", "1", "2")], [("h", "3")])
    cov = cevian_hyperplanes(mult("Q", g, {"12": Fraction(5)})).covectors["h"]
    assert coords(cov.form) == (0, 0, 1)


@pytest.mark.parametrize("field", ["Q", "GF(3)", "GF(7)"])
def test_cevian_closed_form_matches_elimination(field):
    f = Q if field == "Q" else PrimeField(int(field[3:-1]))
    g = complete_graph("1234")
    values = [2, 3, 5, 6, 4, 2] if field != "GF(3)" else [1, 2, 2, 1, 2, 1]
    phi = mult(field, g, {e.id: f.coerce(x) for e, x in zip(g.links, values)})
    rep = cevian_hyperplanes(phi)
    for e in g.links:
        a = rep.covectors[e.id].form
        b = cevian_hyperplane_by_elimination(phi, e.id).form
        assert ProjectivePoint(a) == ProjectivePoint(b)


def test_cevian_apices_differ_from_menelaean_points():
    # gain product -1 around the triangle: apices collinear, Menelaean points not
    f = PrimeField(5)
    phi = mult("GF(5)", K3, {"12": 2, "23": 3, "13": f.neg(f.mul(2, 3))})
    # circle gain 12 -> 23 -> 31 is g12 * g23 / g13
    prod = f.div(f.mul(2, 3), phi.gains["13"])
    assert prod == f.neg(1)
    apices = [cevian_apex(phi, e) for e in ("12", "13", "23")]
    assert rank(apices) == 2
    assert rank(list(menelaean_points(phi).points.values())) == 3


def test_cevian_apices_agree_in_characteristic_two():
    phi = mult("GF(2)", K3, {e: 1 for e in ("12", "13", "23")})
    apices = [cevian_apex(phi, e) for e in ("12", "13", "23")]
    assert rank(apices) == rank(list(menelaean_points(phi).points.values())) == 2


def test_orthographic_examples():
    phi = add("GF(7)", K3, {"12": 3, "13": 0, "23": 0})
    rep = orthographic_points(phi)
    assert rep.index == ("0", "1", "2", "3")
    assert coords(rep.points["12"]) == (3, 6, 1, 0)
    assert coords(rep.points["13"]) == (0, 6, 0, 1)
    assert coords(rep.e0) == (1, 0, 0, 0)
    with pytest.raises(InputError):
        orthographic_points(add("Q", graph("01", [("a", "0", "1")]), {"a": Fraction(0)}))


def test_affinographic_examples():
    phi = add("Q", K3, {"12": Fraction(3), "13": Fraction(0), "23": Fraction(0)})
    h = affinographic_arrangement(phi).covectors["12"]
    assert coords(h.form) == (-1, 1, 0) and h.constant == 3
    g = graph("12", [("a", "1", "2"), ("b", "1", "2")])
    arr = affinographic_arrangement(add("Q", g, {"a": Fraction(0), "b": Fraction(1)}))
    assert arr.covectors["a"].form == arr.covectors["b"].form
    tri = add("Q", K3, {"12": Fraction(1), "23": Fraction(2), "13": Fraction(3)})
    om = reconstruct_affino(affinographic_arrangement(tri), K3, {e: e for e in ("12", "13", "23")})
    assert om.balanced == {frozenset(["12", "13", "23"])}
    with pytest.raises(DomainError):
        affinographic_arrangement(add("Q", graph("12", [("a", "1", "2")], [("h", "1")]), {"a": Fraction(0)}))
    with pytest.raises(DomainError):
        affinographic_arrangement(tri).oracle()


def test_projectivized_sign_convention():
    phi = add("Q", K3, {"12": Fraction(3), "13": Fraction(0), "23": Fraction(0)})
    proj = projectivize(affinographic_arrangement(phi))
    assert coords(proj.covectors["12"].form) == (-3, -1, 1, 0)
    assert coords(proj.infinity.form) == (1, 0, 0, 0)


def test_standard_graphic_rep_examples():
    rep = standard_graphic_rep(K3)
    assert {k: coords(v) for k, v in rep.points.items()} == {"12": (-1, 1, 0), "13": (-1, 0, 1), "23": (0, -1, 1)}
    assert rank(list(rep.points.values())) == 2
    assert rank(list(standard_graphic_rep(EDGE).points.values())) == 1
    path = graph("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")])
    assert rank(list(standard_graphic_rep(path).points.values())) == 3


def test_reconstruct_frame_examples():
    ident = mult("Q", K3, {e: Fraction(1) for e in ("12", "13", "23")})
    rep = menelaean_points(ident)
    om, assign = reconstruct_frame(rep.basis, rep.points)
    assert om.balanced == {frozenset(["12", "13", "23"])}
    assert assign == {"12": ("1", "2"), "13": ("1", "3"), "23": ("2", "3")}
    basis = node_basis("12", "Q")
    om, assign = reconstruct_frame(basis, {"p": basis["1"]})
    assert assign == {"p": ("1",)} and not om.balanced
    with pytest.raises(InputError, match="'q'"):
        reconstruct_frame(node_basis("123", "Q"), {"q": Vector.from_map(Q, ("1", "2", "3"), {"1": 1, "2": 1, "3": 1})})


def test_reconstruct_ortho_examples():
    zero = add("GF(5)", K3, {e: 0 for e in ("12", "13", "23")})
    rep = orthographic_points(zero)
    om, proj = reconstruct_ortho(rep.points, rep.e0, K3)
    assert om.balanced == {frozenset(["12", "13", "23"])}
    assert proj == {"12": "12", "13": "13", "23": "23"}
    base = orthographic_points(add("GF(5)", EDGE, {"a": 0}))
    pts = {"x": base.points["a"], "y": base.points["a"] + base.e0}
    om, proj = reconstruct_ortho(pts, base.e0, EDGE)
    assert len(om.graph.links) == 2 and not om.balanced
    with pytest.raises(InputError, match="e0"):
        reconstruct_ortho({"x": base.e0}, base.e0, EDGE)
    off = Vector.from_map(PrimeField(5), ("0", "1", "2"), {"1": 1, "2": 1})
    with pytest.raises(InputError, match="'z'"):
        reconstruct_ortho({"z": off}, base.e0, EDGE)


def test_reconstruct_ortho_validates_base_rep():
    phi = add("Q", K3, {"12": Fraction(1), "13": Fraction(2), "23": Fraction(0)})
    rep = orthographic_points(phi)
    good = standard_graphic_rep(K3, "Q")
    om, _ = reconstruct_ortho(rep.points, rep.e0, K3, good)
    assert om.balanced == to_biased(phi).balanced
    bad = standard_graphic_rep(K3, "Q")
    bad.points["23"] = bad.points["12"]
    with pytest.raises(InputError):
        reconstruct_ortho(rep.points, rep.e0, K3, bad)


def test_reconstruct_affino_digons():
    g = graph("12", [("a", "1", "2"), ("b", "1", "2")])
    arr = affinographic_arrangement(add("Q", g, {"a": Fraction(0), "b": Fraction(1)}))
    om = reconstruct_affino(arr, EDGE, {"a": "a", "b": "a"})
    assert not om.balanced and len(om.graph._circles) == 1
    with pytest.raises(InputError):
        reconstruct_affino(arr, K3, {"a": "12", "b": "13"})


@st.composite
def gain_graphs(draw, kind):
    n = draw(st.integers(2, 4))
    nodes = [str(i) for i in range(1, n + 1)]
    m = draw(st.integers(1, 6))
    links = []
    for j in range(m):
        u, v = draw(st.sampled_from(list(combinations(nodes, 2))))
        links.append((f"x{j}", u, v))
    halves = []
    if kind == "mult" and draw(st.booleans()):
        halves.append(("h", draw(st.sampled_from(nodes))))
    g = graph(nodes, links, halves)
    p = draw(st.sampled_from([2, 3, 5, 7]))
    if kind == "mult":
        grp = FieldMultiplicative(f"GF({p})")
        gains = {e.id: draw(st.integers(1, p - 1)) for e in g.links}
    else:
        grp = FieldAdditive(f"GF({p})")
        gains = {e.id: draw(st.integers(0, p - 1)) for e in g.links}
    return GainGraph(g, grp, gains)


def _all_subsets(ids):
    for k in range(len(ids) + 1):
        yield from combinations(ids, k)


@settings(max_examples=40, deadline=None)
@given(gain_graphs("mult"))
def test_menelaean_round_trip_and_balance(phi):
    om = to_biased(phi)
    rep = menelaean_points(phi)
    back, _ = reconstruct_frame(rep.basis, rep.points)
    assert back.balanced == om.balanced
    assert rank_oracle_equal(rep.oracle(), frame_oracle(om)).equal
    assert rank_oracle_equal(cevian_hyperplanes(phi).oracle(), frame_oracle(om)).equal
    for s in _all_subsets(om.edge_ids):
        pts = [rep.points[e] for e in s]
        geo = not pts or not any(in_span(b, pts) for b in rep.basis.values())
        assert is_balanced_set(om, s) == geo
    gains = menelaean_gains(rep.basis, rep.points, back)
    assert to_biased(gains).balanced == om.balanced


@settings(max_examples=40, deadline=None)
@given(gain_graphs("add"))
def test_orthographic_round_trip_and_rank_law(phi):
    om = to_biased(phi)
    rep = orthographic_points(phi)
    assert rank_oracle_equal(rep.oracle(), lift_oracle(om, extended=True)).equal
    for s in _all_subsets(om.edge_ids):
        r = rank([rep.points[e] for e in s]) if s else 0
        assert r == graphic_rank(om.graph, s) + (0 if is_balanced_set(om, s) else 1)
    simple = {}
    for e in phi.graph.links:
        simple.setdefault(e.ends, e)
    delta = Graph(phi.graph.nodes, [Link(f"b{u}{v}", u, v) for (u, v) in simple])
    back, proj = reconstruct_ortho(rep.points, rep.e0, delta)
    relabel = {e.id for e in back.graph.links}
    assert relabel == {e.id for e in phi.graph.links}
    assert back.balanced == om.balanced
    recovered = ortho_gains(rep.points, rep.e0, back, proj, delta)
    assert to_biased(recovered).balanced == om.balanced


@settings(max_examples=40, deadline=None)
@given(gain_graphs("add"))
def test_affinographic_round_trip(phi):
    om = to_biased(phi)
    arr = affinographic_arrangement(phi)
    assert rank_oracle_equal(projectivize(arr).oracle(), lift_oracle(om, extended=True)).equal

    simple = {}
    for e in phi.graph.links:
        simple.setdefault(e.ends, f"b{e.ends[0]}{e.ends[1]}")
    delta = Graph(phi.graph.nodes, [Link(b, u, v) for (u, v), b in simple.items()])
    pmap = {e.id: simple[e.ends] for e in phi.graph.links}
    back = reconstruct_affino(arr, delta, pmap)
    assert back.balanced == om.balanced
    assert to_biased(affino_gains(arr, back)).balanced == om.balanced


@pytest.mark.parametrize("q", [2, 3, 5])
def test_full_fibers_are_cross_closed_expansions(q):
    rep = full_frame_points("123", f"GF({q})")
    assert len(rep.points) == 3 + (q - 1) * 3
    links = {k: v for k, v in rep.points.items() if not k.startswith("h")}
    assert is_cross_closed(FrameContext(rep.basis), links, K3)
    om, _ = reconstruct_frame(rep.basis, links)
    assert is_biased_expansion(om, natural_projection(om, K3))


def test_subgroup_image_is_cross_closed():
    phi = group_expansion(FieldMultiplicative("GF(5)"), K3)
    keep = {e.id for e in phi.graph.links if phi.gains[e.id] == 1}
    rep = menelaean_points(phi)
    sub = {k: v for k, v in rep.points.items() if k in keep}
    assert is_cross_closed(FrameContext(rep.basis), sub, K3)


def test_deleting_a_point_breaks_cross_closure():
    rep = full_frame_points("123", "GF(3)")
    links = {k: v for k, v in rep.points.items() if not k.startswith("h")}
    victim = sorted(links)[-1]
    del links[victim]
    check = is_cross_closed(FrameContext(rep.basis), links, K3)
    assert not check
    w = check.witness
    assert w["edge"] in ("12", "13", "23")
    missing = rep.points[victim]
    assert ProjectivePoint(missing) == ProjectivePoint(Vector.from_map(missing.field, missing.index, w["point"]))


def test_orthographic_cross_closure():
    phi = group_expansion(FieldAdditive("GF(3)"), K3)
    rep = orthographic_points(phi)
    assert is_cross_closed(OrthoContext(rep.e0), rep.points, K3)
    pts = dict(rep.points)
    pts.pop(sorted(pts)[0])
    assert not is_cross_closed(OrthoContext(rep.e0), pts, K3)


def test_menelaean_rejects_additive_gains():
    with pytest.raises(InputError):
        menelaean_points(add("Q", EDGE, {"a": Fraction(1)}))
    with pytest.raises(InputError):
        orthographic_points(mult("Q", EDGE, {"a": Fraction(1)}))


def test_representation_json_is_plain():
    rep = menelaean_points(mult("GF(5)", EDGE, {"a": 2}))
    assert rep.to_json() == {
        "kind": "menelaean",
        "field": "GF(5)",
        "index": ["1", "2"],
        "points": {"a": {"1": "1", "2": "3"}},
        "basis": {"1": {"1": "1"}, "2": {"2": "1"}},
    }
    arr = affinographic_arrangement(add("Q", EDGE, {"a": Fraction(1, 2)}))
    assert arr.to_json()["covectors"]["a"] == {"coords": {"1": "-1", "2": "1"}, "constant": "1/2"}
    assert isinstance(cevian_hyperplanes(mult("Q", EDGE, {"a": Fraction(2)})).covectors["a"], Covector)
