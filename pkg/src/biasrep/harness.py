"""Corpus generation and end-to-end checks of the representation theorems.

Each check builds a representation from a gain graph, compares its linear
rank oracle with the matching combinatorial oracle, and maps the geometry
back to a biased graph. Reports are plain dataclasses serialized as
JSON lines; timing is kept out of the serialized form so repeated runs
produce identical output.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .biased import BiasedGraph, is_balanced_set, is_isomorphic_identity
from .errors import CapExceeded, DomainError, InputError
from .fields import parse_field
from .gains import (
    GainGraph,
    gain_realizability_search,
    group_expansion,
    is_biased_expansion,
    is_subgroup_expansion,
    natural_projection,
    switch,
    to_biased,
)
from .graph import Graph, HalfEdge, Link, complete_graph, components, graphic_rank, is_inseparable
from .groups import FieldAdditive, FieldMultiplicative, Group
from .linalg import Covector, ProjectivePoint, Vector, affine_consistency, matrix_rank
from .matroids import E0, frame_oracle, graphic_oracle, lift_closure, lift_oracle
from .oracle import RankOracle, lex_subsets, rank_oracle_equal
from .representations import (
    FrameContext,
    HyperplaneRepresentation,
    OrthoContext,
    PointRepresentation,
    affino_gains,
    affinographic_arrangement,
    cevian_hyperplane_by_elimination,
    cevian_hyperplanes,
    is_cross_closed,
    menelaean_gains,
    menelaean_points,
    ortho_gains,
    orthographic_points,
    projectivize,
    reconstruct_affino,
    reconstruct_frame,
    reconstruct_ortho,
    span_avoids_basis,
)

TAGS = ("menelaean", "cevian", "orthographic", "affinographic", "canonical")
MULTIPLICATIVE_TAGS = ("menelaean", "cevian", "canonical")
ADDITIVE_TAGS = ("orthographic", "affinographic")
EXHAUSTIVE_CAP = 1 << 16
SEARCH_CAP = 1 << 16
MAX_NODES = 6
MAX_EDGES = 10


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 0
    nodes: tuple = (3, 5)
    edges: tuple = (1, 9)
    fields: tuple = ("GF(5)", "GF(7)", "Q")
    kinds: tuple = ("multiplicative", "additive")
    count: int = 60
    half_edge_prob: float = 0.15

    def validate(self) -> None:
        lo, hi = self.nodes
        if not 1 <= lo <= hi <= MAX_NODES:
            raise InputError(f"node range {self.nodes} outside 1..{MAX_NODES}")
        lo, hi = self.edges
        if not 0 <= lo <= hi <= MAX_EDGES:
            raise InputError(f"edge range {self.edges} outside 0..{MAX_EDGES}")
        if self.count < 0:
            raise InputError("instance count must be nonnegative")
        bad = [k for k in self.kinds if k not in ("multiplicative", "additive")]
        if bad or not self.kinds:
            raise InputError(f"unknown gain kinds {bad}")
        if not self.fields:
            raise InputError("no fields given")
        for f in self.fields:
            parse_field(f)
        if not 0 <= self.half_edge_prob <= 1:
            raise InputError("half edge probability must lie in [0, 1]")


def _gain_pool(group: Group) -> list:
    """A few small gains, so that balanced circles are common."""
    f = group.field
    if isinstance(group, FieldMultiplicative):
        two = f.coerce(2)
        pool = [f.one(), f.neg(f.one())]
        if two != 0:
            pool += [two, f.inv(two)]
    else:
        pool = [f.zero(), f.one(), f.neg(f.one())]
        if not f.is_finite():
            pool.append(Fraction(2))
    out = []
    for x in pool:
        if x not in out:
            out.append(x)
    return out


def _edge_labels(k: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return [letters[i] for i in range(k)]


def generate_corpus(spec: CorpusSpec) -> list[GainGraph]:
    """Seeded random gain graphs.

    Kinds and fields cycle with the instance number. Every tenth instance
    leaves its last node isolated (disconnected) and the one after it gets a
    parallel pair of links. Half edges only go to multiplicative instances,
    since affinographic arrangements have no place for them.
    """
    spec.validate()
    rng = random.Random(spec.seed)
    out = []
    for i in range(spec.count):
        kind = spec.kinds[i % len(spec.kinds)]
        fname = spec.fields[(i // len(spec.kinds)) % len(spec.fields)]
        group = FieldMultiplicative(fname) if kind == "multiplicative" else FieldAdditive(fname)
        pool = _gain_pool(group)
        n = rng.randint(*spec.nodes)
        m = rng.randint(*spec.edges)
        with_parallel = i % 10 == 1 and n >= 2
        if with_parallel:
            m = max(m, min(2, spec.edges[1]))
        nodes = [str(j + 1) for j in range(n)]
        reach = nodes[:-1] if i % 10 == 0 and n >= 2 else nodes
        labels = _edge_labels(m)
        edges, gains = [], {}
        for j, label in enumerate(labels):
            half = kind == "multiplicative" and (len(reach) < 2 or rng.random() < spec.half_edge_prob)
            if with_parallel and j == 0:
                half = False
            if with_parallel and j == 1 and edges and isinstance(edges[0], Link):
                e = Link(label, edges[0].u, edges[0].v)
                gains[label] = pool[(pool.index(gains[edges[0].id]) + 1) % len(pool)]
                edges.append(e)
                continue
            if half or len(reach) < 2:
                if kind == "additive":
                    break
                edges.append(HalfEdge(label, rng.choice(reach)))
                continue
            u, v = sorted(rng.sample(reach, 2))
            edges.append(Link(label, u, v))
            gains[label] = rng.choice(pool)
        out.append(GainGraph(Graph(nodes, edges), group, gains))
    return out


def describe(phi: GainGraph) -> str:
    g = phi.graph
    return f"n={len(g.nodes)} m={len(g.edges)} {phi.group.name}"


@dataclass
class VerificationReport:
    tag: str
    instance: str
    passed: bool
    witness: list | None = None
    checked: int = 0
    sampled: bool = False
    detail: dict = dc_field(default_factory=dict)
    elapsed: float = 0.0

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "instance": self.instance,
            "passed": self.passed,
            "witness": self.witness,
            "checked": self.checked,
            "sampled": self.sampled,
            "detail": self.detail,
        }


def _subsets(labels: Sequence[str], cap: int, seed: int):
    """All subsets in lexicographic order, or a seeded sample of ``cap`` of them."""
    labels = sorted(labels)
    if 1 << len(labels) <= cap:
        return list(lex_subsets(labels)), False
    rng = random.Random(seed)
    out = []
    for _ in range(cap):
        mask = rng.getrandbits(len(labels))
        out.append(tuple(x for i, x in enumerate(labels) if mask >> i & 1))
    return out, True


def _compare(m1: RankOracle, m2: RankOracle, cap: int, seed: int):
    subsets, sampled = _subsets(m1.ground, cap, seed)
    return rank_oracle_equal(m1, m2, subsets=subsets), sampled, subsets


def _check_kind(tag: str, phi: GainGraph):
    if tag in MULTIPLICATIVE_TAGS and not isinstance(phi.group, FieldMultiplicative):
        raise DomainError(f"{tag} needs multiplicative field gains, not {phi.group.name}")
    if tag in ADDITIVE_TAGS and not isinstance(phi.group, FieldAdditive):
        raise DomainError(f"{tag} needs additive field gains, not {phi.group.name}")
    if tag == "affinographic" and phi.graph.half_edges:
        raise DomainError("affinographic arrangements need links only")


def verify_theorem(
    tag: str,
    phi: GainGraph,
    instance: str = "",
    representation=None,
    cap: int = EXHAUSTIVE_CAP,
    seed: int = 0,
) -> VerificationReport:
    """Run the representation pipeline named by ``tag`` on ``phi``.

    ``representation`` replaces the built representation, which is how
    perturbed negative controls are fed in.
    """
    if tag not in TAGS:
        raise InputError(f"unknown theorem tag {tag!r}; expected one of {', '.join(TAGS)}")
    _check_kind(tag, phi)
    start = time.perf_counter()
    check = {
        "menelaean": _verify_menelaean,
        "cevian": _verify_cevian,
        "orthographic": _verify_orthographic,
        "affinographic": _verify_affinographic,
        "canonical": _verify_canonical,
    }[tag]
    passed, witness, checked, sampled, detail = check(phi, representation, cap, seed)
    report = VerificationReport(tag, instance or describe(phi), passed, witness, checked, sampled, detail)
    report.elapsed = time.perf_counter() - start
    return report


def _fail_from(cmp, sampled, detail):
    return False, list(cmp.witness), cmp.checked, sampled, {**detail, "rank_representation": cmp.rank1, "rank_combinatorial": cmp.rank2}


def _verify_menelaean(phi, rep, cap, seed):
    omega = to_biased(phi)
    rep = rep or menelaean_points(phi)
    cmp, sampled, subsets = _compare(rep.oracle(), frame_oracle(omega), cap, seed)
    if not cmp:
        return _fail_from(cmp, sampled, {})
    # balance is visible geometrically: span avoids every basis point
    for s in subsets:
        if is_balanced_set(omega, s) != span_avoids_basis(rep.basis, [rep.points[x] for x in s]):
            return False, list(s), cmp.checked, sampled, {"reason": "balance differs from span test"}
    try:
        back, _ = reconstruct_frame(rep.basis, rep.points)
    except InputError as exc:
        return False, [_label_in(exc, rep.points)], cmp.checked, sampled, {"reason": str(exc)}
    if not is_isomorphic_identity(back, omega):
        return False, _first_difference(back, omega), cmp.checked, sampled, {"reason": "reconstruction differs"}
    return True, None, cmp.checked, sampled, {}


def _first_difference(a: BiasedGraph, b: BiasedGraph) -> list:
    diff = sorted(sorted(c) for c in a.balanced ^ b.balanced)
    return diff[0] if diff else sorted(a.edge_ids)


def _label_in(exc: Exception, labels) -> str:
    text = str(exc)
    for label in sorted(labels, key=len, reverse=True):
        if repr(label) in text:
            return label
    return sorted(labels)[0]


def _pendant_edges(g: Graph, s: Sequence[str]) -> list[str]:
    """Links of ``s`` with an end of degree one in ``s``."""
    deg = {}
    for eid in s:
        for x in g.edge(eid).ends:
            deg[x] = deg.get(x, 0) + 1
    out = []
    for eid in s:
        e = g.edge(eid)
        if isinstance(e, Link) and (deg[e.u] == 1 or deg[e.v] == 1):
            out.append(eid)
    return out


def _verify_cevian(phi, rep, cap, seed):
    omega = to_biased(phi)
    rep = rep or cevian_hyperplanes(phi)
    oracle = rep.oracle()
    cmp, sampled, subsets = _compare(oracle, frame_oracle(omega), cap, seed)
    if not cmp:
        return _fail_from(cmp, sampled, {})
    pendant_checked = 0
    for s in subsets:
        for e in _pendant_edges(phi.graph, s):
            pendant_checked += 1
            rest = [x for x in s if x != e]
            if oracle.rank(s) != oracle.rank(rest) + 1:
                return False, list(s), cmp.checked, sampled, {"reason": "pendant edge does not raise rank", "edge": e}
    # closed-form covectors against the elimination construction
    for e in phi.graph.edges:
        if len(phi.graph.nodes) < 2:
            break
        ref = cevian_hyperplane_by_elimination(phi, e.id)
        if ProjectivePoint(ref.form) != ProjectivePoint(rep.covectors[e.id].form):
            return False, [e.id], cmp.checked, sampled, {"reason": "covector differs from elimination"}
    return True, None, cmp.checked, sampled, {"pendant_checks": pendant_checked}


def _verify_orthographic(phi, rep, cap, seed):
    omega = to_biased(phi)
    rep = rep or orthographic_points(phi)
    oracle = rep.oracle()
    cmp, sampled, subsets = _compare(oracle, lift_oracle(omega, extended=True), cap, seed)
    if not cmp:
        return _fail_from(cmp, sampled, {})
    g = phi.graph
    for s in subsets:
        edges = [x for x in s if x != E0]
        links = [x for x in edges if g.is_link(x)]
        want = graphic_rank(g.restrict(links), links) + (0 if is_balanced_set(omega, edges) else 1)
        if oracle.rank(edges) != want:
            return False, edges, cmp.checked, sampled, {"reason": "rank law fails"}
    link_pts = {e.id: rep.points[e.id] for e in g.links}
    base = g.restrict(e.id for e in g.links)
    delta = _simple_base(base)
    try:
        back, proj = reconstruct_ortho(link_pts, rep.e0, delta)
    except InputError as exc:
        return False, [_label_in(exc, link_pts)], cmp.checked, sampled, {"reason": str(exc)}
    target = to_biased(GainGraph(base, phi.group, phi.gains))
    if not is_isomorphic_identity(back, target):
        return False, _first_difference(back, target), cmp.checked, sampled, {"reason": "reconstruction differs"}
    return True, None, cmp.checked, sampled, {}


def _simple_base(g: Graph) -> Graph | None:
    """The simple graph with one link per adjacent pair, ids taken from the first link."""
    first = {}
    for e in g.links:
        first.setdefault(e.ends, e.id)
    return Graph(g.nodes, [Link(eid, *ends) for ends, eid in first.items()])


def _affine_flats(arr: HyperplaneRepresentation, labels: Sequence[str], subsets) -> set:
    """{hyperplanes containing the intersection of S} for every consistent S."""
    f = arr.field

    def aug(ls):
        return [arr.covectors[x].form.coords + (f.coerce(arr.covectors[x].constant),) for x in ls]

    out = set()
    for s in subsets:
        if not affine_consistency([arr.covectors[x] for x in s]):
            continue
        r = matrix_rank(aug(s), f) if s else 0
        flat = frozenset(x for x in labels if matrix_rank(aug(list(s) + [x]), f) == r)
        out.add(flat)
    return out


def _verify_affinographic(phi, rep, cap, seed):
    omega = to_biased(phi)
    arr = rep or affinographic_arrangement(phi)
    g = phi.graph
    labels = sorted(arr.covectors)
    subsets, sampled = _subsets(labels, cap, seed)
    connected = 0
    for s in subsets:
        if not s:
            continue
        c, _ = components(g.restrict(s), s)
        if c - (len(g.nodes) - len(g.nodes_of(s))) != 1:
            continue
        connected += 1
        if is_balanced_set(omega, s) != affine_consistency([arr.covectors[x] for x in s]):
            return False, list(s), connected, sampled, {"reason": "balance differs from consistency"}
    proj = projectivize(arr)
    cmp, sampled2, _ = _compare(proj.oracle(), lift_oracle(omega, extended=True), cap, seed)
    if not cmp:
        return _fail_from(cmp, sampled2, {"connected_checked": connected})
    closed = set()
    for s in subsets:
        if is_balanced_set(omega, s) and lift_closure(omega, s) == frozenset(s):
            closed.add(frozenset(s))
    flats = _affine_flats(arr, labels, subsets)
    if not sampled and closed != flats:
        diff = sorted(sorted(x) for x in closed ^ flats)
        return False, diff[0], cmp.checked, sampled, {"reason": "closed balanced sets differ from intersection flats"}
    delta = _simple_base(g)
    try:
        back = reconstruct_affino(arr, delta, {e.id: delta_edge_for(delta, e) for e in g.links})
    except InputError as exc:
        return False, [_label_in(exc, labels)], cmp.checked, sampled, {"reason": str(exc)}
    if not is_isomorphic_identity(back, omega):
        return False, _first_difference(back, omega), cmp.checked, sampled, {"reason": "reconstruction differs"}
    return True, None, cmp.checked, sampled or sampled2, {"connected_checked": connected, "flats": len(flats)}


def delta_edge_for(delta: Graph, e: Link) -> str:
    for b in delta.links:
        if b.ends == e.ends:
            return b.id
    raise InputError(f"no base edge under {e.id!r}")


def _verify_canonical(phi, rep, cap, seed):
    """Gains exist iff the Menelaean construction represents the biased graph;
    over a finite field the gains are also searched for from scratch."""
    omega = to_biased(phi)
    group = phi.group
    detail = {}
    if group.is_finite():
        try:
            found = gain_realizability_search(omega, group, cap=SEARCH_CAP)
            detail["search"] = "none" if found is None else "found"
        except CapExceeded:
            found = None
            detail["search"] = "skipped: over cap"
        if detail["search"] == "none":
            return False, sorted(omega.edge_ids), 0, False, {"reason": "gain search missed existing gains"}
        links = omega.graph.restrict(e.id for e in omega.graph.links)
        if found is not None and to_biased(found).balanced != to_biased(GainGraph(links, group, phi.gains)).balanced:
            return False, sorted(omega.edge_ids), 0, False, {"reason": "found gains have the wrong balance"}
    ok, witness, checked, sampled, d = _verify_menelaean(phi, rep, cap, seed)
    detail.update(d)
    return ok, witness, checked, sampled, detail


def canonical_report(omega: BiasedGraph, group: Group, instance: str = "") -> VerificationReport:
    """Check a biased graph without given gains: if the search finds gains
    their Menelaean representation must reproduce it; otherwise there is
    none to build."""
    found = gain_realizability_search(omega, group)
    if found is None:
        return VerificationReport("canonical", instance or "biased graph", True, None, 0, False, {"gains": None})
    halves = [e for e in omega.graph.half_edges]
    phi = GainGraph(Graph(omega.nodes, list(found.graph.edges) + halves), group, found.gains)
    ok, witness, checked, sampled, d = _verify_menelaean(phi, None, EXHAUSTIVE_CAP, 0)
    if ok and not is_isomorphic_identity(to_biased(phi), omega):
        ok, witness = False, sorted(omega.edge_ids)
    return VerificationReport("canonical", instance or "biased graph", ok, witness, checked, sampled, {"gains": "found", **d})


def applicable_tags(phi: GainGraph) -> list[str]:
    if isinstance(phi.group, FieldMultiplicative):
        return list(MULTIPLICATIVE_TAGS)
    if isinstance(phi.group, FieldAdditive):
        tags = ["orthographic"]
        if not phi.graph.half_edges:
            tags.append("affinographic")
        return tags
    return []


def _run_one(args):
    idx, phi, tags, cap, seed = args
    return [verify_theorem(t, phi, f"inst{idx:03d} {describe(phi)}", cap=cap, seed=seed) for t in tags]


def verify_corpus(
    corpus: Sequence[GainGraph],
    tags: Iterable[str] | None = None,
    cap: int = EXHAUSTIVE_CAP,
    seed: int = 0,
    jobs: int = 1,
) -> list[VerificationReport]:
    """Every applicable tag on every instance, ordered by instance then tag."""
    wanted = None if tags is None else list(tags)
    work = []
    for i, phi in enumerate(corpus):
        ts = [t for t in applicable_tags(phi) if wanted is None or t in wanted]
        work.append((i, phi, ts, cap, seed))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work))
    else:
        results = [_run_one(w) for w in work]
    return [r for batch in results for r in batch]


def reports_to_jsonl(reports: Iterable[VerificationReport]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)


def append_reports(path, reports: Iterable[VerificationReport]) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(reports_to_jsonl(reports))


# perturbations for negative controls


def perturb_point(rep: PointRepresentation, label: str) -> PointRepresentation:
    """Move one link point off its edge line by adding a basis direction at
    a node the link does not touch."""
    v = rep.points[label]
    f = rep.field
    nodes = [x for x in rep.index if x != "0"]
    support = {x for x, c in zip(rep.index, v.coords) if c != 0 and x != "0"}
    spare = [x for x in nodes if x not in support]
    if not spare or len(support) != 2:
        raise DomainError(f"cannot move {label!r} off its edge line")
    moved = v + Vector.unit(f, rep.index, spare[0])
    pts = dict(rep.points)
    pts[label] = moved
    return PointRepresentation(rep.kind, f, rep.index, pts, e0=rep.e0, basis=rep.basis, source=rep.source)


def perturb_covector(arr: HyperplaneRepresentation, label: str) -> HyperplaneRepresentation:
    h = arr.covectors[label]
    support = {x for x, c in zip(arr.index, h.form.coords) if c != 0 and x != "0"}
    spare = [x for x in arr.index if x not in support and x != "0"]
    if not spare or len(support) != 2:
        raise DomainError(f"cannot tilt {label!r}")
    cov = dict(arr.covectors)
    cov[label] = Covector(h.form + Vector.unit(arr.field, arr.index, spare[0]), h.constant)
    return HyperplaneRepresentation(arr.kind, arr.field, arr.index, cov, arr.infinity, arr.source)


def perturbable_link(phi: GainGraph) -> str | None:
    """First link whose point can be moved off its edge line (needs a third node)."""
    if len(phi.graph.nodes) < 3:
        return None
    links = phi.graph.links
    return links[0].id if links else None


# Dowling geometries


@dataclass
class DowlingResult:
    gain_graph: GainGraph
    representation: PointRepresentation
    oracle: RankOracle
    points: int
    rank: int


def dowling(n: int, field) -> DowlingResult:
    """Full multiplicative expansion of K_n with a half edge at every node."""
    f = parse_field(field)
    if n < 2:
        raise InputError("Dowling geometries need n >= 2")
    if not f.is_finite():
        raise DomainError("Dowling geometries are built over finite fields here")
    nodes = [str(i + 1) for i in range(n)]
    phi = group_expansion(FieldMultiplicative(f), complete_graph(nodes), full=True)
    rep = menelaean_points(phi)
    oracle = frame_oracle(to_biased(phi))
    return DowlingResult(phi, rep, oracle, len(rep.points), oracle.rank())


def dowling_binary_to_complete(n: int) -> dict:
    """Over GF(2): half edge at i to edge 0i of K_{n+1}, link ij to edge ij."""
    out = {}
    for i in range(1, n + 1):
        out[f"h{i}"] = f"0{i}"
    for i, j in combinations(range(1, n + 1), 2):
        out[f"{i}{j}:1"] = f"{i}{j}"
    return out


def graphic_complete(n: int) -> RankOracle:
    return graphic_oracle(complete_graph([str(i) for i in range(n)]))


# expansions and planted subgroups


def subgroup_gain_graph(group: Group, subgroup: Sequence, delta: Graph, seed: int = 0) -> GainGraph:
    """The H-expansion of ``delta`` switched by a seeded random function."""
    edges, gains = [], {}
    for e in delta.links:
        for h in subgroup:
            eid = f"{e.id}:{group.format(h)}"
            edges.append(Link(eid, e.u, e.v))
            gains[eid] = h
    phi = GainGraph(Graph(delta.nodes, edges), group, gains)
    rng = random.Random(seed)
    f = group.field
    choices = [x for x in (f.elements() if f.is_finite() else [Fraction(k) for k in range(-3, 4)])]
    if isinstance(group, FieldMultiplicative):
        choices = [x for x in choices if x != 0]
    zeta = {v: rng.choice(choices) for v in delta.nodes}
    return switch(phi, zeta)


@dataclass
class ExpansionReport:
    kind: str
    cross_closed: bool | None
    cross_witness: dict | None
    biased_expansion: bool
    expansion_witness: dict | None
    subgroup: list | None

    @property
    def passed(self) -> bool:
        return self.cross_closed is not False and self.biased_expansion and self.subgroup is not None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "cross_closed": self.cross_closed,
            "cross_witness": self.cross_witness,
            "biased_expansion": self.biased_expansion,
            "expansion_witness": self.expansion_witness,
            "subgroup": self.subgroup,
        }


def _expansion_preconditions(delta: Graph) -> None:
    if delta.half_edges or not delta.is_simple():
        raise DomainError("base graph must be simple with links only")
    if len(delta.nodes) < 3:
        raise DomainError("base graph must have order at least 3")
    if not is_inseparable(delta):
        raise DomainError("base graph must be inseparable")


def expansion_pipeline(rep, delta: Graph, parallel_map: dict | None = None) -> ExpansionReport:
    """Cross-closure, reconstruction, biased expansion and subgroup recovery.

    ``rep`` is a Menelaean or orthographic point representation or an
    affinographic arrangement; the arrangement also needs ``parallel_map``
    from hyperplanes to base edges.
    """
    _expansion_preconditions(delta)
    kind = rep.kind
    if kind == "menelaean":
        links = {k: v for k, v in rep.points.items() if not any(ProjectivePoint(v) == ProjectivePoint(b) for b in rep.basis.values())}
        cc = is_cross_closed(FrameContext(rep.basis), links, delta)
        omega, _ = reconstruct_frame(rep.basis, links)
        gains_of = lambda om: menelaean_gains(rep.basis, links, om)
    elif kind == "orthographic":
        cc = is_cross_closed(OrthoContext(rep.e0), rep.points, delta)
        omega, proj = reconstruct_ortho(rep.points, rep.e0, delta)
        gains_of = lambda om: ortho_gains(rep.points, rep.e0, om, proj, delta)
    elif kind == "affinographic":
        if parallel_map is None:
            raise InputError("affinographic pipeline needs the hyperplane-to-edge map")
        cc = None
        omega = reconstruct_affino(rep, delta, parallel_map)
        gains_of = lambda om: affino_gains(rep, om)
    else:
        raise InputError(f"no expansion pipeline for {kind!r}")
    check = is_biased_expansion(omega, natural_projection(omega, delta))
    sub = None
    if check:
        phi = gains_of(omega)
        h = is_subgroup_expansion(phi, delta)
        if h is not None:
            sub = sorted(phi.group.format(x) for x in h)
    return ExpansionReport(
        kind,
        None if cc is None else cc.ok,
        None if cc is None else cc.witness,
        check.ok,
        check.witness,
        sub,
    )


def planted_representation(kind: str, group: Group, subgroup: Sequence, delta: Graph, seed: int = 0):
    phi = subgroup_gain_graph(group, subgroup, delta, seed)
    if kind == "menelaean":
        return menelaean_points(phi), None
    if kind == "orthographic":
        return orthographic_points(phi), None
    if kind == "affinographic":
        arr = affinographic_arrangement(phi)
        return arr, {e.id: e.id.split(":")[0] for e in phi.graph.links}
    raise InputError(f"unknown representation kind {kind!r}")


__all__ = [
    "TAGS",
    "CorpusSpec",
    "VerificationReport",
    "generate_corpus",
    "verify_theorem",
    "verify_corpus",
    "canonical_report",
    "applicable_tags",
    "reports_to_jsonl",
    "append_reports",
    "perturb_point",
    "perturb_covector",
    "perturbable_link",
    "dowling",
    "DowlingResult",
    "dowling_binary_to_complete",
    "graphic_complete",
    "subgroup_gain_graph",
    "expansion_pipeline",
    "ExpansionReport",
    "planted_representation",
]
