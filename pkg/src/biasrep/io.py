"""JSON forms of graphs, biased graphs, gain graphs and representations.

Schemas (all ids are strings, field elements are strings such as "3" or "-1/2"):

  graph       {"nodes": [...], "edges": [{"id": "a", "ends": ["1", "2"]}, {"id": "h", "ends": ["1"]}]}
  biased      {"graph": graph, "balanced": [["a", "b", "c"], ...]}
  gain graph  {"graph": graph, "group": group, "gains": {"a": "2", "b": {"tail": "3", "value": "2"}}}
  group       {"kind": "field*", "field": "GF(5)"} | {"kind": "field+", "field": "Q"}
              | {"kind": "table", "name": "Z3", "elements": [...], "table": [[...]]}
  vector      {"field": "GF(5)", "coords": {"1": "1", "2": "3"}}
  points      {"kind": "menelaean", "field": ..., "index": [...], "points": {label: coords},
               "basis": {node: coords}, "e0": coords}
  hyperplanes {"kind": "cevian", "field": ..., "index": [...],
               "covectors": {label: {"coords": coords, "constant": "3"}}, "infinity": {...}}

A bare gain like ``"a": "2"`` is read from the smaller endpoint to the larger.
"""

from __future__ import annotations

import json
from pathlib import Path

from .biased import BiasedGraph
from .errors import InputError
from .fields import parse_field
from .gains import GainGraph, example_I_5_8
from .graph import Graph, HalfEdge, Link
from .groups import Group, group_from_json, parse_group
from .linalg import Covector, Vector
from .representations import HyperplaneRepresentation, PointRepresentation

BUILTIN_INSTANCES = {"example-i58": example_I_5_8}


def graph_to_json(g: Graph) -> dict:
    return {"nodes": list(g.nodes), "edges": [{"id": e.id, "ends": list(e.ends)} for e in g.edges]}


def graph_from_json(d: dict) -> Graph:
    try:
        nodes = [str(v) for v in d["nodes"]]
        edges = []
        for item in d["edges"]:
            eid, ends = str(item["id"]), [str(x) for x in item["ends"]]
            if len(ends) == 1:
                edges.append(HalfEdge(eid, ends[0]))
            elif len(ends) == 2:
                edges.append(Link(eid, *ends))
            else:
                raise InputError(f"edge {eid!r} must have one or two ends")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph JSON: missing or bad {exc}") from None
    return Graph(nodes, edges)


def biased_to_json(omega: BiasedGraph) -> dict:
    order = {e: i for i, e in enumerate(omega.edge_ids)}
    circles = sorted((sorted(c, key=order.get) for c in omega.balanced), key=lambda c: (len(c), c))
    return {"graph": graph_to_json(omega.graph), "balanced": circles}


def biased_from_json(d: dict, validate: bool = True) -> BiasedGraph:
    if "graph" not in d or "balanced" not in d:
        raise InputError("biased graph JSON needs 'graph' and 'balanced'")
    return BiasedGraph(graph_from_json(d["graph"]), [list(c) for c in d["balanced"]], validate=validate)


def group_to_json(group: Group) -> dict:
    return group.to_json()


def gain_graph_to_json(phi: GainGraph) -> dict:
    return {
        "graph": graph_to_json(phi.graph),
        "group": group_to_json(phi.group),
        "gains": {eid: phi.group.format(x) for eid, x in phi.gains.items()},
    }


def gain_graph_from_json(d: dict, group: Group | None = None) -> GainGraph:
    if "graph" not in d or "gains" not in d:
        raise InputError("gain graph JSON needs 'graph' and 'gains'")
    g = graph_from_json(d["graph"])
    if group is None:
        if "group" not in d:
            raise InputError("gain graph has no group; pass --group")
        group = group_from_json(d["group"]) if isinstance(d["group"], dict) else parse_group(d["group"])
    directed = {}
    for eid, val in d["gains"].items():
        e = g.edge(eid)
        if isinstance(val, dict):
            directed[eid] = (str(val["tail"]), group.parse(str(val["value"])))
        else:
            directed[eid] = (e.ends[0], group.parse(str(val)))
    return GainGraph.from_directed(g, group, directed)


def vector_to_json(v: Vector) -> dict:
    return v.to_json()


def _vector(field, index, coords: dict) -> Vector:
    return Vector.from_map(field, index, {str(k): str(x) for k, x in coords.items()})


def vector_from_json(d: dict, index) -> Vector:
    return _vector(parse_field(d["field"]), index, d["coords"])


def representation_to_json(rep) -> dict:
    return rep.to_json()


def representation_from_json(d: dict):
    try:
        f = parse_field(d["field"])
        index = tuple(str(x) for x in d["index"])
        kind = d["kind"]
        if "points" in d:
            pts = {k: _vector(f, index, c) for k, c in d["points"].items()}
            basis = {k: _vector(f, index, c) for k, c in d["basis"].items()} if "basis" in d else None
            e0 = _vector(f, index, d["e0"]) if "e0" in d else None
            return PointRepresentation(kind, f, index, pts, e0=e0, basis=basis)
        if "covectors" in d:
            cov = {}
            for k, c in d["covectors"].items():
                const = f.parse(str(c["constant"])) if "constant" in c else None
                cov[k] = Covector(_vector(f, index, c["coords"]), const)
            inf = Covector(_vector(f, index, d["infinity"]["coords"])) if "infinity" in d else None
            return HyperplaneRepresentation(kind, f, index, cov, infinity=inf)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed representation JSON: missing or bad {exc}") from None
    raise InputError("representation JSON needs 'points' or 'covectors'")


def load_json(source: str):
    """Parse a path, or ``-`` for stdin."""
    import sys

    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {source}: {exc.msg} at line {exc.lineno}") from None


def load_instance(source: str, group: Group | None = None, validate: bool = True):
    """A built-in name, or a JSON file holding a gain graph, biased graph or graph."""
    if source in BUILTIN_INSTANCES:
        return BUILTIN_INSTANCES[source]()
    d = load_json(source)
    if not isinstance(d, dict):
        raise InputError(f"{source}: expected a JSON object")
    if "gains" in d:
        return gain_graph_from_json(d, group)
    if "balanced" in d:
        return biased_from_json(d, validate=validate)
    if "nodes" in d:
        return graph_from_json(d)
    raise InputError(f"{source}: not a graph, biased graph or gain graph")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


__all__ = [
    "graph_to_json",
    "graph_from_json",
    "biased_to_json",
    "biased_from_json",
    "gain_graph_to_json",
    "gain_graph_from_json",
    "vector_to_json",
    "vector_from_json",
    "representation_to_json",
    "representation_from_json",
    "load_json",
    "load_instance",
    "dumps",
]
