"""Command-line interface.

Exit codes: 0 success, 1 a check failed (invalid linear class, no gains,
failed verification), 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .biased import BiasedGraph, balance_closure
from .errors import BiasRepError, DomainError, InputError, LinearClassError
from .fields import parse_field
from .gains import GainGraph, example_I_5_8, gain_realizability_search, to_biased
from .graph import Graph, graphic_closure, graphic_rank
from .groups import parse_group
from .harness import (
    TAGS,
    applicable_tags,
    CorpusSpec,
    append_reports,
    dowling,
    generate_corpus,
    reports_to_jsonl,
    verify_corpus,
    verify_theorem,
)
from .matroids import (
    frame_circuits,
    frame_closure,
    frame_rank,
    lift_circuits,
    lift_closure,
    lift_rank,
)
from .representations import (
    affinographic_arrangement,
    cevian_hyperplanes,
    menelaean_points,
    orthographic_points,
    projectivize,
    reconstruct_affino,
    reconstruct_frame,
    reconstruct_ortho,
)

MATROIDS = ("frame", "lift", "lift0", "graphic")
REPRESENTATIONS = {
    "menelaean": menelaean_points,
    "cevian": cevian_hyperplanes,
    "ortho": orthographic_points,
    "orthographic": orthographic_points,
    "affino": affinographic_arrangement,
    "affinographic": affinographic_arrangement,
}


class Failure(Exception):
    """A check ran and came out negative (exit 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", help="Q or GF(p)")
    p.add_argument("--group", help="table:<path>, field*, field+ or a name such as Z3, Z2xZ2, S3")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=None, help="enumeration cap")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="biasrep", description="Biased graphs, gain graphs and their geometric representations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("validate", "check the linear class of a biased or gain graph")
    p.add_argument("input")

    p = add("rank", "rank of an edge set")
    p.add_argument("matroid", choices=MATROIDS)
    p.add_argument("input")
    p.add_argument("--edges", help="comma-separated edge ids (default: all)")

    p = add("circuits", "structural circuit list")
    p.add_argument("matroid", choices=MATROIDS[:3])
    p.add_argument("input")

    p = add("closure", "matroid closure of an edge set")
    p.add_argument("matroid", choices=MATROIDS)
    p.add_argument("input")
    p.add_argument("--edges", required=True)

    p = add("bcl", "balance closure of an edge set")
    p.add_argument("input")
    p.add_argument("--edges", required=True)

    p = add("represent", "geometric representation of a gain graph")
    p.add_argument("kind", choices=sorted(REPRESENTATIONS))
    p.add_argument("input")
    p.add_argument("--projective", action="store_true", help="projectivize an affinographic arrangement")

    p = add("reconstruct", "biased graph of a representation")
    p.add_argument("input", help="representation JSON")
    p.add_argument("--base", help="base graph JSON (orthographic and affinographic)")

    p = add("verify", "run theorem checks on an instance or a seeded corpus")
    p.add_argument("tags", nargs="*", default=["all"], help=f"any of {', '.join(TAGS)} or all")
    p.add_argument("--input", help="a gain graph instead of the corpus")
    p.add_argument("--count", type=int, default=60)
    p.add_argument("--report", help="append JSON-lines reports to this file")

    p = add("search-gains", "search for gains realizing a biased graph")
    p.add_argument("input")

    p = add("dowling", "Dowling geometry of GF(q)^x on n nodes")
    p.add_argument("n", type=int)

    add("example-i58", "print the doubled quadrilateral biased graph with no gains")
    return parser


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _edges(arg, omega) -> list[str]:
    if arg is None:
        return list(omega.edge_ids)
    return [x.strip() for x in arg.split(",") if x.strip()]


def _group(args):
    if args.group is None:
        return None
    return parse_group(args.group, args.field)


def _load(args, source=None):
    return io.load_instance(source or args.input, _group(args))


def _as_biased(obj) -> BiasedGraph:
    if isinstance(obj, BiasedGraph):
        return obj
    if isinstance(obj, GainGraph):
        return to_biased(obj)
    if isinstance(obj, Graph):
        return BiasedGraph(obj, [])
    raise InputError("expected a graph, biased graph or gain graph")


def _as_gain(obj) -> GainGraph:
    if not isinstance(obj, GainGraph):
        raise InputError("this command needs a gain graph")
    return obj


def _fmt_set(s) -> str:
    return "{" + ", ".join(sorted(s)) + "}"


def cmd_validate(args):
    try:
        obj = io.load_instance(args.input, _group(args), validate=False)
        omega = _as_biased(obj) if not isinstance(obj, GainGraph) else to_biased(obj, validate=False)
        omega = BiasedGraph(omega.graph, omega.balanced, validate=True)
    except LinearClassError as exc:
        if args.json:
            _out(io.dumps({"valid": False, "theta": [list(c.edges) for c in exc.theta]}))
        else:
            _out(f"linear class: invalid, {exc}")
        raise Failure() from None
    k = len(omega.balanced)
    if args.json:
        _out(io.dumps({"valid": True, "balanced_circles": k}))
    else:
        _out(f"linear class: valid, {k} balanced circles")


def _rank(kind, obj, edges):
    if kind == "graphic":
        g = obj.graph if not isinstance(obj, Graph) else obj
        return graphic_rank(g, edges)
    omega = _as_biased(obj)
    if kind == "frame":
        return frame_rank(omega, edges)
    return lift_rank(omega, edges, extended=kind == "lift0")


def cmd_rank(args):
    obj = _load(args)
    edges = _edges(args.edges, obj if not isinstance(obj, GainGraph) else obj.graph)
    r = _rank(args.matroid, obj, edges)
    _out(io.dumps({"matroid": args.matroid, "edges": sorted(edges), "rank": r}) if args.json else str(r))


def cmd_circuits(args):
    omega = _as_biased(_load(args))
    kw = {} if args.cap is None else {"cap": args.cap}
    if args.matroid == "frame":
        found = frame_circuits(omega, **kw)
    else:
        found = lift_circuits(omega, extended=args.matroid == "lift0", **kw)
    rows = [sorted(c) for c in found]
    if args.json:
        _out(io.dumps({"matroid": args.matroid, "circuits": rows}))
    else:
        _out("\n".join(_fmt_set(c) for c in rows) if rows else "(no circuits)")


def cmd_closure(args):
    obj = _load(args)
    edges = _edges(args.edges, None)
    if args.matroid == "graphic":
        g = obj if isinstance(obj, Graph) else obj.graph
        cl = graphic_closure(g, edges)
    else:
        omega = _as_biased(obj)
        cl = frame_closure(omega, edges) if args.matroid == "frame" else lift_closure(omega, edges, args.matroid == "lift0")
    _out(io.dumps({"matroid": args.matroid, "closure": sorted(cl)}) if args.json else _fmt_set(cl))


def cmd_bcl(args):
    omega = _as_biased(_load(args))
    cl = balance_closure(omega, _edges(args.edges, omega))
    _out(io.dumps({"bcl": sorted(cl)}) if args.json else _fmt_set(cl))


def _coords_text(v) -> str:
    f = v.field
    return "(" + ", ".join(f.format(c) for c in v.coords) + ")"


def cmd_represent(args):
    phi = _as_gain(_load(args))
    rep = REPRESENTATIONS[args.kind](phi)
    if args.projective:
        if rep.kind != "affinographic":
            raise InputError("--projective applies to affinographic arrangements")
        rep = projectivize(rep)
    if args.json:
        _out(io.dumps(rep.to_json()))
        return
    lines = [f"{rep.kind} over {rep.field.name}, coordinates ({', '.join(rep.index)})"]
    if hasattr(rep, "points"):
        for label, v in rep.elements().items():
            lines.append(f"{label}: {_coords_text(v)}")
    else:
        for label, h in rep.elements().items():
            extra = f" = {rep.field.format(h.constant)}" if h.constant is not None else ""
            lines.append(f"{label}: {_coords_text(h.form)}{extra}")
    _out("\n".join(lines))


def _base_graph(args) -> Graph:
    if not args.base:
        raise InputError("this representation needs --base <graph JSON>")
    obj = io.load_instance(args.base)
    return obj if isinstance(obj, Graph) else obj.graph


def cmd_reconstruct(args):
    rep = io.representation_from_json(io.load_json(args.input))
    if rep.kind == "menelaean":
        if rep.basis is None:
            raise InputError("a Menelaean representation needs its basis")
        omega, _ = reconstruct_frame(rep.basis, rep.points)
    elif rep.kind == "orthographic":
        if rep.e0 is None:
            raise InputError("an orthographic representation needs e0")
        omega, _ = reconstruct_ortho(rep.points, rep.e0, _base_graph(args))
    elif rep.kind == "affinographic":
        delta = _base_graph(args)
        pmap = {}
        for label, h in rep.covectors.items():
            support = {x for x, c in zip(rep.index, h.form.coords) if c != 0}
            match = [b.id for b in delta.links if set(b.ends) == support]
            if len(match) != 1:
                raise InputError(f"hyperplane {label!r} matches no single base edge")
            pmap[label] = match[0]
        omega = reconstruct_affino(rep, delta, pmap)
    else:
        raise InputError(f"cannot reconstruct from a {rep.kind!r} representation")
    if args.json:
        _out(io.dumps(io.biased_to_json(omega)))
    else:
        g = omega.graph
        lines = [f"{len(g.nodes)} nodes, {len(g.edges)} edges, {len(omega.balanced)} balanced circles"]
        lines += [f"{e.id}: {' '.join(e.ends)}" for e in g.edges]
        lines += ["balanced " + _fmt_set(c) for c in sorted(omega.balanced, key=lambda c: (len(c), sorted(c)))]
        _out("\n".join(lines))


def cmd_verify(args):
    tags = list(TAGS) if "all" in args.tags else args.tags
    for t in tags:
        if t not in TAGS:
            raise InputError(f"unknown theorem tag {t!r}; expected one of {', '.join(TAGS)} or all")
    kw = {"seed": args.seed}
    if args.cap is not None:
        kw["cap"] = args.cap
    if args.input:
        phi = _as_gain(_load(args, args.input))
        use = [t for t in tags if t in applicable_tags(phi)]
        if not use:
            raise DomainError(f"none of {tags} applies to gains in {phi.group.name}")
        reports = [verify_theorem(t, phi, args.input, **kw) for t in use]
    else:
        corpus = generate_corpus(CorpusSpec(seed=args.seed, count=args.count))
        reports = verify_corpus(corpus, tags, jobs=max(1, args.jobs), **kw)
    if args.report:
        append_reports(args.report, reports)
    if args.json:
        _out(reports_to_jsonl(reports))
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            extra = "" if r.passed else f" witness {r.witness}"
            lines.append(f"{status} {r.tag} {r.instance}{extra}")
        passed = sum(r.passed for r in reports)
        lines.append(f"{passed}/{len(reports)} passed")
        _out("\n".join(lines))
    if not all(r.passed for r in reports):
        raise Failure()


def cmd_search_gains(args):
    if args.group is None:
        raise InputError("search-gains needs --group")
    group = parse_group(args.group, args.field)
    omega = _as_biased(io.load_instance(args.input, None))
    kw = {} if args.cap is None else {"cap": args.cap}
    found = gain_realizability_search(omega, group, **kw)
    if found is None:
        if args.json:
            _out(io.dumps({"group": group.name, "gains": None}))
        else:
            _out(f"no gain realization in {group.name}")
        raise Failure()
    if args.json:
        _out(io.dumps({"group": group.name, "gains": io.gain_graph_to_json(found)["gains"]}))
    else:
        lines = [f"gain realization in {group.name}:"]
        for e in found.graph.links:
            lines.append(f"{e.id}: {e.u}->{e.v} {group.format(found.gains[e.id])}")
        _out("\n".join(lines))


def cmd_dowling(args):
    if args.field is None:
        raise InputError("dowling needs --field GF(q)")
    res = dowling(args.n, parse_field(args.field))
    if args.json:
        _out(io.dumps({"n": args.n, "field": res.representation.field.name, "points": res.points, "rank": res.rank,
                       "representation": res.representation.to_json()}))
    else:
        _out(f"Dowling geometry over {res.representation.field.name} on {args.n} nodes: {res.points} points, rank {res.rank}")


def cmd_example_i58(args):
    omega = example_I_5_8()
    if args.json:
        _out(io.dumps(io.biased_to_json(omega)))
    else:
        lines = [f"{len(omega.nodes)} nodes, {len(omega.edge_ids)} edges"]
        lines += ["balanced " + _fmt_set(c) for c in sorted(omega.balanced, key=sorted)]
        _out("\n".join(lines))


COMMANDS = {
    "validate": cmd_validate,
    "rank": cmd_rank,
    "circuits": cmd_circuits,
    "closure": cmd_closure,
    "bcl": cmd_bcl,
    "represent": cmd_represent,
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
    "search-gains": cmd_search_gains,
    "dowling": cmd_dowling,
    "example-i58": cmd_example_i58,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except Failure:
        return 1
    except BiasRepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
