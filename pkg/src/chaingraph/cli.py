"""Command-line interface.

Every subcommand reads the graph file format of :mod:`chaingraph.parsing`,
prints a deterministic text report, and supports ``--json`` for a
machine-readable report validating against the schema shipped in
``chaingraph/schemas/report.schema.json``.  Exit codes: 0 success, 1 domain
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import equivalence, gaussian, separation, structures
from .errors import GraphError
from .graphs import (
    ChainGraph,
    an_closure,
    at_closure,
    chain_components,
    co_closure,
    vertex_subset,
)
from .parsing import parse_graph, serialize_graph


def _load(path: str) -> ChainGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _parse_set(value: str | None) -> tuple[str, ...]:
    if not value:
        return ()
    return tuple(sorted({part for part in value.split(",") if part}))


def _fmt_float(value: float) -> float:
    return float(f"{value:.12g}")


def _round_floats(obj):
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit(args, payload: dict, text: list[str]) -> int:
    if args.json:
        print(json.dumps(_round_floats(payload), indent=2, sort_keys=True))
    else:
        for line in text:
            print(line)
    return 0


def _graph_payload(graph: ChainGraph) -> dict:
    return {
        "vertices": list(graph.vertices),
        "lines": [list(pair) for pair in sorted(graph.lines)],
        "arrows": [list(pair) for pair in sorted(graph.arrows)],
    }


def _graph_text(graph: ChainGraph, indent: str = "  ") -> list[str]:
    body = serialize_graph(graph)
    if not body:
        return [indent + "(empty graph)"]
    return [indent + line for line in body.splitlines()]


def _set_text(values) -> str:
    values = sorted(values)
    return ",".join(values) if values else "()"


def _flag_text(flag: structures.Flag) -> str:
    left = "->" if flag.kind in (structures.IMMORALITY, structures.ARROW_LINE) else "--"
    right = "<-" if flag.kind in (structures.IMMORALITY, structures.LINE_ARROW) else "--"
    return f"{flag.a} {left} {flag.c} {right} {flag.b}"

def _flag_payload(flag: structures.Flag) -> dict:
    return {"a": flag.a, "c": flag.c, "b": flag.b, "kind": flag.kind}


def _complex_text(record: structures.MinimalComplex) -> str:
    return f"{record.a} -> {' -- '.join(record.path)} <- {record.b}"


def _statement_text(statement: separation.CIStatement) -> str:
    clause = {
        separation.SOURCE_BLOCK_A: "a",
        separation.SOURCE_BLOCK_B: "b",
        separation.SOURCE_BLOCK_B_STAR: "b*",
        separation.SOURCE_BLOCK_C: "c",
        separation.SOURCE_ADG_LOCAL: "adg",
    }.get(statement.source, statement.source)
    q = statement.query
    return f"{clause}: {_set_text(q.a)} _||_ {_set_text(q.b)} | {_set_text(q.s)}"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(args) -> int:
    graph = _load(args.file)
    payload = {
        "command": "validate",
        "ok": True,
        "vertices": len(graph.vertices),
        "lines": len(graph.lines),
        "arrows": len(graph.arrows),
    }
    text = [
        f"valid chain graph: {len(graph.vertices)} vertices, "
        f"{len(graph.lines)} lines, {len(graph.arrows)} arrows"
    ]
    return _emit(args, payload, text)


def _cmd_components(args) -> int:
    graph = _load(args.file)
    structure = chain_components(graph)
    comps = [sorted(c) for c in structure.components]
    dag = sorted(structure.component_dag)
    payload = {
        "command": "components",
        "components": comps,
        "dag": [list(edge) for edge in dag],
    }
    text = [f"component {i}: {' '.join(c)}" for i, c in enumerate(comps)]
    text.extend(f"dag: {i} -> {j}" for i, j in dag)
    if not dag:
        text.append("dag: (no edges)")
    return _emit(args, payload, text)


def _cmd_closure(args) -> int:
    graph = _load(args.file)
    subset = _parse_set(args.set)
    fn = {"co": co_closure, "an": an_closure, "at": at_closure}[args.kind]
    result = sorted(fn(graph, subset))
    payload = {
        "command": "closure",
        "kind": args.kind,
        "input": list(subset),
        "result": result,
    }
    return _emit(args, payload, [f"{args.kind}({_set_text(subset)}) = {_set_text(result)}"])


def _cmd_moral(args) -> int:
    graph = _load(args.file)
    subset = _parse_set(args.set) or graph.vertices
    result = structures.moral(structures.spanned_subgraph(graph, subset))
    payload = {
        "command": "moral",
        "set": sorted(set(subset)),
        "graph": _graph_payload(result),
    }
    return _emit(args, payload, ["moral graph of spanned subgraph:"] + _graph_text(result))


def _cmd_augment(args) -> int:
    graph = _load(args.file)
    subset = _parse_set(args.set) or graph.vertices
    result = structures.augmented(structures.extended_subgraph(graph, subset))
    payload = {
        "command": "augment",
        "set": sorted(set(subset)),
        "graph": _graph_payload(result),
    }
    return _emit(args, payload, ["augmented extended subgraph:"] + _graph_text(result))


def _cmd_features(args) -> int:
    graph = _load(args.file)
    all_flags = sorted(structures.flags(graph), key=structures.Flag.sort_key)
    doubles = sorted(structures.double_flags(graph), key=structures.DoubleFlag.sort_key)
    complexes = sorted(
        structures.minimal_complexes(graph), key=structures.MinimalComplex.sort_key
    )
    payload = {
        "command": "features",
        "flags": [_flag_payload(f) for f in all_flags],
        "immoralities": [
            _flag_payload(f) for f in all_flags if f.kind == structures.IMMORALITY
        ],
        "double_flags": [
            {"a": d.a, "c": d.c, "d": d.d, "b": d.b} for d in doubles
        ],
        "minimal_complexes": [
            {"a": c.a, "path": list(c.path), "b": c.b} for c in complexes
        ],
    }

    def block(title: str, rows: list[str]) -> list[str]:
        return [f"{title}:"] + ([f"  {r}" for r in rows] if rows else ["  (none)"])

    text = block("flags", [f"{_flag_text(f)}  [{f.kind}]" for f in all_flags])
    text += block(
        "immoralities",
        [_flag_text(f) for f in all_flags if f.kind == structures.IMMORALITY],
    )
    text += block(
        "double flags", [f"{d.a} -> {d.c} -- {d.d} <- {d.b}" for d in doubles]
    )
    text += block("minimal complexes", [_complex_text(c) for c in complexes])
    return _emit(args, payload, text)


def _cmd_query(args) -> int:
    graph = _load(args.file)
    a = _parse_set(args.a)
    b = _parse_set(args.b)
    s = _parse_set(args.s)
    test = separation.lwf_separated if args.criterion == "lwf" else separation.amp_separated
    verdict = test(graph, a, b, s)
    joint = vertex_subset(graph, a) | vertex_subset(graph, b) | vertex_subset(graph, s)
    substrate = separation.separation_substrate(graph, args.criterion, joint)
    payload = {
        "command": "query",
        "criterion": args.criterion,
        "a": list(a),
        "b": list(b),
        "s": list(s),
        "separated": verdict,
        "substrate": _graph_payload(substrate),
    }
    text = ["SEPARATED" if verdict else "NOT SEPARATED", "substrate:"]
    text += _graph_text(substrate)
    return _emit(args, payload, text)


def _cmd_ci_list(args) -> int:
    graph = _load(args.file)
    mode = "full" if args.full else "pairwise"
    triples = separation.enumerate_triples(graph, args.criterion, mode)
    payload = {
        "command": "ci-list",
        "criterion": args.criterion,
        "mode": mode,
        "triples": [
            {"a": list(q.a), "b": list(q.b), "s": list(q.s)} for q in triples
        ],
    }
    text = [
        f"{_set_text(q.a)} _||_ {_set_text(q.b)} | {_set_text(q.s)}" for q in triples
    ]
    text.append(f"total: {len(triples)}")
    return _emit(args, payload, text)


def _cmd_statements(args) -> int:
    graph = _load(args.file)
    statements = separation.block_recursive_statements(graph, args.variant)
    payload = {
        "command": "statements",
        "variant": args.variant,
        "statements": [
            {
                "source": st.source,
                "a": list(st.query.a),
                "b": list(st.query.b),
                "s": list(st.query.s),
            }
            for st in statements
        ],
    }
    return _emit(args, payload, [_statement_text(st) for st in statements] or ["(none)"])


def _cmd_equiv(args) -> int:
    first = _load(args.file1)
    second = _load(args.file2)
    check = {
        "adg": equivalence.adg_equivalent,
        "lwf": equivalence.lwf_equivalent,
        "amp": equivalence.amp_equivalent,
    }[args.criterion]
    verdict = check(first, second)
    fp1 = equivalence.fingerprint(first, args.criterion)
    fp2 = equivalence.fingerprint(second, args.criterion)
    skel_first = sorted(fp1.skeleton - fp2.skeleton)
    skel_second = sorted(fp2.skeleton - fp1.skeleton)
    feat_first, feat_second = fp1.feature_difference(fp2)
    payload = {
        "command": "equiv",
        "criterion": args.criterion,
        "equivalent": verdict,
        "skeleton_only_first": [list(p) for p in skel_first],
        "skeleton_only_second": [list(p) for p in skel_second],
        "features_only_first": sorted(_feature_str(f) for f in feat_first),
        "features_only_second": sorted(_feature_str(f) for f in feat_second),
    }
    text = ["EQUIVALENT" if verdict else "NOT EQUIVALENT"]
    if not verdict:
        for label, pairs in (("first", skel_first), ("second", skel_second)):
            for u, w in pairs:
                text.append(f"skeleton only in {label}: {u} -- {w}")
        for label, feats in (("first", feat_first), ("second", feat_second)):
            for feat in sorted(_feature_str(f) for f in feats):
                text.append(f"feature only in {label}: {feat}")
    return _emit(args, payload, text)


def _feature_str(feature) -> str:
    if isinstance(feature, structures.Flag):
        return f"{feature.kind} {_flag_text(feature)}"
    if len(feature) == 2:  # amp flag position: ({end, end}, center)
        ends, center = feature
        a, b = sorted(ends)
        return f"flag ({a},{center},{b})"
    a, span, b = feature
    return f"complex {a} -> {{{','.join(sorted(span))}}} <- {b}"


def _cmd_coincide(args) -> int:
    graph = _load(args.file)
    verdict = equivalence.lwf_amp_coincide(graph)
    witness = equivalence.coincidence_witness(graph)
    payload = {
        "command": "coincide",
        "coincide": verdict,
        "witness": None if witness is None else _flag_payload(witness),
    }
    text = ["COINCIDE" if verdict else "DIFFER"]
    if witness is not None:
        text.append(f"witness flag: {_flag_text(witness)}  [{witness.kind}]")
    return _emit(args, payload, text)


def _cmd_certify(args) -> int:
    graph = _load(args.file)
    report = gaussian.certify(
        graph,
        args.criterion,
        seeds=args.seeds,
        sound_tol=args.sound_tol,
        complete_threshold=args.complete_threshold,
    )
    payload = {"command": "certify", **report.to_dict()}
    text = [
        f"criterion: {report.criterion}",
        f"seeds: {report.seeds}",
        f"sound tolerance: {report.sound_tol:.12g}",
        f"dependence threshold: {report.complete_threshold:.12g}",
        f"separated triples (full): {report.separated_count}",
        f"statements: {report.statement_count}",
        f"dependent pairwise triples: {report.dependent_count}",
        f"worst sound residual: {report.worst_sound:.12g}",
        "weakest dependence: "
        + (
            f"{report.weakest_dependence:.12g}"
            if report.weakest_dependence is not None
            else "n/a"
        ),
    ]
    for v in report.soundness_violations:
        text.append(
            f"soundness violation [{v.source}] seed {v.seed}: "
            f"{_set_text(v.a)} _||_ {_set_text(v.b)} | {_set_text(v.s)} "
            f"residual {v.magnitude:.12g}"
        )
    for f in report.completeness_failures:
        text.append(
            f"completeness failure: {_set_text(f.a)} _||_ {_set_text(f.b)} | "
            f"{_set_text(f.s)} max {f.magnitude:.12g}"
        )
    text.append("result: OK" if report.ok else "result: VIOLATIONS")
    return _emit(args, payload, text)


def _cmd_atlas(args) -> int:
    classes: dict = {}
    total = 0
    for graph in equivalence.enumerate_chain_graphs(args.n):
        if args.criterion == "adg" and not graph.is_directed:
            continue
        total += 1
        key = equivalence.fingerprint(graph, args.criterion)
        classes[key] = classes.get(key, 0) + 1
    histogram: dict[int, int] = {}
    for size in classes.values():
        histogram[size] = histogram.get(size, 0) + 1
    payload = {
        "command": "atlas",
        "n": args.n,
        "criterion": args.criterion,
        "graphs": total,
        "classes": len(classes),
        "size_histogram": [
            {"size": size, "classes": count}
            for size, count in sorted(histogram.items(), reverse=True)
        ],
    }
    text = [f"{total} graphs in {len(classes)} equivalence classes"]
    text.extend(
        f"classes of size {size}: {count}"
        for size, count in sorted(histogram.items(), reverse=True)
    )
    return _emit(args, payload, text)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaingraph",
        description="Chain-graph structure queries, equivalence, and certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.set_defaults(func=handler)
        return p

    p = add("validate", _cmd_validate, help="check a graph file")
    p.add_argument("file")

    p = add("components", _cmd_components, help="chain components and component dag")
    p.add_argument("file")

    p = add("closure", _cmd_closure, help="coherent/ancestral/anterior closure")
    p.add_argument("file")
    p.add_argument("--set", required=True, help="comma-separated vertex ids")
    p.add_argument("--kind", required=True, choices=("co", "an", "at"))

    p = add("moral", _cmd_moral, help="moral graph of the spanned subgraph")
    p.add_argument("file")
    p.add_argument("--set", help="comma-separated vertex ids; default all")

    p = add("augment", _cmd_augment, help="augmented extended subgraph")
    p.add_argument("file")
    p.add_argument("--set", help="comma-separated vertex ids; default all")

    p = add("features", _cmd_features, help="flags, double flags, minimal complexes")
    p.add_argument("file")

    p = add("query", _cmd_query, help="separation query under one criterion")
    p.add_argument("file")
    p.add_argument("--criterion", required=True, choices=("lwf", "amp"))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--s", default="")

    p = add("ci-list", _cmd_ci_list, help="enumerate separated triples")
    p.add_argument("file")
    p.add_argument("--criterion", required=True, choices=("lwf", "amp"))
    p.add_argument("--full", action="store_true", help="set-valued sides, not just pairs")

    p = add("statements", _cmd_statements, help="block-recursive statements")
    p.add_argument("file")
    p.add_argument("--variant", required=True, choices=("lwf", "amp"))

    p = add("equiv", _cmd_equiv, help="Markov equivalence of two graphs")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--criterion", required=True, choices=("adg", "lwf", "amp"))

    p = add("coincide", _cmd_coincide, help="do the two criteria agree on this graph")
    p.add_argument("file")

    p = add("certify", _cmd_certify, help="Gaussian certification report")
    p.add_argument("file")
    p.add_argument("--criterion", required=True, choices=("lwf", "amp"))
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--sound-tol", type=float, default=gaussian.DEFAULT_SOUND_TOL)
    p.add_argument(
        "--complete-threshold",
        type=float,
        default=gaussian.DEFAULT_COMPLETE_THRESHOLD,
    )

    p = add("atlas", _cmd_atlas, help="equivalence classes of all small graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--criterion", required=True, choices=("adg", "lwf", "amp"))

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        if getattr(args, "json", False):
            payload = {
                "command": args.command,
                "ok": False,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            }
            print(json.dumps(_round_floats(payload), indent=2, sort_keys=True))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
