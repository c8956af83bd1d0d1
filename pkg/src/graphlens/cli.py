"""Command line front-end: ingest, schema, views, walks, DOT export and the
desk-scale oracle checks.

Exit codes: 0 success, 1 oracle mismatch, 2 input parse errors, 3 semantic
errors (unknown labels, selections outside the view, ...), 4 internal errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .core import Filter, LabeledGraph, derive_schema, parse_graph_text
from .dot import view_to_dot
from .errors import GraphLensError, ParseError, TooLarge, Unconnectable
from .matching import enumerate_matches
from .oracle import brute_view_supports, solver_agrees_with_oracle
from .patterns import GraphPattern
from .session import (
    NavGraph,
    OpKind,
    enumerate_nav_states,
    expand,
    make_state,
    nav_state_count,
    navigate,
    select,
)
from .views import full_weighted_json, gen_view, minimal_weighted_json

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_INTERNAL = 4


def _load_graph(path: str) -> LabeledGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def _split_csv(raw: str | None) -> set[str]:
    return {x for x in (raw or "").split(",") if x}


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_ingest(args) -> int:
    g = _load_graph(args.graph)
    summary = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "labels": len(g.labels),
        "dropped_self_loops": g.dropped_self_loops,
        "dropped_duplicate_edges": g.dropped_duplicate_edges,
    }
    _write_out(json.dumps(summary, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_schema(args) -> int:
    schema = derive_schema(_load_graph(args.graph))
    doc = {
        "labels": sorted(schema.labels),
        "edges": [[a, b] for a, b in sorted(schema.edges)],
    }
    _write_out(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _compute_view_json(args) -> str:
    g = _load_graph(args.graph)
    f = Filter.of(g, _split_csv(args.filter))
    view = gen_view(g, f, _split_csv(args.lc), _split_csv(args.lb), undirected=args.undirected)
    return full_weighted_json(view) if args.full else minimal_weighted_json(view)


def cmd_view(args) -> int:
    _write_out(_compute_view_json(args), args.out)
    return EXIT_OK


def cmd_walk(args) -> int:
    g = _load_graph(args.graph)
    state = make_state(g, _split_csv(args.filter), _split_csv(args.lc), _split_csv(args.lb))
    nav = NavGraph(graph=g, entry=state)
    with open(args.script, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            op, _, rest = line.partition(" ")
            if op == "select":
                new = select(g, state, _split_csv(rest), undirected=args.undirected)
                kind = OpKind.SELECTION
            elif op == "expand":
                new = expand(g, state, _split_csv(rest))
                kind = OpKind.EXPANSION
            elif op == "navigate":
                lc_part, sep, lb_part = rest.partition(";")
                if not sep:
                    raise ParseError("navigate needs `L_C,...;L_B,...`", lineno)
                new = navigate(g, state, _split_csv(lc_part), _split_csv(lb_part))
                kind = OpKind.NAVIGATION
            else:
                raise ParseError(f"unknown walk operation: {op!r}", lineno)
            nav.record_step(state, new, kind)
            state = new
    view = gen_view(g, state.filter_obj(), set(state.l_c), set(state.l_b), undirected=args.undirected)
    text = full_weighted_json(view) if args.full else minimal_weighted_json(view)
    _write_out(text + "\n" + nav.export(), args.out)
    return EXIT_OK


def cmd_dot(args) -> int:
    g = _load_graph(args.graph)
    f = Filter.of(g, _split_csv(args.filter))
    view = gen_view(g, f, _split_csv(args.lc), _split_csv(args.lb), undirected=args.undirected)
    from .views import minimal_view, weigh

    wv = weigh(view if args.full else minimal_view(view))
    _write_out(view_to_dot(wv), args.out)
    return EXIT_OK


def _parse_pattern(spec: str) -> GraphPattern:
    """Parse `A>B,B>C` (or a single bare label) into a pattern."""
    vertices: set[str] = set()
    edges: set[tuple[str, str]] = set()
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if ">" in item:
            a, _, b = item.partition(">")
            a, b = a.strip(), b.strip()
            if not a or not b:
                raise ParseError(f"bad pattern edge: {item!r}")
            edges.add((a, b))
            vertices.update((a, b))
        else:
            vertices.add(item)
    if not vertices:
        raise ParseError("empty pattern")
    anchor = min(vertices)
    return GraphPattern(frozenset(vertices), frozenset(edges), anchor, anchor)


def cmd_matches(args) -> int:
    g = _load_graph(args.graph)
    pattern = _parse_pattern(args.pattern)
    f = Filter.of(g, _split_csv(args.filter))
    lines = [f"# {pattern.serialize()}"]
    for m in enumerate_matches(g, pattern, f, undirected=args.undirected):
        lines.append(" ".join(f"{label}={v}" for label, v in m.binding))
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    rng = random.Random(args.seed)
    schema = derive_schema(g)
    labels = sorted(schema.labels)
    report: list[str] = []
    failed = False

    def record(ok: bool, message: str) -> None:
        nonlocal failed
        report.append(("ok   " if ok else "FAIL ") + message)
        failed = failed or not ok

    # pattern generation vs exhaustive Steiner optimum
    if len(labels) <= 6:
        checked = 0
        for _ in range(args.samples):
            k = rng.randint(1, min(4, len(labels)))
            terminals = set(rng.sample(labels, k))
            ordered = sorted(terminals)
            ok, msg = solver_agrees_with_oracle(schema, terminals, ordered[0], ordered[-1])
            if not ok:
                record(False, f"steiner {sorted(terminals)}: {msg}")
            checked += 1
        record(True, f"steiner solver vs optimum on {checked} terminal sets")
    else:
        record(True, f"steiner bound check skipped ({len(labels)} labels > 6)")

    # view construction vs brute-force enumeration
    if len(g.vertices) <= 12 and len(labels) >= 2:
        compared = 0
        for _ in range(args.samples):
            l_c = {rng.choice(labels)}
            l_b = {rng.choice([l for l in labels if l not in l_c])}
            f = Filter(frozenset(v for v in sorted(g.vertices) if rng.random() < 0.3))
            undirected = rng.random() < 0.7
            try:
                view = gen_view(g, f, l_c, l_b, undirected=undirected)
            except Unconnectable:
                continue
            expected = brute_view_supports(g, f, l_c, l_b, undirected=undirected)
            got = (view.c_q, view.b_q, view.vertex_support, view.edge_support)
            if got != expected:
                record(False, f"view mismatch lc={sorted(l_c)} lb={sorted(l_b)} F={sorted(f.members)}")
            compared += 1
        record(True, f"gen_view vs brute force on {compared} states")
    else:
        record(True, "view oracle skipped (graph too large)")

    # navigation state space vs the closed formula
    try:
        states = enumerate_nav_states(g)
        expected_count = nav_state_count(len(g.vertices), len(g.labels))
        record(
            len(states) == expected_count,
            f"nav states {len(states)} vs formula {expected_count}",
        )
    except TooLarge:
        record(True, "nav state enumeration skipped (graph too large)")

    _write_out("\n".join(report) + "\n", args.out)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app, load_config

    config = load_config(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    if args.data_dir:
        config.data_dir = args.data_dir
    if args.directed:
        config.undirected_mode = False
    app = create_app(config)
    if args.ui:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=args.ui, html=True), name="ui")
    uvicorn.run(app, host=config.host, port=config.port)
    return EXIT_OK


def _add_graph_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="graph file (N/E line format)")
    p.add_argument("--out", help="write output to this file instead of stdout")


def _add_view_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--filter", help="comma separated vertex ids forming F")
    p.add_argument("--lc", required=True, help="comma separated view labels")
    p.add_argument("--lb", required=True, help="comma separated bridge labels")
    p.add_argument("--full", action="store_true", help="keep zero-weight vertices")
    _add_mode_args(p)


def _add_mode_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--undirected", dest="undirected", action="store_true", default=True)
    group.add_argument("--directed", dest="undirected", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphlens")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a graph file and print its summary")
    _add_graph_arg(p)
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("schema", help="print the label schema")
    _add_graph_arg(p)
    p.set_defaults(fn=cmd_schema)

    p = sub.add_parser("view", help="compute a weighted view")
    _add_graph_arg(p)
    _add_view_args(p)
    p.set_defaults(fn=cmd_view)

    p = sub.add_parser("walk", help="run a walk script and print final view + history")
    _add_graph_arg(p)
    _add_view_args(p)
    p.add_argument("--script", required=True, help="walk script file")
    p.set_defaults(fn=cmd_walk)

    p = sub.add_parser("dot", help="render a view as DOT")
    _add_graph_arg(p)
    _add_view_args(p)
    p.set_defaults(fn=cmd_dot)

    p = sub.add_parser("matches", help="debug: enumerate pattern matches")
    _add_graph_arg(p)
    p.add_argument("--pattern", required=True, help="pattern edges, e.g. X>Y,Y>Z")
    p.add_argument("--filter", help="comma separated vertex ids forming F")
    _add_mode_args(p)
    p.set_defaults(fn=cmd_matches)

    p = sub.add_parser("oracle", help="run brute-force cross checks")
    _add_graph_arg(p)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--data-dir")
    p.add_argument("--directed", action="store_true", help="exact-direction matching")
    p.add_argument("--ui", help="static directory to mount at /ui")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GraphLensError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
