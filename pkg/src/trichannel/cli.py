"""Command-line entry point (``trichannel``).

Exit codes: 0 ok / reduced, 1 bad input, 2 verification failure,
3 reduction not achieved.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import harness
from .channels import all_channels, find_channel, swap_channel
from .coloring import (
    TaitColoring,
    dumps_tcol,
    dumps_vcol,
    loads_coloring,
    parse_pair,
    validate_tait,
    vertex_to_edge,
)
from .corpus import CORPUS_NAMES, corpus_graph
from .errors import DepthLimit, TriChannelError
from .oracle import brute_force_4color, enumerate_colorings
from .reduction import (
    REDUCED,
    MoveTrace,
    classify_wheel,
    reduce_vertex,
    replay_outcome,
)
from .triangulation import dumps_trig, loads_trig, puncture, random_triangulation

log = logging.getLogger("trichannel")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_UNREDUCED = 0, 1, 2, 3


def load_graph(spec: str):
    """A TRIG file path, or ``corpus:NAME`` for a built-in graph."""
    if spec.startswith("corpus:"):
        return corpus_graph(spec.split(":", 1)[1])
    return loads_trig(Path(spec).read_text())


def load_edge_coloring(t, path: str) -> TaitColoring:
    col = loads_coloring(t, Path(path).read_text())
    return col if isinstance(col, TaitColoring) else vertex_to_edge(t, col)


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def emit_json(obj, out: str | None = None) -> None:
    emit(json.dumps(obj, indent=1, sort_keys=True) + "\n", out)


def channels_dot(t, channels) -> str:
    lines = ["graph channels {"]
    for u, v in t.edges:
        lines.append(f"  {u} -- {v} [color=gray];")
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]
    for i, ch in enumerate(channels):
        for e in ch.interior_edges:
            u, v = t.edges[e]
            lines.append(f'  {u} -- {v} [color={palette[i % len(palette)]}, penwidth=3, label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- subcommands ----------------------------------------------------------------------------


def cmd_gen(args) -> int:
    t = corpus_graph(args.corpus) if args.corpus else random_triangulation(args.n, args.seed)
    emit(dumps_trig(t), args.out)
    return EXIT_OK


def cmd_color(args) -> int:
    t = load_graph(args.graph)
    vc = brute_force_4color(t)
    if vc is None:
        log.error("no 4-coloring found")
        return EXIT_VERIFY
    emit(dumps_tcol(t, vertex_to_edge(t, vc)) if args.edges else dumps_vcol(vc), args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    t = load_graph(args.graph)
    res = enumerate_colorings(t, cap=args.cap)
    if args.json or args.format == "json":
        emit_json({"fingerprint": res.fingerprint, "vertex_colorings": res.vertex_count, "tait_colorings": res.tait_count})
    else:
        print(f"{res.vertex_count} vertex colorings, {res.tait_count} edge colorings")
    return EXIT_OK


def cmd_verify(args) -> int:
    code, report = harness.verify_files(args.graph, args.coloring, args.samples, args.seed)
    if not args.quiet or code:
        emit_json(report)
    return code


def cmd_channels(args) -> int:
    t = load_graph(args.graph)
    ec = load_edge_coloring(t, args.coloring)
    chans = all_channels(t, ec, parse_pair(args.pair))
    if args.format == "dot":
        emit(channels_dot(t, chans), args.out)
    else:
        emit_json([ch.to_json(t) for ch in chans], args.out)
    return EXIT_OK


def _parse_start(text: str):
    if "," in text or "-" in text:
        u, v = text.replace("-", ",").split(",")
        return int(u), int(v)
    return int(text)


def cmd_swap(args) -> int:
    t = load_graph(args.graph)
    ec = load_edge_coloring(t, args.coloring)
    ch = find_channel(t, ec, _parse_start(args.start), parse_pair(args.pair))
    new = swap_channel(ec, ch)
    if validate_tait(t, new):
        log.error("swap produced an invalid coloring")
        return EXIT_VERIFY
    emit(dumps_tcol(t, new), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.replay:
        return _replay_dump(args)
    if args.graph is None or args.vertex is None:
        log.error("reduce needs --graph and --vertex (or --replay)")
        return EXIT_INPUT
    t = load_graph(args.graph)
    tp = puncture(t, args.vertex)
    if args.coloring:
        ec = load_edge_coloring(tp, args.coloring)
    else:
        vc = brute_force_4color(tp)
        ec = vertex_to_edge(tp, vc)
    try:
        vc_full, trace = reduce_vertex(t, args.vertex, ec, args.strategy, args.budget)
    except DepthLimit as exc:
        log.error("%s", exc)
        return EXIT_UNREDUCED
    doc = {
        "graph": dumps_trig(t),
        "vertex": args.vertex,
        "initial_class": classify_wheel(tp, ec).cls,
        "trace": trace.to_json(),
        "coloring": list(vc_full) if vc_full else None,
    }
    if args.trace:
        emit_json(doc, args.trace)
    if not args.quiet:
        emit_json({k: doc[k] for k in ("vertex", "initial_class", "trace", "coloring")})
    return EXIT_OK if trace.outcome == REDUCED else EXIT_UNREDUCED


def _replay_dump(args) -> int:
    doc = json.loads(Path(args.replay).read_text())
    t = loads_trig(doc["graph"])
    tp = puncture(t, doc["vertex"])
    trace = MoveTrace.from_json(doc["trace"])
    outcome = replay_outcome(tp, trace)
    same = outcome == trace.outcome
    if not args.quiet:
        emit_json({"recorded": trace.outcome, "replayed": outcome, "match": same})
    if not same:
        return EXIT_VERIFY
    return EXIT_OK if outcome == REDUCED else EXIT_UNREDUCED


def cmd_fuzz(args) -> int:
    cfg = harness.FuzzConfig(
        trials=args.trials,
        n_min=args.n_min,
        n_max=args.n_max,
        seed=args.seed,
        strategy=args.strategy,
        budget=args.budget,
        depth_limit=args.depth_limit,
        degree=args.degree,
        force_blocked=not args.no_force,
        output=args.out,
    )
    report = harness.fuzz_reduction(cfg)
    if not args.quiet:
        emit_json(report["aggregates"])
    critical = [d for d in report["dumps"] if d.get("critical")]
    return EXIT_UNREDUCED if critical else EXIT_OK


def cmd_replay(args) -> int:
    report = harness.replay_scenario(args.name)
    if args.out or not args.quiet:
        emit_json(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_UNREDUCED


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress):
        g = argparse.ArgumentParser(add_help=False)
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        g.add_argument("--seed", type=int, **(kw or {"default": 0}), help="master seed (default 0)")
        g.add_argument("--format", choices=("json", "dot"), **(kw or {"default": "json"}))
        g.add_argument("--quiet", action="store_true", **kw)
        return g

    # Global flags are accepted before or after the subcommand.
    common = global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="trichannel", description=__doc__.splitlines()[0], parents=[global_flags(False)])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("gen", cmd_gen, "generate a random triangulation (TRIG)")
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--corpus", choices=CORPUS_NAMES)
    sp.add_argument("--out")

    sp = add("color", cmd_color, "oracle 4-coloring (VCOL, or TCOL with --edges)")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--edges", action="store_true")
    sp.add_argument("--out")

    sp = add("enumerate", cmd_enumerate, "count all colorings")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--cap", type=int, default=10**6)
    sp.add_argument("--json", action="store_true")

    sp = add("verify", cmd_verify, "check a coloring file against a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--samples", type=int, default=100)

    sp = add("channels", cmd_channels, "list the channels of a color pair")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--pair", required=True)
    sp.add_argument("--out")

    sp = add("swap", cmd_swap, "swap one channel")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--pair", required=True)
    sp.add_argument("--start", required=True, help="triangle id, or hole edge as u,v")
    sp.add_argument("--out")

    sp = add("reduce", cmd_reduce, "reduce a degree-5 vertex, or --replay a trace/dump")
    sp.add_argument("--graph")
    sp.add_argument("--vertex", type=int)
    sp.add_argument("--coloring", help="coloring of the punctured graph (default: oracle)")
    sp.add_argument("--strategy", choices=("guided", "bfs"), default="guided")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--trace", help="write the trace document here")
    sp.add_argument("--replay", help="replay a trace document")

    sp = add("fuzz", cmd_fuzz, "fuzz the reduction procedure")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--n-min", type=int, default=12)
    sp.add_argument("--n-max", type=int, default=60)
    sp.add_argument("--strategy", choices=("guided", "bfs", "both"), default="both")
    sp.add_argument("--budget", type=int, default=harness.DEFAULT_BUDGET)
    sp.add_argument("--depth-limit", type=int, default=harness.DEFAULT_DEPTH_LIMIT)
    sp.add_argument("--degree", type=int, choices=(4, 5), default=5)
    sp.add_argument("--no-force", action="store_true", help="use the plain oracle coloring")
    sp.add_argument("--out")

    sp = add("replay", cmd_replay, "replay a corpus scenario")
    sp.add_argument("name", choices=sorted(harness.SCENARIOS))
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (TriChannelError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
