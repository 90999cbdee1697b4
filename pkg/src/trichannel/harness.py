"""Fuzz campaigns, corpus scenarios and file verification.

Reports are plain JSON-able dicts.  Wall-clock data lives only under the
``"header"`` key so two runs of the same configuration can be compared with
:func:`strip_header`.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

from .channels import PAIRS, all_channels, all_knobs
from .coloring import (
    TaitColoring,
    dumps_tcol,
    edge_to_face,
    loads_coloring,
    validate_tait,
    vertex_to_edge,
)
from .corpus import corpus_graph
from .errors import (
    BoundaryVertex,
    CapExceeded,
    DepthLimit,
    ImproperColoring,
    ParityViolation,
    ScenarioPreconditionFailed,
    UnknownName,
)
from .oracle import brute_force_4color, enumerate_colorings
from .parity import check_closed_trail, sample_closed_trail, wheel_sum
from .reduction import (
    BLOCKED_AABAC,
    DEFAULT_BUDGET,
    DEFAULT_DEPTH_LIMIT,
    REDUCED,
    attempt_reduction_exhaustive,
    classify_wheel,
    reduce_degree4,
    reduce_vertex,
)
from .triangulation import Triangulation, dumps_trig, puncture, random_triangulation, read_trig

MASK64 = (1 << 64) - 1
FORCE_NODE_LIMIT = 20_000


def mix_seed(master: int, index: int) -> int:
    """splitmix64 of ``master`` advanced ``index + 1`` steps."""
    z = (master + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass
class FuzzConfig:
    trials: int = 100
    n_min: int = 12
    n_max: int = 60
    seed: int = 0
    strategy: str = "both"  # guided | bfs | both
    budget: int = DEFAULT_BUDGET
    depth_limit: int = DEFAULT_DEPTH_LIMIT
    degree: int = 5
    force_blocked: bool = True
    corpus: str | None = None
    keep_traces: bool = False
    output: str | None = None

    def __post_init__(self):
        if self.strategy not in ("guided", "bfs", "both"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.degree not in (4, 5):
            raise ValueError("degree must be 4 or 5")
        if not 4 <= self.n_min <= self.n_max:
            raise ValueError("need 4 <= n_min <= n_max")


# -- instance preparation -------------------------------------------------------------


def blocked_link_colorings(k: int, rng: random.Random):
    """Candidate link colorings using all four colors, in an rng-chosen order."""
    base = []
    if k == 5:
        for i in range(5):
            for perm in itertools.permutations((2, 3, 4)):
                link = [0] * 5
                link[i] = link[(i + 2) % 5] = 1
                rest = [j for j in range(5) if link[j] == 0]
                for j, c in zip(rest, perm):
                    link[j] = c
                base.append(tuple(link))
    else:
        base = [(1,) + perm for perm in itertools.permutations((2, 3, 4))]
    rng.shuffle(base)
    return base


def color_punctured(tp: Triangulation, rng: random.Random, force_blocked: bool):
    """Oracle coloring of ``G - v``; with ``force_blocked`` the link is pinned to four colors.

    Returns ``(vertex coloring, forced)``; falls back to the unconstrained
    oracle when no pinned link admits a coloring within the node limit.
    """
    if force_blocked:
        for link in blocked_link_colorings(len(tp.hole), rng):
            pre = dict(zip(tp.hole, link))
            try:
                vc = brute_force_4color(tp, precolor=pre, max_nodes=FORCE_NODE_LIMIT)
            except CapExceeded:
                continue
            if vc is not None:
                return vc, True
    return brute_force_4color(tp), False


def pick_vertex(t: Triangulation, degree: int, rng: random.Random) -> int | None:
    cands = [v for v in range(t.vertex_count) if t.degree(v) == degree]
    return rng.choice(cands) if cands else None


# -- fuzzing ------------------------------------------------------------------------------


def _strategy_record(trace):
    return {
        "outcome": trace.outcome,
        "category": trace.category,
        "moves": len(trace.moves),
        "knob_rotations": trace.knob_rotations,
        "visited": trace.visited,
        "pointers": trace.pointers,
    }


def _dump(t, v, tp, ec, trace, strategy):
    return {
        "strategy": strategy,
        "graph": dumps_trig(t),
        "vertex": v,
        "tcol": dumps_tcol(tp, ec),
        "trace": trace.to_json() if trace is not None else None,
    }


def run_trial(cfg: FuzzConfig, index: int) -> tuple[dict, list[dict]]:
    seed = mix_seed(cfg.seed, index)
    rng = random.Random(seed)
    if cfg.corpus:
        t = corpus_graph(cfg.corpus)
    else:
        n = rng.randint(cfg.n_min, cfg.n_max)
        t = random_triangulation(n, rng.getrandbits(64))
    rec = {"index": index, "seed": seed, "n": t.vertex_count}
    v = pick_vertex(t, cfg.degree, rng)
    if v is None:
        rec["skipped"] = True
        return rec, []
    tp = puncture(t, v)
    vc, forced = color_punctured(tp, rng, cfg.force_blocked)
    ec = vertex_to_edge(tp, vc)
    ws = classify_wheel(tp, ec)
    rec.update(
        skipped=False,
        vertex=v,
        forced=forced,
        pattern=ws.pattern_string,
        cls=ws.cls,
        pointer=ws.pointer,
        fingerprint=ec.fingerprint,
    )
    dumps = []
    if cfg.keep_traces:
        rec["graph"] = dumps_trig(t)
        rec["traces"] = {}
    if cfg.degree == 4:
        _, trace = reduce_degree4(t, v, ec)
        rec["degree4"] = _strategy_record(trace)
        if cfg.keep_traces:
            rec["traces"]["degree4"] = trace.to_json()
        return rec, dumps
    strategies = ["guided", "bfs"] if cfg.strategy == "both" else [cfg.strategy]
    for name in strategies:
        budget = cfg.budget if name == "guided" else cfg.depth_limit
        try:
            _, trace = reduce_vertex(t, v, ec, name, budget)
        except DepthLimit as exc:
            rec[name] = {"outcome": "depth_limit", "moves": None, "visited": exc.visited}
            dumps.append(dict(_dump(t, v, tp, ec, None, name), index=index, critical=True))
            continue
        rec[name] = _strategy_record(trace)
        if cfg.keep_traces:
            rec["traces"][name] = trace.to_json()
        if trace.outcome != REDUCED:
            dumps.append(dict(_dump(t, v, tp, ec, trace, name), index=index, critical=name == "bfs"))
    return rec, dumps


def aggregate(records: list[dict]) -> dict:
    """Summary statistics recomputable from the per-trial records alone."""
    ran = [r for r in records if not r["skipped"]]
    agg = {
        "trials": len(records),
        "skipped": len(records) - len(ran),
        "forced_blocked": sum(r["forced"] for r in ran),
        "initial_class": dict(sorted(Counter(r["cls"] for r in ran).items())),
    }
    for name in ("guided", "bfs", "degree4"):
        recs = [r[name] for r in ran if name in r]
        if not recs:
            continue
        outcomes = Counter(x["outcome"] for x in recs)
        agg[name] = {
            "outcomes": dict(sorted(outcomes.items())),
            "success_rate": outcomes[REDUCED] / len(recs),
            "move_histogram": {
                str(k): c
                for k, c in sorted(Counter(x["moves"] for x in recs if x["outcome"] == REDUCED).items())
            },
            "categories": dict(sorted(Counter(x.get("category") for x in recs if x.get("category")).items())),
            "knob_rotations": sum(x.get("knob_rotations", 0) for x in recs),
        }
    both = [r for r in ran if r.get("guided", {}).get("outcome") == REDUCED and r.get("bfs", {}).get("outcome") == REDUCED]
    if both:
        agg["guided_minus_bfs"] = dict(
            sorted(Counter(str(r["guided"]["moves"] - r["bfs"]["moves"]) for r in both).items())
        )
    return agg


def fuzz_reduction(cfg: FuzzConfig) -> dict:
    started = time.time()
    records, dumps, elapsed = [], [], []
    for i in range(cfg.trials):
        t0 = time.perf_counter()
        rec, ds = run_trial(cfg, i)
        elapsed.append(round(time.perf_counter() - t0, 6))
        records.append(rec)
        dumps.extend(ds)
    report = {
        "header": {
            "started": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime(started)),
            "elapsed": round(time.time() - started, 3),
            "trial_elapsed": elapsed,
        },
        "config": {k: v for k, v in asdict(cfg).items() if k != "output"},
        "trials": records,
        "aggregates": aggregate(records),
        "dumps": dumps,
    }
    if cfg.output:
        write_report(report, cfg.output)
    return report


def strip_header(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "header"}


def write_report(report: dict, path) -> None:
    Path(path).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")


# -- corpus scenarios ---------------------------------------------------------------------


def _canonical_under_permutation(colors: tuple[int, ...]) -> tuple[int, ...]:
    return min(tuple(p[c - 1] for c in colors) for p in itertools.permutations((1, 2, 3)))


def _errera_three_swaps() -> dict:
    t = corpus_graph("errera")
    v = min(u for u in range(t.vertex_count) if t.degree(u) == 5)
    tp = puncture(t, v)
    enum = enumerate_colorings(tp, keep=True)
    seen = set()
    depths = Counter()
    chosen = None
    for vc in enum.colorings:
        ec = vertex_to_edge(tp, vc)
        key = _canonical_under_permutation(ec.colors)
        if key in seen:
            continue
        seen.add(key)
        if classify_wheel(tp, ec).cls != BLOCKED_AABAC:
            continue
        trace = attempt_reduction_exhaustive(tp, ec, depth_limit=DEFAULT_DEPTH_LIMIT)
        depth = len(trace.moves) if trace.outcome == REDUCED else None
        depths[str(depth)] += 1
        if depth is not None and (chosen is None or depth > chosen[0]):
            chosen = (depth, ec, trace)
    if chosen is None:
        raise ScenarioPreconditionFailed("no blocked pentagon coloring of the punctured Errera graph")
    depth, ec, trace = chosen
    worst = max(int(d) for d in depths if d != "None") if "None" not in depths else None
    return {
        "scenario": "errera_three_swaps",
        "vertex": v,
        "vertex_colorings": enum.vertex_count,
        "tait_colorings": enum.tait_count,
        "blocked_classes": sum(depths.values()),
        "depth_histogram": dict(sorted(depths.items())),
        "max_depth": worst,
        "chosen": {"tcol": dumps_tcol(tp, ec), "depth": depth, "trace": trace.to_json()},
        "ok": worst is not None and worst <= 3,
    }


def _tutte_dual_knob() -> dict:
    t = corpus_graph("tutte_dual")
    vc = brute_force_4color(t)
    if vc is None:
        raise ScenarioPreconditionFailed("oracle found no coloring of the Tutte dual")
    ec = vertex_to_edge(t, vc)
    partitions = {}
    tris = sorted(t.triangles())
    for pair in PAIRS:
        chans = all_channels(t, ec, pair)
        covered = sorted(f for ch in chans for f in ch.triangles)
        partitions["".join("abc"[c - 1] for c in pair)] = {"channels": len(chans), "partition": covered == tris}
    knobs = all_knobs(t, ec)
    if not knobs:
        raise ScenarioPreconditionFailed("no knob in the oracle coloring of the Tutte dual")
    return {
        "scenario": "tutte_dual_knob",
        "coloring": list(vc),
        "partitions": partitions,
        "knobs": [k.to_json() for k in knobs],
        "ok": all(p["partition"] for p in partitions.values()),
    }


SCENARIOS = {"errera_three_swaps": _errera_three_swaps, "tutte_dual_knob": _tutte_dual_knob}


def replay_scenario(name: str) -> dict:
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise UnknownName(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}") from None
    return fn()


# -- file verification ----------------------------------------------------------------------


def verify_coloring(t: Triangulation, coloring, samples: int = 100, seed: int = 0) -> dict:
    """Triangle rule, sampled closed-trail parity and wheel sums for one coloring."""
    report = {"triangles": [], "trails_checked": 0, "parity": [], "wheels": []}
    if isinstance(coloring, TaitColoring):
        ec = coloring
    else:
        try:
            ec = vertex_to_edge(t, coloring)
        except ImproperColoring as exc:
            report["improper"] = str(exc)
            report["ok"] = False
            return report
    bad = [{"face": f, "vertices": list(vs), "colors": cs} for f, vs, cs in validate_tait(t, ec)]
    report["triangles"] = bad
    if not bad:
        rng = random.Random(seed)
        for _ in range(samples):
            trail = sample_closed_trail(t, rng)
            if trail is None:
                continue
            report["trails_checked"] += 1
            try:
                check_closed_trail(t, trail, ec)
            except ParityViolation as exc:
                report["parity"].append({"trail": list(trail.vertices), "parity": exc.vector.label()})
        for v in range(t.vertex_count):
            try:
                s = wheel_sum(t, ec, v)
            except BoundaryVertex:
                continue
            if s:
                report["wheels"].append({"vertex": v, "sum": s})
        report["orientation_up"] = sum(1 for o in edge_to_face(t, ec).values() if o > 0)
    report["ok"] = not (bad or report["parity"] or report["wheels"])
    return report


def verify_files(graph_path, coloring_path, samples: int = 100, seed: int = 0) -> tuple[int, dict]:
    """Exit code (0 ok, 2 violation) and report; parse failures raise ParseError."""
    t = read_trig(graph_path)
    coloring = loads_coloring(t, Path(coloring_path).read_text())
    report = verify_coloring(t, coloring, samples, seed)
    return (0 if report["ok"] else 2), report
