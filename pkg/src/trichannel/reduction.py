"""Reducing the low-degree configurations of a minimal counterexample.

After deleting a vertex ``v`` of degree 4 or 5, the colored graph ``G - v``
has a square or pentagon hole.  ``v`` can be colored back exactly when the
link uses at most three vertex colors, which reads off the hole edges:

* square: ``aaaa`` or ``aabb`` (reducible) versus ``abab`` (blocked);
* pentagon: always three edges of one color plus one each of the others;
  ``aaabc`` (the three in a row, reducible) versus ``aabac`` (blocked).

Blocked states are repaired by swapping open channels that start on the hole,
rotating knobs, and (in the exhaustive search only) global color swaps.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .channels import (
    all_knobs,
    boundary_channels,
    find_channel,
    find_knobs,
    global_swap,
    rotate_knob,
    swap_channel,
)
from .coloring import (
    EdgeColor,
    TaitColoring,
    color_string,
    edge_to_vertex,
    is_proper,
    pair_name,
    parse_pair,
    validate_tait,
)
from .errors import (
    BadHoleSize,
    DepthLimit,
    NoFreeColor,
    ReductionFailed,
    StaleKnob,
)
from .triangulation import Triangulation, puncture, restore_label

REDUCIBLE_AAABC = "reducible_aaabc"
BLOCKED_AABAC = "blocked_aabac"
REDUCIBLE = "reducible"
BLOCKED_ABAB = "blocked_abab"

REDUCED = "reduced"
CYCLED = "cycled"
EXHAUSTED = "exhausted"

DEFAULT_BUDGET = 24
DEFAULT_DEPTH_LIMIT = 8
DEFAULT_STATE_CAP = 10**6


# -- wheel classification -----------------------------------------------------------


@dataclass(frozen=True)
class WheelState:
    hole_vertices: tuple[int, ...]
    hole_edges: tuple[int, ...]
    pattern: tuple[int, ...]
    cls: str
    pointer: int
    dominant: int

    @property
    def reducible(self) -> bool:
        return self.cls in (REDUCIBLE_AAABC, REDUCIBLE)

    @property
    def pattern_string(self) -> str:
        return color_string(self.pattern)

    def normalized(self) -> str:
        """Pattern relabeled so the dominant color reads ``a`` (view only)."""
        others = sorted(c for c in (1, 2, 3) if c != self.dominant)
        relabel = {self.dominant: "a", others[0]: "b", others[1]: "c"}
        return "".join(relabel[c] for c in self.pattern)


def pattern_from_link(link_colors: Sequence[int]) -> tuple[int, ...]:
    """Hole edge colors for link vertex colors listed in cyclic order."""
    k = len(link_colors)
    return tuple((link_colors[i] - 1) ^ (link_colors[(i + 1) % k] - 1) for i in range(k))


def classify_pattern(pattern: Sequence[int]) -> tuple[str, int, int]:
    """``(class, pointer, dominant)`` for a square or pentagon edge pattern.

    Pentagon pointer: the dominant edge whose two neighbours are both
    dominant (``aaabc``, middle of the run) or both not dominant (``aabac``,
    the lone one).  Square pointer: the first dominant edge.
    """
    k = len(pattern)
    if k not in (4, 5):
        raise BadHoleSize(f"hole has {k} edges")
    if any(c not in (1, 2, 3) for c in pattern):
        raise ValueError(f"bad edge pattern {pattern!r}")
    counts = Counter(pattern)
    top = max(counts.values())
    dominant = min(c for c, n in counts.items() if n == top)
    if k == 5:
        if sorted(counts.values()) != [1, 1, 3]:
            raise ValueError(f"pentagon pattern {color_string(pattern)} violates the closed-walk XOR rule")
        for i in range(5):
            if pattern[i] != dominant:
                continue
            left, right = pattern[i - 1] == dominant, pattern[(i + 1) % 5] == dominant
            if left and right:
                return REDUCIBLE_AAABC, i, dominant
            if not left and not right:
                return BLOCKED_AABAC, i, dominant
        raise AssertionError("unreachable")
    if top == 4:
        return REDUCIBLE, 0, dominant
    if sorted(counts.values()) != [2, 2]:
        raise ValueError(f"square pattern {color_string(pattern)} violates the closed-walk XOR rule")
    first = pattern.index(dominant)
    if pattern[0] == pattern[2]:
        return BLOCKED_ABAB, first, dominant
    return REDUCIBLE, first, dominant


def classify_wheel(tp: Triangulation, ec: TaitColoring) -> WheelState:
    if tp.hole is None:
        raise BadHoleSize("triangulation has no hole")
    edges = tp.hole_edges()
    pattern = tuple(ec.colors[e] for e in edges)
    cls, pointer, dominant = classify_pattern(pattern)
    return WheelState(tp.hole, edges, pattern, cls, pointer, dominant)


# -- direct extensions ----------------------------------------------------------------


def smallest_free_color(used) -> int:
    for c in (1, 2, 3, 4):
        if c not in used:
            return c
    raise NoFreeColor("all four colors appear on the link")


def extend_to_center(t: Triangulation, v: int, vc_punctured: Sequence[int]) -> tuple[int, ...]:
    """Color ``v`` with the smallest color missing from its link.

    ``vc_punctured`` colors ``G - v`` (ids above ``v`` shifted down by one);
    the result colors ``t`` in its own ids.
    """
    if len(vc_punctured) != t.vertex_count - 1:
        raise ValueError("coloring does not match the punctured graph")
    full = [vc_punctured[u - 1] if u > v else (vc_punctured[u] if u < v else 0) for u in range(t.vertex_count)]
    full[v] = smallest_free_color({full[w] for w in t.rotation[v]})
    return tuple(full)


def reduce_low_degree(t: Triangulation, v: int, vc_punctured: Sequence[int]) -> tuple[int, ...]:
    if t.degree(v) > 3:
        raise ValueError(f"vertex {v} has degree {t.degree(v)} > 3")
    return extend_to_center(t, v, vc_punctured)


# -- moves and traces -------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """One recoloring step: ``swap`` an open channel, rotate a ``knob``, or a ``global`` swap."""

    kind: str
    pair: tuple[int, int] | None = None
    start: tuple[int, int] | None = None
    color: int | None = None
    cycle: tuple[int, ...] | None = None

    @classmethod
    def swap(cls, pair, start):
        return cls("swap", pair=tuple(sorted(pair)), start=tuple(start))

    @classmethod
    def knob(cls, color, cycle):
        return cls("knob", color=int(color), cycle=tuple(cycle))

    @classmethod
    def global_(cls, pair):
        return cls("global", pair=tuple(sorted(pair)))

    def to_json(self) -> dict:
        if self.kind == "swap":
            return {"swap": {"pair": pair_name(self.pair), "start": list(self.start)}}
        if self.kind == "knob":
            return {"knob": {"color": str(EdgeColor(self.color)), "cycle": list(self.cycle)}}
        return {"global": pair_name(self.pair)}

    @classmethod
    def from_json(cls, obj: dict) -> "Move":
        if "swap" in obj:
            return cls.swap(parse_pair(obj["swap"]["pair"]), obj["swap"]["start"])
        if "knob" in obj:
            return cls.knob(EdgeColor.parse(obj["knob"]["color"]), obj["knob"]["cycle"])
        if "global" in obj:
            return cls.global_(parse_pair(obj["global"]))
        raise ValueError(f"unknown move {obj!r}")

    def __str__(self):
        if self.kind == "swap":
            return f"swap {pair_name(self.pair)} from {self.start[0]}-{self.start[1]}"
        if self.kind == "knob":
            return f"knob {EdgeColor(self.color)} {list(self.cycle)}"
        return f"global {pair_name(self.pair)}"


def apply_move(tp: Triangulation, ec: TaitColoring, move: Move) -> TaitColoring:
    if move.kind == "swap":
        return swap_channel(ec, find_channel(tp, ec, move.start, move.pair))
    if move.kind == "knob":
        for knob in find_knobs(tp, ec, move.color):
            if knob.cycle == move.cycle:
                return rotate_knob(ec, knob)
        raise StaleKnob(f"no {EdgeColor(move.color)}-knob on cycle {list(move.cycle)}")
    if move.kind == "global":
        return global_swap(ec, move.pair)
    raise ValueError(f"unknown move kind {move.kind!r}")


@dataclass
class MoveTrace:
    initial: TaitColoring
    moves: list[Move]
    outcome: str
    visited: int
    strategy: str
    category: str | None = None
    pointers: list[int] = field(default_factory=list)
    knob_rotations: int = 0
    budget: int | None = None

    @property
    def initial_fingerprint(self) -> str:
        return self.initial.fingerprint

    def to_json(self) -> dict:
        return {
            "strategy": self.strategy,
            "outcome": self.outcome,
            "category": self.category,
            "initial_fingerprint": self.initial.fingerprint,
            "initial_colors": color_string(self.initial.colors),
            "moves": [m.to_json() for m in self.moves],
            "pointers": list(self.pointers),
            "knob_rotations": self.knob_rotations,
            "visited": self.visited,
            "budget": self.budget,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MoveTrace":
        initial = TaitColoring(tuple(int(EdgeColor.parse(ch)) for ch in obj["initial_colors"]))
        return cls(
            initial=initial,
            moves=[Move.from_json(m) for m in obj["moves"]],
            outcome=obj["outcome"],
            visited=obj["visited"],
            strategy=obj["strategy"],
            category=obj.get("category"),
            pointers=list(obj.get("pointers", [])),
            knob_rotations=obj.get("knob_rotations", 0),
            budget=obj.get("budget"),
        )


def replay_moves(tp: Triangulation, trace: MoveTrace, check: bool = True) -> TaitColoring:
    """Re-apply a trace's moves to its initial coloring, validating every step."""
    ec = trace.initial
    for move in trace.moves:
        ec = apply_move(tp, ec, move)
        if check and validate_tait(tp, ec):
            raise ReductionFailed(f"move {move} produced an invalid coloring")
    return ec


def replay_outcome(tp: Triangulation, trace: MoveTrace) -> str:
    """Outcome implied by replaying ``trace``.

    A reduced trace must end in a reducible state.  Non-reduced outcomes come
    from the search itself, so the strategy is re-run and must reproduce the
    same moves.
    """
    final = replay_moves(tp, trace)
    if classify_wheel(tp, final).reducible:
        return REDUCED
    rerun = run_strategy(tp, trace.initial, trace.strategy, trace.budget)
    if rerun.moves != trace.moves:
        raise ReductionFailed("re-running the strategy produced a different trace")
    return rerun.outcome


# -- degree 4 -------------------------------------------------------------------------------


def reduce_degree4(t: Triangulation, v: int, ec: TaitColoring) -> tuple[tuple[int, ...], MoveTrace]:
    """Color ``t`` given a coloring ``ec`` of ``G - v`` for a degree-4 ``v``.

    An alternating ``abab`` square is repaired by the single a-b channel from
    hole edge 0: it must exit through one of the two neighbouring hole edges
    (it cannot cross the channel joining the other two), leaving ``aabb``.
    """
    if t.degree(v) != 4:
        raise ValueError(f"vertex {v} has degree {t.degree(v)}, expected 4")
    tp = puncture(t, v)
    ws = classify_wheel(tp, ec)
    moves = []
    state = ec
    if not ws.reducible:
        hole = tp.hole
        move = Move.swap((ws.pattern[0], ws.pattern[1]), (hole[0], hole[1]))
        state = apply_move(tp, ec, move)
        moves.append(move)
        if not classify_wheel(tp, state).reducible:
            raise ReductionFailed(f"square still {classify_wheel(tp, state).pattern_string} after one swap")
    trace = MoveTrace(ec, moves, REDUCED, len(moves) + 1, "degree4",
                      category="reducible" if not moves else "friendly")
    vc = extend_to_center(t, v, edge_to_vertex(tp, state, 0, 1))
    if not is_proper(t, vc):
        raise ReductionFailed("extended coloring is not proper")
    return vc, trace


# -- degree 5: guided strategy ---------------------------------------------------------------


def _dominant_pairs(ws: WheelState) -> list[tuple[int, int]]:
    return [tuple(sorted((ws.dominant, c))) for c in (1, 2, 3) if c != ws.dominant]


def _swap_successors(tp, ec):
    ws = classify_wheel(tp, ec)
    for ch in boundary_channels(tp, ec, _dominant_pairs(ws)):
        start = tp.edges[ch.interior_edges[0]]
        u, w = start
        if tp.face_of_dart(u, w) != tp.boundary_face:
            u, w = w, u
        yield Move.swap(ch.pair, (u, w)), swap_channel(ec, ch)


def _short_solution(tp, ec, max_len: int) -> list[Move] | None:
    """A friendly (1 swap) or sub-friendly (2 swaps) fix using dominant-color pairs."""
    if max_len < 1:
        return None
    firsts = list(_swap_successors(tp, ec))
    for move, s1 in firsts:
        if classify_wheel(tp, s1).reducible:
            return [move]
    if max_len < 2:
        return None
    for move, s1 in firsts:
        for move2, s2 in _swap_successors(tp, s1):
            if classify_wheel(tp, s2).reducible:
                return [move, move2]
    return None


def attempt_reduction_guided(tp: Triangulation, ec: TaitColoring, budget: int = DEFAULT_BUDGET) -> MoveTrace:
    """Friendly / sub-friendly / unfriendly loop with knob breaking.

    Each round on a blocked pentagon:

    1. look for a one- or two-swap fix with the dominant-color pairs;
    2. otherwise rotate the first knob after which such a fix exists;
    3. otherwise take the first hole-anchored swap leading to an unseen
       coloring (an unfriendly step), falling back to any knob rotation
       leading to an unseen coloring;
    4. if every candidate revisits a coloring, the run has ``cycled``.

    ``budget`` bounds the number of moves (outcome ``exhausted``).
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    state = ec
    moves: list[Move] = []
    seen = {state.colors}
    ws = classify_wheel(tp, state)
    pointers = [ws.pointer]
    category = None
    knob_rotations = 0

    def done(outcome):
        return MoveTrace(ec, moves, outcome, len(seen), "guided", category or "reducible",
                         pointers, knob_rotations, budget)

    while True:
        if ws.reducible:
            return done(REDUCED)
        room = budget - len(moves)
        if room <= 0:
            return done(EXHAUSTED)

        fix = _short_solution(tp, state, min(2, room))
        if category is None:
            category = {None: "unfriendly", 1: "friendly", 2: "sub_friendly"}[len(fix) if fix else None]
        if fix:
            for move in fix:
                state = apply_move(tp, state, move)
                moves.append(move)
                seen.add(state.colors)
                pointers.append(classify_wheel(tp, state).pointer)
            ws = classify_wheel(tp, state)
            continue

        step = None
        knobs = all_knobs(tp, state)
        if room >= 2:
            for knob in knobs:
                s1 = rotate_knob(state, knob)
                if s1.colors not in seen and _short_solution(tp, s1, min(2, room - 1)):
                    step = (Move.knob(knob.color, knob.cycle), s1)
                    break
        if step is None:
            for move, s1 in _swap_successors(tp, state):
                if s1.colors not in seen:
                    step = (move, s1)
                    break
        if step is None:
            for knob in knobs:
                s1 = rotate_knob(state, knob)
                if s1.colors not in seen:
                    step = (Move.knob(knob.color, knob.cycle), s1)
                    break
        if step is None:
            return done(CYCLED)

        move, state = step
        if move.kind == "knob":
            knob_rotations += 1
        moves.append(move)
        seen.add(state.colors)
        ws = classify_wheel(tp, state)
        pointers.append(ws.pointer)


# -- degree 5: exhaustive search --------------------------------------------------------------


def successors(tp: Triangulation, ec: TaitColoring):
    """Every move of the full move graph: hole-anchored swaps, knob rotations, global swaps."""
    for ch in boundary_channels(tp, ec):
        u, w = tp.edges[ch.interior_edges[0]]
        if tp.face_of_dart(u, w) != tp.boundary_face:
            u, w = w, u
        yield Move.swap(ch.pair, (u, w)), swap_channel(ec, ch)
    for knob in all_knobs(tp, ec):
        yield Move.knob(knob.color, knob.cycle), rotate_knob(ec, knob)
    for pair in ((1, 2), (1, 3), (2, 3)):
        yield Move.global_(pair), global_swap(ec, pair)


def attempt_reduction_exhaustive(
    tp: Triangulation,
    ec: TaitColoring,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    state_cap: int = DEFAULT_STATE_CAP,
) -> MoveTrace:
    """Breadth-first search for a shortest move sequence reaching a reducible hole.

    Returns outcome ``exhausted`` when the whole reachable move graph was
    explored without success.  Raises :class:`DepthLimit` when the frontier
    is cut off by ``depth_limit`` or ``state_cap`` first.
    """
    if classify_wheel(tp, ec).reducible:
        return MoveTrace(ec, [], REDUCED, 1, "bfs", "reducible", [], 0, depth_limit)
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], Move] | None] = {ec.colors: None}
    frontier = [ec]
    for depth in range(1, depth_limit + 1):
        nxt = []
        for state in frontier:
            for move, s2 in successors(tp, state):
                if s2.colors in parent:
                    continue
                parent[s2.colors] = (state.colors, move)
                if classify_wheel(tp, s2).reducible:
                    moves = _backtrack(parent, s2.colors)
                    category = {1: "friendly", 2: "sub_friendly"}.get(len(moves), "unfriendly")
                    trace = MoveTrace(ec, moves, REDUCED, len(parent), "bfs", category, [], 0, depth_limit)
                    trace.knob_rotations = sum(m.kind == "knob" for m in moves)
                    trace.pointers = _pointer_path(tp, trace)
                    return trace
                if len(parent) > state_cap:
                    raise DepthLimit(f"state cap {state_cap} exceeded at depth {depth}", depth, len(parent))
                nxt.append(s2)
        if not nxt:
            return MoveTrace(ec, [], EXHAUSTED, len(parent), "bfs", "unfriendly", [], 0, depth_limit)
        frontier = nxt
    raise DepthLimit(f"no reducible state within depth {depth_limit}", depth_limit, len(parent))


def _backtrack(parent, key) -> list[Move]:
    moves = []
    while parent[key] is not None:
        key, move = parent[key]
        moves.append(move)
    return moves[::-1]


def _pointer_path(tp, trace: MoveTrace) -> list[int]:
    ec = trace.initial
    out = [classify_wheel(tp, ec).pointer]
    for move in trace.moves:
        ec = apply_move(tp, ec, move)
        out.append(classify_wheel(tp, ec).pointer)
    return out


def run_strategy(tp: Triangulation, ec: TaitColoring, strategy: str, budget: int | None = None) -> MoveTrace:
    if strategy == "guided":
        return attempt_reduction_guided(tp, ec, budget or DEFAULT_BUDGET)
    if strategy == "bfs":
        return attempt_reduction_exhaustive(tp, ec, budget or DEFAULT_DEPTH_LIMIT)
    raise ValueError(f"unknown strategy {strategy!r}")


def reduce_vertex(
    t: Triangulation,
    v: int,
    ec: TaitColoring,
    strategy: str = "guided",
    budget: int | None = None,
) -> tuple[tuple[int, ...] | None, MoveTrace]:
    """Full pipeline for a degree-5 ``v``: search, then color ``v`` back in.

    ``ec`` colors ``G - v``.  Returns the coloring of ``t`` (``None`` unless
    reduced) and the trace.
    """
    tp = puncture(t, v)
    trace = run_strategy(tp, ec, strategy, budget)
    if trace.outcome != REDUCED:
        return None, trace
    final = replay_moves(tp, trace)
    vc = extend_to_center(t, v, edge_to_vertex(tp, final, 0, 1))
    if not is_proper(t, vc):
        raise ReductionFailed("extended coloring is not proper")
    return vc, trace


def restore_coloring_labels(vc_punctured: Sequence[int], v: int) -> dict[int, int]:
    """Punctured vertex coloring keyed by the original vertex ids."""
    return {restore_label(u, v): c for u, c in enumerate(vc_punctured)}
