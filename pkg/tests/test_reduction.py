from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle_coloring
from trichannel.coloring import is_proper, vertex_to_edge, validate_tait
from trichannel.corpus import corpus_graph
from trichannel.errors import BadHoleSize, NoFreeColor
from trichannel.harness import color_punctured
from trichannel.oracle import brute_force_4color, enumerate_colorings
from trichannel.reduction import (
    BLOCKED_AABAC,
    BLOCKED_ABAB,
    REDUCED,
    REDUCIBLE,
    REDUCIBLE_AAABC,
    Move,
    MoveTrace,
    apply_move,
    attempt_reduction_exhaustive,
    attempt_reduction_guided,
    classify_pattern,
    classify_wheel,
    extend_to_center,
    pattern_from_link,
    reduce_degree4,
    reduce_low_degree,
    reduce_vertex,
    replay_moves,
    replay_outcome,
    smallest_free_color,
)
from trichannel.triangulation import puncture, random_triangulation

A, B, C = 1, 2, 3


def proper_cycle_colorings(k):
    for link in itertools.product((1, 2, 3, 4), repeat=k):
        if all(link[i] != link[(i + 1) % k] for i in range(k)):
            yield link


def test_link_to_pattern_examples():
    assert pattern_from_link((1, 2, 1, 2, 3)) == (A, A, A, C, B)
    assert classify_pattern((A, A, A, C, B))[0] == REDUCIBLE_AAABC
    assert pattern_from_link((1, 2, 1, 3, 4)) == (A, A, B, A, C)
    assert classify_pattern((A, A, B, A, C))[0] == BLOCKED_AABAC
    assert pattern_from_link((1, 2, 1, 2)) == (A, A, A, A)
    assert classify_pattern((A, A, A, A))[0] == REDUCIBLE
    assert classify_pattern(pattern_from_link((1, 2, 3, 4)))[0] == BLOCKED_ABAB
    assert classify_pattern(pattern_from_link((1, 2, 1, 3)))[0] == REDUCIBLE


def test_pointer_definition():
    # aabac: the lone dominant edge; aaabc: the middle of the run
    assert classify_pattern((A, A, B, A, C))[1:] == (3, A)
    assert classify_pattern((A, A, A, C, B))[1:] == (1, A)


@pytest.mark.parametrize("k", [4, 5])
def test_link_colors_decide_class(k):
    for link in proper_cycle_colorings(k):
        cls, _, _ = classify_pattern(pattern_from_link(link))
        reducible = cls in (REDUCIBLE, REDUCIBLE_AAABC)
        assert reducible == (len(set(link)) <= 3)


@settings(max_examples=100, deadline=None)
@given(link=st.sampled_from(list(proper_cycle_colorings(5))), k=st.integers(0, 4))
def test_classification_rotation_covariant(link, k):
    pattern = pattern_from_link(link)
    cls, pointer, dom = classify_pattern(pattern)
    rotated = pattern[-k:] + pattern[:-k] if k else pattern
    cls2, pointer2, dom2 = classify_pattern(rotated)
    assert (cls2, dom2) == (cls, dom)
    assert pointer2 == (pointer + k) % 5
    # reflection keeps the class
    assert classify_pattern(pattern[::-1])[0] == cls


def test_bad_patterns():
    with pytest.raises(BadHoleSize):
        classify_pattern((A, B, C))
    with pytest.raises(ValueError):
        classify_pattern((A, A, A, A, A))
    with pytest.raises(BadHoleSize):
        t = corpus_graph("icosahedron")
        classify_wheel(t, oracle_coloring(t)[1])


@pytest.mark.parametrize("name, v", [("icosahedron", 0), ("errera", 0), ("errera", 16)])
def test_pattern_dichotomy_exhaustive(name, v):
    t = corpus_graph(name)
    tp = puncture(t, v)
    seen = set()
    for vc in enumerate_colorings(tp, keep=True).colorings:
        ec = vertex_to_edge(tp, vc)
        ws = classify_wheel(tp, ec)
        assert ws.cls in (REDUCIBLE_AAABC, BLOCKED_AABAC)
        assert ws.normalized() in {"".join(p) for p in _rotations_and_reflections("aaabc") | _rotations_and_reflections("aabac")}
        link = {vc[h] for h in tp.hole}
        assert (ws.cls == REDUCIBLE_AAABC) == (len(link) == 3)
        seen.add(ws.cls)
    assert seen == {REDUCIBLE_AAABC, BLOCKED_AABAC}


def _rotations_and_reflections(word):
    out = set()
    for w in (word, word[::-1]):
        for i in range(len(w)):
            rotated = w[i:] + w[:i]
            # relabel the two minority colors either way
            out.add(rotated)
            out.add(rotated.translate(str.maketrans("bc", "cb")))
    return out


def test_smallest_free_color():
    assert smallest_free_color({1, 2, 3}) == 4
    assert smallest_free_color({1, 2}) == 3
    assert smallest_free_color({1, 1, 2}) == 3
    with pytest.raises(NoFreeColor):
        smallest_free_color({1, 2, 3, 4})


def test_reduce_low_degree():
    t = random_triangulation(15, 3)
    v = next(u for u in range(t.vertex_count) if t.degree(u) == 3)
    vc, _ = oracle_coloring(puncture(t, v))
    full = reduce_low_degree(t, v, vc)
    assert is_proper(t, full)
    assert full[v] == smallest_free_color({full[w] for w in t.rotation[v]})
    with pytest.raises(ValueError):
        reduce_low_degree(corpus_graph("icosahedron"), 0, [1] * 11)


def _with_link(t, v, link):
    """Punctured-graph coloring with the link of ``v`` set to ``link`` (others 1)."""
    order = list(t.rotation[v])
    vc = [1] * (t.vertex_count - 1)
    for w, c in zip(order, link):
        vc[w - 1 if w > v else w] = c
    return vc


@pytest.mark.parametrize(
    "link, expected",
    [((1, 2, 1, 2, 3), 4), ((2, 3, 2, 3, 2), 1)],
)
def test_extend_to_center(link, expected):
    t = corpus_graph("icosahedron")
    assert extend_to_center(t, 0, _with_link(t, 0, link))[0] == expected


def test_extend_to_center_blocked():
    t = corpus_graph("icosahedron")
    with pytest.raises(NoFreeColor):
        extend_to_center(t, 0, _with_link(t, 0, (1, 2, 1, 3, 4)))


def find_degree4_instance(blocked: bool):
    for seed in range(200):
        t = random_triangulation(14, seed)
        for v in range(t.vertex_count):
            if t.degree(v) != 4:
                continue
            tp = puncture(t, v)
            vc, forced = color_punctured(tp, random.Random(seed), force_blocked=blocked)
            if forced == blocked and (blocked or len({vc[h] for h in tp.hole}) <= 3):
                return t, v, tp, vertex_to_edge(tp, vc)
    raise AssertionError("no instance")


def test_degree4_direct():
    t, v, tp, ec = find_degree4_instance(blocked=False)
    vc, trace = reduce_degree4(t, v, ec)
    assert trace.moves == [] and is_proper(t, vc)


def test_degree4_one_swap():
    t, v, tp, ec = find_degree4_instance(blocked=True)
    assert classify_wheel(tp, ec).cls == BLOCKED_ABAB
    vc, trace = reduce_degree4(t, v, ec)
    assert len(trace.moves) == 1 and is_proper(t, vc)
    after = replay_moves(tp, trace)
    assert classify_wheel(tp, after).cls == REDUCIBLE
    # the swap leaves an aabb square, so the link now uses three colors
    assert len({vc[restore] for restore in t.rotation[v]}) == 3


def errera_blocked():
    t = corpus_graph("errera")
    tp = puncture(t, 0)
    out = []
    for vc in enumerate_colorings(tp, keep=True).colorings:
        ec = vertex_to_edge(tp, vc)
        if classify_wheel(tp, ec).cls == BLOCKED_AABAC:
            out.append(ec)
    return t, tp, out


def test_guided_already_reducible():
    tp = puncture(corpus_graph("icosahedron"), 0)
    for vc in enumerate_colorings(tp, keep=True).colorings:
        ec = vertex_to_edge(tp, vc)
        if classify_wheel(tp, ec).reducible:
            trace = attempt_reduction_guided(tp, ec)
            assert trace.outcome == REDUCED and trace.moves == []
            assert attempt_reduction_exhaustive(tp, ec).moves == []
            return
    raise AssertionError("no reducible coloring")


def test_friendly_instance():
    tp = puncture(corpus_graph("icosahedron"), 0)
    for vc in enumerate_colorings(tp, keep=True).colorings:
        ec = vertex_to_edge(tp, vc)
        if classify_wheel(tp, ec).cls == BLOCKED_AABAC:
            trace = attempt_reduction_guided(tp, ec)
            assert trace.outcome == REDUCED and len(trace.moves) == 1
            assert trace.category == "friendly"
            assert len(attempt_reduction_exhaustive(tp, ec).moves) == 1
            return
    raise AssertionError("no blocked coloring")


def test_errera_guided_and_bfs():
    t, tp, blocked = errera_blocked()
    depths = []
    for ec in blocked[::6]:
        bfs = attempt_reduction_exhaustive(tp, ec)
        guided = attempt_reduction_guided(tp, ec)
        assert bfs.outcome == REDUCED and len(bfs.moves) <= 3
        if guided.outcome == REDUCED:
            assert len(bfs.moves) <= len(guided.moves)
        depths.append(len(bfs.moves))
    assert max(depths) == 3


def test_trace_replay_checks_every_step():
    t, tp, blocked = errera_blocked()
    for ec in blocked[:40]:
        trace = attempt_reduction_exhaustive(tp, ec)
        state = trace.initial
        for move in trace.moves:
            state = apply_move(tp, state, move)
            assert validate_tait(tp, state) == []
        assert classify_wheel(tp, state).reducible
        assert replay_outcome(tp, trace) == REDUCED


def test_trace_json_round_trip():
    t, tp, blocked = errera_blocked()
    trace = attempt_reduction_guided(tp, blocked[0])
    back = MoveTrace.from_json(trace.to_json())
    assert back.moves == trace.moves and back.initial == trace.initial
    assert back.to_json() == trace.to_json()


def test_move_json_forms():
    assert Move.swap((3, 1), (4, 5)).to_json() == {"swap": {"pair": "ac", "start": [4, 5]}}
    assert Move.knob(1, (0, 1, 2, 3)).to_json() == {"knob": {"color": "a", "cycle": [0, 1, 2, 3]}}
    assert Move.global_((2, 3)).to_json() == {"global": "bc"}
    for m in (Move.swap((1, 3), (4, 5)), Move.knob(2, (0, 1, 2, 3)), Move.global_((2, 3))):
        assert Move.from_json(m.to_json()) == m


def test_reduce_vertex_end_to_end():
    t = corpus_graph("errera")
    tp = puncture(t, 0)
    vc = brute_force_4color(tp)
    ec = vertex_to_edge(tp, vc)
    for strategy in ("guided", "bfs"):
        full, trace = reduce_vertex(t, 0, ec, strategy)
        assert trace.outcome == REDUCED
        assert is_proper(t, full)


def test_guided_budget_exhausted():
    t, tp, blocked = errera_blocked()
    for ec in blocked:
        if len(attempt_reduction_exhaustive(tp, ec).moves) == 3:
            trace = attempt_reduction_guided(tp, ec, budget=1)
            assert trace.outcome == "exhausted" and len(trace.moves) <= 1
            return
    raise AssertionError("no depth-3 instance")
