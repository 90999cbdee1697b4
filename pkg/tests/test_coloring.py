from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle_coloring, random_corpus
from trichannel.coloring import (
    EdgeColor,
    Orientation,
    TaitColoring,
    dumps_tcol,
    dumps_vcol,
    edge_to_face,
    edge_to_vertex,
    loads_coloring,
    orbit_sizes,
    parse_pair,
    third_color,
    triangle_orientation,
    validate_tait,
    vertex_to_edge,
)
from trichannel.corpus import CORPUS_NAMES, corpus_graph
from trichannel.errors import ImproperColoring, InconsistentColoring, ParseError
from trichannel.triangulation import build_from_rotation, puncture

A, B, C = EdgeColor.A, EdgeColor.B, EdgeColor.C
K4 = corpus_graph("tetrahedron")


def edge_color(t, ec, u, v):
    return ec[t.edge_id(u, v)]


def test_xor_identities():
    assert third_color(A, B) == C and third_color(B, C) == A and third_color(A, C) == B


def test_triangle_layout():
    # vertex ids 0, 1, 2 carry colors 1, 2, 3
    tri = puncture(K4, 3)
    ec = vertex_to_edge(tri, (1, 2, 3))
    assert edge_color(tri, ec, 0, 1) == A
    assert edge_color(tri, ec, 0, 2) == B
    assert edge_color(tri, ec, 1, 2) == C


def test_k4_edge_colors():
    ec = vertex_to_edge(K4, (1, 2, 3, 4))
    assert edge_color(K4, ec, 0, 1) == edge_color(K4, ec, 2, 3) == A
    assert edge_color(K4, ec, 0, 2) == edge_color(K4, ec, 1, 3) == B
    assert edge_color(K4, ec, 0, 3) == edge_color(K4, ec, 1, 2) == C
    assert sorted(ec.colors) == [1, 1, 2, 2, 3, 3]
    assert validate_tait(K4, ec) == []


def test_improper_rejected():
    with pytest.raises(ImproperColoring):
        vertex_to_edge(K4, (1, 1, 3, 4))


def test_edge_to_vertex_round_trip_and_translation():
    ec = vertex_to_edge(K4, (1, 2, 3, 4))
    assert edge_to_vertex(K4, ec, 0, 1) == (1, 2, 3, 4)
    assert edge_to_vertex(K4, ec, 0, 3) == (3, 4, 1, 2)


def test_corrupted_coloring_inconsistent():
    ec = vertex_to_edge(K4, (1, 2, 3, 4))
    cols = list(ec.colors)
    cols[0] = 2 if cols[0] != 2 else 3
    with pytest.raises(InconsistentColoring):
        edge_to_vertex(K4, TaitColoring(tuple(cols)))


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_round_trip(name):
    t = corpus_graph(name)
    vc, ec = oracle_coloring(t)
    assert validate_tait(t, ec) == []
    assert edge_to_vertex(t, ec, 0, vc[0]) == vc
    for root in range(t.vertex_count):
        back = edge_to_vertex(t, ec, root, 1)
        assert all(back[u] != back[v] for u, v in t.edges)


def test_klein_translations_fix_edge_coloring():
    t = corpus_graph("icosahedron")
    vc, ec = oracle_coloring(t)
    fixers = 0
    for perm in itertools.permutations((1, 2, 3, 4)):
        relabeled = tuple(perm[c - 1] for c in vc)
        if vertex_to_edge(t, relabeled) == ec:
            fixers += 1
            # exactly the XOR translations fix it
            shift = (perm[0] - 1)
            assert all(perm[c - 1] - 1 == (c - 1) ^ shift for c in (1, 2, 3, 4))
    assert fixers == 4


def test_orientation_examples():
    # face (0, 1, 2) with clockwise edges 0-1, 1-2, 2-0
    tri = puncture(K4, 3)
    f = next(fid for fid in tri.triangles())
    u, v, w = tri.faces[f]
    for seq, expected in (((A, B, C), Orientation.UP), ((A, C, B), Orientation.DOWN)):
        cols = [0, 0, 0]
        for (x, y), c in zip(((u, v), (v, w), (w, u)), seq):
            cols[tri.edge_id(x, y)] = int(c)
        assert triangle_orientation(tri, TaitColoring(tuple(cols)), f) is expected


def test_swap_on_triangle_flips_orientation():
    ec = vertex_to_edge(K4, (1, 2, 3, 4))
    before = edge_to_face(K4, ec)
    f = K4.triangles()[0]
    after = triangle_orientation(K4, ec.swapped(K4.face_edges(f), (A, C)), f)
    assert after == -before[f]


@pytest.mark.parametrize("perm", list(itertools.permutations((1, 2, 3))))
def test_edge_permutation_parity(perm):
    t = corpus_graph("octahedron")
    _, ec = oracle_coloring(t)
    mapping = dict(zip((1, 2, 3), perm))
    even = perm in ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    before = edge_to_face(t, ec)
    after = edge_to_face(t, ec.permuted(mapping))
    assert all(after[f] == (before[f] if even else -before[f]) for f in before)


def test_validate_reports_broken_triangles():
    ec = vertex_to_edge(K4, (1, 2, 3, 4))
    cols = list(ec.colors)
    e = K4.edge_id(0, 1)
    cols[e] = 2
    bad = validate_tait(K4, TaitColoring(tuple(cols)))
    assert {f for f, _, _ in bad} == set(K4.edge_faces(e))


def test_orbit_sizes_k4():
    assert orbit_sizes(K4, (1, 2, 3, 4)) == {"vertex_orbit": 24, "edge_orbit": 6, "face_orbit": 2}


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_orbit_sizes_corpus(name):
    t = corpus_graph(name)
    vc, _ = oracle_coloring(t)
    sizes = orbit_sizes(t, vc)
    assert sizes["edge_orbit"] == 6 and sizes["face_orbit"] == 2
    # all 24 relabelings give distinct vertex colorings
    assert sizes["vertex_orbit"] == 24


def test_tcol_vcol_round_trip():
    t = corpus_graph("errera")
    vc, ec = oracle_coloring(t)
    assert loads_coloring(t, dumps_tcol(t, ec)) == ec
    assert loads_coloring(t, dumps_vcol(vc)) == vc


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("TCOL 2\n", 1),
        ("TCOL 1\n0 1 d\n", 2),
        ("TCOL 1\n0 1 a\n0 1 b\n", 3),
        ("TCOL 1\n0 1 a\n", 3),
        ("VCOL 1\n0 5\n", 2),
    ],
)
def test_coloring_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        loads_coloring(K4, text)
    assert exc.value.line == line


def test_parse_pair():
    assert parse_pair("ca") == (A, C)
    assert parse_pair("a-b") == (A, B)
    with pytest.raises(ValueError):
        parse_pair("aa")


@settings(max_examples=30, deadline=None)
@given(idx=st.integers(0, 29), root=st.integers(0, 7))
def test_round_trip_property(idx, root):
    t = random_corpus(30, 8, 40)[idx]
    vc, ec = oracle_coloring(t)
    assert edge_to_vertex(t, ec, root, vc[root]) == vc
    assert vertex_to_edge(t, edge_to_vertex(t, ec, root, 4)) == ec


def test_near_triangulation_round_trip():
    t = puncture(corpus_graph("errera"), 0)
    vc, ec = oracle_coloring(t)
    assert edge_to_vertex(t, ec, 0, vc[0]) == vc
    # rebuilding from the same rotation gives the same edge ids
    assert build_from_rotation(t.rotation, t.hole).edges == t.edges
