from __future__ import annotations

import pytest

from trichannel.coloring import is_proper
from trichannel.corpus import CORPUS_NAMES, corpus_graph
from trichannel.errors import CapExceeded, InvalidSize
from trichannel.oracle import brute_force_4color, degeneracy_order, enumerate_colorings
from trichannel.triangulation import puncture, random_triangulation


def test_tetrahedron_uses_all_colors():
    vc = brute_force_4color(corpus_graph("tetrahedron"))
    assert sorted(vc) == [1, 2, 3, 4]


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_colorable(name):
    t = corpus_graph(name)
    vc = brute_force_4color(t)
    assert is_proper(t, vc)
    assert brute_force_4color(t) == vc


def test_precolor_respected():
    t = corpus_graph("icosahedron")
    vc = brute_force_4color(t, precolor={0: 4, 5: 2})
    assert vc[0] == 4 and vc[5] == 2 and is_proper(t, vc)


def test_impossible_precolor():
    t = corpus_graph("tetrahedron")
    assert brute_force_4color(t, precolor={0: 1, 1: 1}) is None


def test_vertex_cap():
    with pytest.raises(CapExceeded):
        brute_force_4color(random_triangulation(30, 0), cap=20)


def test_degeneracy_order_is_a_permutation():
    t = random_triangulation(50, 2)
    order = degeneracy_order(t)
    assert sorted(order) == list(range(50))
    pos = {v: i for i, v in enumerate(order)}
    assert all(sum(pos[w] < pos[v] for w in t.rotation[v]) <= 5 for v in order)


def test_enumeration_counts():
    tet = enumerate_colorings(corpus_graph("tetrahedron"))
    assert (tet.vertex_count, tet.tait_count) == (24, 6)
    octa = enumerate_colorings(corpus_graph("octahedron"))
    assert octa.vertex_count % 24 == 0
    assert octa.vertex_count == 4 * octa.tait_count


@pytest.mark.parametrize("name", ["icosahedron", "errera"])
def test_enumeration_klein_factor(name):
    res = enumerate_colorings(puncture(corpus_graph(name), 0))
    assert res.vertex_count == 4 * res.tait_count
    assert res.vertex_count % 24 == 0


def test_enumeration_cap_and_size():
    with pytest.raises(CapExceeded):
        enumerate_colorings(corpus_graph("icosahedron"), cap=10)
    with pytest.raises(InvalidSize):
        enumerate_colorings(puncture(corpus_graph("tetrahedron"), 0))
