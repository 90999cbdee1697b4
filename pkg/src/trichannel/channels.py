"""Swap channels and knobs.

For a color pair ``{x, y}`` every triangle has exactly one x-edge and one
y-edge, so linking triangles across pair-colored edges gives a graph in which
each triangle has degree two.  Its components are the *channels* of the pair:
cycles of triangles on the sphere, or paths that start and end on hole edges
in a near-triangulation.  Exchanging x and y on the edges of one channel is a
Kempe-style interchange and keeps the coloring valid.

A *knob* is a cycle of one color ``k`` that encloses no other k-cycle.
Rotating it exchanges the two other colors on every edge strictly inside.
"Inside" means the side away from the reference face: the hole for a
near-triangulation, face 0 on the sphere.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .coloring import EdgeColor, TaitColoring, pair_name
from .errors import StaleChannel, StaleKnob, WrongStartColor
from .triangulation import Triangulation

CLOSED = "closed"
OPEN = "open"

PAIRS = ((1, 2), (1, 3), (2, 3))


def _pair(pair: Sequence[int]) -> tuple[int, int]:
    x, y = sorted(int(c) for c in pair)
    if x == y or not {x, y} <= {1, 2, 3}:
        raise ValueError(f"bad color pair {pair!r}")
    return x, y


@dataclass(frozen=True)
class Channel:
    pair: tuple[int, int]
    triangles: tuple[int, ...]
    interior_edges: tuple[int, ...]
    kind: str
    fingerprint: str

    @property
    def key(self) -> tuple[tuple[int, int], int]:
        return self.pair, min(self.triangles)

    @property
    def boundary_color(self) -> EdgeColor:
        return EdgeColor(self.pair[0] ^ self.pair[1])

    @property
    def endpoints(self) -> tuple[int, ...]:
        """Hole edges where an open channel enters and leaves."""
        if self.kind == OPEN:
            return self.interior_edges[0], self.interior_edges[-1]
        return ()

    def to_json(self, t: Triangulation) -> dict:
        return {
            "pair": pair_name(self.pair),
            "kind": self.kind,
            "triangles": list(self.triangles),
            "interior_edges": list(self.interior_edges),
            "interior_edge_vertices": [list(t.edges[e]) for e in self.interior_edges],
        }


def _pair_edges(t: Triangulation, ec: TaitColoring, f: int, pair) -> list[int]:
    return [e for e in t.face_edges(f) if ec.colors[e] in pair]


def _across(t: Triangulation, f: int, e: int) -> int:
    f1, f2 = t.edge_faces(e)
    return f2 if f1 == f else f1


def _walk(t, ec, pair, f, e):
    """Follow the channel from triangle ``f`` leaving across edge ``e``.

    Returns (triangles after f, edges crossed, stop) where stop is ``"loop"``
    when the walk came back to ``f`` and ``"hole"`` when it left through the hole.
    """
    tris, crossed = [], []
    cur = f
    while True:
        nxt = _across(t, cur, e)
        crossed.append(e)
        if nxt == t.boundary_face:
            return tris, crossed, "hole"
        if nxt == f:
            return tris, crossed, "loop"
        tris.append(nxt)
        e1, e2 = _pair_edges(t, ec, nxt, pair)
        e = e2 if e1 == e else e1
        cur = nxt


def _channel_from_face(t, ec, f, pair) -> Channel:
    ex = next(e for e in t.face_edges(f) if ec.colors[e] == pair[0])
    tris, crossed, stop = _walk(t, ec, pair, f, ex)
    if stop == "loop":
        start = min([f] + tris)
        if start != f:
            return _channel_from_face(t, ec, start, pair)
        return Channel(pair, (f, *tris), tuple(crossed), CLOSED, ec.fingerprint)
    ey = next(e for e in t.face_edges(f) if ec.colors[e] == pair[1])
    back_tris, back_crossed, _ = _walk(t, ec, pair, f, ey)
    triangles = back_tris[::-1] + [f] + tris
    edges = back_crossed[::-1] + crossed
    if edges[-1] < edges[0]:
        triangles.reverse()
        edges.reverse()
    return Channel(pair, tuple(triangles), tuple(edges), OPEN, ec.fingerprint)


def _channel_from_hole_edge(t, ec, eid, pair) -> Channel:
    first = _across(t, t.boundary_face, eid)
    tris, crossed, stop = _walk(t, ec, pair, first, _other_pair_edge(t, ec, first, eid, pair))
    assert stop == "hole"
    return Channel(pair, (first, *tris), (eid, *crossed), OPEN, ec.fingerprint)


def _other_pair_edge(t, ec, f, e, pair):
    e1, e2 = _pair_edges(t, ec, f, pair)
    return e2 if e1 == e else e1


def find_channel(t: Triangulation, ec: TaitColoring, start, pair: Sequence[int]) -> Channel:
    """The channel of ``pair`` through ``start``.

    ``start`` is a triangle id (int) or a hole edge given as a vertex pair.
    A channel found from a hole edge is ordered from that edge; otherwise it
    is put in canonical order (closed: from its smallest triangle; open: from
    its smaller endpoint edge).
    """
    pair = _pair(pair)
    if isinstance(start, (tuple, list)):
        u, v = start
        eid = t.edge_id(u, v)
        if eid not in t.hole_edges():
            raise ValueError(f"{u}-{v} is not a hole edge")
        if ec.colors[eid] not in pair:
            raise WrongStartColor(
                f"hole edge {u}-{v} is {EdgeColor(ec.colors[eid])}, not in pair {pair_name(pair)}"
            )
        return _channel_from_hole_edge(t, ec, eid, pair)
    f = int(start)
    if f == t.boundary_face:
        raise ValueError("the hole is not a triangle")
    return _channel_from_face(t, ec, f, pair)


def all_channels(t: Triangulation, ec: TaitColoring, pair: Sequence[int]) -> list[Channel]:
    """Every channel of ``pair``, in order of smallest triangle id."""
    pair = _pair(pair)
    covered = set()
    out = []
    for f in t.triangles():
        if f in covered:
            continue
        ch = _channel_from_face(t, ec, f, pair)
        covered.update(ch.triangles)
        out.append(ch)
    return out


def channel_partners(t: Triangulation, ec: TaitColoring, f: int, pair: Sequence[int]) -> frozenset[int]:
    """Faces next to triangle ``f`` across its two pair-colored edges (the hole counts)."""
    pair = _pair(pair)
    return frozenset(_across(t, f, e) for e in _pair_edges(t, ec, f, pair))


def swap_channel(ec: TaitColoring, ch: Channel) -> TaitColoring:
    if ec.fingerprint != ch.fingerprint or any(ec.colors[e] not in ch.pair for e in ch.interior_edges):
        raise StaleChannel("channel was computed against a different coloring")
    return ec.swapped(ch.interior_edges, ch.pair)


def boundary_channels(t: Triangulation, ec: TaitColoring, pairs=PAIRS) -> list[Channel]:
    """Open channels starting at hole edges, one per channel, hole order then pair order."""
    seen = set()
    out = []
    for eid in t.hole_edges():
        for pair in pairs:
            pair = _pair(pair)
            if ec.colors[eid] not in pair:
                continue
            ch = _channel_from_hole_edge(t, ec, eid, pair)
            if ch.key not in seen:
                seen.add(ch.key)
                out.append(ch)
    return out


# -- knobs ------------------------------------------------------------------------


@dataclass(frozen=True)
class Knob:
    color: int
    cycle: tuple[int, ...]
    interior_faces: tuple[int, ...]
    interior_edges: tuple[int, ...]
    interior_vertices: tuple[int, ...]
    fingerprint: str
    minimal: bool = True

    @property
    def other_pair(self) -> tuple[int, int]:
        return tuple(c for c in (1, 2, 3) if c != self.color)

    def to_json(self) -> dict:
        return {
            "color": str(EdgeColor(self.color)),
            "cycle": list(self.cycle),
            "interior_faces": list(self.interior_faces),
        }


def reference_face(t: Triangulation) -> int:
    return t.boundary_face if t.boundary_face is not None else 0


def _regions(t: Triangulation, ec: TaitColoring, color: int) -> list[int]:
    """Label faces by connectivity across edges not colored ``color``."""
    parent = list(range(t.face_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid, c in enumerate(ec.colors):
        if c != color:
            f1, f2 = t.edge_faces(eid)
            r1, r2 = find(f1), find(f2)
            if r1 != r2:
                parent[max(r1, r2)] = min(r1, r2)
    return [find(f) for f in range(t.face_count)]


def _simple_cycle(edges: list[tuple[int, int]]) -> tuple[int, ...] | None:
    nbrs = defaultdict(list)
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    if any(len(ws) != 2 for ws in nbrs.values()):
        return None
    start = min(nbrs)
    cycle = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        cycle.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(cycle) != len(nbrs):
        return None
    return tuple(cycle)


def find_knobs(t: Triangulation, ec: TaitColoring, color: int) -> list[Knob]:
    """All minimal ``color`` cycles with the region they enclose, smallest first."""
    color = int(color)
    label = _regions(t, ec, color)
    ref = label[reference_face(t)]
    members = defaultdict(list)
    for f, r in enumerate(label):
        members[r].append(f)
    knobs = []
    for r, faces in members.items():
        if r == ref:
            continue
        face_set = set(faces)
        boundary, inner = [], []
        for f in faces:
            for eid in t.face_edges(f):
                f1, f2 = t.edge_faces(eid)
                if f1 in face_set and f2 in face_set:
                    inner.append(eid)
                else:
                    boundary.append(eid)
        cycle = _simple_cycle([t.edges[e] for e in set(boundary)])
        if cycle is None:
            continue
        on_cycle = set(cycle)
        inner_vertices = {x for f in faces for x in t.faces[f]} - on_cycle
        knobs.append(
            Knob(
                color=color,
                cycle=cycle,
                interior_faces=tuple(sorted(faces)),
                interior_edges=tuple(sorted(set(inner))),
                interior_vertices=tuple(sorted(inner_vertices)),
                fingerprint=ec.fingerprint,
            )
        )
    knobs.sort(key=lambda k: (len(k.cycle), len(k.interior_faces), k.cycle))
    return knobs


def rotate_knob(ec: TaitColoring, knob: Knob) -> TaitColoring:
    if ec.fingerprint != knob.fingerprint:
        raise StaleKnob("knob was computed against a different coloring")
    return ec.swapped(knob.interior_edges, knob.other_pair)


def all_knobs(t: Triangulation, ec: TaitColoring) -> list[Knob]:
    knobs = []
    for color in (1, 2, 3):
        knobs.extend(find_knobs(t, ec, color))
    knobs.sort(key=lambda k: (len(k.cycle), len(k.interior_faces), k.color, k.cycle))
    return knobs


def global_swap(ec: TaitColoring, pair: Sequence[int]) -> TaitColoring:
    """Exchange two colors on every edge of the graph."""
    return ec.swapped(range(len(ec)), _pair(pair))
