"""Vertex, edge and face colorings and the maps between them.

Vertex colors 1..4 are encoded as elements of the Klein four-group
(1 -> 00, 2 -> 01, 3 -> 10, 4 -> 11) and edge colors a, b, c as the three
non-identity elements (a -> 01, b -> 10, c -> 11).  With this encoding the
color of an edge is the XOR of its endpoint codes, and the XOR of any two
distinct edge colors is the third one.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

from .errors import ImproperColoring, InconsistentColoring, ParseError
from .triangulation import Triangulation


class EdgeColor(IntEnum):
    A = 1
    B = 2
    C = 3

    def __str__(self):
        return "abc"[self - 1]

    @classmethod
    def parse(cls, s: str) -> "EdgeColor":
        try:
            return cls("abc".index(s.strip().lower()) + 1)
        except ValueError:
            raise ValueError(f"not an edge color: {s!r}") from None


A, B, C = EdgeColor.A, EdgeColor.B, EdgeColor.C


class Orientation(IntEnum):
    UP = 1
    DOWN = -1

    def __str__(self):
        return "up" if self is Orientation.UP else "down"


VertexColoring = tuple  # tuple[int, ...] of colors 1..4, indexed by vertex id

_UP_SEQUENCES = {(1, 2, 3), (2, 3, 1), (3, 1, 2)}


def vertex_code(color: int) -> int:
    return color - 1


def code_to_vertex(code: int) -> int:
    return code + 1


def third_color(x: int, y: int) -> EdgeColor:
    """The edge color not in ``{x, y}`` (x != y)."""
    return EdgeColor(x ^ y)


def color_string(colors: Iterable[int]) -> str:
    return "".join(str(EdgeColor(c)) for c in colors)


def parse_pair(text: str) -> tuple[EdgeColor, EdgeColor]:
    """``"ac"`` / ``"a-c"`` / ``"ca"`` -> ``(A, C)`` (sorted)."""
    letters = [ch for ch in text.lower() if ch in "abc"]
    if len(letters) != 2 or letters[0] == letters[1]:
        raise ValueError(f"not a color pair: {text!r}")
    x, y = sorted(EdgeColor.parse(ch) for ch in letters)
    return x, y


def pair_name(pair: Sequence[int]) -> str:
    return "".join(sorted(str(EdgeColor(c)) for c in pair))


@dataclass(frozen=True)
class TaitColoring:
    """Edge 3-coloring, ``colors[eid]`` in {1, 2, 3} for a, b, c."""

    colors: tuple[int, ...]

    def __post_init__(self):
        if any(c not in (1, 2, 3) for c in self.colors):
            raise ValueError("edge colors must be 1, 2 or 3")

    def __getitem__(self, eid: int) -> EdgeColor:
        return EdgeColor(self.colors[eid])

    def __len__(self):
        return len(self.colors)

    @property
    def fingerprint(self) -> str:
        return hashlib.blake2b(bytes(self.colors), digest_size=8).hexdigest()

    def count(self, color: int) -> int:
        return self.colors.count(color)

    def swapped(self, edge_ids: Iterable[int], pair: Sequence[int]) -> "TaitColoring":
        """Exchange the two colors of ``pair`` on the given edges."""
        x, y = pair
        cols = list(self.colors)
        for e in edge_ids:
            c = cols[e]
            if c == x:
                cols[e] = y
            elif c == y:
                cols[e] = x
        return TaitColoring(tuple(cols))

    def permuted(self, perm: dict[int, int]) -> "TaitColoring":
        return TaitColoring(tuple(perm[c] for c in self.colors))

    def pretty(self, t: Triangulation) -> dict[tuple[int, int], str]:
        return {e: str(EdgeColor(c)) for e, c in zip(t.edges, self.colors)}


def is_proper(t: Triangulation, vc: Sequence[int]) -> bool:
    return len(vc) == t.vertex_count and all(
        1 <= vc[u] <= 4 and vc[u] != vc[v] for u, v in t.edges
    )


def vertex_to_edge(t: Triangulation, vc: Sequence[int]) -> TaitColoring:
    if len(vc) != t.vertex_count:
        raise ImproperColoring(f"expected {t.vertex_count} vertex colors, got {len(vc)}")
    cols = []
    for u, v in t.edges:
        c = vertex_code(vc[u]) ^ vertex_code(vc[v])
        if c == 0:
            raise ImproperColoring(f"edge {u}-{v} joins two vertices of color {vc[u]}")
        cols.append(c)
    ec = TaitColoring(tuple(cols))
    assert not validate_tait(t, ec)
    return ec


def edge_to_vertex(t: Triangulation, ec: TaitColoring, root: int = 0, root_color: int = 1) -> VertexColoring:
    """Integrate edge colors from ``root``: code(v) = code(root) XOR path colors."""
    n = t.vertex_count
    codes: list[int | None] = [None] * n
    codes[root] = vertex_code(root_color)
    stack = [root]
    while stack:
        u = stack.pop()
        for w in t.rotation[u]:
            c = codes[u] ^ ec.colors[t.edge_id(u, w)]
            if codes[w] is None:
                codes[w] = c
                stack.append(w)
            elif codes[w] != c:
                raise InconsistentColoring(f"edge colors disagree around vertex {w}")
    return tuple(code_to_vertex(c) for c in codes)


def triangle_orientation(t: Triangulation, ec: TaitColoring, fid: int) -> Orientation:
    seq = tuple(ec.colors[e] for e in t.face_edges(fid))
    if seq in _UP_SEQUENCES:
        return Orientation.UP
    if len(set(seq)) == 3:
        return Orientation.DOWN
    raise ImproperColoring(f"face {fid} is not tri-colored: {color_string(seq)}")


def edge_to_face(t: Triangulation, ec: TaitColoring) -> dict[int, Orientation]:
    """Up/down class of every triangle (up = a, b, c in clockwise order)."""
    return {f: triangle_orientation(t, ec, f) for f in t.triangles()}


def validate_tait(t: Triangulation, ec: TaitColoring) -> list[tuple[int, tuple[int, ...], str]]:
    """Triangles missing a color, as ``(face id, vertices, edge colors)``."""
    if len(ec.colors) != t.edge_count:
        raise ValueError(f"coloring has {len(ec.colors)} edges, graph has {t.edge_count}")
    bad = []
    for f in t.triangles():
        seq = [ec.colors[e] for e in t.face_edges(f)]
        if len(set(seq)) != 3:
            bad.append((f, t.faces[f], color_string(seq)))
    return bad


def orbit_sizes(t: Triangulation, vc: Sequence[int]) -> dict[str, int]:
    """Distinct vertex, edge and face colorings over all 24 relabelings of 1..4."""
    if not is_proper(t, vc):
        raise ImproperColoring("vertex coloring is not proper")
    vertex_maps, edge_maps, face_maps = set(), set(), set()
    for perm in itertools.permutations((1, 2, 3, 4)):
        relabeled = tuple(perm[c - 1] for c in vc)
        ec = vertex_to_edge(t, relabeled)
        vertex_maps.add(relabeled)
        edge_maps.add(ec.colors)
        face_maps.add(tuple(sorted(edge_to_face(t, ec).items())))
    return {
        "vertex_orbit": len(vertex_maps),
        "edge_orbit": len(edge_maps),
        "face_orbit": len(face_maps),
    }


# -- TCOL / VCOL v1 ---------------------------------------------------------------


def dumps_tcol(t: Triangulation, ec: TaitColoring) -> str:
    lines = ["TCOL 1"]
    lines += [f"{u} {v} {EdgeColor(c)}" for (u, v), c in zip(t.edges, ec.colors)]
    return "\n".join(lines) + "\n"


def dumps_vcol(vc: Sequence[int]) -> str:
    return "\n".join(["VCOL 1"] + [f"{v} {k}" for v, k in enumerate(vc)]) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def loads_coloring(t: Triangulation, text: str) -> TaitColoring | VertexColoring:
    """Parse a TCOL or VCOL document against ``t``; the header decides which."""
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty coloring file", 1)
    header = rows[0][1].split()
    if header == ["TCOL", "1"]:
        return _parse_tcol(t, rows)
    if header == ["VCOL", "1"]:
        return _parse_vcol(t, rows)
    raise ParseError(f"unknown header {rows[0][1]!r}", rows[0][0])


def _parse_tcol(t, rows) -> TaitColoring:
    cols: list[int | None] = [None] * t.edge_count
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'u v color', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            c = EdgeColor.parse(parts[2])
            eid = t.edge_id(u, v)
        except (ValueError, KeyError) as exc:
            raise ParseError(str(exc), lineno) from None
        if cols[eid] is not None:
            raise ParseError(f"edge {u}-{v} colored twice", lineno)
        cols[eid] = int(c)
    missing = [t.edges[i] for i, c in enumerate(cols) if c is None]
    if missing:
        raise ParseError(f"{len(missing)} edges uncolored, e.g. {missing[0]}", rows[-1][0] + 1)
    return TaitColoring(tuple(cols))


def _parse_vcol(t, rows) -> VertexColoring:
    vc: list[int | None] = [None] * t.vertex_count
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'v k', got {line!r}", lineno)
        try:
            v, k = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer in {line!r}", lineno) from None
        if not 0 <= v < t.vertex_count or k not in (1, 2, 3, 4):
            raise ParseError(f"bad vertex/color {line!r}", lineno)
        vc[v] = k
    if any(k is None for k in vc):
        raise ParseError("some vertices uncolored", rows[-1][0] + 1)
    return tuple(vc)
