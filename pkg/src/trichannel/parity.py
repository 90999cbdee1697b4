"""Per-color parity bookkeeping on trails, path replacement and wheel sums.

A trail is a walk that never reuses an edge.  For each color we only track
whether the trail uses an odd or even number of edges of that color; in the
``A1/A2`` notation ``1`` marks odd and ``2`` marks even.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coloring import TaitColoring, triangle_orientation
from .errors import (
    BoundaryVertex,
    NotATrail,
    NotAdjacent,
    NotClosed,
    ParityViolation,
    WouldRepeatEdge,
)
from .triangulation import Triangulation


@dataclass(frozen=True)
class ParityVector:
    """Odd (1) / even (0) count of a-, b- and c-edges."""

    a: int = 0
    b: int = 0
    c: int = 0

    def __add__(self, other: "ParityVector") -> "ParityVector":
        return ParityVector(self.a ^ other.a, self.b ^ other.b, self.c ^ other.c)

    @classmethod
    def of_colors(cls, colors: Iterable[int]) -> "ParityVector":
        bits = [0, 0, 0, 0]
        for col in colors:
            bits[col] ^= 1
        return cls(bits[1], bits[2], bits[3])

    @property
    def uniform(self) -> bool:
        return self.a == self.b == self.c

    def as_tuple(self) -> tuple[str, str, str]:
        return tuple("odd" if x else "even" for x in (self.a, self.b, self.c))

    def label(self) -> str:
        return "+".join(f"{name}{1 if bit else 2}" for name, bit in zip("ABC", (self.a, self.b, self.c)))


EVEN = ParityVector(0, 0, 0)
ODD = ParityVector(1, 1, 1)


@dataclass(frozen=True)
class Trail:
    """Vertex walk ``v0, v1, ..., vk``; its edges are consecutive pairs."""

    vertices: tuple[int, ...]

    @property
    def closed(self) -> bool:
        return len(self.vertices) > 1 and self.vertices[0] == self.vertices[-1]

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def __len__(self):
        return max(len(self.vertices) - 1, 0)


def make_trail(t: Triangulation, vertices: Sequence[int]) -> Trail:
    trail = Trail(tuple(vertices))
    _edge_ids(t, trail)
    return trail


def _edge_ids(t: Triangulation, trail: Trail) -> list[int]:
    seen = set()
    ids = []
    for u, v in trail.edges():
        if not t.adjacent(u, v):
            raise NotATrail(f"{u}-{v} is not an edge")
        eid = t.edge_id(u, v)
        if eid in seen:
            raise NotATrail(f"edge {u}-{v} used twice")
        seen.add(eid)
        ids.append(eid)
    return ids


def trail_parity(t: Triangulation, trail: Trail, ec: TaitColoring) -> ParityVector:
    return ParityVector.of_colors(ec.colors[e] for e in _edge_ids(t, trail))


def check_closed_trail(t: Triangulation, trail: Trail, ec: TaitColoring) -> ParityVector:
    """Parity vector of a closed trail; raises :class:`ParityViolation` if mixed."""
    if not trail.closed:
        raise NotClosed(f"trail starts at {trail.vertices[0]} but ends at {trail.vertices[-1]}")
    vec = trail_parity(t, trail, ec)
    if not vec.uniform:
        raise ParityViolation(vec, trail)
    return vec


def replace_path(t: Triangulation, trail: Trail, face: int) -> Trail:
    """Swap one side of triangle ``face`` for the other two, or two sides for one.

    If the trail uses exactly one side ``x-y`` of the triangle, the detour
    ``x-z-y`` through the apex replaces it.  If it uses two consecutive sides
    ``x-z-y``, they collapse to ``x-y``.  For a closed trail whose two sides
    straddle the start vertex, the result starts one vertex later.
    """
    tri = t.faces[face]
    if face == t.boundary_face or len(tri) != 3:
        raise NotAdjacent(f"face {face} is not a triangle")
    sides = {frozenset((tri[i], tri[(i + 1) % 3])) for i in range(3)}
    vs = list(trail.vertices)
    k = len(vs) - 1
    hits = [i for i in range(k) if frozenset((vs[i], vs[i + 1])) in sides]

    if not hits:
        raise NotAdjacent(f"trail shares no side with face {face}")
    if len(hits) == 1:
        i = hits[0]
        x, y = vs[i], vs[i + 1]
        (z,) = set(tri) - {x, y}
        new = vs[: i + 1] + [z] + vs[i + 1 :]
    elif len(hits) == 2 and hits[1] == hits[0] + 1:
        i = hits[0]
        new = vs[: i + 1] + vs[i + 2 :]
    elif len(hits) == 2 and trail.closed and hits == [0, k - 1]:
        new = vs[1:k] + [vs[1]]
    else:
        # the sides used are not one segment, so either replacement reuses an edge
        raise WouldRepeatEdge(f"trail meets face {face} in {len(hits)} separate places")
    return make_trail(t, new)


def orientation_sum(orientations: Iterable[int]) -> int:
    """Sum of up (+1) / down (-1) marks reduced mod 3."""
    return sum(int(o) for o in orientations) % 3


def wheel_sum(t: Triangulation, ec: TaitColoring, v: int) -> int:
    """Orientation sum of the triangles around interior vertex ``v`` (mod 3)."""
    if t.on_hole(v):
        raise BoundaryVertex(f"vertex {v} lies on the hole")
    return orientation_sum(triangle_orientation(t, ec, f) for f in t.faces_around(v))


def sample_closed_trail(
    t: Triangulation,
    rng: random.Random,
    start: int | None = None,
    attempts: int = 20,
) -> Trail | None:
    """Random closed trail: walk on unused edges until the walk first returns home.

    Retries from scratch when the walk gets stuck; ``None`` after ``attempts``
    failures.
    """
    n = t.vertex_count
    for _ in range(attempts):
        s = rng.randrange(n) if start is None else start
        used = set()
        walk = [s]
        cur = s
        while True:
            options = [w for w in t.rotation[cur] if t.edge_id(cur, w) not in used]
            if not options:
                break
            nxt = rng.choice(options)
            used.add(t.edge_id(cur, nxt))
            walk.append(nxt)
            cur = nxt
            if cur == s:
                return Trail(tuple(walk))
    return None

