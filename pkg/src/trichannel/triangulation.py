"""Embedded planar triangulations stored as rotation systems.

A rotation system gives, for every vertex, the clockwise cyclic order of its
neighbours.  Faces are never supplied by the caller; they are traced from the
rotation.  Tracing follows the dart ``u -> v`` with ``v -> w`` where ``w`` is
the neighbour *preceding* ``u`` in the clockwise rotation at ``v``, which walks
every face clockwise.  Face ids are assigned by sorting the traced faces after
rotating each one to start at its smallest vertex, so identical rotations
always produce identical face ids.

A triangulation may carry one designated hole (``boundary_face``): the square
or pentagon left behind when a degree-4/5 vertex is deleted.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from typing import Sequence

from .errors import (
    DegreeTooHigh,
    InconsistentRotation,
    InvalidSize,
    NotPlanarSphere,
    NotTriangulated,
    ParseError,
)

Rotation = Sequence[Sequence[int]]


def _normalize_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    i = min(range(len(cycle)), key=cycle.__getitem__)
    return tuple(cycle[i:]) + tuple(cycle[:i])


class Triangulation:
    """Immutable embedded (near-)triangulation.

    Attributes are plain tuples/dicts built once in ``__init__``; nothing is
    mutated afterwards, so instances can be shared freely.
    """

    __slots__ = (
        "rotation",
        "faces",
        "edges",
        "boundary_face",
        "_edge_index",
        "_dart_face",
        "_rot_pos",
    )

    def __init__(self, rotation: Rotation, hole: Sequence[int] | None = None):
        rot = tuple(tuple(int(x) for x in nbrs) for nbrs in rotation)
        n = len(rot)
        if n < 3:
            raise InvalidSize(f"too few vertices ({n})")
        _check_rotation(rot)

        rot_pos = tuple({u: i for i, u in enumerate(nbrs)} for nbrs in rot)
        faces = _trace_faces(rot, rot_pos)
        edges = tuple(sorted((u, v) for u in range(n) for v in rot[u] if u < v))

        self.rotation = rot
        self.faces = faces
        self.edges = edges
        self._rot_pos = rot_pos
        self._edge_index = {e: i for i, e in enumerate(edges)}
        self._dart_face = {}
        for fid, face in enumerate(faces):
            k = len(face)
            for i in range(k):
                self._dart_face[(face[i], face[(i + 1) % k])] = fid

        self.boundary_face = None
        if hole is not None:
            key = _normalize_cycle(tuple(hole))
            try:
                self.boundary_face = faces.index(key)
            except ValueError:
                raise NotTriangulated(f"designated hole {list(hole)} is not a traced face") from None
        self._validate()

    # -- construction helpers -------------------------------------------------

    def _validate(self) -> None:
        n = self.vertex_count
        if n < 3 or (self.boundary_face is None and n < 4):
            raise InvalidSize(f"too few vertices ({n})")
        _check_connected(self.rotation)
        for fid, face in enumerate(self.faces):
            if fid == self.boundary_face:
                if len(set(face)) != len(face):
                    raise NotTriangulated(f"hole face {face} is not a simple cycle")
                continue
            if len(face) != 3:
                raise NotTriangulated(f"face {fid} {face} has {len(face)} sides")
        v, e, f = n, len(self.edges), len(self.faces)
        if v - e + f != 2:
            raise NotPlanarSphere(f"Euler relation fails: V-E+F = {v}-{e}+{f} = {v - e + f}")
        if self.boundary_face is None:
            if e != 3 * v - 6:
                raise NotPlanarSphere(f"E={e} but a sphere triangulation needs 3V-6={3 * v - 6}")
            if min(self.degree(u) for u in range(n)) > 5:
                raise NotPlanarSphere("minimum degree exceeds 5")

    # -- basic queries ----------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def is_sphere(self) -> bool:
        return self.boundary_face is None

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._rot_pos[u]

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._edge_index[key]
        except KeyError:
            raise KeyError(f"{u}-{v} is not an edge") from None

    def face_of_dart(self, u: int, v: int) -> int:
        """Face traversing the directed edge ``u -> v``."""
        return self._dart_face[(u, v)]

    def edge_faces(self, eid: int) -> tuple[int, int]:
        u, v = self.edges[eid]
        return self._dart_face[(u, v)], self._dart_face[(v, u)]

    def face_edges(self, fid: int) -> tuple[int, ...]:
        """Edge ids of a face, in clockwise trace order starting at its first vertex."""
        face = self.faces[fid]
        k = len(face)
        return tuple(self.edge_id(face[i], face[(i + 1) % k]) for i in range(k))

    def triangles(self) -> list[int]:
        return [f for f in range(len(self.faces)) if f != self.boundary_face]

    @property
    def hole(self) -> tuple[int, ...] | None:
        if self.boundary_face is None:
            return None
        return self.faces[self.boundary_face]

    def hole_edges(self) -> tuple[int, ...]:
        if self.boundary_face is None:
            return ()
        return self.face_edges(self.boundary_face)

    def on_hole(self, v: int) -> bool:
        return self.boundary_face is not None and v in self.faces[self.boundary_face]

    def faces_around(self, v: int) -> list[int]:
        """Faces incident to ``v`` in clockwise order."""
        return [self._dart_face[(v, u)] for u in self.rotation[v]]

    def adjacency(self) -> list[set[int]]:
        return [set(nbrs) for nbrs in self.rotation]

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.rotation == other.rotation and self.boundary_face == other.boundary_face

    def __hash__(self):
        return hash((self.rotation, self.boundary_face))

    def __repr__(self):
        hole = "" if self.boundary_face is None else f", hole={list(self.hole)}"
        return f"Triangulation(V={self.vertex_count}, E={self.edge_count}, F={self.face_count}{hole})"


def _check_rotation(rot: tuple[tuple[int, ...], ...]) -> None:
    n = len(rot)
    for u, nbrs in enumerate(rot):
        if len(set(nbrs)) != len(nbrs):
            raise InconsistentRotation(f"vertex {u} lists a neighbour twice (parallel edge)")
        for v in nbrs:
            if not 0 <= v < n:
                raise InconsistentRotation(f"vertex {u} lists unknown vertex {v}")
            if v == u:
                raise InconsistentRotation(f"vertex {u} has a loop")
    nbr_sets = [set(nbrs) for nbrs in rot]
    for u in range(n):
        for v in rot[u]:
            if u not in nbr_sets[v]:
                raise InconsistentRotation(f"{u} lists {v} but {v} does not list {u}")


def _check_connected(rot) -> None:
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in rot[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if len(seen) != len(rot):
        raise NotPlanarSphere("graph is disconnected")


def _trace_faces(rot, rot_pos) -> tuple[tuple[int, ...], ...]:
    visited = set()
    faces = []
    for u in range(len(rot)):
        for v in rot[u]:
            if (u, v) in visited:
                continue
            face = []
            a, b = u, v
            while (a, b) not in visited:
                visited.add((a, b))
                face.append(a)
                nb = rot[b]
                a, b = b, nb[rot_pos[b][a] - 1]
            faces.append(_normalize_cycle(face))
    return tuple(sorted(faces))


def build_from_rotation(rotation: Rotation, hole: Sequence[int] | None = None) -> Triangulation:
    """Validate a rotation system and trace its faces.

    ``hole`` optionally names the single non-triangular face by its vertex
    cycle (any starting point).
    """
    return Triangulation(rotation, hole)


def degree_histogram(t: Triangulation) -> dict[int, int]:
    hist = dict(sorted(Counter(t.degree(v) for v in range(t.vertex_count)).items()))
    if t.is_sphere:
        assert min(hist) in (3, 4, 5), hist
    return hist


# -- puncture / cone ------------------------------------------------------------


def relabel_after_removal(u: int, removed: int) -> int:
    """Vertex id of ``u`` once ``removed`` has been deleted (ids above it shift down)."""
    return u - 1 if u > removed else u


def restore_label(u: int, removed: int) -> int:
    """Inverse of :func:`relabel_after_removal`."""
    return u + 1 if u >= removed else u


def puncture(t: Triangulation, v: int) -> Triangulation:
    """Delete ``v`` (degree 3, 4 or 5); its link cycle becomes the hole.

    Vertices with id greater than ``v`` are renumbered down by one.
    """
    if not t.is_sphere:
        raise NotTriangulated("puncture expects a sphere triangulation")
    d = t.degree(v)
    if d > 5:
        raise DegreeTooHigh(f"vertex {v} has degree {d}")
    if d < 3:
        raise InvalidSize(f"vertex {v} has degree {d}")
    rot = [
        [relabel_after_removal(w, v) for w in nbrs if w != v]
        for u, nbrs in enumerate(t.rotation)
        if u != v
    ]
    # the dart opposite v in any face at v survives on the hole
    face = t.faces[t.face_of_dart(v, t.rotation[v][0])]
    i = face.index(v)
    x, y = face[(i + 1) % 3], face[(i + 2) % 3]
    x, y = relabel_after_removal(x, v), relabel_after_removal(y, v)
    rot_t = tuple(tuple(r) for r in rot)
    rot_pos = tuple({u: k for k, u in enumerate(nbrs)} for nbrs in rot_t)
    a, b, hole = x, y, []
    while True:
        hole.append(a)
        a, b = b, rot_t[b][rot_pos[b][a] - 1]
        if (a, b) == (x, y):
            break
    return Triangulation(rot_t, hole)


def cone_over_hole(t: Triangulation) -> Triangulation:
    """Add a new vertex (id ``V``) joined to every hole vertex, closing the hole."""
    if t.is_sphere:
        raise NotTriangulated("triangulation has no hole to cone over")
    hole = t.hole
    z = t.vertex_count
    rot = [list(nbrs) for nbrs in t.rotation]
    k = len(hole)
    for i, x in enumerate(hole):
        nxt = hole[(i + 1) % k]
        pos = rot[x].index(nxt)
        rot[x].insert(pos + 1, z)
    rot.append(list(hole))
    return Triangulation(rot)


# -- generation -----------------------------------------------------------------

TETRAHEDRON_ROTATION = ((1, 3, 2), (2, 3, 0), (0, 3, 1), (0, 1, 2))


def random_triangulation(n: int, seed: int) -> Triangulation:
    """Random sphere triangulation on ``n`` vertices, deterministic in ``(n, seed)``.

    Grows from the tetrahedron by stellar subdivision of uniformly chosen
    faces, then applies ``3 n`` random edge-flip attempts, skipping flips that
    would create a parallel edge or a degree-2 vertex.
    """
    if n < 4:
        raise InvalidSize(f"need n >= 4, got {n}")
    rng = random.Random(seed)
    rot = [list(r) for r in TETRAHEDRON_ROTATION]
    faces = list(Triangulation(rot).faces)

    for x in range(4, n):
        i = rng.randrange(len(faces))
        u, v, w = faces[i]
        # face (u, v, w) shows up as consecutive (v, w) at u, (w, u) at v, (u, v) at w
        for a, b in ((u, v), (v, w), (w, u)):
            rot[a].insert(rot[a].index(b) + 1, x)
        rot.append([u, v, w])
        faces[i] = (u, v, x)
        faces.append((v, w, x))
        faces.append((w, u, x))

    edges = sorted((a, b) for a in range(n) for b in rot[a] if a < b)
    for _ in range(3 * n):
        i = rng.randrange(len(edges))
        u, v = edges[i]
        flipped = _try_flip(rot, u, v)
        if flipped:
            edges[i] = flipped
    return Triangulation(rot)


def _try_flip(rot: list[list[int]], u: int, v: int) -> tuple[int, int] | None:
    """Flip ``u-v`` in place; return the new edge, or ``None`` if illegal."""
    ru, rv = rot[u], rot[v]
    w = rv[rv.index(u) - 1]  # apex of face (u, v, w)
    z = ru[ru.index(v) - 1]  # apex of face (v, u, z)
    if w == z or len(ru) <= 3 or len(rv) <= 3 or z in rot[w]:
        return None
    ru.remove(v)
    rv.remove(u)
    rw, rz = rot[w], rot[z]
    rw.insert(rw.index(u) + 1, z)
    rz.insert(rz.index(v) + 1, w)
    return (w, z) if w < z else (z, w)


def flip_edge(t: Triangulation, u: int, v: int) -> Triangulation | None:
    """Return ``t`` with edge ``u-v`` flipped, or ``None`` when the flip is illegal."""
    rot = [list(r) for r in t.rotation]
    if _try_flip(rot, u, v) is None:
        return None
    return Triangulation(rot, t.hole)


# -- TRIG v1 serialization --------------------------------------------------------


def dumps_trig(t: Triangulation) -> str:
    lines = ["TRIG 1", str(t.vertex_count)]
    for v, nbrs in enumerate(t.rotation):
        lines.append(f"{v}: " + " ".join(map(str, nbrs)))
    if t.hole is not None:
        lines.append("hole: " + " ".join(map(str, t.hole)))
    return "\n".join(lines) + "\n"


def loads_trig(text: str) -> Triangulation:
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows or rows[0][1].split() != ["TRIG", "1"]:
        raise ParseError("expected header 'TRIG 1'", rows[0][0] if rows else 1)
    if len(rows) < 2:
        raise ParseError("missing vertex count", rows[0][0] + 1)
    lineno, line = rows[1]
    try:
        n = int(line)
    except ValueError:
        raise ParseError(f"bad vertex count {line!r}", lineno) from None
    if n < 3:
        raise ParseError(f"vertex count {n} too small", lineno)
    rotation: list[list[int] | None] = [None] * n
    hole = None
    for lineno, line in rows[2:]:
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'i: ...', got {line!r}", lineno)
        try:
            ids = [int(x) for x in rest.split()]
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
        head = head.strip()
        if head == "hole":
            hole = ids
            continue
        try:
            i = int(head)
        except ValueError:
            raise ParseError(f"bad vertex id {head!r}", lineno) from None
        if not 0 <= i < n:
            raise ParseError(f"vertex id {i} out of range", lineno)
        if rotation[i] is not None:
            raise ParseError(f"vertex {i} listed twice", lineno)
        rotation[i] = ids
    missing = [i for i, r in enumerate(rotation) if r is None]
    if missing:
        raise ParseError(f"missing rotation for vertices {missing[:5]}", rows[-1][0] + 1)
    return Triangulation(rotation, hole)


def read_trig(path) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        return loads_trig(fh.read())


def write_trig(t: Triangulation, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_trig(t))
