"""Hard-coded corpus of small sphere triangulations.

Rotations were produced once from a planar embedding and frozen here; the
test-suite re-derives each graph from an independent source and checks
isomorphism.

``errera`` is the 17-vertex Errera graph, the standard instance on which
Kempe's chain argument for degree-5 vertices breaks down.  ``tutte_dual`` is
the planar dual of the 46-vertex Tutte graph (every face of the cubic Tutte
graph becomes a vertex).
"""

from __future__ import annotations

from .errors import UnknownName
from .triangulation import TETRAHEDRON_ROTATION, Triangulation

_ROTATIONS = {
    "tetrahedron": TETRAHEDRON_ROTATION,
    "octahedron": (
        (1, 3, 4, 2),
        (0, 2, 5, 3),
        (1, 0, 4, 5),
        (4, 0, 1, 5),
        (2, 0, 3, 5),
        (3, 1, 2, 4),
    ),
    "icosahedron": (
        (1, 5, 11, 7, 8),
        (0, 8, 2, 6, 5),
        (1, 8, 9, 3, 6),
        (2, 9, 10, 4, 6),
        (3, 10, 11, 5, 6),
        (4, 11, 0, 1, 6),
        (5, 1, 2, 3, 4),
        (11, 10, 9, 8, 0),
        (7, 9, 2, 1, 0),
        (8, 7, 10, 3, 2),
        (9, 7, 11, 4, 3),
        (5, 4, 10, 7, 0),
    ),
    "errera": (
        (1, 14, 16, 7, 15),
        (0, 15, 9, 2, 14),
        (1, 9, 3, 10, 8, 14),
        (4, 10, 2, 9, 11),
        (5, 12, 10, 3, 11),
        (6, 12, 4, 11, 13),
        (7, 16, 8, 12, 5, 13),
        (16, 6, 13, 15, 0),
        (14, 2, 10, 12, 6, 16),
        (3, 2, 1, 15, 13, 11),
        (3, 4, 12, 8, 2),
        (13, 5, 4, 3, 9),
        (10, 4, 5, 6, 8),
        (15, 7, 6, 5, 11, 9),
        (2, 8, 16, 0, 1),
        (9, 1, 0, 7, 13),
        (8, 6, 7, 0, 14),
    ),
    "tutte_dual": (
        (1, 4, 11, 10, 9, 8, 7, 6, 3, 2),
        (0, 2, 5, 16, 15, 14, 8, 13, 12, 4),
        (1, 0, 3, 21, 20, 19, 8, 18, 17, 5),
        (6, 21, 2, 0),
        (11, 0, 1, 12),
        (16, 1, 2, 17),
        (7, 22, 21, 3, 0),
        (8, 19, 22, 6, 0),
        (2, 19, 7, 0, 9, 13, 1, 14, 18),
        (8, 0, 10, 23, 13),
        (9, 0, 11, 23),
        (10, 0, 4, 12, 23),
        (4, 1, 13, 23, 11),
        (12, 1, 8, 9, 23),
        (8, 1, 15, 24, 18),
        (14, 1, 16, 24),
        (15, 1, 5, 17, 24),
        (5, 2, 18, 24, 16),
        (17, 2, 8, 14, 24),
        (20, 22, 7, 8, 2),
        (21, 22, 19, 2),
        (3, 6, 22, 20, 2),
        (19, 20, 21, 6, 7),
        (13, 9, 10, 11, 12),
        (18, 14, 15, 16, 17),
    ),
}

CORPUS_NAMES = tuple(_ROTATIONS)


def corpus_graph(name: str) -> Triangulation:
    try:
        rotation = _ROTATIONS[name]
    except KeyError:
        raise UnknownName(f"unknown corpus graph {name!r}; choose from {', '.join(CORPUS_NAMES)}") from None
    return Triangulation(rotation)
