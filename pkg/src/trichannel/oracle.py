"""Brute-force ground truth: backtracking vertex 4-coloring and full enumeration.

Nothing here uses channels, knobs or any other machinery under test.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
import itertools
import random
from typing import Iterator, Mapping

from .coloring import vertex_to_edge
from .errors import CapExceeded, InvalidSize
from .triangulation import Triangulation, dumps_trig

DEFAULT_VERTEX_CAP = 200
RESTART_BASE = 500


def graph_fingerprint(t: Triangulation) -> str:
    return hashlib.blake2b(dumps_trig(t).encode(), digest_size=8).hexdigest()


def degeneracy_order(t: Triangulation) -> list[int]:
    """Smallest-last order: repeatedly strip a minimum-degree vertex (lowest id on ties).

    The returned list is the coloring order, i.e. the reverse of the removal
    order, so every vertex has at most 5 earlier neighbours on a planar graph.
    """
    deg = [t.degree(v) for v in range(t.vertex_count)]
    alive = set(range(t.vertex_count))
    removal = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        alive.remove(v)
        removal.append(v)
        for w in t.rotation[v]:
            if w in alive:
                deg[w] -= 1
    return removal[::-1]


def _solutions(
    t: Triangulation,
    precolor: Mapping[int, int] | None = None,
    max_nodes: int | None = None,
    rng: random.Random | None = None,
) -> Iterator[tuple[int, ...]]:
    """Backtracking with forward checking.

    The next vertex is the uncolored one with the fewest remaining colors.
    Without ``rng`` ties go to the earliest vertex in smallest-last order and
    colors are tried 1..4; with ``rng`` both are shuffled (restart mode).
    """
    n = t.vertex_count
    adj = t.rotation
    if rng is None:
        rank = [0] * n
        for i, v in enumerate(degeneracy_order(t)):
            rank[v] = i
    else:
        rank = [rng.random() for _ in range(n)]
    domains = [0b11110] * n
    for v, c in (precolor or {}).items():
        if c not in (1, 2, 3, 4):
            raise ValueError(f"bad precolor {c} for vertex {v}")
        domains[v] = 1 << c
    colors = [0] * n
    uncolored = set(range(n))
    nodes = 0

    def rec():
        nonlocal nodes
        if not uncolored:
            yield tuple(colors)
            return
        v = min(uncolored, key=lambda u: (_POPCOUNT[domains[u]], rank[u]))
        uncolored.remove(v)
        dom = domains[v]
        values = [1, 2, 3, 4]
        if rng is not None:
            rng.shuffle(values)
        for c in values:
            bit = 1 << c
            if not dom & bit:
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise CapExceeded(f"search exceeded {max_nodes} nodes")
            colors[v] = c
            pruned = []
            ok = True
            for w in adj[v]:
                if colors[w] == 0 and domains[w] & bit:
                    domains[w] &= ~bit
                    pruned.append(w)
                    if not domains[w]:
                        ok = False
                        break
            if ok:
                yield from rec()
            for w in pruned:
                domains[w] |= bit
            colors[v] = 0
        uncolored.add(v)

    return rec()


_POPCOUNT = [bin(m).count("1") for m in range(32)]


def _luby(i: int) -> int:
    """i-th term (1-based) of the Luby restart sequence 1,1,2,1,1,2,4,..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    if i == (1 << k) - 1:
        return 1 << (k - 1)
    return _luby(i - (1 << (k - 1)) + 1)


def brute_force_4color(
    t: Triangulation,
    cap: int = DEFAULT_VERTEX_CAP,
    precolor: Mapping[int, int] | None = None,
    max_nodes: int | None = None,
) -> tuple[int, ...] | None:
    """A proper 4-coloring, or ``None`` if none exists.

    The first pass is the plain smallest-last search.  If it stalls after
    ``RESTART_BASE`` nodes, the search restarts with seeded random tie-breaks
    on a Luby schedule; budgets grow without bound, so the search stays
    complete and the result is still a pure function of the input.
    ``max_nodes`` caps the total work and raises :class:`CapExceeded`.
    """
    if t.vertex_count > cap:
        raise CapExceeded(f"{t.vertex_count} vertices exceeds cap {cap}")
    spent = 0
    rng = None
    for attempt in itertools.count():
        budget = RESTART_BASE * _luby(attempt) if attempt else RESTART_BASE
        if max_nodes is not None:
            budget = min(budget, max_nodes - spent)
            if budget <= 0:
                raise CapExceeded(f"search exceeded {max_nodes} nodes")
        try:
            return next(_solutions(t, precolor, budget, rng), None)
        except CapExceeded:
            spent += budget
        if rng is None:
            rng = random.Random(0x5EED)
    raise AssertionError("unreachable")


@dataclass
class ColoringEnumeration:
    fingerprint: str
    vertex_count: int
    tait_count: int
    colorings: list[tuple[int, ...]] | None = field(default=None, repr=False)


def enumerate_colorings(t: Triangulation, cap: int = 10**6, keep: bool = False) -> ColoringEnumeration:
    """Count every proper vertex 4-coloring and the distinct edge colorings they induce."""
    if t.vertex_count < 4:
        raise InvalidSize("enumeration needs at least 4 vertices")
    found = []
    taits = set()
    for vc in _solutions(t):
        if len(found) >= cap:
            raise CapExceeded(f"more than {cap} colorings")
        found.append(vc)
        taits.add(vertex_to_edge(t, vc).colors)
    return ColoringEnumeration(
        fingerprint=graph_fingerprint(t),
        vertex_count=len(found),
        tait_count=len(taits),
        colorings=found if keep else None,
    )
