"""Exhaustive search over the recoloring graph R_k(G).

States are color tuples (no quotient by color permutation). Neighbors are
enumerated in (vertex, color) lexicographic order so every BFS is
deterministic.
"""

from __future__ import annotations

import math
import os
from collections import deque
from collections.abc import Iterator
from typing import TextIO

from .errors import InputError, ResourceError
from .graph import Coloring, Graph, RecolorSequence, is_proper, sequence_from_colorings

DEFAULT_STATE_LIMIT = 5_000_000
INF = math.inf


class _Empty:
    """Result marker for a graph with no proper k-coloring at all."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"


EMPTY = _Empty()


def state_limit() -> int:
    raw = os.environ.get("REKOLOR_STATE_LIMIT")
    return int(raw) if raw else DEFAULT_STATE_LIMIT


def proper_colorings(g: Graph, k: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """All proper k-colorings in lexicographic order, guarded by ``limit``."""
    limit = state_limit() if limit is None else limit
    out: list[tuple[int, ...]] = []
    cs = [0] * g.n
    earlier = [[w for w in g.adj[v] if w < v] for v in range(g.n)]

    def rec(v: int) -> None:
        if v == g.n:
            if len(out) >= limit:
                raise ResourceError(f"R_{k} has more than {limit} states")
            out.append(tuple(cs))
            return
        for c in range(1, k + 1):
            if all(cs[w] != c for w in earlier[v]):
                cs[v] = c
                rec(v + 1)
        cs[v] = 0

    if k >= 1 or g.n == 0:
        rec(0)
    return out


def _neighbors(g: Graph, k: int, state: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for v in range(g.n):
        used = {state[w] for w in g.adj[v]}
        for c in range(1, k + 1):
            if c != state[v] and c not in used:
                yield state[:v] + (c,) + state[v + 1 :]


class RecoloringGraphOracle:
    """The recoloring graph R_k(G), built eagerly and queried read-only."""

    def __init__(self, g: Graph, k: int, limit: int | None = None):
        self.graph = g
        self.k = k
        self.states = proper_colorings(g, k, limit)
        self.index = {s: i for i, s in enumerate(self.states)}
        self._component: list[int] | None = None

    def __len__(self) -> int:
        return len(self.states)

    def neighbors(self, state: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        return _neighbors(self.graph, self.k, state)

    def _state(self, c: Coloring | tuple[int, ...]) -> tuple[int, ...]:
        s = tuple(c)
        if s not in self.index:
            raise InputError(f"{s} is not a proper {self.k}-coloring of the graph")
        return s

    def bfs(self, source: Coloring | tuple[int, ...]) -> dict[tuple[int, ...], int]:
        src = self._state(source)
        dist = {src: 0}
        queue = deque([src])
        while queue:
            s = queue.popleft()
            for t in self.neighbors(s):
                if t not in dist:
                    dist[t] = dist[s] + 1
                    queue.append(t)
        return dist

    def shortest_path(
        self, a: Coloring | tuple[int, ...], b: Coloring | tuple[int, ...]
    ) -> list[tuple[int, ...]] | None:
        """States from ``a`` to ``b`` inclusive, or None if unreachable."""
        src, dst = self._state(a), self._state(b)
        prev: dict[tuple[int, ...], tuple[int, ...] | None] = {src: None}
        queue = deque([src])
        while queue and dst not in prev:
            s = queue.popleft()
            for t in self.neighbors(s):
                if t not in prev:
                    prev[t] = s
                    queue.append(t)
        if dst not in prev:
            return None
        path = [dst]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        path.reverse()
        return path

    def distance(self, a: Coloring | tuple[int, ...], b: Coloring | tuple[int, ...]) -> float:
        path = self.shortest_path(a, b)
        return INF if path is None else len(path) - 1

    @property
    def components(self) -> list[int]:
        """Component id per state index."""
        if self._component is None:
            comp = [-1] * len(self.states)
            cid = 0
            for i, s in enumerate(self.states):
                if comp[i] >= 0:
                    continue
                comp[i] = cid
                queue = deque([s])
                while queue:
                    cur = queue.popleft()
                    for t in self.neighbors(cur):
                        j = self.index[t]
                        if comp[j] < 0:
                            comp[j] = cid
                            queue.append(t)
                cid += 1
            self._component = comp
        return self._component

    @property
    def component_count(self) -> int:
        return max(self.components, default=-1) + 1

    def is_connected(self) -> bool:
        return self.component_count == 1

    def diameter(self) -> float:
        if not self.states:
            raise InputError(f"no proper {self.k}-coloring exists")
        if not self.is_connected():
            return INF
        return max(max(self.bfs(s).values()) for s in self.states)

    def degree(self, c: Coloring | tuple[int, ...]) -> int:
        return sum(1 for _ in self.neighbors(self._state(c)))

    def dump_edges(self, out: TextIO) -> None:
        """Write R_k(G) as ``i j`` lines over state indices (i < j)."""
        for i, s in enumerate(self.states):
            for t in self.neighbors(s):
                j = self.index[t]
                if i < j:
                    out.write(f"{i} {j}\n")


def _require_proper(g: Graph, k: int, c: Coloring) -> None:
    if len(c) != g.n:
        raise InputError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    if any(not 1 <= x <= k for x in c) or not is_proper(g, c):
        raise InputError(f"{tuple(c)} is not a proper {k}-coloring")


def oracle_distance(
    g: Graph, k: int, a: Coloring, b: Coloring, limit: int | None = None
) -> float:
    """Exact recoloring distance; ``math.inf`` across components.

    Explores the recoloring graph from ``a`` lazily, so only the component of
    ``a`` is ever visited.
    """
    _require_proper(g, k, a)
    _require_proper(g, k, b)
    limit = state_limit() if limit is None else limit
    src, dst = tuple(a), tuple(b)
    if src == dst:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        s = queue.popleft()
        for t in _neighbors(g, k, s):
            if t not in dist:
                if t == dst:
                    return dist[s] + 1
                dist[t] = dist[s] + 1
                if len(dist) > limit:
                    raise ResourceError(f"distance search exceeded {limit} states")
                queue.append(t)
    return INF


def oracle_path(
    g: Graph, k: int, a: Coloring, b: Coloring, limit: int | None = None
) -> RecolorSequence | None:
    """A shortest recoloring sequence from ``a`` to ``b``, or None."""
    _require_proper(g, k, a)
    _require_proper(g, k, b)
    path = RecoloringGraphOracle(g, k, limit).shortest_path(a, b)
    if path is None:
        return None
    return sequence_from_colorings(Coloring(tuple(a), k), path[1:])


def is_k_mixing(g: Graph, k: int, limit: int | None = None):
    """True iff R_k(G) is connected; :data:`EMPTY` if there is no proper k-coloring.

    A single coloring (e.g. k = 1 on an edgeless graph) counts as connected.
    """
    oracle = RecoloringGraphOracle(g, k, limit)
    if not oracle.states:
        return EMPTY
    return oracle.is_connected()


def recoloring_diameter(g: Graph, k: int, limit: int | None = None) -> float:
    return RecoloringGraphOracle(g, k, limit).diameter()


def frozen_degree(g: Graph, k: int, c: Coloring) -> int:
    """Number of proper colorings one recoloring away from ``c``; 0 means frozen."""
    _require_proper(g, k, c)
    count = 0
    for v in range(g.n):
        used = {c[w] for w in g.adj[v]}
        count += sum(1 for x in range(1, k + 1) if x != c[v] and x not in used)
    return count


def mixing_number_probe(g: Graph, k_max: int, limit: int | None = None) -> int | None:
    """Smallest m <= k_max with G k-mixing for every k in m..k_max, else None.

    Only a probe: mixing beyond ``k_max`` is not checked. Empty recoloring
    graphs count as not mixing.
    """
    best = None
    for k in range(k_max, 0, -1):
        if is_k_mixing(g, k, limit) is True:
            best = k
        else:
            break
    return best
