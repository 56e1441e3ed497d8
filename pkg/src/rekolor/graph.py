"""Graphs, colorings and recoloring sequences.

Vertices are ``0..n-1``; colors are ``1..k``. All values are immutable:
recoloring a vertex returns a new :class:`Coloring`.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .errors import InputError, InvariantError, SequenceError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph stored as per-vertex neighbor sets."""

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise InputError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise InputError(f"self-loop on vertex {v}")
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise InputError(f"neighbor {w} of {v} out of range")
                if v not in self.adj[w]:
                    raise InputError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows: list[set[int]] = [set() for _ in range(n)]
        for x, y in edges:
            if not (0 <= x < n and 0 <= y < n):
                raise InputError(f"edge ({x}, {y}) out of range for n={n}")
            if x == y:
                raise InputError(f"self-loop on vertex {x}")
            rows[x].add(y)
            rows[y].add(x)
        return cls(n, tuple(frozenset(r) for r in rows))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in sorted(self.adj[x]) if x < y]

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    @property
    def max_degree(self) -> int:
        return max((len(r) for r in self.adj), default=0)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, x: int, y: int) -> bool:
        return y in self.adj[x]

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabeled to ``0..len-1``; also returns new->old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        rows = tuple(
            frozenset(index[w] for w in self.adj[v] if w in index) for v in keep
        )
        return Graph(len(keep), rows), keep

    def is_stable(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self.adj[v] & vs) for v in vs)


@dataclass(frozen=True)
class Coloring:
    """A total map from vertices to colors in ``1..k``."""

    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.colors, tuple):
            object.__setattr__(self, "colors", tuple(self.colors))
        for v, c in enumerate(self.colors):
            if not 1 <= c <= self.k:
                raise InputError(f"color {c} of vertex {v} outside 1..{self.k}")

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self.colors)

    def recolor(self, v: int, c: int) -> Coloring:
        cs = list(self.colors)
        cs[v] = c
        return Coloring(tuple(cs), self.k)

    def with_palette(self, k: int) -> Coloring:
        return Coloring(self.colors, k)

    def color_class(self, c: int) -> frozenset[int]:
        return frozenset(v for v, cv in enumerate(self.colors) if cv == c)

    @property
    def max_color(self) -> int:
        return max(self.colors, default=0)


@dataclass(frozen=True)
class RecolorStep:
    vertex: int
    new_color: int


@dataclass(frozen=True)
class RecolorSequence:
    """A start coloring and the single-vertex steps applied to it in order."""

    start: Coloring
    steps: tuple[RecolorStep, ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.steps, tuple):
            object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def colorings(self) -> Iterator[Coloring]:
        """Yield the start coloring and every coloring after each step."""
        cur = self.start
        yield cur
        for s in self.steps:
            cur = cur.recolor(s.vertex, s.new_color)
            yield cur

    @property
    def end(self) -> Coloring:
        cs = list(self.start.colors)
        for s in self.steps:
            cs[s.vertex] = s.new_color
        return Coloring(tuple(cs), self.start.k)

    def recolor_counts(self) -> list[int]:
        counts = Counter(s.vertex for s in self.steps)
        return [counts.get(v, 0) for v in range(len(self.start))]

    def reversed(self) -> RecolorSequence:
        """The same walk traversed from the end coloring back to the start."""
        cs = list(self.start.colors)
        inverse = []
        for s in self.steps:
            inverse.append(RecolorStep(s.vertex, cs[s.vertex]))
            cs[s.vertex] = s.new_color
        inverse.reverse()
        return RecolorSequence(Coloring(tuple(cs), self.start.k), tuple(inverse))

    def then(self, other: RecolorSequence) -> RecolorSequence:
        """Concatenate; ``other`` must start where this sequence ends."""
        if other.start.colors != self.end.colors:
            raise InvariantError("splice mismatch: sequences do not meet")
        k = max(self.start.k, other.start.k)
        return RecolorSequence(self.start.with_palette(k), self.steps + other.steps)


def _check_total(g: Graph, c: Coloring | Sequence[int]) -> None:
    if len(c) != g.n:
        raise InputError(f"coloring has {len(c)} entries, graph has {g.n} vertices")


def conflicts(g: Graph, c: Coloring | Sequence[int]) -> list[tuple[int, int]]:
    """Monochromatic edges of ``c``."""
    _check_total(g, c)
    return [(x, y) for x, y in g.edges if c[x] == c[y]]


def is_proper(g: Graph, c: Coloring | Sequence[int]) -> bool:
    _check_total(g, c)
    return all(c[x] != c[y] for x in range(g.n) for y in g.adj[x] if x < y)


def require_proper(g: Graph, c: Coloring, name: str = "coloring") -> None:
    bad = conflicts(g, c)
    if bad:
        raise InputError(f"{name} is not proper: edge {bad[0]} is monochromatic")


def validate_sequence(g: Graph, seq: RecolorSequence) -> Coloring:
    """Replay ``seq`` on ``g`` and return the final coloring.

    Raises :class:`SequenceError` naming the first step that is a no-op, is out
    of range, or leaves a monochromatic edge.
    """
    require_proper(g, seq.start, "start coloring")
    k = seq.start.k
    cs = list(seq.start.colors)
    for i, s in enumerate(seq.steps):
        v, c = s.vertex, s.new_color
        if not 0 <= v < g.n:
            raise SequenceError(i, f"vertex {v} out of range")
        if not 1 <= c <= k:
            raise SequenceError(i, f"color {c} outside 1..{k}")
        if cs[v] == c:
            raise SequenceError(i, f"vertex {v} already has color {c}")
        for w in g.adj[v]:
            if cs[w] == c:
                raise SequenceError(i, f"vertex {v} -> {c} clashes with neighbor {w}")
        cs[v] = c
    return Coloring(tuple(cs), k)


def sequence_from_colorings(start: Coloring, path: Iterable[Sequence[int]]) -> RecolorSequence:
    """Build a sequence from consecutive colorings that differ on one vertex each."""
    steps = []
    prev = start.colors
    for cur in path:
        diff = [v for v in range(len(prev)) if prev[v] != cur[v]]
        if len(diff) != 1:
            raise InputError(f"consecutive colorings differ on {len(diff)} vertices")
        steps.append(RecolorStep(diff[0], cur[diff[0]]))
        prev = tuple(cur)
    return RecolorSequence(start, tuple(steps))


def simplify_sequence(seq: RecolorSequence) -> RecolorSequence:
    """Drop no-op steps, merge consecutive steps on one vertex, cancel reverts.

    Every coloring visited by the result is also visited by ``seq``, so validity
    is preserved. A walk followed by its own reversal collapses to nothing.
    """
    cs = list(seq.start.colors)
    # each kept entry: (vertex, color before, color after)
    kept: list[tuple[int, int, int]] = []
    for s in seq.steps:
        v, c = s.vertex, s.new_color
        old = cs[v]
        cs[v] = c
        if old == c:
            continue
        if kept and kept[-1][0] == v:
            _, before, _ = kept.pop()
            if before != c:
                kept.append((v, before, c))
            continue
        kept.append((v, old, c))
    return RecolorSequence(seq.start, tuple(RecolorStep(v, c) for v, _, c in kept))
