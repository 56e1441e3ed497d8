"""Tree decompositions: validation, exact treewidth, restriction, completion to
ℓ-complete form, babies, family partitions and coherence checks."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InputError, InvariantError, PreconditionError, ResourceError
from .graph import Coloring, Graph

TREEWIDTH_VERTEX_LIMIT = 20


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree whose nodes carry bags of graph vertices.

    Node ids are arbitrary non-negative integers; restriction keeps the ids of
    surviving nodes so callers can relate a restricted tree to the original.
    """

    bags: Mapping[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "bags", {u: frozenset(b) for u, b in self.bags.items()})
        norm = sorted({(min(p, q), max(p, q)) for p, q in self.edges})
        for p, q in norm:
            if p == q or p not in self.bags or q not in self.bags:
                raise InputError(f"bad tree edge ({p}, {q})")
        object.__setattr__(self, "edges", tuple(norm))

    @cached_property
    def nodes(self) -> list[int]:
        return sorted(self.bags)

    @cached_property
    def neighbors(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {u: [] for u in self.bags}
        for p, q in self.edges:
            nb[p].append(q)
            nb[q].append(p)
        return {u: sorted(vs) for u, vs in nb.items()}

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags.values()) if self.bags else frozenset()

    @property
    def size(self) -> int:
        """Largest bag size minus one."""
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def leaves(self) -> list[int]:
        if len(self.bags) == 1:
            return list(self.bags)
        return [u for u in self.nodes if len(self.neighbors[u]) == 1]

    def bfs_order(self, root: int) -> list[int]:
        seen = {root}
        order = [root]
        queue = deque([root])
        while queue:
            p = queue.popleft()
            for q in self.neighbors[p]:
                if q not in seen:
                    seen.add(q)
                    order.append(q)
                    queue.append(q)
        return order

    def is_tree(self) -> bool:
        if not self.bags:
            return False
        return len(self.edges) == len(self.bags) - 1 and len(
            self.bfs_order(self.nodes[0])
        ) == len(self.bags)

    def occurrences(self, x: int) -> list[int]:
        return [u for u in self.nodes if x in self.bags[u]]

    def subtree(self, nodes: Iterable[int]) -> TreeDecomposition:
        keep = set(nodes)
        return TreeDecomposition(
            {u: self.bags[u] for u in keep},
            [(p, q) for p, q in self.edges if p in keep and q in keep],
        )


@dataclass(frozen=True)
class CompleteTreeDecomposition(TreeDecomposition):
    """Every bag has ``level + 1`` vertices; adjacent bags share ``level``."""

    level: int = 0

    def __post_init__(self) -> None:
        super().__post_init__()
        bad = complete_violation(self, self.level)
        if bad is not None:
            raise InputError(f"not {self.level}-complete: {bad}")

    @classmethod
    def of(cls, t: TreeDecomposition, level: int) -> CompleteTreeDecomposition:
        return cls(t.bags, t.edges, level)

    def swap(self, p: int, q: int) -> tuple[int, int]:
        """The vertices (B_p minus B_q, B_q minus B_p) across tree edge pq."""
        (x,) = self.bags[p] - self.bags[q]
        (y,) = self.bags[q] - self.bags[p]
        return x, y

    def subtree(self, nodes: Iterable[int]) -> CompleteTreeDecomposition:
        return CompleteTreeDecomposition.of(super().subtree(nodes), self.level)


@dataclass(frozen=True)
class Violation:
    """A failed tree-decomposition axiom together with a witness."""

    axiom: str
    witness: object

    def __str__(self) -> str:
        return f"{self.axiom} violated at {self.witness!r}"


@dataclass(frozen=True)
class FamilyPartition:
    family_of: Mapping[int, int]
    count: int

    def members(self, family: int) -> list[int]:
        return sorted(v for v, f in self.family_of.items() if f == family)

    def families(self) -> list[list[int]]:
        return [self.members(f) for f in range(self.count)]


def validate_tree_decomposition(g: Graph, t: TreeDecomposition) -> int | Violation:
    """Return the size of ``t`` if it decomposes ``g``, else the first violation."""
    if not t.is_tree():
        return Violation("tree", sorted(t.edges))
    extra = t.vertices - set(range(g.n))
    if extra:
        return Violation("vertex range", min(extra))
    for x in range(g.n):
        occ = t.occurrences(x)
        if not occ:
            return Violation("vertex coverage", x)
    for x in range(g.n):
        occ = set(t.occurrences(x))
        start = min(occ)
        seen = {start}
        stack = [start]
        while stack:
            p = stack.pop()
            for q in t.neighbors[p]:
                if q in occ and q not in seen:
                    seen.add(q)
                    stack.append(q)
        if seen != occ:
            return Violation("connected occurrences", x)
    for x, y in g.edges:
        if not any(x in b and y in b for b in t.bags.values()):
            return Violation("edge coverage", (x, y))
    return t.size


def complete_violation(t: TreeDecomposition, level: int) -> Violation | None:
    """Check the ℓ-complete shape of ``t`` (graph-independent part)."""
    if not t.is_tree():
        return Violation("tree", sorted(t.edges))
    for u in t.nodes:
        if len(t.bags[u]) != level + 1:
            return Violation("bag size", u)
    for p, q in t.edges:
        if len(t.bags[p] & t.bags[q]) != level:
            return Violation("adjacent overlap", (p, q))
    return None


def validate_complete(g: Graph, t: TreeDecomposition, level: int) -> int | Violation:
    res = validate_tree_decomposition(g, t)
    if isinstance(res, Violation):
        return res
    bad = complete_violation(t, level)
    return res if bad is None else bad


# ---------------------------------------------------------------- treewidth


def _reach_outside(adj: list[int], s: int, v: int) -> int:
    """Vertices outside s+{v} reachable from v through vertices of s (bitmask)."""
    seen = 1 << v
    out = 0
    stack = [v]
    while stack:
        x = stack.pop()
        nb = adj[x] & ~seen
        seen |= nb
        out |= nb & ~s
        inner = nb & s
        while inner:
            low = inner & -inner
            stack.append(low.bit_length() - 1)
            inner ^= low
    return out


def elimination_ordering(g: Graph, limit: int = TREEWIDTH_VERTEX_LIMIT) -> tuple[int, list[int]]:
    """Exact treewidth and an optimal elimination ordering.

    Dynamic programming over vertex subsets: the best width for eliminating
    the set S first is the minimum over its last vertex v of
    max(width(S - v), |reach of v through S - v|).
    """
    n = g.n
    if n > limit:
        raise ResourceError(f"exact treewidth limited to {limit} vertices, graph has {n}")
    if n == 0:
        return -1, []
    adj = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    width = {0: -1}
    last: dict[int, int] = {}
    by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for s in range(1 << n):
        by_size[s.bit_count()].append(s)
    for size in range(1, n + 1):
        for s in by_size[size]:
            best = n
            arg = -1
            rest = s
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                prev = width[s ^ low]
                if prev >= best:
                    continue
                q = _reach_outside(adj, s ^ low, v).bit_count()
                cand = max(prev, q)
                if cand < best:
                    best, arg = cand, v
            width[s] = best
            last[s] = arg
    order = []
    s = (1 << n) - 1
    while s:
        v = last[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return width[(1 << n) - 1], order


def decomposition_from_ordering(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``."""
    if not order:
        return TreeDecomposition({0: frozenset()}, [])
    pos = {v: i for i, v in enumerate(order)}
    fill = [set(g.adj[v]) for v in range(g.n)]
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for i, v in enumerate(order):
        later = {w for w in fill[v] if pos[w] > i}
        bags[i] = frozenset(later | {v})
        for w in later:
            fill[w] |= later - {w}
        if later:
            edges.append((i, min(pos[w] for w in later)))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    return TreeDecomposition(bags, edges)


def _contract(
    t: TreeDecomposition, bags: dict[int, frozenset[int]], keep: int | None = None
) -> tuple[TreeDecomposition, dict[int, int]]:
    """Contract tree edges pq with one bag inside the other until none remain.

    The node with the larger bag survives; on equal bags ``keep`` survives if
    it is an endpoint, otherwise the smaller id. Returns the new tree and the
    map from every original node to its surviving representative.
    """
    nb = {u: set(vs) for u, vs in t.neighbors.items()}
    rep = {u: u for u in bags}
    changed = True
    while changed:
        changed = False
        for p in sorted(nb):
            for q in sorted(nb[p]):
                if q < p:
                    continue
                bp, bq = bags[p], bags[q]
                if bp == bq:
                    gone, stay = (p, q) if keep == q else (q, p)
                elif bq <= bp:
                    gone, stay = q, p
                elif bp <= bq:
                    gone, stay = p, q
                else:
                    continue
                for r in nb.pop(gone):
                    nb[r].discard(gone)
                    if r != stay:
                        nb[r].add(stay)
                        nb[stay].add(r)
                del bags[gone]
                rep[gone] = stay
                changed = True
                break
            if changed:
                break

    def find(u: int) -> int:
        while rep[u] != u:
            u = rep[u]
        return u

    edges = [(p, q) for p in nb for q in nb[p] if p < q]
    return TreeDecomposition(bags, edges), {u: find(u) for u in rep}


def minimalize(t: TreeDecomposition) -> TreeDecomposition:
    """Contract adjacent bags contained in one another."""
    return _contract(t, dict(t.bags))[0]


def restrict_with_map(
    t: TreeDecomposition, removed: Iterable[int], keep: int | None = None
) -> tuple[TreeDecomposition, dict[int, int]]:
    xs = frozenset(removed)
    return _contract(t, {u: b - xs for u, b in t.bags.items()}, keep)


def restrict(t: TreeDecomposition, removed: Iterable[int]) -> TreeDecomposition:
    """The decomposition T[V minus X]: bags lose X, nested adjacent bags merge.

    Contraction is applied repeatedly until no tree edge joins a bag to a
    superset of it. The result is ℓ-complete again when X is a single baby of
    an ℓ-complete decomposition.
    """
    xs = frozenset(removed)
    if not xs:
        return t
    return restrict_with_map(t, xs)[0]


def treewidth_exact(
    g: Graph, limit: int = TREEWIDTH_VERTEX_LIMIT
) -> tuple[int, TreeDecomposition]:
    """Exact treewidth and a minimal decomposition of that width."""
    tw, order = elimination_ordering(g, limit)
    t = minimalize(decomposition_from_ordering(g, order))
    renum = {u: i for i, u in enumerate(t.nodes)}
    t = TreeDecomposition(
        {renum[u]: b for u, b in t.bags.items()},
        [(renum[p], renum[q]) for p, q in t.edges],
    )
    if t.size != tw:
        raise InvariantError(f"decomposition size {t.size} != treewidth {tw}")
    return tw, t


# ------------------------------------------------------------ completion


def make_complete(g: Graph, t: TreeDecomposition, level: int) -> CompleteTreeDecomposition:
    """Grow ``t`` into a ``level``-complete decomposition of ``g``.

    Babies of leaves are peeled off one by one until ``level + 1`` vertices
    remain in a single bag, then each peeled vertex x is re-attached as a new
    leaf whose bag swaps x for a vertex y of a host bag holding the rest of
    x's old bag. Every bag of ``t`` ends up inside some bag of the result.
    """
    res = validate_tree_decomposition(g, t)
    if isinstance(res, Violation):
        raise PreconditionError(f"input is not a tree decomposition: {res}")
    if not res <= level <= g.n - 1:
        raise PreconditionError(
            f"level {level} outside [{res}, {g.n - 1}] (decomposition size, n-1)"
        )
    cur = minimalize(t)
    remaining = set(range(g.n))
    peeled: list[tuple[frozenset[int], int]] = []
    while len(remaining) > level + 1:
        u = min(cur.leaves())
        (v,) = cur.neighbors[u]
        diff = cur.bags[u] - cur.bags[v]
        if not diff:
            raise InvariantError(f"leaf {u} bag inside its neighbor after minimalization")
        x = min(diff)
        peeled.append((cur.bags[u] - {x}, x))
        remaining.discard(x)
        cur = restrict(cur, {x})

    bags = {0: frozenset(remaining)}
    edges = []
    for rest, x in reversed(peeled):
        w = min(node for node, b in bags.items() if rest <= b)
        y = min(bags[w] - rest)
        node = len(bags)
        bags[node] = (bags[w] | {x}) - {y}
        edges.append((w, node))
    out = CompleteTreeDecomposition(bags, edges, level)
    check = validate_tree_decomposition(g, out)
    if isinstance(check, Violation):
        raise InvariantError(f"completion broke the decomposition: {check}")
    return out


def find_babies(t: TreeDecomposition) -> frozenset[int]:
    """Vertices occurring in exactly one bag, that bag being a leaf.

    In a one-node tree every bag vertex counts as a baby.
    """
    if len(t.bags) == 1:
        return next(iter(t.bags.values()))
    leaves = set(t.leaves())
    count: dict[int, list[int]] = {}
    for u, b in t.bags.items():
        for x in b:
            count.setdefault(x, []).append(u)
    return frozenset(x for x, occ in count.items() if len(occ) == 1 and occ[0] in leaves)


def parent_pairs(t: CompleteTreeDecomposition) -> list[tuple[int, int]]:
    """All parent pairs (x, y): x leaves and y enters across some tree edge."""
    return [t.swap(p, q) for p, q in t.edges]


def family_partition(t: CompleteTreeDecomposition) -> FamilyPartition:
    """Classes of the transitive closure of the parent relation."""
    root = {x: x for x in t.vertices}

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for x, y in parent_pairs(t):
        rx, ry = find(x), find(y)
        if rx != ry:
            root[max(rx, ry)] = min(rx, ry)
    reps = sorted({find(x) for x in t.vertices})
    fid = {r: i for i, r in enumerate(reps)}
    part = FamilyPartition({x: fid[find(x)] for x in sorted(t.vertices)}, len(reps))
    if part.count != t.level + 1:
        raise InvariantError(f"{part.count} families in a {t.level}-complete decomposition")
    for u, b in t.bags.items():
        if len({part.family_of[x] for x in b}) != len(b):
            raise InvariantError(f"bag {u} holds two members of one family")
    return part


def is_coherent(
    g: Graph, t: CompleteTreeDecomposition, c: Coloring, xs: Iterable[int]
) -> bool:
    """Whether ``c`` is X-coherent relative to ``t``.

    Parents inside X share a color, and a member of X is the only vertex of
    each of its bags carrying its color.
    """
    xset = set(xs)
    if len(c) != g.n:
        raise InputError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    for x, y in parent_pairs(t):
        if x in xset and y in xset and c[x] != c[y]:
            return False
    for b in t.bags.values():
        for x in b & xset:
            if sum(1 for y in b if c[y] == c[x]) != 1:
                return False
    return True


def rooted_parents(t: TreeDecomposition, root: int) -> dict[int, int | None]:
    """Father of every node when ``t`` is rooted at ``root``."""
    father: dict[int, int | None] = {root: None}
    queue = deque([root])
    while queue:
        p = queue.popleft()
        for q in t.neighbors[p]:
            if q not in father:
                father[q] = p
                queue.append(q)
    return father
