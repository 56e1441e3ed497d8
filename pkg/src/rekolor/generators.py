"""Test-instance generators: named graph families, random partial k-trees,
random proper and coherent colorings."""

from __future__ import annotations

import random
from itertools import combinations

from .decomp import CompleteTreeDecomposition, TreeDecomposition, rooted_parents
from .errors import InputError, InvariantError
from .graph import Coloring, Graph


def _need_vertices(n: int) -> None:
    if n < 1:
        raise InputError(f"need at least one vertex, got n={n}")


def gen_empty(n: int) -> Graph:
    _need_vertices(n)
    return Graph.from_edges(n, [])


def gen_complete(n: int) -> Graph:
    _need_vertices(n)
    return Graph.from_edges(n, combinations(range(n), 2))


def gen_path(n: int) -> Graph:
    _need_vertices(n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"a cycle needs at least 3 vertices, got n={n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_star(n: int) -> Graph:
    """Star on ``n`` vertices: center 0 joined to leaves ``1..n-1`` (K_{1,n-1})."""
    _need_vertices(n)
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def gen_bipartite_minus_matching(n: int) -> Graph:
    """K_{n,n} minus the perfect matching u_i v_i.

    Vertex ``i`` is u_{i+1} and vertex ``n + i`` is v_{i+1}.
    """
    _need_vertices(n)
    return Graph.from_edges(
        2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j]
    )


def paired_coloring(n: int, k: int | None = None) -> Coloring:
    """The coloring of :func:`gen_bipartite_minus_matching` with c(u_i) = c(v_i) = i."""
    cs = tuple(range(1, n + 1)) * 2
    return Coloring(cs, n if k is None else k)


def gen_gnp(n: int, p: float, rng_seed: int) -> Graph:
    _need_vertices(n)
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(rng_seed)
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def gen_partial_ktree(
    n: int, k: int, edge_keep_prob: float, rng_seed: int
) -> tuple[Graph, TreeDecomposition]:
    """Random subgraph of a random k-tree, with the k-tree's decomposition.

    The k-tree starts from a clique on ``min(n, k+1)`` vertices; every further
    vertex is joined to a random k-clique of an existing bag. Each k-tree edge
    survives with probability ``edge_keep_prob``. Vertex labels are shuffled.
    """
    _need_vertices(n)
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    if not 0.0 <= edge_keep_prob <= 1.0:
        raise InputError(f"edge_keep_prob {edge_keep_prob} outside [0, 1]")
    rng = random.Random(rng_seed)
    label = list(range(n))
    rng.shuffle(label)

    base = min(n, k + 1)
    bags: list[frozenset[int]] = [frozenset(range(base))]
    tree_edges: list[tuple[int, int]] = []
    edges = set(combinations(range(base), 2))
    for v in range(base, n):
        host = rng.randrange(len(bags))
        clique = rng.sample(sorted(bags[host]), k)
        bags.append(frozenset(clique) | {v})
        tree_edges.append((host, len(bags) - 1))
        edges.update((min(v, w), max(v, w)) for w in clique)

    kept = [(label[x], label[y]) for x, y in sorted(edges) if rng.random() < edge_keep_prob]
    g = Graph.from_edges(n, kept)
    td = TreeDecomposition(
        {i: frozenset(label[v] for v in b) for i, b in enumerate(bags)}, tree_edges
    )
    return g, td


def random_proper_coloring(g: Graph, k: int, rng: random.Random) -> Coloring:
    """Random proper k-coloring by randomized backtracking.

    Raises :class:`InputError` when ``g`` has no proper k-coloring.
    """
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    cs = [0] * g.n

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {cs[w] for w in g.adj[v]}
        choices = [c for c in range(1, k + 1) if c not in used]
        rng.shuffle(choices)
        for c in choices:
            cs[v] = c
            if place(i + 1):
                return True
        cs[v] = 0
        return False

    if not place(0):
        raise InputError(f"graph has no proper {k}-coloring")
    return Coloring(tuple(cs), k)


def random_coherent_coloring(
    g: Graph,
    t: CompleteTreeDecomposition,
    u: int,
    k: int,
    rng: random.Random,
    favor: int | None = None,
    favor_prob: float = 0.5,
) -> Coloring:
    """Random proper k-coloring of ``g`` that is (V(t) minus B_u)-coherent.

    Vertices of B_u get a random proper coloring avoiding ``favor``. Walking the
    tree away from ``u``, every vertex entering a bag copies its parent's color
    unless the parent lies in B_u, in which case it draws a color absent from
    the bag (``favor`` with probability ``favor_prob`` when allowed). Vertices
    of ``g`` outside ``t`` get colors from a proper completion.
    """
    if k < t.level + 2:
        raise InputError(f"need k >= level+2 = {t.level + 2}, got {k}")
    root_bag = t.bags[u]
    cs = [0] * g.n
    order = sorted(root_bag)
    palette = [c for c in range(1, k + 1) if c != favor]

    def place_root(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {cs[w] for w in g.adj[v] if w in root_bag}
        choices = [c for c in palette if c not in used]
        rng.shuffle(choices)
        for c in choices:
            cs[v] = c
            if place_root(i + 1):
                return True
        cs[v] = 0
        return False

    if not place_root(0):
        raise InputError("root bag has no proper coloring avoiding the favored color")

    father = rooted_parents(t, u)
    for v in t.bfs_order(u):
        w = father[v]
        if w is None:
            continue
        (z,) = t.bags[v] - t.bags[w]
        (y,) = t.bags[w] - t.bags[v]
        if y not in root_bag:
            cs[z] = cs[y]
            continue
        used = {cs[x] for x in t.bags[v] if x != z}
        choices = [c for c in range(1, k + 1) if c not in used]
        if favor in choices and rng.random() < favor_prob:
            cs[z] = favor
        else:
            cs[z] = rng.choice(choices)

    inside = t.vertices
    for v in range(g.n):
        if v in inside:
            continue
        used = {cs[w] for w in g.adj[v]}
        free = [c for c in range(1, k + 1) if c not in used]
        if not free:
            raise InputError(f"cannot color vertex {v} outside the decomposition")
        cs[v] = free[0]
    col = Coloring(tuple(cs), k)
    for x, y in g.edges:
        if cs[x] == cs[y]:
            raise InvariantError(f"generated coherent coloring clashes on edge {(x, y)}")
    return col
