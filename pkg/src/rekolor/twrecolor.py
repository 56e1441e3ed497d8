"""Recoloring through complete tree decompositions.

The pieces, bottom up:

* :func:`clique_recolor` moves between two colorings of a clique with a spare
  color, touching every vertex at most twice.
* :func:`merge_families` and :func:`lift_sequence` turn a walk on the graph
  of merged families into a walk on the original graph.
* :func:`eliminate_color` removes one color from a (V - B_u)-coherent
  coloring, touching every vertex outside B_u at most once.
* :func:`make_coherent` treats babies one at a time until the coloring is
  V-coherent, within n² steps.
* :func:`tw_recolor` chains two coherence sweeps with a lifted clique walk,
  within 2(n² + n) steps.

Every public entry point checks its own output and raises
:class:`InvariantError` when a guarantee fails.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .decomp import (
    CompleteTreeDecomposition,
    FamilyPartition,
    TreeDecomposition,
    Violation,
    complete_violation,
    family_partition,
    is_coherent,
    make_complete,
    restrict,
    restrict_with_map,
    rooted_parents,
    treewidth_exact,
    validate_complete,
)
from .errors import InputError, InvariantError, PreconditionError, SequenceError
from .graph import (
    Coloring,
    Graph,
    RecolorSequence,
    RecolorStep,
    require_proper,
    simplify_sequence,
    validate_sequence,
)


def _checked(g: Graph, seq: RecolorSequence, what: str) -> Coloring:
    try:
        return validate_sequence(g, seq)
    except SequenceError as exc:
        raise InvariantError(f"{what} produced an invalid walk: {exc}") from exc


# ------------------------------------------------------------------ cliques


@dataclass(frozen=True)
class BlockingDigraph:
    """Arc x -> y when the target color of x is the current color of y.

    Only vertices not yet at their target have out-arcs. With injective
    current and target colorings every in- and out-degree is at most one, so
    the digraph splits into directed paths and circuits.
    """

    succ: dict[int, int]

    @classmethod
    def build(cls, current: list[int], target: list[int]) -> BlockingDigraph:
        holder = {c: y for y, c in enumerate(current)}
        succ = {}
        for x, want in enumerate(target):
            if current[x] != want and want in holder:
                succ[x] = holder[want]
        indeg = Counter(succ.values())
        if indeg and max(indeg.values()) > 1:
            raise InvariantError(f"blocking digraph has in-degree {max(indeg.values())}")
        return cls(succ)

    def out_degree(self, x: int) -> int:
        return 1 if x in self.succ else 0

    def in_degree(self, y: int) -> int:
        return sum(1 for z in self.succ.values() if z == y)

    def circuits(self) -> list[list[int]]:
        """Vertex lists of all circuits, each starting at its smallest vertex."""
        seen: set[int] = set()
        out = []
        for start in sorted(self.succ):
            if start in seen:
                continue
            path = []
            x = start
            while x in self.succ and x not in seen and x not in path:
                path.append(x)
                x = self.succ[x]
            seen.update(path)
            if x in path:
                cyc = path[path.index(x):]
                i = cyc.index(min(cyc))
                out.append(cyc[i:] + cyc[:i])
        return out


def clique_recolor(n: int, k: int, a: Coloring, b: Coloring) -> RecolorSequence:
    """Recolor ``a`` into ``b`` on K_n with every vertex recolored at most twice.

    Each circuit of the blocking digraph is broken by moving its smallest
    vertex to the smallest free color. After that every unfinished vertex
    ends a path, and the smallest vertex whose target color is free moves
    there until nothing is left.
    """
    if k <= n:
        raise PreconditionError(f"clique recoloring needs k >= n+1 = {n + 1}, got k={k}")
    for name, c in (("start", a), ("target", b)):
        if len(c) != n:
            raise InputError(f"{name} coloring has {len(c)} entries, clique has {n}")
        if len(set(c)) != n or any(not 1 <= x <= k for x in c):
            raise InputError(f"{name} coloring is not a proper {k}-coloring of K_{n}")
    cur = list(a.colors)
    target = list(b.colors)
    steps: list[RecolorStep] = []

    def move(x: int, color: int) -> None:
        cur[x] = color
        steps.append(RecolorStep(x, color))

    for cyc in BlockingDigraph.build(cur, target).circuits():
        used = set(cur)
        spare = min(c for c in range(1, k + 1) if c not in used)
        move(cyc[0], spare)
    if BlockingDigraph.build(cur, target).circuits():
        raise InvariantError("circuits remain after breaking each one once")
    while cur != target:
        used = set(cur)
        ready = [x for x in range(n) if cur[x] != target[x] and target[x] not in used]
        if not ready:
            raise InvariantError("no vertex can reach its target color")
        move(ready[0], target[ready[0]])

    seq = RecolorSequence(a.with_palette(k), tuple(steps))
    if max(seq.recolor_counts(), default=0) > 2:
        raise InvariantError("a clique vertex was recolored more than twice")
    return seq


# ------------------------------------------------------------ merged graphs


def merge_families(g: Graph, p: FamilyPartition) -> Graph:
    """Identify every family into one vertex; family i becomes vertex i."""
    if set(p.family_of) != set(range(g.n)):
        raise PreconditionError("family partition does not cover the graph's vertices")
    edges = set()
    for x, y in g.edges:
        fx, fy = p.family_of[x], p.family_of[y]
        if fx == fy:
            raise PreconditionError(f"family {fx} is not stable: edge ({x}, {y})")
        edges.add((min(fx, fy), max(fx, fy)))
    return Graph.from_edges(p.count, edges)


def extend_coloring(p: FamilyPartition, merged: Coloring) -> Coloring:
    """Give every vertex the color of its family."""
    n = len(p.family_of)
    return Coloring(tuple(merged[p.family_of[v]] for v in range(n)), merged.k)


def lift_sequence(g: Graph, p: FamilyPartition, merged_seq: RecolorSequence) -> RecolorSequence:
    """Replay a merged-graph walk on ``g``, one family member after another."""
    start = extend_coloring(p, merged_seq.start)
    members = p.families()
    steps = [
        RecolorStep(v, s.new_color) for s in merged_seq.steps for v in members[s.vertex]
    ]
    seq = RecolorSequence(start, tuple(steps))
    _checked(g, seq, "lifting")
    return seq


# -------------------------------------------------------- color elimination


def _swaps(t: TreeDecomposition) -> list[tuple[int, int]]:
    out = []
    for p, q in t.edges:
        (x,) = t.bags[p] - t.bags[q]
        (y,) = t.bags[q] - t.bags[p]
        out.append((x, y))
    return out


def _region(t: TreeDecomposition, father: dict[int, int | None], v: int) -> set[int]:
    """Nodes of the subtree hanging from ``v`` when ``t`` is rooted at father's side."""
    region = {v}
    stack = [v]
    while stack:
        p = stack.pop()
        for q in t.neighbors[p]:
            if q != father[p] and q not in region:
                region.add(q)
                stack.append(q)
    return region


def _eliminate(
    t: TreeDecomposition,
    root: int,
    color: int,
    palette: tuple[int, ...],
    cs: list[int],
    steps: list[RecolorStep],
) -> None:
    father = rooted_parents(t, root)
    holders = {p: [x for x in t.bags[p] if cs[x] == color] for p in t.nodes}
    if holders[root]:
        raise InvariantError(f"color {color} appears in the root bag")
    tops = sorted(v for v in t.nodes if v != root and holders[v] and not holders[father[v]])
    claimed: set[int] = set()
    for v in tops:
        region = _region(t, father, v)
        if region & claimed:
            raise InvariantError(f"subtrees holding color {color} overlap at {sorted(region & claimed)}")
        claimed |= region
        for w in region:
            if len(holders[w]) != 1:
                raise InvariantError(
                    f"bag {w} below {v} holds {len(holders[w])} vertices of color {color}"
                )
        owners = {holders[w][0] for w in region}
        rest = t.bags[v] - owners
        used = {cs[x] for x in rest}
        spare = min(c for c in palette if c != color and c not in used)
        inner, rep = restrict_with_map(t.subtree(region), owners, keep=v)
        if rep[v] != v:
            raise InvariantError(f"node {v} did not survive its own restriction")
        if complete_violation(inner, len(rest) - 1) is not None:
            raise InvariantError(f"restriction below {v} is not complete")
        _eliminate(inner, v, spare, tuple(c for c in palette if c != color), cs, steps)
        for y in sorted(owners):
            cs[y] = spare
            steps.append(RecolorStep(y, spare))
        # parents that now disagree must have one of them in the root bag
        for x, y in _swaps(t):
            if cs[x] != cs[y] and x not in t.bags[root] and y not in t.bags[root]:
                raise InvariantError(f"parents {x} and {y} split after clearing {v}")


def eliminate_color(
    g: Graph, t: CompleteTreeDecomposition, u: int, c: Coloring, a: int, k: int
) -> RecolorSequence:
    """Remove color ``a`` from the vertices of ``t`` without touching B_u.

    ``c`` must be (V(t) - B_u)-coherent relative to ``t`` and avoid ``a`` on
    B_u. Every vertex of V(t) - B_u is recolored at most once and the result
    stays (V(t) - B_u)-coherent. ``t`` may be a subtree of a decomposition of
    a larger graph, provided it covers every edge at its vertices outside B_u.
    """
    if u not in t.bags:
        raise PreconditionError(f"node {u} is not in the decomposition")
    if k < t.level + 2:
        raise PreconditionError(f"need k >= level+2 = {t.level + 2}, got k={k}")
    if not 1 <= a <= k:
        raise PreconditionError(f"color {a} outside 1..{k}")
    c = c.with_palette(k)
    require_proper(g, c)
    root_bag = t.bags[u]
    clash = sorted(x for x in root_bag if c[x] == a)
    if clash:
        raise PreconditionError(f"color {a} appears in bag {u} at vertex {clash[0]}")
    outside = t.vertices - root_bag
    for x in sorted(outside):
        for w in g.adj[x]:
            if not any(x in b and w in b for b in t.bags.values()):
                raise PreconditionError(f"edge ({x}, {w}) is not covered by the decomposition")
    if not is_coherent(g, t, c, outside):
        raise PreconditionError("coloring is not coherent outside the root bag")

    cs = list(c.colors)
    steps: list[RecolorStep] = []
    _eliminate(t, u, a, tuple(range(1, k + 1)), cs, steps)
    seq = RecolorSequence(c, tuple(steps))
    end = _checked(g, seq, "color elimination")
    counts = seq.recolor_counts()
    for s in steps:
        if s.vertex not in outside:
            raise InvariantError(f"vertex {s.vertex} of the root bag was recolored")
        if counts[s.vertex] > 1:
            raise InvariantError(f"vertex {s.vertex} recolored {counts[s.vertex]} times")
    if any(end[x] == a for x in t.vertices):
        raise InvariantError(f"color {a} survived elimination")
    if not is_coherent(g, t, end, outside):
        raise InvariantError("elimination broke coherence")
    return seq


# ---------------------------------------------------------------- coherence


@dataclass(frozen=True)
class TreatmentStep:
    """One round of the coherence sweep: which baby was treated and how."""

    vertex: int
    node: int
    color: int
    steps: int
    skipped: bool


def _bag_multiset(t: TreeDecomposition) -> Counter:
    return Counter(t.bags.values())


def _residual_star(t: TreeDecomposition, u: int, alive: set[int]) -> set[int]:
    """``u`` plus every component of the removed nodes that touches ``u``."""
    star = {u}
    stack = [u]
    while stack:
        p = stack.pop()
        for q in t.neighbors[p]:
            if q not in alive and q not in star:
                star.add(q)
                stack.append(q)
    return star


def make_coherent(
    g: Graph,
    t: CompleteTreeDecomposition,
    k: int,
    a: Coloring,
    log: list[TreatmentStep] | None = None,
    elide: bool = True,
) -> tuple[RecolorSequence, Coloring]:
    """Walk from ``a`` to a V-coherent coloring in at most n² steps.

    Babies of the shrinking decomposition are treated one at a time. For
    baby x of leaf u, the color a* is the smallest one missing from B_u; it
    is cleared from u and the removed subtrees around it, then x and its
    treated family members there take a*. A round is skipped when the
    coloring is already coherent on the treated set plus x, unless ``elide``
    is false. The four loop
    invariants are asserted after every round. Pass a list as ``log`` to
    collect one :class:`TreatmentStep` per round.
    """
    res = validate_complete(g, t, t.level)
    if isinstance(res, Violation):
        raise PreconditionError(f"not a {t.level}-complete decomposition of the graph: {res}")
    if k < t.level + 2:
        raise PreconditionError(f"need k >= level+2 = {t.level + 2}, got k={k}")
    a = a.with_palette(k)
    require_proper(g, a, "start coloring")
    n = g.n
    families = family_partition(t)
    members = families.families()

    cs = list(a.colors)
    steps: list[RecolorStep] = []
    treated: set[int] = set()
    alive = set(t.nodes)
    last_bag: frozenset[int] | None = None  # bag of the final node once only one remains

    for i in range(n):
        if len(alive) > 1:
            sub = t.subtree(alive)
            u = min(sub.leaves())
            (v,) = sub.neighbors[u]
            (x,) = t.bags[u] - t.bags[v]
        else:
            (u,) = alive
            if last_bag is None:
                last_bag = t.bags[u]
            x = min(last_bag)
        star = _residual_star(t, u, alive)
        star_tree = t.subtree(star)
        stray = star_tree.vertices - treated - t.bags[u]
        if stray:
            raise InvariantError(f"untreated vertices {sorted(stray)} next to leaf {u}")

        before = len(steps)
        bag_colors = {cs[y] for y in t.bags[u]}
        fresh = min(c for c in range(1, k + 1) if c not in bag_colors)
        skipped = elide and is_coherent(g, t, Coloring(tuple(cs), k), treated | {x})
        if not skipped:
            elim = eliminate_color(g, star_tree, u, Coloring(tuple(cs), k), fresh, k)
            for s in elim.steps:
                cs[s.vertex] = s.new_color
            steps.extend(elim.steps)
            for z in members[families.family_of[x]]:
                if z in star_tree.vertices and cs[z] != fresh:
                    cs[z] = fresh
                    steps.append(RecolorStep(z, fresh))

        treated.add(x)
        if len(alive) > 1:
            alive.discard(u)
        else:
            last_bag = last_bag - {x}
        if log is not None:
            log.append(TreatmentStep(x, u, fresh, len(steps) - before, skipped))
        _check_treatment(g, t, k, cs, steps[before:], treated, x, alive, last_bag, i + 1)

    seq = RecolorSequence(a, tuple(steps))
    end = _checked(g, seq, "coherence sweep")
    if not is_coherent(g, t, end, range(n)):
        raise InvariantError("sweep ended on a coloring that is not V-coherent")
    if len(seq) > n * n:
        raise InvariantError(f"sweep took {len(seq)} steps, more than n² = {n * n}")
    return seq, end


def _check_treatment(
    g: Graph,
    t: CompleteTreeDecomposition,
    k: int,
    cs: list[int],
    round_steps: list[RecolorStep],
    treated: set[int],
    x: int,
    alive: set[int],
    last_bag: frozenset[int] | None,
    i: int,
) -> None:
    if len(treated) != i:
        raise InvariantError(f"round {i} leaves {len(treated)} treated vertices")
    remaining = g.n - i
    shrunk = restrict(t, treated)
    if last_bag is None:
        expected = Counter(t.bags[p] for p in alive)
    else:
        expected = Counter([last_bag])
    if _bag_multiset(shrunk) != expected:
        raise InvariantError(f"round {i}: restricted decomposition drifted from the tracked one")
    if remaining and complete_violation(shrunk, min(t.level, remaining - 1)) is not None:
        raise InvariantError(f"round {i}: restricted decomposition is not complete")
    counts = Counter(s.vertex for s in round_steps)
    for v, times in counts.items():
        if v not in treated or times > 2 or (v == x and times > 1):
            raise InvariantError(f"round {i}: vertex {v} recolored {times} times")
    if not is_coherent(g, t, Coloring(tuple(cs), k), treated):
        raise InvariantError(f"round {i}: coloring is not coherent on the treated set")


# ----------------------------------------------------------------- end to end


@dataclass(frozen=True)
class TwRecoloring:
    """The three legs of a treewidth walk, before any simplification."""

    to_coherent: RecolorSequence
    bridge: RecolorSequence
    from_coherent: RecolorSequence

    @property
    def raw(self) -> RecolorSequence:
        return self.to_coherent.then(self.bridge).then(self.from_coherent)


def default_decomposition(g: Graph) -> CompleteTreeDecomposition:
    """A tw(G)-complete decomposition from the exact treewidth search."""
    tw, td = treewidth_exact(g)
    return make_complete(g, td, max(tw, 0))


def tw_recolor_legs(
    g: Graph, t: CompleteTreeDecomposition | None, k: int, a: Coloring, b: Coloring
) -> TwRecoloring:
    if g.n == 0:
        empty = RecolorSequence(Coloring((), k))
        return TwRecoloring(empty, empty, empty)
    if t is None:
        t = default_decomposition(g)
    if k < t.level + 2:
        raise PreconditionError(
            f"need k >= level+2 = {t.level + 2} (decomposition level {t.level}), got k={k}"
        )
    a, b = a.with_palette(k), b.with_palette(k)
    require_proper(g, a, "start coloring")
    require_proper(g, b, "target coloring")
    there, gamma_a = make_coherent(g, t, k, a)
    back, gamma_b = make_coherent(g, t, k, b)

    families = family_partition(t)
    merged = merge_families(g, families)
    heads = [m[0] for m in families.families()]
    start = Coloring(tuple(gamma_a[v] for v in heads), k)
    goal = Coloring(tuple(gamma_b[v] for v in heads), k)
    walk = clique_recolor(merged.n, k, start, goal)
    _checked(merged, walk, "clique walk")
    bridge = lift_sequence(g, families, walk)
    if bridge.start.colors != gamma_a.colors:
        raise InvariantError("coherent coloring is not constant on families")
    legs = TwRecoloring(there, bridge, back.reversed())
    raw = legs.raw
    end = _checked(g, raw, "treewidth walk")
    if end.colors != b.colors:
        raise InvariantError("treewidth walk does not end at the target")
    bound = 2 * (g.n * g.n + g.n)
    if len(raw) > bound:
        raise InvariantError(f"treewidth walk has {len(raw)} steps, bound is {bound}")
    return legs


def tw_recolor(
    g: Graph,
    t: CompleteTreeDecomposition | None,
    k: int,
    a: Coloring,
    b: Coloring,
    simplify: bool = True,
) -> RecolorSequence:
    """Recolor ``a`` into ``b`` using k >= level+2 colors.

    With ``t=None`` a tw(G)-complete decomposition is computed first. The raw
    walk (``simplify=False``) has at most 2(n² + n) steps.
    """
    raw = tw_recolor_legs(g, t, k, a, b).raw
    return simplify_sequence(raw) if simplify else raw
