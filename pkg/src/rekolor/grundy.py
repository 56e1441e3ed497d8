"""Greedy colorings, exact chromatic and grundy numbers, and the grundy-based
recoloring engine.

The engine walks any k-coloring (k at least grundy number + 1) to a fixed
greedy optimal coloring in at most 2·χ·n steps, one color class at a time;
two such walks joined back to back connect any pair of colorings in at most
4·χ_g·n steps.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import permutations

from .errors import InputError, InvariantError, PreconditionError, ResourceError
from .graph import (
    Coloring,
    Graph,
    RecolorSequence,
    RecolorStep,
    require_proper,
    simplify_sequence,
    validate_sequence,
)

EXACT_VERTEX_LIMIT = 24
SUBSET_DP_VERTEX_LIMIT = 12
BRUTE_FORCE_VERTEX_LIMIT = 9


@dataclass(frozen=True)
class ChromaticInfo:
    chromatic_number: int
    witness: Coloring


def _check_order(g: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(g.n)):
        raise InputError("vertex order is not a permutation of the graph's vertices")


def greedy_coloring(g: Graph, order: Sequence[int], k: int | None = None) -> Coloring:
    """Color vertices in ``order``, each with the least color unused by earlier neighbors."""
    _check_order(g, order)
    cs = [0] * g.n
    for v in order:
        used = {cs[w] for w in g.adj[v]}
        c = 1
        while c in used:
            c += 1
        cs[v] = c
    top = max(cs, default=0)
    return Coloring(tuple(cs), max(top, 1) if k is None else k)


def is_greedy(g: Graph, c: Coloring | Sequence[int]) -> bool:
    """Every vertex colored i > 1 sees every color below i among its neighbors."""
    for v in range(g.n):
        seen = {c[w] for w in g.adj[v]}
        if any(j not in seen for j in range(1, c[v])):
            return False
    return True


def _grundy_upper_bounds(g: Graph) -> list[int]:
    """Per-vertex color ceilings valid for every greedy coloring.

    A vertex colored c needs distinct neighbors colored 1..c-1, and a neighbor
    colored j itself needs ceiling >= j. Iterated from deg+1 to a fixpoint.
    """
    ub = [g.degree(v) + 1 for v in range(g.n)]
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            nb = sorted((ub[w] for w in g.adj[v]), reverse=True)
            c = 1
            # smallest-first matching: colors c-1, c-2, ..., 1 against nb
            while c <= len(nb) and all(nb[j] >= c - j for j in range(c)):
                c += 1
            if c < ub[v]:
                ub[v] = c
                changed = True
    return ub


def _has_grundy_witness(g: Graph, t: int, ub: list[int]) -> bool:
    """Whether some induced subgraph has a grundy coloring using color ``t``.

    Colors are placed on demand: starting from one vertex colored ``t``, an
    unmet requirement (a colored vertex missing a smaller color among its
    colored neighbors) is resolved by coloring one eligible uncolored
    neighbor, picking the requirement with the fewest candidates first.
    """
    cs = [0] * g.n
    dead: set[tuple[int, ...]] = set()

    def candidates(w: int, j: int) -> list[int]:
        return [
            u
            for u in g.adj[w]
            if cs[u] == 0 and ub[u] >= j and all(cs[y] != j for y in g.adj[u])
        ]

    def solve() -> bool:
        pick: list[int] | None = None
        pick_color = 0
        for w in range(g.n):
            if cs[w] < 2:
                continue
            seen = {cs[x] for x in g.adj[w]}
            missing = [j for j in range(1, cs[w]) if j not in seen]
            if not missing:
                continue
            open_nbrs = sum(1 for u in g.adj[w] if cs[u] == 0)
            if open_nbrs < len(missing):
                return False
            for j in missing:
                cands = candidates(w, j)
                if not cands:
                    return False
                if pick is None or len(cands) < len(pick):
                    pick, pick_color = cands, j
        if pick is None:
            return True
        key = tuple(cs)
        if key in dead:
            return False
        for u in pick:
            cs[u] = pick_color
            if solve():
                return True
            cs[u] = 0
        dead.add(key)
        return False

    for v in range(g.n):
        if ub[v] >= t:
            cs[v] = t
            if solve():
                return True
            cs[v] = 0
    return False


def grundy_number_subsets(g: Graph) -> int:
    """Grundy number by dynamic programming over vertex subsets.

    A grundy coloring of G[S] with classes V1..Vt is exactly an independent
    V1 dominating S - V1 followed by a grundy coloring of S - V1 with t-1
    classes. Runs in O(3^n).
    """
    n = g.n
    adj = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = 1 << n
    indep = [True] * full
    reach = [0] * full
    for mask in range(1, full):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        indep[mask] = indep[rest] and not (adj[v] & rest)
        reach[mask] = reach[rest] | adj[v]
    depth = [0] * full
    for s in range(1, full):
        best = 0
        sub = s
        while sub:
            if indep[sub] and not ((s ^ sub) & ~reach[sub]):
                cand = depth[s ^ sub] + 1
                if cand > best:
                    best = cand
            sub = (sub - 1) & s
        depth[s] = best
    return max(depth)


def grundy_number_exact(g: Graph, limit: int = EXACT_VERTEX_LIMIT) -> int:
    """Exact grundy number.

    Small graphs use :func:`grundy_number_subsets`. Larger ones search for a
    grundy coloring of some induced subgraph reaching each candidate t,
    from the per-vertex ceiling down to a greedy lower bound; such a partial
    coloring extends to a greedy coloring of the whole graph with at least as
    many colors.
    """
    n = g.n
    if n > limit:
        raise ResourceError(f"exact grundy number limited to {limit} vertices, graph has {n}")
    if n == 0:
        return 0
    if n <= SUBSET_DP_VERTEX_LIMIT:
        return grundy_number_subsets(g)
    return grundy_number_search(g)


def grundy_number_search(g: Graph) -> int:
    """Witness search used by :func:`grundy_number_exact` above the DP limit."""
    if g.n == 0:
        return 0
    ub = _grundy_upper_bounds(g)
    order = sorted(range(g.n), key=lambda v: (-ub[v], -g.degree(v), v))
    best = greedy_coloring(g, order).max_color
    for t in range(max(ub), best, -1):
        if _has_grundy_witness(g, t, ub):
            return t
    return best


def grundy_number_brute_force(g: Graph, limit: int = BRUTE_FORCE_VERTEX_LIMIT) -> int:
    """Grundy number as the maximum over all n! orders of greedy color count.

    Orders sharing a prefix share the greedy work through a depth-first walk.
    """
    n = g.n
    if n > limit:
        raise ResourceError(f"order enumeration limited to {limit} vertices, graph has {n}")
    cs = [0] * n
    best = 0

    def rec(placed: int, top: int) -> None:
        nonlocal best
        if placed == n:
            best = max(best, top)
            return
        for v in range(n):
            if cs[v]:
                continue
            used = {cs[w] for w in g.adj[v]}
            c = 1
            while c in used:
                c += 1
            cs[v] = c
            rec(placed + 1, max(top, c))
            cs[v] = 0

    rec(0, 0)
    return best


def grundy_number_orders(g: Graph, limit: int = 8) -> int:
    """Literal definition: greedy coloring for every permutation. Tiny graphs only."""
    if g.n > limit:
        raise ResourceError(f"permutation scan limited to {limit} vertices")
    return max((greedy_coloring(g, p).max_color for p in permutations(range(g.n))), default=0)


def _colorable(g: Graph, k: int) -> list[int] | None:
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    cs = [0] * g.n

    def rec(i: int, top: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        used = {cs[w] for w in g.adj[v]}
        # symmetry breaking: never open more than one new color at a time
        for c in range(1, min(k, top + 1) + 1):
            if c not in used:
                cs[v] = c
                if rec(i + 1, max(top, c)):
                    return True
        cs[v] = 0
        return False

    return list(cs) if rec(0, 0) else None


def chromatic_number_exact(g: Graph, limit: int = EXACT_VERTEX_LIMIT) -> ChromaticInfo:
    """Chromatic number with an optimal coloring that is also greedy.

    The witness comes from an optimal coloring by moving vertices to the
    smallest conflict-free color until nothing moves.
    """
    if g.n > limit:
        raise ResourceError(f"exact chromatic number limited to {limit} vertices")
    if g.n == 0:
        return ChromaticInfo(0, Coloring((), 1))
    k = 1
    while (cs := _colorable(g, k)) is None:
        k += 1
    moved = True
    while moved:
        moved = False
        for v in range(g.n):
            used = {cs[w] for w in g.adj[v]}
            c = min(x for x in range(1, k + 2) if x not in used)
            if c < cs[v]:
                cs[v] = c
                moved = True
    witness = Coloring(tuple(cs), k)
    if witness.max_color != k or not is_greedy(g, witness):
        raise InvariantError("greedy normalization lost optimality")
    return ChromaticInfo(k, witness)


def _smallest_free(g: Graph, cs: list[int], v: int) -> int:
    used = {cs[w] for w in g.adj[v]}
    c = 1
    while c in used:
        c += 1
    return c


def grundy_recolor_to_optimal(
    g: Graph,
    k: int,
    a: Coloring,
    beta: Coloring,
    grundy: int | None = None,
    chromatic: int | None = None,
) -> RecolorSequence:
    """Recolor ``a`` into the greedy optimal coloring ``beta``.

    Per level, on the vertices not yet settled: (1) re-color each color class
    of the current coloring in increasing color order with the least free
    color, which yields a greedy coloring; (2) move the first class off the
    target's first class to the color just above the grundy number, then
    settle the target's first class. The settled class is then frozen and its
    color dropped from the palette. At most 2·χ·n steps.
    """
    require_proper(g, a, "start coloring")
    require_proper(g, beta, "target coloring")
    if a.k != k:
        a = a.with_palette(k)
    chi_g = grundy_number_exact(g) if grundy is None else grundy
    if k < chi_g + 1:
        raise PreconditionError(f"need k >= grundy number + 1 = {chi_g + 1}, got k={k}")
    if max(a.colors, default=0) > k or max(beta.colors, default=0) > k:
        raise InputError(f"colorings must use colors 1..{k}")
    chi = chromatic_number_exact(g).chromatic_number if chromatic is None else chromatic
    if beta.max_color != chi or not is_greedy(g, beta):
        raise PreconditionError("target coloring is not a greedy optimal coloring")

    cur = list(a.colors)
    steps: list[RecolorStep] = []

    def recolor(v: int, c: int) -> None:
        if cur[v] == c:
            return
        if any(cur[w] == c for w in g.adj[v]):
            raise InvariantError(f"recoloring {v} to {c} would clash")
        cur[v] = c
        steps.append(RecolorStep(v, c))

    active = set(range(g.n))
    shift = 0  # colors 1..shift are settled and no longer available
    while active:
        sub, _ = g.induced(active)
        if sub.m == 0:
            for v in sorted(active):
                recolor(v, beta[v])
            break
        classes: dict[int, list[int]] = {}
        for v in sorted(active):
            classes.setdefault(cur[v], []).append(v)
        for color in sorted(classes):
            for v in classes[color]:
                c = _smallest_free(g, cur, v)
                if c > cur[v] or c <= shift:
                    raise InvariantError(f"greedy pass moved {v} from {cur[v]} to {c}")
                recolor(v, c)
        evac = shift + grundy_number_exact(sub) + 1
        if evac > k or any(cur[v] == evac for v in active):
            raise InvariantError(f"evacuation color {evac} is not free")
        first = shift + 1
        target = {v for v in active if beta[v] == first}
        for v in sorted(active - target):
            if cur[v] == first:
                recolor(v, evac)
        for v in sorted(target):
            recolor(v, first)
        active -= target
        shift += 1

    seq = RecolorSequence(a, tuple(steps))
    if tuple(cur) != beta.colors:
        raise InvariantError("walk did not reach the target coloring")
    if len(seq) > 2 * chi * g.n:
        raise InvariantError(f"{len(seq)} steps exceeds 2·χ·n = {2 * chi * g.n}")
    return seq


def grundy_recolor(
    g: Graph, k: int, a: Coloring, b: Coloring, simplify: bool = True
) -> RecolorSequence:
    """Recolor ``a`` into ``b`` through a common greedy optimal coloring.

    The raw walk (``simplify=False``) has at most 4·χ_g·n steps.
    """
    chi_g = grundy_number_exact(g)
    if k < chi_g + 1:
        raise PreconditionError(
            f"need k >= grundy number + 1 = {chi_g + 1} (grundy number {chi_g}), got k={k}"
        )
    a, b = a.with_palette(k), b.with_palette(k)
    info = chromatic_number_exact(g)
    beta = info.witness.with_palette(k)
    there = grundy_recolor_to_optimal(g, k, a, beta, chi_g, info.chromatic_number)
    back = grundy_recolor_to_optimal(g, k, b, beta, chi_g, info.chromatic_number)
    seq = there.then(back.reversed())
    end = validate_sequence(g, seq)
    if end.colors != b.colors:
        raise InvariantError("spliced walk does not end at the target")
    if len(seq) > 4 * chi_g * g.n:
        raise InvariantError(f"{len(seq)} steps exceeds 4·χ_g·n = {4 * chi_g * g.n}")
    return simplify_sequence(seq) if simplify else seq
