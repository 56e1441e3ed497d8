"""Text formats: DIMACS graphs, colorings, recoloring sequences, decompositions.

Files use 1-based vertex ids; everything in memory is 0-based. Colors are
1-based in both places. Lines starting with ``c`` are comments everywhere.
"""

from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path

from .decomp import CompleteTreeDecomposition, TreeDecomposition, complete_violation
from .errors import InputError, ParseError
from .graph import Coloring, Graph, RecolorSequence, RecolorStep


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if parts and parts[0] != "c":
            yield no, parts


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {no}: expected integers, got {' '.join(tokens)!r}") from None


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


# ------------------------------------------------------------------- graphs


def parse_dimacs(text: str) -> Graph:
    """Parse ``p edge <n> <m>`` plus ``e <u> <v>`` lines.

    Duplicate edges (in either orientation) collapse to one. The declared
    edge count is not enforced, since files commonly count duplicates.
    """
    n = None
    edges = []
    for no, parts in _lines(text):
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError(f"line {no}: second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"line {no}: expected 'p edge <n> <m>'")
            n, m = _ints(parts[2:], no)
            if n < 0 or m < 0:
                raise ParseError(f"line {no}: negative size in problem line")
        elif tag == "e":
            if n is None:
                raise ParseError(f"line {no}: edge before the problem line")
            if len(parts) != 3:
                raise ParseError(f"line {no}: expected 'e <u> <v>'")
            x, y = _ints(parts[1:], no)
            if not (1 <= x <= n and 1 <= y <= n):
                raise ParseError(f"line {no}: endpoint outside 1..{n}")
            if x == y:
                raise ParseError(f"line {no}: self-loop on vertex {x}")
            edges.append((x - 1, y - 1))
        else:
            raise ParseError(f"line {no}: unknown line type {tag!r}")
    if n is None:
        raise ParseError("missing problem line 'p edge <n> <m>'")
    return Graph.from_edges(n, edges)


def format_dimacs(g: Graph, comment: str | None = None) -> str:
    out = [f"c {comment}"] if comment else []
    out.append(f"p edge {g.n} {g.m}")
    out.extend(f"e {x + 1} {y + 1}" for x, y in g.edges)
    return "\n".join(out) + "\n"


def read_dimacs(path: str | Path) -> Graph:
    return parse_dimacs(_read(path))


# ---------------------------------------------------------------- colorings


def parse_coloring(text: str, n: int | None = None, k: int | None = None) -> Coloring:
    """Whitespace-separated colors in vertex order.

    Without ``k`` the palette is the largest color present.
    """
    values: list[int] = []
    for no, parts in _lines(text):
        values.extend(_ints(parts, no))
    if n is not None and len(values) != n:
        raise ParseError(f"coloring has {len(values)} entries, expected {n}")
    if any(v < 1 for v in values):
        raise ParseError("colors must be positive")
    palette = max(values, default=1) if k is None else k
    try:
        return Coloring(tuple(values), palette)
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def format_coloring(c: Coloring) -> str:
    return " ".join(str(x) for x in c) + "\n"


def read_coloring(path: str | Path, n: int | None = None, k: int | None = None) -> Coloring:
    return parse_coloring(_read(path), n, k)


# ---------------------------------------------------------------- sequences


def parse_sequence(text: str, n: int | None = None, k: int | None = None) -> RecolorSequence:
    """A ``start`` line, the start coloring, then one ``<vertex> <color>`` per step.

    The start coloring may share the ``start`` line or take the next line.
    Without ``k`` the palette is the largest color mentioned anywhere.
    """
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "start":
        raise ParseError("sequence file must begin with a 'start' line")
    no, head = lines[0]
    rest = lines[1:]
    if len(head) > 1:
        start = _ints(head[1:], no)
    elif rest:
        no, parts = rest[0]
        start = _ints(parts, no)
        rest = rest[1:]
    else:
        raise ParseError("sequence file has no start coloring")
    if n is not None and len(start) != n:
        raise ParseError(f"start coloring has {len(start)} entries, expected {n}")
    steps = []
    for no, parts in rest:
        if len(parts) != 2:
            raise ParseError(f"line {no}: expected '<vertex> <color>'")
        v, c = _ints(parts, no)
        if not 1 <= v <= len(start):
            raise ParseError(f"line {no}: vertex {v} outside 1..{len(start)}")
        if c < 1:
            raise ParseError(f"line {no}: color must be positive")
        steps.append(RecolorStep(v - 1, c))
    if any(c < 1 for c in start):
        raise ParseError("colors must be positive")
    if k is None:
        k = max([*start, *(s.new_color for s in steps)], default=1)
    try:
        return RecolorSequence(Coloring(tuple(start), k), tuple(steps))
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def format_sequence(seq: RecolorSequence) -> str:
    out = ["start", " ".join(str(x) for x in seq.start)]
    out.extend(f"{s.vertex + 1} {s.new_color}" for s in seq.steps)
    return "\n".join(out) + "\n"


def read_sequence(path: str | Path, n: int | None = None, k: int | None = None) -> RecolorSequence:
    return parse_sequence(_read(path), n, k)


# ----------------------------------------------------------- decompositions


def parse_decomposition(text: str) -> TreeDecomposition:
    """``td <nodes> <level>``, then ``b <id> <v...>`` bags and ``e <p> <q>`` edges.

    Returns a :class:`CompleteTreeDecomposition` when the shape matches the
    declared level, a plain decomposition otherwise.
    """
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for no, parts in _lines(text):
        tag = parts[0]
        if tag == "td":
            if header is not None or len(parts) != 3:
                raise ParseError(f"line {no}: expected a single 'td <nodes> <level>'")
            header = _ints(parts[1:], no)
        elif header is None:
            raise ParseError(f"line {no}: content before the 'td' line")
        elif tag == "b":
            if len(parts) < 2:
                raise ParseError(f"line {no}: bag line without a node id")
            node, *vs = _ints(parts[1:], no)
            if node in bags:
                raise ParseError(f"line {no}: node {node} listed twice")
            if any(v < 1 for v in vs):
                raise ParseError(f"line {no}: vertex ids are 1-based")
            bags[node] = frozenset(v - 1 for v in vs)
        elif tag == "e":
            if len(parts) != 3:
                raise ParseError(f"line {no}: expected 'e <p> <q>'")
            edges.append(tuple(_ints(parts[1:], no)))
        else:
            raise ParseError(f"line {no}: unknown line type {tag!r}")
    if header is None:
        raise ParseError("missing 'td <nodes> <level>' line")
    count, level = header
    if count != len(bags):
        raise ParseError(f"header declares {count} nodes, found {len(bags)} bags")
    try:
        td = TreeDecomposition(bags, edges)
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    if complete_violation(td, level) is None:
        return CompleteTreeDecomposition.of(td, level)
    return td


def format_decomposition(t: TreeDecomposition, level: int | None = None) -> str:
    if level is None:
        level = t.level if isinstance(t, CompleteTreeDecomposition) else t.size
    out = [f"td {len(t.bags)} {level}"]
    for u in t.nodes:
        out.append(" ".join(["b", str(u), *(str(v + 1) for v in sorted(t.bags[u]))]))
    out.extend(f"e {p} {q}" for p, q in t.edges)
    return "\n".join(out) + "\n"


def read_decomposition(path: str | Path) -> TreeDecomposition:
    return parse_decomposition(_read(path))
