"""Command-line front end: ``rekolor recolor | stats | verify | dump``.

Exit codes: 0 success, 1 internal error, 2 precondition (too few colors,
improper coloring), 3 parse error, 4 resource guard, 5 invalid sequence.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .decomp import CompleteTreeDecomposition, Violation, make_complete, treewidth_exact, validate_complete
from .errors import (
    InputError,
    InvariantError,
    ParseError,
    PreconditionError,
    ResourceError,
    SequenceError,
)
from .generators import random_proper_coloring
from .graph import Coloring, Graph, RecolorSequence, require_proper, simplify_sequence, validate_sequence
from .grundy import chromatic_number_exact, grundy_number_exact, grundy_recolor
from .io import format_coloring, format_sequence, read_coloring, read_decomposition, read_dimacs, read_sequence
from .oracle import RecoloringGraphOracle, oracle_distance, oracle_path
from .twrecolor import tw_recolor

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PRECONDITION = 2
EXIT_PARSE = 3
EXIT_RESOURCE = 4
EXIT_INVALID_SEQUENCE = 5

REPORT_KEYS = (
    "engine",
    "n",
    "m",
    "k",
    "parameter_name",
    "parameter",
    "raw_length",
    "length",
    "recolor_counts",
    "bound",
    "oracle_distance",
    "wall_time_s",
    "seed",
)


@dataclass
class RunReport:
    """Summary of one ``recolor`` run; JSON keys are :data:`REPORT_KEYS`."""

    engine: str
    n: int
    m: int
    k: int
    parameter_name: str | None = None
    parameter: int | None = None
    raw_length: int | None = None
    length: int | None = None
    recolor_counts: list[int] = field(default_factory=list)
    bound: int | None = None
    oracle_distance: float | None = None
    wall_time_s: float = 0.0
    seed: int | None = None

    def check(self) -> None:
        if self.bound is not None and self.raw_length is not None and self.raw_length > self.bound:
            raise InvariantError(f"raw length {self.raw_length} exceeds bound {self.bound}")
        if self.oracle_distance is not None and self.length is not None:
            if self.oracle_distance > self.length:
                raise InvariantError("oracle distance exceeds the produced length")

    def to_json(self) -> str:
        data = asdict(self)
        if data["oracle_distance"] is not None and math.isinf(data["oracle_distance"]):
            data["oracle_distance"] = "inf"
        return json.dumps({key: data[key] for key in REPORT_KEYS}, indent=2)

    def to_text(self) -> str:
        dist = self.oracle_distance
        rows = [
            ("engine", self.engine),
            ("graph", f"n={self.n} m={self.m}"),
            ("colors", self.k),
        ]
        if self.parameter_name:
            rows.append((self.parameter_name, self.parameter))
        rows += [
            ("length", "none" if self.length is None else f"{self.length} (raw {self.raw_length})"),
            ("bound", "none" if self.bound is None else self.bound),
            ("oracle distance", "not computed" if dist is None else ("inf" if math.isinf(dist) else int(dist))),
            ("max recolorings per vertex", max(self.recolor_counts, default=0)),
            ("wall time", f"{self.wall_time_s:.3f}s"),
        ]
        return "\n".join(f"{name}: {value}" for name, value in rows)


def _load_coloring(source: str, g: Graph) -> Coloring | None:
    """Read a coloring file; the word ``random`` defers to a seeded random coloring."""
    return None if source == "random" else read_coloring(source, g.n)


def _decomposition(g: Graph, path: str | None) -> CompleteTreeDecomposition:
    if path is None:
        tw, td = treewidth_exact(g)
        return make_complete(g, td, max(tw, 0))
    given = read_decomposition(path)
    if isinstance(given, CompleteTreeDecomposition):
        res = validate_complete(g, given, given.level)
        if isinstance(res, Violation):
            raise PreconditionError(f"decomposition does not fit the graph: {res}")
        return given
    return make_complete(g, given, max(given.size, 0))


def cmd_recolor(args: argparse.Namespace) -> int:
    g = read_dimacs(args.graph)
    rng = random.Random(args.seed)
    a = _load_coloring(args.start, g)
    b = _load_coloring(args.target, g)
    clock = time.perf_counter()

    t = None
    param_name = param = None
    if args.method == "tw":
        t = _decomposition(g, args.decomposition)
        param_name, param = "tw", t.level
        floor = t.level + 2
    elif args.method == "grundy":
        param_name, param = "grundy", grundy_number_exact(g)
        floor = param + 1
    else:
        floor = 1
    k = args.k
    if k is None:
        k = max([floor] + [c.k for c in (a, b) if c is not None])
    if k < floor:
        raise PreconditionError(f"method {args.method} needs k >= {floor}, got k={k}")
    a = random_proper_coloring(g, k, rng) if a is None else a.with_palette(k)
    b = random_proper_coloring(g, k, rng) if b is None else b.with_palette(k)
    require_proper(g, a, "start coloring")
    require_proper(g, b, "target coloring")

    report = RunReport(args.method, g.n, g.m, k, param_name, param, seed=args.seed)
    seq: RecolorSequence | None
    if args.method == "tw":
        raw = tw_recolor(g, t, k, a, b, simplify=False)
        report.bound = 2 * (g.n * g.n + g.n)
    elif args.method == "grundy":
        raw = grundy_recolor(g, k, a, b, simplify=False)
        report.bound = 4 * param * g.n
    else:
        raw = oracle_path(g, k, a, b)
        report.oracle_distance = math.inf if raw is None else len(raw)
    if raw is None:
        seq = None
    else:
        seq = raw if args.no_simplify else simplify_sequence(raw)
        validate_sequence(g, seq)
        report.raw_length = len(raw)
        report.length = len(seq)
        report.recolor_counts = seq.recolor_counts()
    if args.with_oracle and report.oracle_distance is None:
        report.oracle_distance = oracle_distance(g, k, a, b)
    report.wall_time_s = round(time.perf_counter() - clock, 6)
    report.check()

    if seq is not None and args.out:
        Path(args.out).write_text(format_sequence(seq))
    elif seq is not None and args.report == "text" and not args.quiet:
        sys.stdout.write(format_sequence(seq))
    print(report.to_json() if args.report == "json" else report.to_text())
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    g = read_dimacs(args.graph)
    want_all = not (args.exact_tw or args.exact_grundy or args.exact_chromatic)
    out: dict[str, int | None] = {"n": g.n, "m": g.m, "max_degree": g.max_degree}
    if want_all or args.exact_tw:
        out["treewidth"] = treewidth_exact(g)[0]
        out["tw_engine_min_k"] = max(out["treewidth"], 0) + 2
    if want_all or args.exact_chromatic:
        out["chromatic_number"] = chromatic_number_exact(g).chromatic_number
    if want_all or args.exact_grundy:
        out["grundy_number"] = grundy_number_exact(g)
        out["grundy_engine_min_k"] = out["grundy_number"] + 1
    if args.report == "json":
        print(json.dumps(out, indent=2))
    else:
        for key, value in out.items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_dimacs(args.graph)
    seq = read_sequence(args.sequence, g.n, args.k)
    try:
        end = validate_sequence(g, seq)
    except SequenceError as exc:
        print(f"invalid sequence: {exc}", file=sys.stderr)
        return EXIT_INVALID_SEQUENCE
    except InputError as exc:
        print(f"invalid sequence: {exc}", file=sys.stderr)
        return EXIT_INVALID_SEQUENCE
    print(f"valid: {len(seq)} steps")
    sys.stdout.write(format_coloring(end))
    return EXIT_OK


def cmd_dump(args: argparse.Namespace) -> int:
    g = read_dimacs(args.graph)
    oracle = RecoloringGraphOracle(g, args.k)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        out.write(f"c {len(oracle)} states, components {oracle.component_count}\n")
        oracle.dump_edges(out)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rekolor", description="Certified recoloring sequences between proper colorings."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recolor", help="produce a recoloring sequence")
    rec.add_argument("graph", help="DIMACS .col file")
    rec.add_argument("start", help="start coloring file, or 'random'")
    rec.add_argument("target", help="target coloring file, or 'random'")
    rec.add_argument("--method", choices=("tw", "grundy", "oracle"), default="tw")
    rec.add_argument("--k", type=int, help="palette size (default: the method's minimum)")
    rec.add_argument("--seed", type=int, default=0, help="seed for 'random' colorings")
    rec.add_argument("--out", help="write the sequence here")
    rec.add_argument("--report", choices=("text", "json"), default="text")
    rec.add_argument("--with-oracle", action="store_true", help="also compute the exact distance")
    rec.add_argument("--decomposition", help="tree decomposition file for --method tw")
    rec.add_argument("--no-simplify", action="store_true", help="emit the raw walk")
    rec.add_argument("--quiet", action="store_true", help="do not echo the sequence")
    rec.set_defaults(func=cmd_recolor)

    st = sub.add_parser("stats", help="exact graph parameters")
    st.add_argument("graph")
    st.add_argument("--exact-tw", action="store_true")
    st.add_argument("--exact-grundy", action="store_true")
    st.add_argument("--exact-chromatic", action="store_true")
    st.add_argument("--report", choices=("text", "json"), default="text")
    st.set_defaults(func=cmd_stats)

    ver = sub.add_parser("verify", help="replay a sequence file")
    ver.add_argument("graph")
    ver.add_argument("sequence")
    ver.add_argument("--k", type=int)
    ver.set_defaults(func=cmd_verify)

    dump = sub.add_parser("dump", help="write R_k(G) as an edge list of state indices")
    dump.add_argument("graph")
    dump.add_argument("--k", type=int, required=True)
    dump.add_argument("--out")
    dump.set_defaults(func=cmd_dump)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, InputError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SequenceError as exc:
        print(f"invalid sequence: {exc}", file=sys.stderr)
        return EXIT_INVALID_SEQUENCE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
