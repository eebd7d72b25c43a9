"""Command-line front end.

Input documents hold two bracketed blocks: the points as a list of integer
or p/q rational rows, then the symmetry generators as zero-based one-line
permutations.  "#" starts a comment, whitespace is free-form.  Counts go to
standard output, logs to standard error, so pipelines stay clean.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .engine import (
    BudgetConfig, CacheConfig, checkpoint_restore, run,
)
from .errors import (
    BadPermutation, DigestMismatch, DuplicatePoint, InconsistentOracle,
    InvalidTriangulation, MalformedCheckpoint, NotAffine, NotAPermutation,
    NotSpanning, NotUnimodular, ParseError, SecenumError, UnknownFamily,
)
from .pointconfig import (
    generate_family, homogenize, is_permutation, relabel_generator,
    validate_symmetry,
)
from .search import SearchMode
from .symmetry import PermGroup
from .triangulation import (
    dump_triangulation, enumerate_bfs, parse_triangulation,
)

__all__ = ["parse_input", "render", "main",
           "dump_triangulation", "parse_triangulation"]


# --------------------------------------------------------------------------
# input documents

class _Scanner:
    """Character scanner with 1-based line/column tracking."""

    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def _advance(self):
        if self.text[self.i] == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        self.i += 1

    def skip(self):
        while self.i < len(self.text):
            c = self.text[self.i]
            if c == "#":
                while self.i < len(self.text) and self.text[self.i] != "\n":
                    self._advance()
            elif c.isspace():
                self._advance()
            else:
                break

    def done(self) -> bool:
        self.skip()
        return self.i >= len(self.text)

    def fail(self, message):
        raise ParseError(message, line=self.line, column=self.col)

    def expect(self, char: str):
        self.skip()
        if self.i >= len(self.text):
            self.fail(f"expected {char!r}, found end of input")
        if self.text[self.i] != char:
            self.fail(f"expected {char!r}, found {self.text[self.i]!r}")
        self._advance()

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else None

    def number(self) -> Fraction:
        self.skip()
        start = self.i
        line, col = self.line, self.col
        if self.peek() in ("-", "+"):
            self._advance()
        while self.i < len(self.text) and (self.text[self.i].isdigit()
                                           or self.text[self.i] == "/"):
            self._advance()
        token = self.text[start:self.i]
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number {token!r}", line=line, column=col) from None


def _parse_matrix(sc: _Scanner, what: str):
    """One bracketed block: a list of rows of numbers."""
    sc.expect("[")
    rows = []
    if sc.peek() == "]":
        sc.expect("]")
        return rows
    while True:
        sc.expect("[")
        row = [sc.number()]
        while sc.peek() == ",":
            sc.expect(",")
            row.append(sc.number())
        sc.expect("]")
        rows.append(row)
        c = sc.peek()
        if c == ",":
            sc.expect(",")
            continue
        if c == "]":
            sc.expect("]")
            return rows
        sc.fail(f"expected ',' or ']' in the {what} block")


def parse_document(text: str):
    """Raw (points rows, generator rows) of an input document."""
    sc = _Scanner(text)
    points = _parse_matrix(sc, "points")
    if not points:
        sc.fail("empty points block")
    generators = _parse_matrix(sc, "generators")
    if not sc.done():
        sc.fail("trailing input after the generators block")
    return points, generators


def parse_input(text: str, *, homogeneous=False, ordering=None):
    """Parse a document into a validated configuration and generator list.

    ``ordering`` permutes the point rows before anything else; generators
    are conjugated to the new labels and every one is checked to act as an
    affine unimodular transformation on the configuration.
    """
    rows, gen_rows = parse_document(text)
    cfg = homogenize(rows, ordering=ordering, homogeneous=homogeneous)
    generators = []
    for raw in gen_rows:
        if any(f.denominator != 1 for f in raw):
            raise BadPermutation(f"permutation {raw} has non-integer entries")
        gen = tuple(int(f) for f in raw)
        if not is_permutation(gen, cfg.n):
            raise BadPermutation(
                f"{list(gen)} is not a permutation of 0..{cfg.n - 1}")
        if ordering is not None:
            gen = relabel_generator(gen, ordering)
        validate_symmetry(cfg, gen)
        generators.append(gen)
    return cfg, generators


def render(cfg, generators) -> str:
    """Input document reproducing the configuration and generators."""
    rows = cfg.points
    if all(r[-1] == 1 for r in rows):
        rows = [r[:-1] for r in rows]  # affine form; parse re-homogenizes
    pts = ",".join("[" + ",".join(map(str, r)) + "]" for r in rows)
    gens = ",".join("[" + ",".join(map(str, g)) + "]" for g in generators)
    return f"[{pts}]\n[{gens}]\n"


# --------------------------------------------------------------------------
# argument handling

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are input errors, exit 1
        raise _UsageError(message)


def _enum_parser(prog: str) -> _Parser:
    p = _Parser(prog=prog, add_help=True)
    p.add_argument("input", nargs="?", default="-",
                   help="input document (default: stdin)")
    p.add_argument("--regular", action="store_true",
                   help="enumerate regular triangulations only")
    p.add_argument("--full", action="store_true",
                   help="restrict to triangulations using every point")
    p.add_argument("--no-symmetry", action="store_true",
                   help="ignore the generators block")
    p.add_argument("--workers", type=int, default=1, metavar="N")
    p.add_argument("--budget-small", type=int, default=50, metavar="B")
    p.add_argument("--budget-large", type=int, default=5000, metavar="B",
                   help="0 means unlimited")
    p.add_argument("--cache-flips", type=int, default=2000, metavar="K")
    p.add_argument("--cache-orbits", type=int, default=2000, metavar="K")
    p.add_argument("--cache-regular", type=int, default=2000, metavar="K")
    p.add_argument("--checkpoint", metavar="FILE")
    p.add_argument("--restore", metavar="FILE")
    p.add_argument("--dump-triangs", metavar="FILE")
    p.add_argument("--count-only", action="store_true",
                   help="skip regularity counting in mode-all runs")
    p.add_argument("--stats", action="store_true",
                   help="also report total triangulations (sum of orbit sizes)")
    p.add_argument("--sorted", action="store_true",
                   help="sort dumped output for byte-stable files")
    p.add_argument("--seed", type=int, default=None, metavar="S",
                   help="random point reordering")
    p.add_argument("--tree-dot", metavar="FILE")
    p.add_argument("--homogeneous", action="store_true",
                   help="points are given in homogeneous coordinates")
    return p


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args):
    text = _read_input(args.input)
    ordering = None
    if args.seed is not None:
        rows, _ = parse_document(text)
        ordering = list(range(len(rows)))
        random.Random(args.seed).shuffle(ordering)
    cfg, generators = parse_input(
        text, homogeneous=args.homogeneous, ordering=ordering)
    if args.no_symmetry:
        group = PermGroup(cfg.n, [])
        symmetric = False
    else:
        group = PermGroup(cfg.n, generators)
        symmetric = True
    mode = SearchMode(args.regular, args.full, symmetric,
                      group=group if symmetric else None)
    return cfg, group, mode


def _budget(value):
    return None if value == 0 else value


# --------------------------------------------------------------------------
# subcommands

def _cmd_gen(argv) -> int:
    p = _Parser(prog="secenum gen")
    p.add_argument("family", help="cube | simplex_product | dilated_simplex | moae")
    p.add_argument("params", nargs="*", type=int)
    args = p.parse_args(argv)
    cfg, generators = generate_family(args.family, tuple(args.params))
    sys.stdout.write(render(cfg, generators))
    return 0


def _cmd_verify(argv) -> int:
    p = _Parser(prog="secenum verify")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--regular", action="store_true")
    p.add_argument("--full", action="store_true")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--homogeneous", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-orbits", type=int, default=200_000,
                   help="abort the oracle beyond this many orbits")
    args = p.parse_args(argv)
    cfg, group, mode = _load(args)

    seen = set()
    report = run(cfg, group, mode, workers=args.workers,
                 sink=lambda t: seen.add(t.ids), count_regular=False)
    oracle = enumerate_bfs(cfg, group if mode.symmetric else None, mode,
                           max_orbits=args.max_orbits)
    oracle_ids = {t.ids for t in oracle}
    print(f"reverse-search orbits: {report.orbit_count}")
    print(f"oracle orbits: {len(oracle_ids)}")
    if seen == oracle_ids:
        print("verify: OK")
        return 0
    missing = len(oracle_ids - seen)
    extra = len(seen - oracle_ids)
    print(f"verify: MISMATCH ({missing} missing, {extra} extra)",
          file=sys.stderr)
    return 2


def _cmd_enumerate(argv) -> int:
    args = _enum_parser("secenum").parse_args(argv)
    cfg, group, mode = _load(args)

    budget_config = BudgetConfig(small=_budget(args.budget_small),
                                 large=_budget(args.budget_large))
    cache_config = CacheConfig(flips=args.cache_flips,
                               orbits=args.cache_orbits,
                               regular=args.cache_regular)
    restore = checkpoint_restore(args.restore) if args.restore else None

    dumped = [] if args.dump_triangs else None
    sink = dumped.append if dumped is not None else None
    edges = [] if args.tree_dot else None

    report = run(
        cfg, group, mode,
        workers=max(1, args.workers),
        budget_config=budget_config,
        cache_config=cache_config,
        sink=sink,
        checkpoint_path=args.checkpoint,
        restore=restore,
        count_regular=False if args.count_only else None,
        collect_stats=args.stats,
        edge_sink=(lambda a, b: edges.append(
            (dump_triangulation(a), dump_triangulation(b))))
        if edges is not None else None,
    )

    if dumped is not None:
        lines = [dump_triangulation(t) for t in dumped]
        if args.sorted:
            lines.sort()
        out = (sys.stdout if args.dump_triangs == "-"
               else open(args.dump_triangs, "w", encoding="utf-8"))
        try:
            out.write("\n".join(lines) + ("\n" if lines else ""))
        finally:
            if out is not sys.stdout:
                out.close()
    if edges is not None:
        if args.sorted:
            edges.sort()
        with open(args.tree_dot, "w", encoding="utf-8") as fh:
            fh.write("digraph tree {\n")
            for a, b in edges:
                fh.write(f'  "{a}" -> "{b}";\n')
            fh.write("}\n")

    print(f"orbits: {report.orbit_count}")
    if report.regular_count is not None and not mode.regular_only:
        print(f"regular: {report.regular_count}")
    if report.total_triangulations is not None:
        print(f"total: {report.total_triangulations}")
    print(
        f"max degree {report.observed_max_degree}, "
        f"max simplices {report.max_simplices_seen}, "
        f"wall {report.wall_time:.2f}s, workers "
        f"{sorted(report.worker_counts.values(), reverse=True)}",
        file=sys.stderr,
    )
    if not report.complete:
        print("run stopped early; pending units checkpointed", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "gen":
            return _cmd_gen(argv[1:])
        if argv and argv[0] == "verify":
            return _cmd_verify(argv[1:])
        return _cmd_enumerate(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, NotSpanning, DuplicatePoint, NotAffine, NotUnimodular,
            NotAPermutation, BadPermutation, UnknownFamily, DigestMismatch,
            MalformedCheckpoint, InvalidTriangulation, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InconsistentOracle, SecenumError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
