"""
Command-line front end.

Batch tool, no prompts: stdout carries machine-parseable ``key=value``
lines (or a requested artifact like a ``.fol``/``.mov``/DOT body),
stderr carries diagnostics.  Exit codes are part of the contract:

    0  success
    1  validation failure (also: verification failure, non-isomorphic)
    2  obstruction (a certified no, including a search deadlock)
    3  parse error in an input file
    4  usage error

The only environment variable read is ``FOLCALC_KMAX_OVERRIDE``, which
raises the complexity guard on ``enumerate`` for people who know the
runtime they are asking for.  Library callers get the same knob as an
explicit argument instead; nothing else in the package touches the
environment.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import moves as mv
from .canonical import is_isomorphic
from .core import FoliationMovie, ValidationError, singularity_counts
from .formats import (
    FolParseError,
    parse_fol,
    parse_mov,
    serialize_fol,
    serialize_mov,
    validate_document,
)
from .generate import random_movie
from .norms import (
    Page,
    boundary_connect_sum,
    euler_char,
    norm,
    surgery_ledger,
    tight_additivity,
)
from .realization import (
    RealizationDeadlockError,
    base_movie,
    enumerate_movies,
    realize,
    verify_realization,
)
from .tightness import build_gpp, dividing_circle_count, is_tree, tightness_verdict

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_OBSTRUCTION = 2
EXIT_PARSE = 3
EXIT_USAGE = 4


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract says 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"cannot read {path}: {exc.strerror}", file=sys.stderr)
        raise _Exit(EXIT_USAGE) from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {path}: {exc.strerror}", file=sys.stderr)
        raise _Exit(EXIT_USAGE) from None


def _load_movie(path: str) -> FoliationMovie:
    """Parse and validate, or stop with the right exit code."""
    try:
        doc = parse_fol(_read(path))
    except FolParseError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise _Exit(EXIT_PARSE) from None
    movie, report = validate_document(doc)
    if not report.ok:
        for v in report.violations:
            print(f"{path}: {v}", file=sys.stderr)
        raise _Exit(EXIT_INVALID)
    return movie


def _load_script(path: str) -> mv.MoveScript:
    try:
        doc = parse_mov(_read(path))
    except FolParseError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise _Exit(EXIT_PARSE) from None
    return doc.to_script(base_movie())


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


# -- subcommands ------------------------------------------------------------


def _cmd_validate(args) -> int:
    try:
        doc = parse_fol(_read(args.file))
    except FolParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _, report = validate_document(doc)
    if report.ok:
        print("ok")
        return EXIT_OK
    for v in report.violations:
        print(f"violation={v.invariant} where={v.location} detail={v.detail}")
    return EXIT_INVALID


def _cmd_counts(args) -> int:
    movie = _load_movie(args.file)
    ep, em, hp, hm = singularity_counts(movie)
    print(f"e+={ep} e-={em} h+={hp} h-={hm} PH={(ep + em) - (hp + hm)}")
    return EXIT_OK


def _cmd_gpp(args) -> int:
    movie = _load_movie(args.file)
    graph = build_gpp(movie)
    edges = sorted(graph.edges, key=lambda e: e.rank)
    if args.format == "dot":
        lines = ["graph gpp {"]
        for v in graph.vertices:
            lines.append(f'  "{v}";')
        for e in edges:
            u, w = e.ends
            lines.append(f'  "{u}" -- "{w}" [label="{e.rank}"];')
        lines.append("}")
        print("\n".join(lines))
    else:
        for v in graph.vertices:
            print(f"vertex={v}")
        for e in edges:
            print(f"edge={e.ends[0]}--{e.ends[1]} rank={e.rank}")
    return EXIT_OK


def _cmd_tight(args) -> int:
    movie = _load_movie(args.file)
    tree = is_tree(build_gpp(movie))
    print(
        f"tree={_bool(tree)} dividing_circles={dividing_circle_count(movie)} "
        f"verdict={tightness_verdict(movie)}"
    )
    return EXIT_OK


def _cmd_realize(args) -> int:
    movie = _load_movie(args.file)
    try:
        result = realize(movie)
    except RealizationDeadlockError as exc:
        print(f"deadlock: {exc}", file=sys.stderr)
        return EXIT_OBSTRUCTION
    if result.obstruction is not None:
        print(f"obstruction={result.obstruction}")
        return EXIT_OBSTRUCTION
    text = serialize_mov(result.script)
    if args.output:
        _write(args.output, text)
        print(f"steps={len(result.script.steps)}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_replay(args) -> int:
    script = _load_script(args.script)
    try:
        movie = mv.apply_script(script)
    except mv.MoveError as exc:
        print(f"{args.script}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = serialize_fol(movie)
    if args.output:
        _write(args.output, text)
        print("ok")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    movie = _load_movie(args.file)
    script = _load_script(args.script)
    if verify_realization(movie, script):
        print("ok")
        return EXIT_OK
    print(f"{args.script}: replay does not reproduce {args.file}", file=sys.stderr)
    return EXIT_INVALID


def _cmd_iso(args) -> int:
    a = _load_movie(args.first)
    b = _load_movie(args.second)
    same = is_isomorphic(a, b)
    print(f"isomorphic={_bool(same)}")
    return EXIT_OK if same else EXIT_INVALID


def _cmd_enumerate(args) -> int:
    guard = 4
    override = os.environ.get("FOLCALC_KMAX_OVERRIDE")
    if override is not None:
        try:
            guard = int(override)
        except ValueError:
            print(f"FOLCALC_KMAX_OVERRIDE must be an integer, got {override!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        movies = enumerate_movies(args.kmax, guard_limit=guard)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    by_k: dict[int, list[FoliationMovie]] = {k: [] for k in range(1, args.kmax + 1)}
    for m in movies:
        by_k[len(m.positives())].append(m)
    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        print(f"cannot create {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    for k in range(1, args.kmax + 1):
        classes = by_k[k]
        lines = [f"# census k={k} classes={len(classes)}"]
        lines.extend(serialize_fol(m, single_line=True) for m in classes)
        _write(os.path.join(args.out, f"census_k{k}.txt"), "\n".join(lines) + "\n")
        print(f"k={k} classes={len(classes)}")
    return EXIT_OK


def _cmd_random(args) -> int:
    try:
        movie = random_movie(args.k, h_extra=args.h_extra, seed=args.seed)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    text = serialize_fol(movie)
    if args.output:
        _write(args.output, text)
        print("ok")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _page(genus: int, boundary: int) -> Page:
    try:
        return Page(genus=genus, boundary_count=boundary)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        raise _Exit(EXIT_USAGE) from None


def _cmd_norm_page(args) -> int:
    page = _page(args.genus, args.boundary)
    print(f"chi={euler_char(page)} norm={norm(page)}")
    return EXIT_OK


def _cmd_norm_sum(args) -> int:
    pages = []
    for spec_pair in args.page:
        parts = spec_pair.split(",")
        if len(parts) != 2:
            print(f"--page wants genus,boundary; got {spec_pair!r}", file=sys.stderr)
            return EXIT_USAGE
        try:
            g, b = int(parts[0]), int(parts[1])
        except ValueError:
            print(f"--page wants two integers; got {spec_pair!r}", file=sys.stderr)
            return EXIT_USAGE
        pages.append(_page(g, b))
    total = pages[0]
    for page in pages[1:]:
        total = boundary_connect_sum(total, page)
    print(
        f"genus={total.genus} boundary={total.boundary_count} "
        f"chi={euler_char(total)} norm={norm(total)}"
    )
    return EXIT_OK


def _cmd_norm_ledger(args) -> int:
    try:
        ledger = surgery_ledger(args.chi)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if args.format == "text":
        width = max(len(label) for label, _, _ in ledger.entries)
        for label, chi, n in ledger.entries:
            print(f"{label.ljust(width)}  chi={chi:>3}  norm={n:>3}")
        for statement, holds in ledger.identities:
            print(f"[{'ok' if holds else 'FAILS'}] {statement}")
    else:
        for label, chi, n in ledger.entries:
            print(f"entry={label.split()[0]} chi={chi} norm={n}")
        for statement, holds in ledger.identities:
            print(f"identity holds={_bool(holds)} text={statement}")
    return EXIT_OK if ledger.ok() else EXIT_INVALID


def _cmd_norm_additivity(args) -> int:
    value = tight_additivity(args.sn1, args.sn2, tight=args.tight)
    relation = "exact" if args.tight else "upper-bound"
    print(f"value={value} relation={relation}")
    return EXIT_OK


# -- wiring -----------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="folcalc", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a movie file, print ok or violations")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("counts", help="singularity counts and their index sum")
    p.add_argument("file")
    p.set_defaults(func=_cmd_counts)

    p = sub.add_parser("gpp", help="emit the positive-saddle graph")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "text"), default="text")
    p.set_defaults(func=_cmd_gpp)

    p = sub.add_parser("tight", help="tree test, dividing circles, verdict")
    p.add_argument("file")
    p.set_defaults(func=_cmd_tight)

    p = sub.add_parser("realize", help="find a move script growing the movie")
    p.add_argument("file")
    p.add_argument("-o", "--output", metavar="SCRIPT")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("replay", help="run a script from the trivial movie")
    p.add_argument("script")
    p.add_argument("-o", "--output", metavar="FOL")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("verify", help="check that a script reproduces a movie")
    p.add_argument("file")
    p.add_argument("script")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("iso", help="decide isomorphism of two movies")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("enumerate", help="write census files up to a size bound")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("random", help="generate a seeded pseudo-random movie")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h-extra", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", metavar="FOL")
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("norm", help="page norm arithmetic")
    norm_sub = p.add_subparsers(dest="norm_command", required=True, parser_class=_Parser)

    q = norm_sub.add_parser("page", help="chi and norm of one page")
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--boundary", type=int, required=True)
    q.set_defaults(func=_cmd_norm_page)

    q = norm_sub.add_parser("sum", help="boundary connected sum of pages")
    q.add_argument("--page", action="append", required=True, metavar="G,B")
    q.set_defaults(func=_cmd_norm_sum)

    q = norm_sub.add_parser("ledger", help="Euler characteristic ledger for a sphere cut")
    q.add_argument("--chi", type=int, required=True)
    q.add_argument("--format", choices=("kv", "text"), default="kv")
    q.set_defaults(func=_cmd_norm_ledger)

    q = norm_sub.add_parser("additivity", help="norm of a connected sum")
    q.add_argument("--sn1", type=int, required=True)
    q.add_argument("--sn2", type=int, required=True)
    q.add_argument("--tight", action="store_true")
    q.set_defaults(func=_cmd_norm_additivity)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as stop:
        return stop.code
    except ValidationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
