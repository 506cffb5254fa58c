r"""
Text formats for movies (``.fol``) and move scripts (``.mov``).

Both formats are line oriented: one declaration per line, ``#`` starts
a comment, tokens are whitespace separated.  A ``.fol`` document::

    fol 1 genus=0
    elliptic p1 +
    elliptic n1 -
    arc a1 p1 n1
    rot p1 : a1
    rot n1 : a1
    event 1 + a1 a2 corridor=a1:L,a2:L resolution=1

The ``rot`` lines are redundant by design: rotation orders are derived
from the movie, and the format repeats them so a file can be audited by
eye; the document validator recomputes them and complains when the file
disagrees.  Semicolons may replace newlines, which gives the one-line
form used by census files.

Parsing is strictly syntactic and reports line/column positions;
whether the parsed data is an honest movie is the validator's business,
except that ``rot`` consistency and the header's genus (only 0 is
supported) are document-level facts checked by
:func:`validate_document`.

Serialization normalizes: ids are emitted in sorted order, ranks are
renumbered ``1..h`` starting the cycle at the rotation that makes the
event word lexicographically least, and every rotation word starts at
its least token.  Parsing a serialized document and serializing again
is the identity, which is what makes census files diffable.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import moves as mv
from .core import (
    Arc,
    EllipticPoint,
    FoliationMovie,
    SaddleEvent,
    ValidationReport,
    Violation,
    char_sign,
    rebase,
    rotations,
    sign_char,
    validate,
)


class FolParseError(ValueError):
    """A syntax error with its position; str() reads ``line L, col C: msg``."""

    def __init__(self, msg: str, line: int, col: int):
        self.msg = msg
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {msg}")


@dataclass(frozen=True)
class FolDocument:
    version: int
    genus: int
    elliptic: tuple[tuple[str, int], ...]
    arcs: tuple[tuple[str, str, str], ...]
    rotations: tuple[tuple[str, tuple[str, ...]], ...]
    events: tuple[SaddleEvent, ...]

    def to_movie(self) -> FoliationMovie:
        """The movie candidate; validation is the caller's move."""
        return FoliationMovie(
            elliptic=tuple(EllipticPoint(i, s) for i, s in self.elliptic),
            initial_arcs=tuple(Arc(i, p, n) for i, p, n in self.arcs),
            events=self.events,
        )


@dataclass(frozen=True)
class MovDocument:
    version: int
    base: str
    steps: tuple[mv.Move, ...]

    def to_script(self, base: FoliationMovie) -> mv.MoveScript:
        return mv.MoveScript(base=base, steps=self.steps)


# -- tokenizing -------------------------------------------------------------


def _logical_lines(text: str):
    """Yield (line_no, [(col, token), ...]) per logical line; semicolons
    split one physical line into several logical ones."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        hash_at = raw.find("#")
        if hash_at >= 0:
            raw = raw[:hash_at]
        offset = 0
        for segment in raw.split(";"):
            tokens = []
            col = 0
            for tok in segment.split():
                col = segment.index(tok, col)
                tokens.append((offset + col + 1, tok))
                col += len(tok)
            if tokens:
                yield line_no, tokens
            offset += len(segment) + 1


def _want(tokens, count, line, what):
    if len(tokens) != count:
        col = tokens[-1][0] if tokens else 1
        raise FolParseError(
            f"{what} needs {count} tokens, got {len(tokens)}", line, col
        )


def _sign_token(tok, line, col):
    try:
        return char_sign(tok)
    except ValueError:
        raise FolParseError(f"expected + or -, got {tok!r}", line, col) from None


def _int_token(tok, line, col, what):
    try:
        return int(tok)
    except ValueError:
        raise FolParseError(f"{what} must be an integer, got {tok!r}", line, col) from None


# -- .fol -------------------------------------------------------------------


def parse_fol(text: str) -> FolDocument:
    """Parse a ``.fol`` document, raising :class:`FolParseError` with a
    position on the first syntactic problem."""
    lines = _logical_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise FolParseError("empty document", 1, 1) from None
    _want(header, 3, line_no, "header")
    if header[0][1] != "fol":
        raise FolParseError(
            f"expected 'fol' header, got {header[0][1]!r}", line_no, header[0][0]
        )
    version = _int_token(header[1][1], line_no, header[1][0], "format version")
    if version != 1:
        raise FolParseError(f"unsupported format version {version}", line_no, header[1][0])
    col, tok = header[2]
    if not tok.startswith("genus="):
        raise FolParseError(f"expected genus=<n>, got {tok!r}", line_no, col)
    genus = _int_token(tok[len("genus="):], line_no, col, "genus")

    elliptic: list[tuple[str, int]] = []
    arcs: list[tuple[str, str, str]] = []
    rots: list[tuple[str, tuple[str, ...]]] = []
    events: list[SaddleEvent] = []
    seen_points: set[str] = set()
    seen_arcs: set[str] = set()
    seen_rots: set[str] = set()
    seen_ranks: set[int] = set()

    for line_no, tokens in lines:
        col0, directive = tokens[0]
        if directive == "elliptic":
            _want(tokens, 3, line_no, "elliptic")
            eid = tokens[1][1]
            if eid in seen_points:
                raise FolParseError(f"duplicate elliptic id {eid!r}", line_no, tokens[1][0])
            seen_points.add(eid)
            elliptic.append((eid, _sign_token(tokens[2][1], line_no, tokens[2][0])))
        elif directive == "arc":
            _want(tokens, 4, line_no, "arc")
            aid = tokens[1][1]
            if aid in seen_arcs:
                raise FolParseError(f"duplicate arc id {aid!r}", line_no, tokens[1][0])
            seen_arcs.add(aid)
            arcs.append((aid, tokens[2][1], tokens[3][1]))
        elif directive == "rot":
            if len(tokens) < 3 or tokens[2][1] != ":":
                raise FolParseError("rot needs 'rot <id> : <tokens>'", line_no, col0)
            eid = tokens[1][1]
            if eid in seen_rots:
                raise FolParseError(f"duplicate rot for {eid!r}", line_no, tokens[1][0])
            seen_rots.add(eid)
            rots.append((eid, tuple(t for _, t in tokens[3:])))
        elif directive == "event":
            events.append(_parse_event(tokens, line_no, seen_ranks))
        else:
            raise FolParseError(f"unknown directive {directive!r}", line_no, col0)

    return FolDocument(
        version=version,
        genus=genus,
        elliptic=tuple(elliptic),
        arcs=tuple(arcs),
        rotations=tuple(rots),
        events=tuple(events),
    )


def _parse_event(tokens, line_no, seen_ranks) -> SaddleEvent:
    _want(tokens, 7, line_no, "event")
    rank = _int_token(tokens[1][1], line_no, tokens[1][0], "rank")
    if rank in seen_ranks:
        raise FolParseError(f"duplicate event rank {rank}", line_no, tokens[1][0])
    seen_ranks.add(rank)
    sign = _sign_token(tokens[2][1], line_no, tokens[2][0])
    arc_a, arc_b = tokens[3][1], tokens[4][1]

    col, tok = tokens[5]
    if not tok.startswith("corridor="):
        raise FolParseError(f"expected corridor=..., got {tok!r}", line_no, col)
    sides = []
    parts = tok[len("corridor="):].split(",")
    if len(parts) != 2:
        raise FolParseError("corridor needs two comma-separated entries", line_no, col)
    for part, want_arc in zip(parts, (arc_a, arc_b)):
        head, _, side = part.partition(":")
        if head != want_arc:
            raise FolParseError(
                f"corridor entry {part!r} does not name arc {want_arc!r}", line_no, col
            )
        if side not in ("L", "R"):
            raise FolParseError(f"corridor side must be L or R, got {side!r}", line_no, col)
        sides.append(side)

    col, tok = tokens[6]
    if not tok.startswith("resolution="):
        raise FolParseError(f"expected resolution=..., got {tok!r}", line_no, col)
    res = _int_token(tok[len("resolution="):], line_no, col, "resolution")
    if res not in (1, 2):
        raise FolParseError(f"resolution must be 1 or 2, got {res}", line_no, col)
    return SaddleEvent(
        rank=rank, sign=sign, arcs=(arc_a, arc_b), resolution=res,
        corridor=(sides[0], sides[1]),
    )


def validate_document(doc: FolDocument) -> tuple[FoliationMovie, ValidationReport]:
    """Build the movie and check everything, including document-level
    facts the movie itself cannot see: genus and rotation declarations."""
    movie = doc.to_movie()
    report = validate(movie)
    extra: list[Violation] = []
    if doc.genus != 0:
        extra.append(
            Violation("genus", "header", f"unsupported genus {doc.genus}; only 0")
        )
    if report.ok:
        derived = rotations(movie)
        for eid, declared in doc.rotations:
            if eid not in derived:
                extra.append(
                    Violation("references", f"rot {eid}", "unknown elliptic id")
                )
            elif not _cyclic_equal(declared, derived[eid]):
                extra.append(
                    Violation(
                        "rotation-declaration",
                        f"rot {eid}",
                        f"declared {' '.join(declared)}, derived {' '.join(derived[eid])}",
                    )
                )
    if extra:
        report = ValidationReport(ok=False, violations=report.violations + tuple(extra))
    return movie, report


def _cyclic_equal(a: tuple[str, ...], b: tuple[str, ...]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a[i:] + a[:i] == b for i in range(len(a)))


def _least_rotation(word: tuple[str, ...]) -> tuple[str, ...]:
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def serialize_fol(movie: FoliationMovie, *, single_line: bool = False) -> str:
    """Normalized text form.

    Valid movies are rebased so the event word starts at its
    lexicographically least rotation and ranks read ``1..h``; invalid
    movies are emitted as they are, since normalization replays events
    and replay means nothing without closure.
    """
    if movie.events and validate(movie).ok:
        words = {}
        for ev in movie.events:
            start = ev.rank
            word = []
            r = start
            for _ in movie.events:
                e = movie.event_at(r)
                word.append((sign_char(e.sign), e.arcs[0], e.arcs[1], e.resolution))
                r = movie.cyclic_successor(r)
            words[start] = tuple(word)
        least = min(words.values())
        starts = [s for s, w in words.items() if w == least]
        # A cyclically symmetric event word ties across several seams whose
        # slices differ, and rank numbers shift under rebasing, so the tie
        # must be broken by something intrinsic: the rendered text itself.
        movie = min(
            (rebase(movie, s) for s in starts),
            key=lambda cand: _render_fol(cand),
        )

    lines = _render_fol(movie)
    if single_line:
        return "; ".join(lines)
    return "\n".join(lines) + "\n"


def _render_fol(movie: FoliationMovie) -> list[str]:
    lines = ["fol 1 genus=0"]
    for p in movie.elliptic:
        lines.append(f"elliptic {p.id} {sign_char(p.sign)}")
    for a in movie.initial_arcs:
        lines.append(f"arc {a.id} {a.pos_end} {a.neg_end}")
    if validate(movie).ok:
        for eid, word in sorted(rotations(movie).items()):
            lines.append(f"rot {eid} : {' '.join(_least_rotation(word))}")
    for ev in movie.events:
        a, b = ev.arcs
        ca, cb = ev.corridor
        lines.append(
            f"event {ev.rank} {sign_char(ev.sign)} {a} {b} "
            f"corridor={a}:{ca},{b}:{cb} resolution={ev.resolution}"
        )
    return lines


# -- .mov -------------------------------------------------------------------


def parse_mov(text: str) -> MovDocument:
    """Parse a ``.mov`` script document."""
    lines = _logical_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise FolParseError("empty document", 1, 1) from None
    _want(header, 3, line_no, "header")
    if header[0][1] != "mov":
        raise FolParseError(
            f"expected 'mov' header, got {header[0][1]!r}", line_no, header[0][0]
        )
    version = _int_token(header[1][1], line_no, header[1][0], "format version")
    if version != 1:
        raise FolParseError(f"unsupported format version {version}", line_no, header[1][0])
    col, tok = header[2]
    if not tok.startswith("base="):
        raise FolParseError(f"expected base=<name>, got {tok!r}", line_no, col)
    base = tok[len("base="):]
    if base != "trivial":
        raise FolParseError(f"unknown base {base!r}; only 'trivial'", line_no, col)

    steps: list[mv.Move] = []
    for line_no, tokens in lines:
        col0, directive = tokens[0]
        if directive == "swap":
            _want(tokens, 3, line_no, "swap")
            steps.append(
                mv.SwapPi(
                    _int_token(tokens[1][1], line_no, tokens[1][0], "rank"),
                    _int_token(tokens[2][1], line_no, tokens[2][0], "rank"),
                )
            )
        elif directive == "cif":
            _want(tokens, 4, line_no, "cif")
            col, tok = tokens[3]
            if not tok.startswith("variant="):
                raise FolParseError(f"expected variant=..., got {tok!r}", line_no, col)
            steps.append(
                mv.ChangeInFoliation(
                    _int_token(tokens[1][1], line_no, tokens[1][0], "rank"),
                    _int_token(tokens[2][1], line_no, tokens[2][0], "rank"),
                    _int_token(tok[len("variant="):], line_no, col, "variant"),
                )
            )
        elif directive == "finger":
            steps.append(_parse_finger(tokens, line_no))
        elif directive == "invfinger":
            _want(tokens, 2, line_no, "invfinger")
            col, tok = tokens[1]
            if not tok.startswith("p="):
                raise FolParseError(f"expected p=<id>, got {tok!r}", line_no, col)
            steps.append(mv.InverseFingerMove(tok[len("p="):]))
        else:
            raise FolParseError(f"unknown directive {directive!r}", line_no, col0)
    return MovDocument(version=version, base=base, steps=tuple(steps))


def _parse_finger(tokens, line_no) -> mv.FingerMove:
    _want(tokens, 5, line_no, "finger")
    fields = {}
    for col, tok in tokens[1:]:
        key, eq, value = tok.partition("=")
        if not eq or key not in ("target", "gaps", "sign", "new"):
            raise FolParseError(f"unexpected finger field {tok!r}", line_no, col)
        fields[key] = (col, value)
    for key in ("target", "gaps", "sign", "new"):
        if key not in fields:
            raise FolParseError(f"finger is missing {key}=...", line_no, tokens[0][0])
    col, gaps = fields["gaps"]
    parts = gaps.split(",")
    if len(parts) != 2:
        raise FolParseError("gaps needs two comma-separated integers", line_no, col)
    g1 = _int_token(parts[0], line_no, col, "gap")
    g2 = _int_token(parts[1], line_no, col, "gap")
    col, new = fields["new"]
    ids = new.split(",")
    if len(ids) != 3:
        raise FolParseError("new needs three comma-separated ids", line_no, col)
    col, sign = fields["sign"]
    return mv.FingerMove(
        target=fields["target"][1],
        gap_first=g1,
        gap_second=g2,
        sign=_sign_token(sign, line_no, col),
        new_positive=ids[0],
        new_negative=ids[1],
        new_arc=ids[2],
    )


def serialize_mov(script: mv.MoveScript) -> str:
    """Text form of a script.  Only scripts from the standard base can
    be written down; the format names the base, it does not embed it."""
    from .realization import base_movie

    if script.base != base_movie():
        raise ValueError("only scripts based at the standard trivial movie serialize")
    lines = ["mov 1 base=trivial"]
    for move in script.steps:
        if isinstance(move, mv.SwapPi):
            lines.append(f"swap {move.rank_a} {move.rank_b}")
        elif isinstance(move, mv.ChangeInFoliation):
            lines.append(f"cif {move.rank_a} {move.rank_b} variant={move.variant}")
        elif isinstance(move, mv.FingerMove):
            lines.append(
                f"finger target={move.target} gaps={move.gap_first},{move.gap_second} "
                f"sign={sign_char(move.sign)} "
                f"new={move.new_positive},{move.new_negative},{move.new_arc}"
            )
        elif isinstance(move, mv.InverseFingerMove):
            lines.append(f"invfinger p={move.positive}")
        else:
            raise ValueError(f"unknown move kind {type(move).__name__}")
    return "\n".join(lines) + "\n"
