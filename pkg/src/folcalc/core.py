r"""
Movies of circle-free singular foliations on the two-sphere.

The whole library works on one combinatorial object, the
:class:`FoliationMovie`.  It records how an embedded sphere meets the
pages of an open book by watching one full sweep of pages cross it:

* finitely many signed elliptic points; positive points are sources of
  the leaf flow, negative points are sinks;
* an initial slice: a perfect matching of the points by oriented arcs,
  each arc running from one positive point to one negative point;
* a cyclic word of signed saddle events, ordered by integer rank.

A saddle event consumes two arcs of the current slice and re-pairs their
four endpoints crosswise.  With every arc oriented positive to negative
the crosswise re-pairing is the only one a saddle crossing can produce,
so an event only has to say which two arc lineages meet and with what
sign.  Arc identifiers survive an event as lineages; the ``resolution``
flag states whether an identifier follows its positive endpoint (``1``)
or its negative endpoint (``2``) through the crossing.  Resolution is
bookkeeping, not geometry: it never changes which pairs of points are
matched, only which name each new arc inherits.

Three global conditions make a movie an honest foliated sphere, and
:func:`validate` checks exactly these on top of well-formedness:

* cyclic closure: replaying all events once restores the initial slice
  literally, identifier for identifier;
* index count: elliptic points minus saddle events equals two.  A closed
  connected assembly of the local models has Euler characteristic
  ``2k - h``, so this condition pins the surface to a sphere;
* connectivity: the union of the matchings over all slices must connect
  the point set, otherwise the same data describes a disjoint union of
  foliated surfaces rather than one sphere.

Everything downstream (the tightness certificate, local moves, the
realization search) consumes movies through the query layer in the lower
half of this module: replay, slices, counts, stars and derived rotations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

POSITIVE = 1
NEGATIVE = -1

_SIGN_CHAR = {POSITIVE: "+", NEGATIVE: "-"}
_CHAR_SIGN = {"+": POSITIVE, "-": NEGATIVE}


def sign_char(sign: int) -> str:
    """Render an integer sign the way the text format writes it."""
    try:
        return _SIGN_CHAR[sign]
    except KeyError:
        raise ValueError(f"not a sign: {sign!r}") from None


def char_sign(text: str) -> int:
    try:
        return _CHAR_SIGN[text]
    except KeyError:
        raise ValueError(f"not a sign: {text!r}") from None


class InternalCheckError(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    Raised only by self-verifying operations; seeing it means a bug in
    this library, never bad input.
    """


@dataclass(frozen=True)
class Violation:
    """One failed invariant: which rule, where, and what went wrong."""

    invariant: str
    location: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.invariant}] {self.location}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


class ValidationError(ValueError):
    """An operation required a valid movie and got an invalid one."""

    def __init__(self, report: ValidationReport):
        self.report = report
        head = str(report.violations[0]) if report.violations else "invalid movie"
        rest = len(report.violations) - 1
        super().__init__(head + (f" (+{rest} more)" if rest > 0 else ""))


@dataclass(frozen=True)
class EllipticPoint:
    id: str
    sign: int


@dataclass(frozen=True)
class Arc:
    """An oriented regular leaf, from ``pos_end`` down to ``neg_end``."""

    id: str
    pos_end: str
    neg_end: str


@dataclass(frozen=True)
class SaddleEvent:
    """One saddle tangency: the two arc lineages it consumes, its sign,
    and which lineage name follows which endpoint (``resolution``).

    The corridor field records, for each consumed arc, the side the
    saddle approaches from.  Orientation conventions (sources spin
    counterclockwise, sinks clockwise, seen from the positive side)
    force both sides to be ``L``; the field stays in the data so that
    the validator can reject anything else explicitly.
    """

    rank: int
    sign: int
    arcs: tuple[str, str]
    resolution: int = 1
    corridor: tuple[str, str] = ("L", "L")

    def __post_init__(self):
        arcs = tuple(self.arcs)
        corridor = tuple(self.corridor)
        if len(arcs) == 2 and len(corridor) == 2 and str(arcs[1]) < str(arcs[0]):
            arcs = (arcs[1], arcs[0])
            corridor = (corridor[1], corridor[0])
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "corridor", corridor)


@dataclass(frozen=True)
class Slice:
    """A single page's worth of the movie: one perfect matching of arcs."""

    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "arcs", tuple(sorted(self.arcs, key=lambda a: str(a.id)))
        )

    def pair_of(self, arc_id: str) -> tuple[str, str]:
        for a in self.arcs:
            if a.id == arc_id:
                return (a.pos_end, a.neg_end)
        raise KeyError(arc_id)

    def arc_at(self, elliptic_id: str) -> Arc:
        """The unique arc ending at the given elliptic point."""
        for a in self.arcs:
            if elliptic_id in (a.pos_end, a.neg_end):
                return a
        raise KeyError(elliptic_id)

    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((a.pos_end, a.neg_end) for a in self.arcs)

    def id_map(self) -> dict[str, tuple[str, str]]:
        return {a.id: (a.pos_end, a.neg_end) for a in self.arcs}


@dataclass(frozen=True)
class SliceEmbedding:
    """How one slice sits on the sphere.

    For a perfect matching every elliptic point carries exactly one
    arc-end, so the per-point rotation is a single token and the face
    trace of the arc system consists of one two-sided walk per arc.  A
    single slice therefore has no embedding moduli at all; the type
    exists so the forced data can be stated and checked rather than
    assumed.  The geometrically meaningful cyclic orders live at movie
    level, see :func:`rotations`.
    """

    rotation: tuple[tuple[str, tuple[tuple[str, str], ...]], ...]
    faces: tuple[tuple[tuple[str, str], ...], ...]

    @staticmethod
    def of_slice(sl: Slice) -> "SliceEmbedding":
        rotation = []
        faces = []
        for a in sl.arcs:
            rotation.append((a.pos_end, ((a.id, "pos"),)))
            rotation.append((a.neg_end, ((a.id, "neg"),)))
            faces.append(((a.id, "L"), (a.id, "R")))
        rotation.sort(key=lambda item: item[0])
        return SliceEmbedding(rotation=tuple(rotation), faces=tuple(faces))

    def sphere_defect(self) -> int:
        """``V - E + F - 2 * components``; zero exactly when every
        component of the arc system embeds in its own sphere."""
        v = len(self.rotation)
        e = v // 2
        f = len(self.faces)
        return v - e + f - 2 * e


@dataclass(frozen=True)
class FoliationMovie:
    """The complete combinatorial record of a foliated sphere.

    Immutable and hashable; every operation in this package is a pure
    function of movies.  The constructor sorts its fields so that two
    movies with the same content compare equal regardless of the order
    the caller listed points, arcs or events in.
    """

    elliptic: tuple[EllipticPoint, ...]
    initial_arcs: tuple[Arc, ...]
    events: tuple[SaddleEvent, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "elliptic",
            tuple(sorted(self.elliptic, key=lambda p: str(p.id))),
        )
        object.__setattr__(
            self,
            "initial_arcs",
            tuple(sorted(self.initial_arcs, key=lambda a: str(a.id))),
        )
        object.__setattr__(
            self,
            "events",
            tuple(
                sorted(
                    self.events,
                    key=lambda ev: (0, ev.rank)
                    if isinstance(ev.rank, int)
                    else (1, str(ev.rank)),
                )
            ),
        )

    # -- plain accessors -------------------------------------------------

    @property
    def initial_slice(self) -> Slice:
        return Slice(self.initial_arcs)

    def positives(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.elliptic if p.sign == POSITIVE)

    def negatives(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.elliptic if p.sign == NEGATIVE)

    def arc_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.initial_arcs)

    def elliptic_sign(self, elliptic_id: str) -> int:
        for p in self.elliptic:
            if p.id == elliptic_id:
                return p.sign
        raise KeyError(elliptic_id)

    def event_at(self, rank: int) -> SaddleEvent:
        for ev in self.events:
            if ev.rank == rank:
                return ev
        raise KeyError(rank)

    def ranks(self) -> tuple[int, ...]:
        return tuple(ev.rank for ev in self.events)

    def cyclic_successor(self, rank: int) -> int:
        """The next event rank in cyclic order (wraps past the seam)."""
        ranks = self.ranks()
        if rank not in ranks:
            raise KeyError(rank)
        larger = [r for r in ranks if r > rank]
        return min(larger) if larger else ranks[0]


# -- replay ---------------------------------------------------------------


def apply_event_to_state(
    state: dict[str, tuple[str, str]], ev: SaddleEvent
) -> dict[str, tuple[str, str]]:
    """Re-pair one saddle event on an id -> (pos, neg) state map.

    Crosswise re-pairing is forced; the resolution bit only decides
    which lineage keeps which name afterwards.
    """
    a, b = ev.arcs
    pa, na = state[a]
    pb, nb = state[b]
    out = dict(state)
    if ev.resolution == 2:
        out[a] = (pb, na)
        out[b] = (pa, nb)
    else:
        out[a] = (pa, nb)
        out[b] = (pb, na)
    return out


def replay_states(movie: FoliationMovie) -> list[dict[str, tuple[str, str]]]:
    """All ``h + 1`` states of the lineage map, initial state first.

    The last state equals the first exactly when the movie closes up;
    callers that need a guarantee should validate first.
    """
    state = {a.id: (a.pos_end, a.neg_end) for a in movie.initial_arcs}
    states = [state]
    for ev in movie.events:
        state = apply_event_to_state(state, ev)
        states.append(state)
    return states


def _state_to_slice(state: dict[str, tuple[str, str]]) -> Slice:
    return Slice(tuple(Arc(i, p, n) for i, (p, n) in state.items()))


# -- validation -----------------------------------------------------------


def _check_points(movie, out):
    ids = set()
    for p in movie.elliptic:
        loc = f"elliptic {p.id}"
        if p.id in ids:
            out.append(Violation("unique-ids", loc, "elliptic id declared twice"))
        ids.add(p.id)
        if p.sign not in (POSITIVE, NEGATIVE):
            out.append(Violation("sign", loc, f"sign must be +1 or -1, got {p.sign!r}"))
    return ids


def _check_arcs(movie, point_sign, out):
    ids = set()
    ok = True
    for a in movie.initial_arcs:
        loc = f"arc {a.id}"
        if a.id in ids:
            out.append(Violation("unique-ids", loc, "arc id declared twice"))
            ok = False
        ids.add(a.id)
        for end, want, word in (
            (a.pos_end, POSITIVE, "positive"),
            (a.neg_end, NEGATIVE, "negative"),
        ):
            if end not in point_sign:
                out.append(Violation("references", loc, f"unknown elliptic id {end!r}"))
                ok = False
            elif point_sign[end] != want:
                out.append(
                    Violation(
                        "arc-orientation",
                        loc,
                        f"{end!r} is not a {word} elliptic point",
                    )
                )
                ok = False
    return ids, ok


def _check_matching(movie, out):
    ok = True
    used: dict[str, int] = {}
    for a in movie.initial_arcs:
        for end in (a.pos_end, a.neg_end):
            used[end] = used.get(end, 0) + 1
    for p in movie.elliptic:
        got = used.get(p.id, 0)
        if got != 1:
            ok = False
            out.append(
                Violation(
                    "perfect-matching",
                    f"elliptic {p.id}",
                    f"must carry exactly one arc end, carries {got}",
                )
            )
    declared = {p.id for p in movie.elliptic}
    for end, got in used.items():
        if got > 1 and end not in declared:
            ok = False
    return ok


def _check_events(movie, arc_ids, out):
    replay_ok = True
    seen_ranks = set()
    for ev in movie.events:
        loc = f"event rank {ev.rank}"
        if not isinstance(ev.rank, int):
            out.append(Violation("ranks", loc, "rank must be an integer"))
            replay_ok = False
            continue
        if ev.rank in seen_ranks:
            out.append(
                Violation("distinct-ranks", loc, "duplicate rank; saddle values must all differ")
            )
            replay_ok = False
        seen_ranks.add(ev.rank)
        if ev.sign not in (POSITIVE, NEGATIVE):
            out.append(Violation("sign", loc, f"sign must be +1 or -1, got {ev.sign!r}"))
        if ev.resolution not in (1, 2):
            out.append(
                Violation("resolution", loc, f"resolution must be 1 or 2, got {ev.resolution!r}")
            )
        if len(ev.arcs) != 2 or ev.arcs[0] == ev.arcs[1]:
            out.append(
                Violation(
                    "distinct-arcs",
                    loc,
                    "a saddle consumes two distinct arcs; a self-saddle would close a leaf",
                )
            )
            replay_ok = False
        for aid in ev.arcs:
            if aid not in arc_ids:
                out.append(Violation("references", loc, f"unknown arc id {aid!r}"))
                replay_ok = False
        if tuple(ev.corridor) != ("L", "L"):
            out.append(
                Violation(
                    "corridor",
                    loc,
                    "every saddle sweeps across the left side of both oriented arcs; "
                    f"got {ev.corridor!r}",
                )
            )
    return replay_ok


def _check_replay(movie, out):
    states = replay_states(movie)
    if states[-1] != states[0]:
        first, last = states[0], states[-1]
        bad = sorted(i for i in first if first[i] != last[i])
        out.append(
            Violation(
                "cyclic-closure",
                "movie",
                "replaying all events must restore the initial slice; "
                f"arc {bad[0]!r} ends at {last[bad[0]]} instead of {first[bad[0]]}",
            )
        )
    edges = set()
    for state in states:
        edges.update(state.values())
    points = [p.id for p in movie.elliptic]
    if points:
        seen = {points[0]}
        grow = True
        while grow:
            grow = False
            for p, n in edges:
                if (p in seen) != (n in seen):
                    seen.update((p, n))
                    grow = True
        missing = [p for p in points if p not in seen]
        if missing:
            out.append(
                Violation(
                    "connectivity",
                    "movie",
                    "the union of all slices must connect the elliptic points; "
                    f"{missing[0]!r} lies in a separate component",
                )
            )
    for idx, state in enumerate(states[:-1]):
        emb = SliceEmbedding.of_slice(_state_to_slice(state))
        if emb.sphere_defect() != 0:
            out.append(
                Violation(
                    "slice-embedding",
                    f"slice {idx}",
                    f"face trace defect {emb.sphere_defect()}",
                )
            )


@functools.lru_cache(maxsize=16384)
def validate(movie: FoliationMovie) -> ValidationReport:
    """Check every structural invariant and report all failures at once.

    Accepts arbitrary records: dangling references and malformed fields
    come back as violations, never as exceptions.  A movie with an
    ``ok`` report is a genuine circle-free foliated sphere; in
    particular the index count rejects data that would assemble into a
    torus or any higher-genus surface, and the connectivity check
    rejects disjoint unions.
    """
    out: list[Violation] = []
    point_ids = _check_points(movie, out)
    point_sign = {p.id: p.sign for p in movie.elliptic if p.id in point_ids}
    arc_ids, arcs_ok = _check_arcs(movie, point_sign, out)
    matching_ok = _check_matching(movie, out)
    replay_ok = _check_events(movie, arc_ids, out)

    e_plus = sum(1 for p in movie.elliptic if p.sign == POSITIVE)
    e_minus = sum(1 for p in movie.elliptic if p.sign == NEGATIVE)
    h = len(movie.events)
    chi = (e_plus + e_minus) - h
    if chi != 2:
        out.append(
            Violation(
                "index-count",
                "movie",
                f"elliptic minus hyperbolic count is {chi}, a sphere needs 2",
            )
        )

    if arcs_ok and matching_ok and replay_ok and not any(
        v.invariant in ("unique-ids", "sign") for v in out
    ):
        _check_replay(movie, out)

    return ValidationReport(ok=not out, violations=tuple(out))


def require_valid(movie: FoliationMovie) -> None:
    report = validate(movie)
    if not report.ok:
        raise ValidationError(report)


# -- queries on valid movies ----------------------------------------------


def singularity_counts(movie: FoliationMovie) -> tuple[int, int, int, int]:
    """``(e+, e-, h+, h-)``.  Always satisfies ``(e+ + e-) - (h+ + h-) = 2``."""
    require_valid(movie)
    e_plus = sum(1 for p in movie.elliptic if p.sign == POSITIVE)
    e_minus = sum(1 for p in movie.elliptic if p.sign == NEGATIVE)
    h_plus = sum(1 for ev in movie.events if ev.sign == POSITIVE)
    h_minus = sum(1 for ev in movie.events if ev.sign == NEGATIVE)
    return (e_plus, e_minus, h_plus, h_minus)


def slice_at(movie: FoliationMovie, rank: int) -> Slice:
    """The slice immediately after the event at the given cyclic position.

    Rank arguments are read cyclically: for a movie with ``h`` events,
    ``rank`` and ``rank + h`` name the same slice, and multiples of
    ``h`` (including 0) name the initial slice, which equals the slice
    after the full cycle by closure.
    """
    require_valid(movie)
    states = replay_states(movie)
    h = len(movie.events)
    if h == 0:
        return _state_to_slice(states[0])
    return _state_to_slice(states[rank % h])


def slice_embedding_at(movie: FoliationMovie, rank: int) -> SliceEmbedding:
    return SliceEmbedding.of_slice(slice_at(movie, rank))


def star(movie: FoliationMovie, elliptic_id: str) -> tuple[SaddleEvent, ...]:
    """The events consuming an arc that ends at the point, by rank.

    The star is what the local moves inspect: its size is the number of
    saddles on the boundary of the point's leaf disc, and for a positive
    point the number of positive star events is its degree in the
    positive-pair graph.
    """
    require_valid(movie)
    movie.elliptic_sign(elliptic_id)
    states = replay_states(movie)
    hits = []
    for idx, ev in enumerate(movie.events):
        before = states[idx]
        for aid in ev.arcs:
            if elliptic_id in before[aid]:
                hits.append(ev)
                break
    return tuple(hits)


def rotations(movie: FoliationMovie) -> dict[str, tuple[str, ...]]:
    """Cyclic order of arc-end visits around every elliptic point.

    Around a source the visits run counterclockwise in chronological
    order; around a sink the spin is reversed.  Tokens name the arc
    instance by the event that consumes it, ``arc@rank``; a bare arc id
    denotes an instance that lives through the whole movie (only the
    eventless movie has those).  These orders are derived data: the
    movie determines them, and the text format merely repeats them so
    that files can be audited by eye.
    """
    require_valid(movie)
    states = replay_states(movie)
    out: dict[str, tuple[str, ...]] = {}
    for p in movie.elliptic:
        visits: list[str] = []
        for idx, ev in enumerate(movie.events):
            before = states[idx]
            for aid in ev.arcs:
                if p.id in before[aid]:
                    visits.append(f"{aid}@{ev.rank}")
                    break
        if not visits:
            sl = _state_to_slice(states[0])
            visits = [sl.arc_at(p.id).id]
        if p.sign == NEGATIVE:
            visits.reverse()
        out[p.id] = tuple(visits)
    return out


# -- structural rewrites ---------------------------------------------------


def rethread(movie: FoliationMovie) -> FoliationMovie:
    """Rename lineages so every event has resolution 1.

    With resolution 1 an arc id never leaves its positive point, so the
    id at each positive point is constant through the whole movie.  The
    rewrite keeps each initial arc's id (it stays with that arc's
    positive point), keeps all points, signs and ranks, and only edits
    event arc lists and resolution flags.  Idempotent, and the identity
    on movies that are already uniformly resolution 1.
    """
    require_valid(movie)
    states = replay_states(movie)
    id_at = {a.pos_end: a.id for a in movie.initial_arcs}
    new_events = []
    for idx, ev in enumerate(movie.events):
        before = states[idx]
        consumed_positives = [before[aid][0] for aid in ev.arcs]
        new_events.append(
            SaddleEvent(
                rank=ev.rank,
                sign=ev.sign,
                arcs=(id_at[consumed_positives[0]], id_at[consumed_positives[1]]),
                resolution=1,
            )
        )
    new_arcs = tuple(
        Arc(id_at[a.pos_end], a.pos_end, a.neg_end) for a in movie.initial_arcs
    )
    out = FoliationMovie(movie.elliptic, new_arcs, tuple(new_events))
    report = validate(out)
    if not report.ok:
        raise InternalCheckError(f"rethread produced an invalid movie: {report}")
    return out


def relabel(
    movie: FoliationMovie,
    elliptic_map: dict[str, str] | None = None,
    arc_map: dict[str, str] | None = None,
    rank_map: dict[int, int] | None = None,
) -> FoliationMovie:
    """Apply partial renamings; ids not mentioned stay as they are."""
    emap = elliptic_map or {}
    amap = arc_map or {}
    rmap = rank_map or {}

    def e(i):
        return emap.get(i, i)

    def a(i):
        return amap.get(i, i)

    new_points = tuple(EllipticPoint(e(p.id), p.sign) for p in movie.elliptic)
    new_arcs = tuple(Arc(a(x.id), e(x.pos_end), e(x.neg_end)) for x in movie.initial_arcs)
    new_events = tuple(
        SaddleEvent(
            rank=rmap.get(ev.rank, ev.rank),
            sign=ev.sign,
            arcs=(a(ev.arcs[0]), a(ev.arcs[1])),
            resolution=ev.resolution,
            corridor=ev.corridor,
        )
        for ev in movie.events
    )
    for name, new in (
        ("elliptic", new_points),
        ("arc", new_arcs),
    ):
        ids = [x.id for x in new]
        if len(set(ids)) != len(ids):
            raise ValueError(f"relabel collides {name} ids")
    if len({ev.rank for ev in new_events}) != len(new_events):
        raise ValueError("relabel collides ranks")
    return FoliationMovie(new_points, new_arcs, new_events)


def normalize_ranks(movie: FoliationMovie) -> FoliationMovie:
    """Renumber ranks to ``1..h`` keeping the cyclic order and the seam."""
    ranks = [ev.rank for ev in movie.events]
    return relabel(movie, rank_map={r: i + 1 for i, r in enumerate(ranks)})


def rebase(movie: FoliationMovie, start_rank: int) -> FoliationMovie:
    """Move the seam so the event at ``start_rank`` becomes rank 1.

    The cyclic word of events is unchanged; only which slice counts as
    initial moves.  Ranks come out renumbered ``1..h``.
    """
    require_valid(movie)
    events = movie.events
    if not events:
        return movie
    idx = next((i for i, ev in enumerate(events) if ev.rank == start_rank), None)
    if idx is None:
        raise KeyError(start_rank)
    states = replay_states(movie)
    new_initial = tuple(
        Arc(i, p, n) for i, (p, n) in sorted(states[idx].items())
    )
    rotated = events[idx:] + events[:idx]
    new_events = tuple(
        SaddleEvent(rank=i + 1, sign=ev.sign, arcs=ev.arcs, resolution=ev.resolution)
        for i, ev in enumerate(rotated)
    )
    out = FoliationMovie(movie.elliptic, new_initial, new_events)
    report = validate(out)
    if not report.ok:
        raise InternalCheckError(f"rebase produced an invalid movie: {report}")
    return out
