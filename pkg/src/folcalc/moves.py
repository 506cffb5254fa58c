r"""
Reversible local rewrites of foliation movies.

Four kinds of move, each a pure function from movie to movie:

``SwapPi``
    Exchange two events adjacent in the cyclic rank order.  Legal when
    their arc supports are disjoint, in which case the two saddles
    commute and every other slice is untouched.  Self-inverse.

``ChangeInFoliation``
    Rewire a chained pair: two adjacent events of the same sign where
    the second consumes an arc the first produced.  Writing the three
    participating lineages as the through arc, the first event's other
    arc and the second event's other arc, the rewrite re-routes which
    pair meets first.  There are two rewirings, ``variant`` 1 and 2,
    and they are mutually inverse; both leave every slice outside the
    pair untouched and preserve all singularity counts.

``FingerMove``
    Push a new tongue across a negative point: creates one positive
    point, one negative point, one arc and a saddle pair of opposite
    signs around a chosen span of existing events.  The span, the
    saddle sign and all three fresh ids are explicit parameters, so the
    move is deterministic and two applications with equal parameters
    are equal.

``InverseFingerMove``
    Collapse a positive point whose whole star is one saddle pair of
    opposite signs, deleting the pair, the point, its seam partner and
    its arc.  The exact inverse of a finger move.

Moves that insert or delete events renumber ranks to ``1..h``; all
moves emit resolution-1 threading.  On movies already in that shape
(every movie this package generates) a move followed by its inverse is
the identity on the nose, not merely up to isomorphism.

Every ``apply`` validates its output and checks the advertised
singularity-count delta, raising :class:`InternalCheckError` rather
than returning a corrupt movie.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .core import (
    Arc,
    EllipticPoint,
    FoliationMovie,
    InternalCheckError,
    NEGATIVE,
    POSITIVE,
    SaddleEvent,
    apply_event_to_state,
    replay_states,
    require_valid,
    rethread,
    singularity_counts,
    star,
    validate,
)


class MoveError(ValueError):
    """A move was applied where it does not fit; carries the diagnostic."""


class Applicability(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


_YES = Applicability(True, "applicable")


@dataclass(frozen=True)
class SwapPi:
    """Exchange the events at two cyclically adjacent ranks.

    ``rank_b`` must be the cyclic successor of ``rank_a``; the pair is
    spelled out rather than inferred so a script stays readable on its
    own.
    """

    rank_a: int
    rank_b: int


@dataclass(frozen=True)
class ChangeInFoliation:
    """Rewire the chained pair at two adjacent ranks; ``variant`` is 1 or 2.

    Variant 1 routes the first event through the two outer lineages;
    variant 2 routes it through the through lineage and the second
    event's outer lineage.  Each undoes the other.
    """

    rank_a: int
    rank_b: int
    variant: int


@dataclass(frozen=True)
class FingerMove:
    """Grow a tongue over ``target`` (a negative point).

    ``gap_first`` and ``gap_second`` place the two new saddles: gap
    ``i`` means immediately after the ``i``-th event in rank order,
    gap 0 before the first.  The span must not cross the seam
    (``gap_first <= gap_second``); a tongue that should straddle the
    seam is expressed by rebasing the movie first, which changes
    nothing up to isomorphism.  The three fresh ids are explicit
    parameters so that application is a pure function and the collapse
    undoing the move restores the original ids exactly.
    """

    target: str
    gap_first: int
    gap_second: int
    sign: int
    new_positive: str
    new_negative: str
    new_arc: str


@dataclass(frozen=True)
class InverseFingerMove:
    """Collapse the one-saddle-pair star at ``positive``."""

    positive: str


Move = Union[SwapPi, ChangeInFoliation, FingerMove, InverseFingerMove]


@dataclass(frozen=True)
class MoveScript:
    """A base movie and a list of moves to fold over it, in order."""

    base: FoliationMovie
    steps: tuple[Move, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


# -- applicability ---------------------------------------------------------


def _adjacent_pair(movie, rank_a, rank_b):
    ranks = movie.ranks()
    for r in (rank_a, rank_b):
        if r not in ranks:
            return None, None, Applicability(False, f"no event has rank {r}")
    if len(ranks) < 2:
        return None, None, Applicability(False, "needs two events")
    succ = movie.cyclic_successor(rank_a)
    if rank_b != succ:
        return None, None, Applicability(
            False,
            f"rank {rank_b} is not the cyclic successor of rank {rank_a} "
            f"(that is {succ})",
        )
    return movie.event_at(rank_a), movie.event_at(rank_b), _YES


def _applicable_swap(move: SwapPi, movie) -> Applicability:
    e1, e2, ok = _adjacent_pair(movie, move.rank_a, move.rank_b)
    if not ok:
        return ok
    if set(e1.arcs) & set(e2.arcs):
        return Applicability(
            False,
            f"events {e1.rank} and {e2.rank} share an arc lineage; "
            "only disjoint saddles commute",
        )
    return _YES


def _applicable_cif(move: ChangeInFoliation, movie) -> Applicability:
    if move.variant not in (1, 2):
        return Applicability(False, f"variant must be 1 or 2, got {move.variant!r}")
    e1, e2, ok = _adjacent_pair(movie, move.rank_a, move.rank_b)
    if not ok:
        return ok
    if e1.sign != e2.sign:
        return Applicability(
            False, f"events {e1.rank} and {e2.rank} have opposite signs"
        )
    shared = set(e1.arcs) & set(e2.arcs)
    if not shared:
        return Applicability(
            False,
            f"events {e1.rank} and {e2.rank} are not chained; "
            "the second must consume an arc the first produced",
        )
    if len(shared) == 2:
        return Applicability(
            False,
            f"events {e1.rank} and {e2.rank} form a cancelling pair; "
            "nothing can be rewired",
        )
    return _YES


def _applicable_finger(move: FingerMove, movie) -> Applicability:
    signs = {p.id: p.sign for p in movie.elliptic}
    if move.target not in signs:
        return Applicability(False, f"no elliptic point {move.target!r}")
    if signs[move.target] != NEGATIVE:
        return Applicability(False, f"{move.target!r} is not a negative point")
    if move.sign not in (POSITIVE, NEGATIVE):
        return Applicability(False, f"sign must be +1 or -1, got {move.sign!r}")
    h = len(movie.events)
    for gap in (move.gap_first, move.gap_second):
        if not isinstance(gap, int) or not (0 <= gap <= h):
            return Applicability(False, f"gap {gap!r} outside 0..{h}")
    if move.gap_first > move.gap_second:
        return Applicability(
            False,
            "the tongue span may not cross the seam; rebase the movie to "
            "move the seam out of the way",
        )
    fresh = (move.new_positive, move.new_negative, move.new_arc)
    if len(set(fresh)) != 3:
        return Applicability(False, "the three fresh ids must be distinct")
    taken = set(signs) | set(movie.arc_ids())
    clash = [i for i in fresh if i in taken]
    if clash:
        return Applicability(False, f"id {clash[0]!r} is already in use")
    return _YES


def _applicable_inverse_finger(move: InverseFingerMove, movie) -> Applicability:
    signs = {p.id: p.sign for p in movie.elliptic}
    if move.positive not in signs:
        return Applicability(False, f"no elliptic point {move.positive!r}")
    if signs[move.positive] != POSITIVE:
        return Applicability(False, f"{move.positive!r} is not a positive point")
    st = star(movie, move.positive)
    if len(st) != 2:
        return Applicability(
            False,
            f"star of {move.positive!r} has {len(st)} saddles, a collapse needs "
            "exactly 2",
        )
    if st[0].sign == st[1].sign:
        return Applicability(
            False,
            f"star saddles of {move.positive!r} have equal signs; a tongue "
            "carries one of each",
        )
    return _YES


def applicable(move: Move, movie: FoliationMovie) -> Applicability:
    """Whether the move fits the movie, with a human-readable reason.

    Truthy exactly when ``apply`` would succeed; never raises for a
    wrong locus, only for an invalid movie.
    """
    require_valid(movie)
    if isinstance(move, SwapPi):
        return _applicable_swap(move, movie)
    if isinstance(move, ChangeInFoliation):
        return _applicable_cif(move, movie)
    if isinstance(move, FingerMove):
        return _applicable_finger(move, movie)
    if isinstance(move, InverseFingerMove):
        return _applicable_inverse_finger(move, movie)
    return Applicability(False, f"unknown move kind {type(move).__name__}")


# -- application -----------------------------------------------------------


def _renumbered(events) -> tuple[SaddleEvent, ...]:
    return tuple(
        SaddleEvent(rank=i + 1, sign=ev.sign, arcs=ev.arcs, resolution=ev.resolution)
        for i, ev in enumerate(events)
    )


def _apply_swap(move: SwapPi, movie: FoliationMovie) -> FoliationMovie:
    e1 = movie.event_at(move.rank_a)
    e2 = movie.event_at(move.rank_b)
    new_events = []
    for ev in movie.events:
        if ev.rank == e1.rank:
            new_events.append(
                SaddleEvent(e1.rank, e2.sign, e2.arcs, e2.resolution)
            )
        elif ev.rank == e2.rank:
            new_events.append(
                SaddleEvent(e2.rank, e1.sign, e1.arcs, e1.resolution)
            )
        else:
            new_events.append(ev)
    initial = movie.initial_arcs
    if move.rank_b < move.rank_a:
        # the pair wraps the seam: the initial slice is the state between
        # the two events, so it must be recomputed from the swapped order
        before_last = replay_states(movie)[-2]
        new_state = apply_event_to_state(before_last, e2)
        initial = tuple(Arc(i, p, n) for i, (p, n) in sorted(new_state.items()))
    return FoliationMovie(movie.elliptic, initial, tuple(new_events))


def _chained_roles(movie: FoliationMovie, rank_a: int, rank_b: int):
    """Locate the chained pair on a resolution-1 movie and name its
    lineages: through arc, first's other, second's other, plus the
    replay state entering the first event."""
    events = movie.events
    idx1 = next(i for i, ev in enumerate(events) if ev.rank == rank_a)
    e1 = events[idx1]
    e2 = movie.event_at(rank_b)
    states = replay_states(movie)
    pre = states[idx1]
    (through,) = set(e1.arcs) & set(e2.arcs)
    other1 = e1.arcs[0] if e1.arcs[1] == through else e1.arcs[1]
    other2 = e2.arcs[0] if e2.arcs[1] == through else e2.arcs[1]
    return e1, e2, pre, through, other1, other2


def _apply_cif(move: ChangeInFoliation, movie: FoliationMovie) -> FoliationMovie:
    m = rethread(movie)
    e1, e2, pre, i_x, i_y, i_z = _chained_roles(m, move.rank_a, move.rank_b)
    sign = e1.sign
    if move.variant == 1:
        f1 = SaddleEvent(e1.rank, sign, (i_y, i_z), 1)
        f2 = SaddleEvent(e2.rank, sign, (i_x, i_y), 1)
    else:
        f1 = SaddleEvent(e1.rank, sign, (i_x, i_z), 1)
        f2 = SaddleEvent(e2.rank, sign, (i_z, i_y), 1)
    new_events = tuple(
        f1 if ev.rank == e1.rank else f2 if ev.rank == e2.rank else ev
        for ev in m.events
    )
    initial = m.initial_arcs
    if e2.rank < e1.rank:
        # seam between the pair: the initial slice is the rewired mid-slice
        new_state = apply_event_to_state(pre, f1)
        initial = tuple(Arc(i, p, n) for i, (p, n) in sorted(new_state.items()))
    return FoliationMovie(m.elliptic, initial, new_events)


def _walk_negative_holder(start_id, events):
    """Follow which lineage holds a fixed negative point: each event
    consuming the current holder hands the point to its other arc."""
    holder = start_id
    for ev in events:
        if holder in ev.arcs:
            holder = ev.arcs[0] if ev.arcs[1] == holder else ev.arcs[1]
    return holder


def _apply_finger(move: FingerMove, movie: FoliationMovie) -> FoliationMovie:
    m = rethread(movie)
    events = list(m.events)
    states = replay_states(m)
    g1, g2 = move.gap_first, move.gap_second
    p_new, n_new, a_new = move.new_positive, move.new_negative, move.new_arc

    holder_at_g1 = next(
        i for i, (_, n) in states[g1].items() if n == move.target
    )
    holder_at_g2 = _walk_negative_holder(holder_at_g1, events[g1:g2])

    # the crossing saddle trades the tongue tip for the target, the
    # retracting saddle trades them back on whichever lineage holds the
    # target by then
    s1 = SaddleEvent(0, move.sign, (a_new, holder_at_g1), 1)
    s2 = SaddleEvent(0, -move.sign, (a_new, holder_at_g2), 1)
    seq = events[:g1] + [s1] + events[g1:g2] + [s2] + events[g2:]

    elliptic = m.elliptic + (
        EllipticPoint(p_new, POSITIVE),
        EllipticPoint(n_new, NEGATIVE),
    )
    initial = m.initial_arcs + (Arc(a_new, p_new, n_new),)
    return FoliationMovie(elliptic, initial, _renumbered(seq))


def _apply_inverse_finger(
    move: InverseFingerMove, movie: FoliationMovie
) -> FoliationMovie:
    m = rethread(movie)
    a_p = next(a.id for a in m.initial_arcs if a.pos_end == move.positive)
    kill = [ev for ev in m.events if a_p in ev.arcs]
    seam_partner = next(a.neg_end for a in m.initial_arcs if a.id == a_p)
    elliptic = tuple(
        p for p in m.elliptic if p.id not in (move.positive, seam_partner)
    )
    initial = tuple(a for a in m.initial_arcs if a.id != a_p)
    events = [ev for ev in m.events if ev not in kill]
    return FoliationMovie(elliptic, initial, _renumbered(events))


_DELTAS = {
    SwapPi: (0, 0, 0, 0),
    ChangeInFoliation: (0, 0, 0, 0),
    FingerMove: (1, 1, 1, 1),
    InverseFingerMove: (-1, -1, -1, -1),
}


def apply(move: Move, movie: FoliationMovie) -> FoliationMovie:
    """Apply one move.  Raises :class:`MoveError` when it does not fit.

    The output is validated and its singularity counts are checked
    against the per-kind delta table before it is returned.
    """
    fit = applicable(move, movie)
    if not fit:
        raise MoveError(f"{type(move).__name__}: {fit.reason}")
    before = singularity_counts(movie)
    if isinstance(move, SwapPi):
        out = _apply_swap(move, movie)
    elif isinstance(move, ChangeInFoliation):
        out = _apply_cif(move, movie)
    elif isinstance(move, FingerMove):
        out = _apply_finger(move, movie)
    else:
        out = _apply_inverse_finger(move, movie)
    report = validate(out)
    if not report.ok:
        raise InternalCheckError(
            f"{type(move).__name__} produced an invalid movie: {report}"
        )
    delta = _DELTAS[type(move)]
    after = singularity_counts(out)
    got = tuple(a - b for a, b in zip(after, before))
    if got != delta:
        raise InternalCheckError(
            f"{type(move).__name__} changed counts by {got}, expected {delta}"
        )
    # swaps and rewires must also preserve the count split by sign
    if isinstance(move, (SwapPi, ChangeInFoliation)) and after != before:
        raise InternalCheckError(
            f"{type(move).__name__} changed counts {before} -> {after}"
        )
    return out


def inverse(move: Move, movie: FoliationMovie | None = None) -> Move:
    """The move undoing ``move``.

    Swaps are self-inverse and the two rewire variants undo each other,
    so those need no context.  A finger move is undone by collapsing
    the positive point it created.  Reversing a collapse needs the
    movie the collapse was applied to, because the collapse parameter
    (one point id) does not determine the tongue that was removed; pass
    it as ``movie``.
    """
    if isinstance(move, SwapPi):
        return move
    if isinstance(move, ChangeInFoliation):
        return ChangeInFoliation(
            move.rank_a, move.rank_b, 2 if move.variant == 1 else 1
        )
    if isinstance(move, FingerMove):
        return InverseFingerMove(positive=move.new_positive)
    if isinstance(move, InverseFingerMove):
        if movie is None:
            raise MoveError(
                "inverting a collapse needs the movie it was applied to"
            )
        return _finger_undoing_collapse(move, movie)
    raise MoveError(f"unknown move kind {type(move).__name__}")


def _finger_undoing_collapse(
    move: InverseFingerMove, movie: FoliationMovie
) -> FingerMove:
    fit = applicable(move, movie)
    if not fit:
        raise MoveError(f"InverseFingerMove: {fit.reason}")
    m = rethread(movie)
    a_p = next(a.id for a in m.initial_arcs if a.pos_end == move.positive)
    seam_partner = next(a.neg_end for a in m.initial_arcs if a.id == a_p)
    idxs = [i for i, ev in enumerate(m.events) if a_p in ev.arcs]
    i1, i2 = idxs
    states = replay_states(m)
    inner_partner = states[i1 + 1][a_p][1]
    return FingerMove(
        target=inner_partner,
        gap_first=i1,
        gap_second=i2 - 1,
        sign=m.events[i1].sign,
        new_positive=move.positive,
        new_negative=seam_partner,
        new_arc=a_p,
    )


def apply_script(script: MoveScript) -> FoliationMovie:
    """Left fold of ``apply`` over the steps, failing fast with the index."""
    movie = script.base
    require_valid(movie)
    for i, move in enumerate(script.steps):
        try:
            movie = apply(move, movie)
        except MoveError as err:
            raise MoveError(f"step {i}: {err}") from None
    return movie
