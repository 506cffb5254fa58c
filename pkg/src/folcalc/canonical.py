r"""
Canonical forms and isomorphism of foliation movies.

Two movies describe the same foliated sphere when some renaming of
elliptic points and arc lineages, together with a cyclic rotation of the
event word, carries one to the other.  Lineage names and resolution
flags are pure bookkeeping (see :func:`folcalc.core.rethread`), so this
module compares movies at the quotient level where that bookkeeping has
been threaded away.

The quotient data of a valid movie is surprisingly small.  Fix a slice
to start from and label the positive points; then every slice matches
positive ``i`` to a negative point that can be named "whoever partner
``i`` was at the start", and each event is just a signed unordered pair
of positive labels whose current arcs it consumes.  The whole movie
collapses to a cyclic word of signed pairs.  The canonical form is the
lexicographically least such word over all rotation starts and all
first-appearance labelings, and two valid movies are isomorphic exactly
when their canonical words agree.

:func:`normalize` rebuilds a movie from its canonical word, which gives
every isomorphism class one distinguished representative: points
``p1..pk`` and ``n1..nk``, arcs ``a1..ak`` with ``ai`` glued to ``pi``
for the whole movie (resolution 1 throughout), ranks ``1..h``, and the
identity matching as the initial slice.
"""

from __future__ import annotations

from .core import (
    Arc,
    EllipticPoint,
    FoliationMovie,
    NEGATIVE,
    POSITIVE,
    SaddleEvent,
    replay_states,
    require_valid,
)

CanonicalForm = tuple[int, int, tuple[tuple[int, int, int], ...]]


def _event_positive_pairs(movie: FoliationMovie) -> list[tuple[int, tuple[str, str]]]:
    """For each event in rank order: (sign, positives of the consumed arcs)."""
    states = replay_states(movie)
    out = []
    for idx, ev in enumerate(movie.events):
        before = states[idx]
        u = before[ev.arcs[0]][0]
        v = before[ev.arcs[1]][0]
        out.append((ev.sign, (u, v)))
    return out


def _encodings_from(
    pairs: list[tuple[int, tuple[str, str]]], start: int
) -> list[tuple[tuple[int, int, int], ...]]:
    """All first-appearance encodings of the cyclic word rotated to start.

    Labels are handed out in order of first appearance while scanning.
    An event whose two positives are both unseen can be labeled two
    ways, hence the list; everything else is forced.
    """
    h = len(pairs)
    rotated = [pairs[(start + t) % h] for t in range(h)]
    results: list[tuple[tuple[int, int, int], ...]] = []
    # state per branch: (labels dict, emitted triples)
    branches: list[tuple[dict[str, int], list[tuple[int, int, int]]]] = [({}, [])]
    for sign, (u, v) in rotated:
        grown: list[tuple[dict[str, int], list[tuple[int, int, int]]]] = []
        for labels, emitted in branches:
            orders = [(u, v)]
            if u not in labels and v not in labels and u != v:
                orders.append((v, u))
            for first, second in orders:
                lab = dict(labels)
                for x in (first, second):
                    if x not in lab:
                        lab[x] = len(lab) + 1
                a, b = lab[u], lab[v]
                grown.append(
                    (lab, emitted + [(sign, min(a, b), max(a, b))])
                )
        branches = grown
    for _, emitted in branches:
        results.append(tuple(emitted))
    return results


def canonical_form(movie: FoliationMovie) -> CanonicalForm:
    """A complete isomorphism invariant of the movie.

    The triple ``(k, h, word)`` where ``word`` is the least signed
    positive-pair word over every rotation start and labeling.  Movies
    compare isomorphic exactly when these values are equal.
    """
    require_valid(movie)
    k = len(movie.positives())
    h = len(movie.events)
    if h == 0:
        return (k, 0, ())
    pairs = _event_positive_pairs(movie)
    best: tuple[tuple[int, int, int], ...] | None = None
    for start in range(h):
        for enc in _encodings_from(pairs, start):
            if best is None or enc < best:
                best = enc
    assert best is not None
    return (k, h, best)


def is_isomorphic(m1: FoliationMovie, m2: FoliationMovie) -> bool:
    """Movie isomorphism: renaming plus rotation of the event word.

    Computed by canonical form, so it is an equivalence relation by
    construction.  Signs of events and of points are invariants; the
    seam position and all lineage bookkeeping are not.
    """
    return canonical_form(m1) == canonical_form(m2)


def rebuild(form: CanonicalForm) -> FoliationMovie:
    """The distinguished representative of a canonical form."""
    k, h, word = form
    points = [EllipticPoint(f"p{i}", POSITIVE) for i in range(1, k + 1)]
    points += [EllipticPoint(f"n{i}", NEGATIVE) for i in range(1, k + 1)]
    arcs = tuple(Arc(f"a{i}", f"p{i}", f"n{i}") for i in range(1, k + 1))
    events = tuple(
        SaddleEvent(rank=t + 1, sign=sign, arcs=(f"a{i}", f"a{j}"), resolution=1)
        for t, (sign, i, j) in enumerate(word)
    )
    return FoliationMovie(tuple(points), arcs, events)


def normalize(movie: FoliationMovie) -> FoliationMovie:
    """Canonical representative of the movie's isomorphism class.

    Idempotent; equal outputs exactly for isomorphic inputs.  The
    output's serialization is what census files and deterministic
    comparisons use.
    """
    return rebuild(canonical_form(movie))
