"""
Seeded random movies for property tests.

A generated movie is grown from the one-arc movie by legal moves only:
finger moves to reach the requested point count, then optional stirring
rounds that push an extra tongue, shuffle with event swaps and rewires,
and collapse some tongue again.  Growing by moves keeps every output
valid and realizable by construction; it also means every output has a
tree positive-pair graph, so non-tree inputs for tests come from the
exhaustive enumerator instead.

Determinism: one :class:`random.Random` seeded from the arguments
drives every choice, and all candidate pools are sorted before drawing.
Equal arguments give equal movies, bit for bit.
"""

from __future__ import annotations

import random

from . import moves as mv
from .core import Arc, EllipticPoint, FoliationMovie, POSITIVE, NEGATIVE


class GenerationError(RuntimeError):
    """Random generation could not produce a valid movie within bounds."""


def trivial_movie() -> FoliationMovie:
    """The one-arc movie: a single source-sink pair and no saddles."""
    return FoliationMovie(
        elliptic=(EllipticPoint("p1", POSITIVE), EllipticPoint("n1", NEGATIVE)),
        initial_arcs=(Arc("a1", "p1", "n1"),),
        events=(),
    )


def _random_finger(rng, movie, tag):
    h = len(movie.events)
    lo, hi = sorted((rng.randint(0, h), rng.randint(0, h)))
    return mv.FingerMove(
        target=rng.choice(movie.negatives()),
        gap_first=lo,
        gap_second=hi,
        sign=rng.choice((POSITIVE, NEGATIVE)),
        new_positive=f"p{tag}",
        new_negative=f"n{tag}",
        new_arc=f"a{tag}",
    )


def _random_shuffle_move(rng, movie):
    """One swap or rewire at a random locus, or None if the draw misses."""
    ranks = movie.ranks()
    if len(ranks) < 2:
        return None
    r = rng.choice(ranks)
    succ = movie.cyclic_successor(r)
    if rng.random() < 0.5:
        move = mv.SwapPi(r, succ)
    else:
        move = mv.ChangeInFoliation(r, succ, rng.choice((1, 2)))
    return move if mv.applicable(move, movie) else None


_SHUFFLES_PER_ROUND = 4


def random_movie(k: int, h_extra: int = 0, seed: int = 0) -> FoliationMovie:
    """A pseudo-random valid movie with ``k`` source-sink pairs.

    ``h_extra`` asks for extra stirring rounds; each round pushes one
    more tongue, shuffles, and collapses a tongue again, so the final
    singularity counts are always ``(k, k, k-1, k-1)``.  Deterministic
    in ``(k, h_extra, seed)``.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if h_extra < 0:
        raise ValueError(f"h_extra must not be negative, got {h_extra}")
    rng = random.Random(f"{k}:{h_extra}:{seed}")
    movie = trivial_movie()
    for i in range(2, k + 1):
        movie = mv.apply(_random_finger(rng, movie, i), movie)
    for rnd in range(h_extra):
        movie = _stir(rng, movie, tag=f"s{rnd}")
    return movie


def _stir(rng, movie, tag):
    finger = _random_finger(rng, movie, tag)
    movie = mv.apply(finger, movie)
    done: list[mv.Move] = []
    for _ in range(_SHUFFLES_PER_ROUND):
        move = _random_shuffle_move(rng, movie)
        if move is not None:
            movie = mv.apply(move, movie)
            done.append(move)
    collapsible = [
        p
        for p in movie.positives()
        if mv.applicable(mv.InverseFingerMove(p), movie)
    ]
    if not collapsible:
        # rewires can eat the fresh tongue's star; back the shuffle out
        # (every inverse is exact) and retract the tongue we just grew
        for move in reversed(done):
            movie = mv.apply(mv.inverse(move), movie)
        collapsible = [finger.new_positive]
    if not mv.applicable(mv.InverseFingerMove(collapsible[0]), movie):
        raise GenerationError("stir round lost every collapsible tongue")
    return mv.apply(mv.InverseFingerMove(rng.choice(collapsible)), movie)
