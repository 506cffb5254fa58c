r"""
Constructive realization of tree movies, and the brute-force census.

A movie whose positive-pair graph is a tree can be grown from the one
arc movie by moves alone; :func:`realize` finds such a growth and
returns it as a :class:`moves.MoveScript` replayable by anyone, which
is the point: the script is a checkable certificate, not a yes/no bit.

The search runs the reduction backwards.  While more than one
source-sink pair remains, pick a degree-one vertex of the positive-pair
graph (smallest id first); its star holds exactly one positive saddle.
If the star has more than two saddles, swap uninvolved events out of
the way until two same-sign star saddles sit at adjacent ranks, then
rewire them into one, shrinking the star.  A two-saddle star is a
tongue and collapses outright.  Every reduction step is a move, so
reversing the recorded moves (each one exactly invertible) yields the
forward script from the base.

Plain greedy reduction can wedge: swaps need disjoint supports, and a
movie can arrange its events so that no clearing order exists at any
leaf.  The search therefore backtracks over all documented choices
(leaf, saddle pair, clearing split, rewire variant) with memoized dead
ends, and if the whole choice tree fails it falls back to breadth-first
exploration of the move graph from the base movie, allowing one more
source-sink pair than the target as detour room.  Only when that also
finds nothing does :func:`realize` raise
:class:`RealizationDeadlockError`; a non-tree graph is never an error,
it is a :class:`RealizationResult` carrying the obstruction.

One three-pair tree movie genuinely has no certificate in this
calculus: the word +{p1,p3} -{p1,p2} +{p2,p3} -{p1,p2}, whose every
leaf star self-overlaps (see :class:`RealizationOpenCaseError`).
Exhaustive closure of the move graph, run from both ends with every
intermediate movie held to at most five source-sink pairs, leaves its
class and the base class in different components, so :func:`realize`
reports it as the open case it is rather than forcing a collapse that
does not exist.

:func:`enumerate_movies` is this package's ground truth for small
sizes: a direct depth-first enumeration of event words over a fixed
initial matching, filtered by the validator and deduplicated by
canonical form.  It deliberately shares no code with the moves module,
so agreement between the two is evidence, not tautology.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from . import moves as mv
from .canonical import canonical_form, is_isomorphic, rebuild
from .core import (
    Arc,
    EllipticPoint,
    FoliationMovie,
    InternalCheckError,
    NEGATIVE,
    POSITIVE,
    SaddleEvent,
    ValidationError,
    normalize_ranks,
    relabel,
    require_valid,
    rethread,
    singularity_counts,
    star,
    validate,
)
from .tightness import GppGraph, build_gpp, is_tree


class RealizationDeadlockError(RuntimeError):
    """Reduction and bounded search both failed on a tree movie.

    Raising this is a statement about the search, not the movie: the
    movie may still be realizable by a longer detour than the bounds
    allow.
    """


class RealizationOpenCaseError(RealizationDeadlockError):
    """A tree movie whose reduction locus self-overlaps at every leaf.

    At each degree-one vertex of such a movie, the only same-sign pair
    of star saddles shares both of its arc lineages, so the rewire that
    would shrink the star has no room: it would need one saddle to
    consume a single arc twice at one instant, which no movie allows.
    When on top of that no swap, rewire or collapse applies anywhere,
    every move sequence out of the movie grows it, and exhaustive
    breadth-first closure of the move graph (both directions, all
    intermediates within five source-sink pairs) shows the movie's
    class is not connected to the one-arc base class at all.  Such a
    movie is recorded as an open case: it passes every validity check
    and its positive-pair graph is a tree, yet no certificate within
    this move calculus exists for it.
    """


@dataclass(frozen=True)
class RealizationResult:
    """Either a replayable script or a named obstruction, never both."""

    script: mv.MoveScript | None = None
    obstruction: str | None = None

    def __post_init__(self):
        if (self.script is None) == (self.obstruction is None):
            raise ValueError("exactly one of script and obstruction must be set")


def base_movie() -> FoliationMovie:
    """One positive point, one negative point, one arc, no saddles."""
    return FoliationMovie(
        elliptic=(EllipticPoint("p1", POSITIVE), EllipticPoint("n1", NEGATIVE)),
        initial_arcs=(Arc("a1", "p1", "n1"),),
        events=(),
    )


# -- obstruction naming -----------------------------------------------------


def _degrees(graph: GppGraph) -> dict[str, int]:
    deg = {v: 0 for v in graph.vertices}
    for e in graph.edges:
        deg[e.ends[0]] += 1
        deg[e.ends[1]] += 1
    return deg


def _find_cycle(graph: GppGraph):
    """Some cycle as (vertex path, edge ranks), or None.

    Depth-first forest with parent edges; the first non-tree edge closes
    a cycle through the two ancestor paths to the common ancestor.
    """
    loops = [e for e in graph.edges if e.is_loop()]
    if loops:
        e = min(loops, key=lambda x: x.rank)
        return [e.ends[0]], [e.rank]
    adj: dict[str, list[tuple[str, int]]] = {v: [] for v in graph.vertices}
    for e in graph.edges:
        u, w = e.ends
        adj[u].append((w, e.rank))
        adj[w].append((u, e.rank))
    for v in adj:
        adj[v].sort(key=lambda t: (t[1], t[0]))
    parent: dict[str, tuple[str, int] | None] = {}
    depth: dict[str, int] = {}
    for root in sorted(adj):
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, r in adj[v]:
                if w not in parent:
                    parent[w] = (v, r)
                    depth[w] = depth[v] + 1
                    stack.append(w)
                    continue
                if parent[v] is not None and parent[v][1] == r:
                    continue
                if parent[w] is not None and parent[w][1] == r:
                    continue
                av, aw = [v], [w]
                while depth[av[-1]] > depth[aw[-1]]:
                    av.append(parent[av[-1]][0])
                while depth[aw[-1]] > depth[av[-1]]:
                    aw.append(parent[aw[-1]][0])
                while av[-1] != aw[-1]:
                    av.append(parent[av[-1]][0])
                    aw.append(parent[aw[-1]][0])
                path = av + aw[-2::-1]
                ranks = [parent[x][1] for x in av[:-1]]
                ranks.extend(parent[x][1] for x in reversed(aw[:-1]))
                ranks.append(r)
                return path, ranks
    return None


def _obstruction_text(graph: GppGraph) -> str:
    loops = [e for e in graph.edges if e.is_loop()]
    if loops:
        e = min(loops, key=lambda e: e.rank)
        return (
            f"positive-pair graph has a loop at {e.ends[0]} "
            f"from the event at rank {e.rank}"
        )
    comps = graph.components()
    if len(comps) > 1:
        a = ", ".join(sorted(comps[0]))
        b = ", ".join(sorted(comps[1]))
        return (
            f"positive-pair graph is disconnected: {{{a}}} is separated "
            f"from {{{b}}}"
        )
    found = _find_cycle(graph)
    if found is not None:
        path, ranks = found
        walk = path[0]
        for v, r in zip(path[1:] + [path[0]], ranks):
            walk += f" -[{r}]- {v}"
        return f"positive-pair graph has a cycle: {walk}"
    raise InternalCheckError("non-tree graph with no loop, cycle or split")


# -- reduction search -------------------------------------------------------

_REDUCTION_BUDGET = 5000


def _rank_after(movie, rank):
    return movie.cyclic_successor(rank)


def _rank_before(movie, rank):
    ranks = movie.ranks()
    smaller = [r for r in ranks if r < rank]
    return max(smaller) if smaller else max(ranks)


def _gap_between(movie, rank_a, rank_b):
    """Event ranks strictly between two ranks in cyclic order."""
    out = []
    r = _rank_after(movie, rank_a)
    while r != rank_b:
        out.append(r)
        r = _rank_after(movie, r)
    return out


def _collapse_plans(movie, p):
    """Candidate move sequences that shrink the star of the leaf ``p``
    by one, in the documented preference order."""
    st = star(movie, p)
    positives = [ev for ev in st if ev.sign == POSITIVE]
    if len(positives) != 1:
        raise InternalCheckError(
            f"degree-one vertex {p} has {len(positives)} positive star "
            "saddles; a tree leaf must have exactly one"
        )
    if len(st) == 2:
        yield [mv.InverseFingerMove(p)]
        return
    pairs = []
    for i, ev in enumerate(st):
        nxt = st[(i + 1) % len(st)]
        if ev.sign != nxt.sign or ev.rank == nxt.rank:
            continue
        gap = _gap_between(movie, ev.rank, nxt.rank)
        pairs.append((len(gap), ev.rank, nxt.rank, gap))
    pairs.sort()
    for _, r_a, r_b, gap in pairs:
        e_a = set(movie.event_at(r_a).arcs)
        e_b = set(movie.event_at(r_b).arcs)
        clears_a = [not (e_a & set(movie.event_at(g).arcs)) for g in gap]
        clears_b = [not (e_b & set(movie.event_at(g).arcs)) for g in gap]
        for t in range(len(gap) + 1):
            if not all(clears_a[:t]) or not all(clears_b[t:]):
                continue
            swaps = []
            a_slot = r_a
            for _ in range(t):
                swaps.append(mv.SwapPi(a_slot, _rank_after(movie, a_slot)))
                a_slot = _rank_after(movie, a_slot)
            b_slot = r_b
            for _ in range(len(gap) - t):
                swaps.append(mv.SwapPi(_rank_before(movie, b_slot), b_slot))
                b_slot = _rank_before(movie, b_slot)
            for variant in (1, 2):
                yield swaps + [
                    mv.ChangeInFoliation(a_slot, _rank_after(movie, a_slot), variant)
                ]


def _try_plan(movie, plan):
    """Apply a plan, returning (result, [(move, movie before it)]) or None."""
    applied = []
    for move in plan:
        try:
            nxt = mv.apply(move, movie)
        except mv.MoveError:
            return None
        applied.append((move, movie))
        movie = nxt
    return movie, applied


def _reduce_to_point(m0):
    """Backtracking reduction to a one-arc movie.  Returns the list of
    (move, movie it was applied to) in application order plus the final
    movie, or None when the whole choice tree is exhausted."""
    visited: set = set()

    def go(m):
        if not m.events:
            return [], m
        form = canonical_form(m)
        if form in visited or len(visited) >= _REDUCTION_BUDGET:
            return None
        visited.add(form)
        graph = build_gpp(m)
        if not is_tree(graph):
            raise InternalCheckError("reduction step left the tree family")
        e_plus, _, h_plus, _ = singularity_counts(m)
        if h_plus != e_plus - 1:
            raise InternalCheckError(
                f"tree movie with e+={e_plus} must have h+={e_plus - 1}, "
                f"got {h_plus}"
            )
        deg = _degrees(graph)
        for p in sorted(v for v, d in deg.items() if d == 1):
            for plan in _collapse_plans(m, p):
                got = _try_plan(m, plan)
                if got is None:
                    continue
                m2, applied = got
                rest = go(m2)
                if rest is not None:
                    tail, final = rest
                    return applied + tail, final
        return None

    return go(m0)


def _permutation_sending(want: dict[str, str], universe: set[str]) -> dict[str, str]:
    """Extend an injective partial rename to a bijection by sending the
    displaced occupants of target names to the freed source names."""
    out = dict(want)
    sources = set(want)
    targets = set(want.values())
    freed = sorted(s for s in sources if s not in targets)
    displaced = sorted(t for t in targets if t in universe and t not in sources)
    for t, s in zip(displaced, freed):
        out[t] = s
    return out


def _relabel_move(move, emap, amap):
    if isinstance(move, mv.FingerMove):
        return mv.FingerMove(
            target=emap.get(move.target, move.target),
            gap_first=move.gap_first,
            gap_second=move.gap_second,
            sign=move.sign,
            new_positive=emap.get(move.new_positive, move.new_positive),
            new_negative=emap.get(move.new_negative, move.new_negative),
            new_arc=amap.get(move.new_arc, move.new_arc),
        )
    if isinstance(move, mv.InverseFingerMove):
        return mv.InverseFingerMove(emap.get(move.positive, move.positive))
    return move


def _script_from_reduction(m0, applied, final):
    """Reverse a reduction into a forward script from the base movie,
    renaming the surviving pair to the base ids."""
    backwards = [mv.inverse(move, before) for move, before in reversed(applied)]
    base = base_movie()
    want_e = {final.positives()[0]: "p1", final.negatives()[0]: "n1"}
    want_a = {final.arc_ids()[0]: "a1"}
    universe_e = {p.id for p in m0.elliptic} | {"p1", "n1"}
    universe_a = set(m0.arc_ids()) | {"a1"}
    emap = _permutation_sending(want_e, universe_e)
    amap = _permutation_sending(want_a, universe_a)
    if relabel(final, elliptic_map=emap, arc_map=amap) != base:
        raise InternalCheckError("survivor relabeling missed the base movie")
    steps = tuple(_relabel_move(move, emap, amap) for move in backwards)
    return mv.MoveScript(base, steps)


# -- breadth-first fallback -------------------------------------------------

_BFS_NODE_CAP = 20000
_BFS_KMAX_CEILING = 5


def _fresh_ids(movie):
    used = set(movie.arc_ids()) | {p.id for p in movie.elliptic}
    i = 1
    while {f"p{i}", f"n{i}", f"a{i}"} & used:
        i += 1
    return f"p{i}", f"n{i}", f"a{i}"


def _all_moves(movie, kmax):
    out = []
    for r in movie.ranks():
        succ = movie.cyclic_successor(r)
        out.append(mv.SwapPi(r, succ))
        out.append(mv.ChangeInFoliation(r, succ, 1))
        out.append(mv.ChangeInFoliation(r, succ, 2))
    for p in movie.positives():
        out.append(mv.InverseFingerMove(p))
    if len(movie.positives()) < kmax:
        pn, nn, an = _fresh_ids(movie)
        h = len(movie.events)
        for target in movie.negatives():
            for g1 in range(h + 1):
                for g2 in range(g1, h + 1):
                    for sign in (POSITIVE, NEGATIVE):
                        out.append(
                            mv.FingerMove(target, g1, g2, sign, pn, nn, an)
                        )
    return out


@functools.lru_cache(maxsize=8)
def _reachable_atlas(kmax: int):
    """Canonical form -> (representative movie, steps from base) for
    everything reachable from the base movie with at most ``kmax``
    source-sink pairs, breadth first, capped at ``_BFS_NODE_CAP``
    classes.  Representatives are movies actually built by replay, so
    the recorded steps reproduce them exactly."""
    start = base_movie()
    atlas = {canonical_form(start): (start, ())}
    queue = deque([start])
    while queue and len(atlas) < _BFS_NODE_CAP:
        m = queue.popleft()
        steps = atlas[canonical_form(m)][1]
        for move in _all_moves(m, kmax):
            if not mv.applicable(move, m):
                continue
            out = mv.apply(move, m)
            form = canonical_form(out)
            if form not in atlas:
                atlas[form] = (out, steps + (move,))
                queue.append(out)
    return atlas


# -- public operations ------------------------------------------------------


def realize(movie: FoliationMovie) -> RealizationResult:
    """A move script growing the movie from the base, or the obstruction.

    A non-tree positive-pair graph comes back as an obstruction result
    naming the offending loop, cycle or disconnection.  For tree movies
    the certificate is self-checked with :func:`verify_realization`
    before being returned.
    """
    require_valid(movie)
    graph = build_gpp(movie)
    if not is_tree(graph):
        return RealizationResult(obstruction=_obstruction_text(graph))
    m0 = normalize_ranks(rethread(movie))
    got = _reduce_to_point(m0)
    if got is not None:
        applied, final = got
        script = _script_from_reduction(m0, applied, final)
    else:
        script = _search_script(movie)
    if not verify_realization(movie, script):
        raise InternalCheckError("realization certificate failed self-check")
    return RealizationResult(script=script)


def _overlapping_star_leaves(movie):
    """Degree-one vertices whose star admits no shrinking rewire: every
    same-sign pair of their star saddles shares both arc lineages, so
    each candidate rewire degenerates (one saddle would have to consume
    a single arc twice).  Returns the list of such leaves; the open
    case is the movie where this list covers every leaf."""
    graph = build_gpp(movie)
    deg = _degrees(graph)
    out = []
    for p in sorted(v for v, d in deg.items() if d == 1):
        st = star(movie, p)
        if len(st) <= 2:
            return []
        degenerate = True
        for i, ev in enumerate(st):
            for other in st[i + 1 :]:
                if ev.sign != other.sign:
                    continue
                if set(ev.arcs) != set(other.arcs):
                    degenerate = False
        if not degenerate:
            return []
        out.append(p)
    return out


def _search_script(movie):
    k = len(movie.positives())
    form = canonical_form(movie)
    if k + 1 > _BFS_KMAX_CEILING:
        raise RealizationDeadlockError(
            f"reduction wedged at k={k} and the movie is too large for "
            "exhaustive move search"
        )
    for kmax in (k, k + 1):
        atlas = _reachable_atlas(kmax)
        if form in atlas:
            return mv.MoveScript(base_movie(), atlas[form][1])
    leaves = _overlapping_star_leaves(movie)
    if leaves:
        raise RealizationOpenCaseError(
            "open case: the star of every degree-one vertex "
            f"({', '.join(leaves)}) self-overlaps -- its same-sign saddles "
            "share both arc lineages, so no rewire can shrink it -- and "
            "exhaustive move search within "
            f"{k + 1} source-sink pairs ({len(_reachable_atlas(k + 1))} "
            "classes) never reaches this movie"
        )
    raise RealizationDeadlockError(
        f"tree movie not reached by any move sequence with at most "
        f"{k + 1} source-sink pairs ({len(_reachable_atlas(k + 1))} classes "
        "explored)"
    )


def verify_realization(movie: FoliationMovie, script: mv.MoveScript) -> bool:
    """Replay the script and compare with the movie up to isomorphism.

    Any replay failure means false, never an exception: a certificate
    is either checkable or worthless.
    """
    require_valid(movie)
    if not is_isomorphic(script.base, base_movie()):
        return False
    try:
        out = mv.apply_script(script)
    except (mv.MoveError, ValidationError):
        return False
    return is_isomorphic(out, movie)


def _cycle_count(perm):
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        count += 1
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return count


def _enumerate_k(k: int):
    """All valid movies with exactly ``k`` source-sink pairs, one
    canonical representative per isomorphism class."""
    if k == 1:
        return [rebuild(canonical_form(base_movie()))]
    h = 2 * k - 2
    elliptic = tuple(
        [EllipticPoint(f"p{i}", POSITIVE) for i in range(1, k + 1)]
        + [EllipticPoint(f"n{i}", NEGATIVE) for i in range(1, k + 1)]
    )
    arcs = tuple(Arc(f"a{i}", f"p{i}", f"n{i}") for i in range(1, k + 1))
    found: dict = {}
    perm = list(range(k))
    word: list[tuple[int, int, int]] = []

    def emit():
        events = tuple(
            SaddleEvent(t + 1, sign, (f"a{i + 1}", f"a{j + 1}"), 1)
            for t, (i, j, sign) in enumerate(word)
        )
        movie = FoliationMovie(elliptic, arcs, events)
        if validate(movie).ok:
            form = canonical_form(movie)
            if form not in found:
                found[form] = rebuild(form)

    def rec(t):
        need = k - _cycle_count(perm)
        remaining = h - t
        if need > remaining or (remaining - need) % 2:
            return
        if t == h:
            emit()
            return
        for i, j in combinations(range(k), 2):
            for sign in (POSITIVE, NEGATIVE):
                word.append((i, j, sign))
                perm[i], perm[j] = perm[j], perm[i]
                rec(t + 1)
                perm[i], perm[j] = perm[j], perm[i]
                word.pop()

    rec(0)
    return [found[f] for f in sorted(found)]


def enumerate_movies(k_max: int, *, guard_limit: int = 4):
    """Every valid movie with at most ``k_max`` source-sink pairs, up to
    isomorphism, canonically labeled and canonically ordered.

    Brute force: with ids normalized, the initial matching can be taken
    to pair point ``i`` with point ``i``, so a movie is determined by
    its event word; enumerate all words, filter with the validator,
    deduplicate by canonical form.  Exponential in ``k``, hence the
    guard; raising ``guard_limit`` past 4 is a deliberate act and can
    run for a very long time.
    """
    if k_max > guard_limit:
        raise ValueError(
            f"enumerate_movies(k_max={k_max}) exceeds the complexity guard "
            f"({guard_limit}); pass guard_limit explicitly to go higher"
        )
    out = []
    for k in range(1, k_max + 1):
        out.extend(_enumerate_k(k))
    return out
