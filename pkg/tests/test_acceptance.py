"""Acceptance gate: one criterion per test, one PASS/FAIL line each.

The verdict lines accumulate in VERDICTS and conftest's terminal
summary hook prints them after the run, past pytest's fd-level capture,
so every logged run ends with the full scoreboard.  Corpus = every
isomorphism class with up to three source-sink pairs, plus a thousand
seeded random movies.
"""

import random
import time

import pytest

import folcalc as fc
from oracles import dividing_oracle, index_sum, positive_graph, sign_counts, tree_oracle
from test_moves import DELTAS, adjacent_moves, collapse_moves, finger_moves

VERDICTS = []


def report(number, name, ok, detail=""):
    line = f"ACCEPTANCE {number} {name}: {'PASS' if ok else 'FAIL'}"
    VERDICTS.append(line)
    assert ok, line + (f"\n{detail}" if detail else "")


@pytest.fixture(scope="module")
def thousand():
    return [
        fc.random_movie(2 + seed % 4, h_extra=seed % 3, seed=seed)
        for seed in range(1000)
    ]


def test_criterion_1_index_suite(census, thousand):
    t0 = time.perf_counter()
    enumerated = fc.enumerate_movies(3)
    elapsed = time.perf_counter() - t0
    corpus = enumerated + thousand
    exact = all(index_sum(m) == 2 for m in corpus)
    counted = all(
        (lambda c: (c[0] + c[1]) - (c[2] + c[3]))(fc.singularity_counts(m)) == 2
        for m in corpus
    )
    report(1, "index-count-suite", exact and counted and elapsed < 60.0)


def test_criterion_2_tree_dividing_equivalence(census, thousand):
    ok = True
    for m in census + thousand:
        count = fc.dividing_circle_count(m)
        verts, edges = positive_graph(m)
        closed_form = len(edges) - len(verts) + 2 * len(_components(verts, edges))
        traced = dividing_oracle(m)
        tree = fc.is_tree(fc.build_gpp(m))
        ok = ok and count == traced == closed_form and tree == (count == 1)
    report(2, "tree-iff-one-dividing-circle", ok)


def _components(verts, edges):
    left = set(verts)
    nbr = {v: set() for v in verts}
    for _, (u, w) in edges:
        nbr[u].add(w)
        nbr[w].add(u)
    comps = []
    while left:
        stack = [left.pop()]
        comp = set(stack)
        while stack:
            for n in nbr[stack.pop()]:
                if n not in comp:
                    comp.add(n)
                    stack.append(n)
        left -= comp
        comps.append(comp)
    return comps


def test_criterion_3_tree_bookkeeping(census, thousand):
    ok = True
    for m in census + thousand:
        if not fc.is_tree(fc.build_gpp(m)):
            continue
        ep, em, hp, hm = sign_counts(m)
        ok = ok and hp == ep - 1 and hm == ep - 1
    report(3, "tree-saddle-bookkeeping", ok)


def test_criterion_4_realization_soundness(census):
    # Honestly red: one k=3 tree class is a proven open case.  Its
    # every leaf star self-overlaps (the same-sign star saddles share
    # both arc lineages, so no rewire can shrink the star), and
    # exhaustive closure of the move graph -- from the base movie and
    # from the movie itself, all intermediates within five source-sink
    # pairs, both runs exhausting their frontiers -- leaves the two
    # classes in different components.  The criterion demands 100% of
    # tree movies, so it fails on that single class; realize reports it
    # as RealizationOpenCaseError rather than inventing a script.  The
    # remaining clauses (every other tree movie realizes and verifies
    # within the length bound, every non-tree movie obstructs) hold.
    ok = True
    open_cases = []
    for m in census:
        k = len(m.positives())
        h = len(m.events)
        if not tree_oracle(*positive_graph(m)):
            ok = ok and fc.realize(m).obstruction is not None
            continue
        try:
            result = fc.realize(m)
        except fc.RealizationOpenCaseError as exc:
            open_cases.append(str(exc))
            ok = False
            continue
        ok = ok and (
            result.script is not None
            and fc.verify_realization(m, result.script)
            and len(result.script.steps) <= 4 * (k + h) ** 2
        )
    detail = (
        "unmet on {} of the enumerated tree classes; documented open case: {}"
        .format(len(open_cases), "; ".join(open_cases))
        if open_cases
        else ""
    )
    report(4, "realization-soundness", ok, detail)


def test_criterion_5_move_algebra():
    rng = random.Random("acceptance-moves")
    ok = True
    kinds = set()
    done = 0
    seed = 0
    while done < 1000:
        movie = fc.random_movie(2 + seed % 4, h_extra=seed % 3, seed=seed)
        seed += 1
        moves = adjacent_moves(movie) + collapse_moves(movie) + finger_moves(movie, rng)
        rng.shuffle(moves)
        for move in moves[:4]:
            out = fc.apply(move, movie)
            before = fc.singularity_counts(movie)
            after = fc.singularity_counts(out)
            delta = tuple(a - b for a, b in zip(after, before))
            undo = fc.inverse(move, movie)
            ok = (
                ok
                and fc.validate(out).ok
                and delta == DELTAS[type(move)]
                and fc.apply(undo, out) == movie
            )
            kinds.add(type(move).__name__)
            done += 1
    all_kinds = {
        "SwapPi", "ChangeInFoliation", "FingerMove", "InverseFingerMove",
    }
    report(5, "move-algebra-1000", ok and done >= 1000 and kinds == all_kinds)


def test_criterion_6_norm_arithmetic():
    disc = fc.Page(genus=0, boundary_count=1)
    ok = fc.euler_char(disc) == 1 and fc.norm(disc) == -1
    rng = random.Random("acceptance-norms")
    for _ in range(100):
        p1 = fc.Page(genus=rng.randrange(0, 20), boundary_count=rng.randrange(1, 20))
        p2 = fc.Page(genus=rng.randrange(0, 20), boundary_count=rng.randrange(1, 20))
        total = fc.boundary_connect_sum(p1, p2)
        ok = ok and fc.norm(total) == fc.norm(p1) + fc.norm(p2) + 1
    for chi_b in range(-30, 2):
        ledger = fc.surgery_ledger(chi_b)
        ok = ok and ledger.ok()
        norm_b = dict((label, n) for label, _, n in ledger.entries)["B"]
        firsts = [(c, n) for label, c, n in ledger.entries if label.startswith("B1")]
        for c1, n1 in firsts:
            n2 = next(
                n for label, c, n in ledger.entries
                if label == f"B2 (chi={chi_b + 1 - c1})"
            )
            ok = ok and n1 + n2 == norm_b - 1
    for sn in range(-1, 20):
        ok = ok and fc.heegaard_genus_from_norm(sn) == sn - 1
    report(6, "norm-arithmetic", ok)


def test_criterion_7_determinism(census):
    first = fc.enumerate_movies(3)
    second = fc.enumerate_movies(3)
    ok = first == second
    ok = ok and [fc.serialize_fol(m) for m in first] == [fc.serialize_fol(m) for m in second]
    sample = [m for m in census if fc.is_tree(fc.build_gpp(m))][:8]
    for m in sample:
        a = _realize_bytes(m)
        b = _realize_bytes(m)
        ok = ok and a == b
    report(7, "byte-determinism", ok)


def _realize_bytes(movie):
    """Whatever realize produces, as bytes: a script, or the open-case text."""
    try:
        return fc.serialize_mov(fc.realize(movie).script)
    except fc.RealizationOpenCaseError as exc:
        return f"open-case: {exc}"
