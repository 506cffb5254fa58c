"""Canonical forms against the brute-force oracle."""

import random

import folcalc as fc
from oracles import iso_oracle


def scrambles(movie, seed):
    """A handful of relabeled, rebased, rethreaded copies."""
    rng = random.Random(seed)
    out = []
    for _ in range(3):
        ps, ns, ars = movie.positives(), movie.negatives(), movie.arc_ids()
        emap = dict(zip(ps, rng.sample([f"P{i}" for i in range(len(ps))], len(ps))))
        emap.update(zip(ns, rng.sample([f"N{i}" for i in range(len(ns))], len(ns))))
        amap = dict(zip(ars, rng.sample([f"A{i}" for i in range(len(ars))], len(ars))))
        m = fc.relabel(movie, emap, amap)
        if m.events:
            m = fc.rebase(m, rng.choice(m.ranks()))
        if rng.random() < 0.5:
            m = fc.rethread(m)
        out.append(m)
    return out


def test_census_matches_oracle_pairwise(census):
    forms = [fc.canonical_form(m) for m in census]
    for i, a in enumerate(census):
        for j, b in enumerate(census):
            expected = iso_oracle(a, b)
            assert fc.is_isomorphic(a, b) == expected
            assert (forms[i] == forms[j]) == expected
            assert expected == (i == j)


def test_scrambled_copies_stay_in_class(census):
    for seed, m in enumerate(census):
        form = fc.canonical_form(m)
        for copy in scrambles(m, seed):
            assert iso_oracle(m, copy)
            assert fc.is_isomorphic(m, copy)
            assert fc.canonical_form(copy) == form


def test_random_movies_agree_with_oracle(random_corpus):
    sample = random_corpus[:40]
    for i, a in enumerate(sample):
        for b in sample[i + 1 : i + 6]:
            assert fc.is_isomorphic(a, b) == iso_oracle(a, b)


def test_rebuild_inverts_canonical_form(census, random_corpus):
    for m in census + random_corpus[:30]:
        form = fc.canonical_form(m)
        r = fc.rebuild(form)
        assert fc.validate(r).ok
        assert fc.canonical_form(r) == form
        assert fc.is_isomorphic(r, m)


def test_normalize_is_idempotent(census):
    for m in census:
        n = fc.normalize(m)
        assert fc.normalize(n) == n
        assert fc.is_isomorphic(n, m)
