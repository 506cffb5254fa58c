"""Seeded movie generation."""

import folcalc as fc


def test_trivial_movie_matches_base():
    assert fc.trivial_movie() == fc.base_movie()


def test_determinism():
    assert fc.random_movie(4, h_extra=2, seed=9) == fc.random_movie(4, h_extra=2, seed=9)
    assert fc.random_movie(4, h_extra=2, seed=9) != fc.random_movie(4, h_extra=2, seed=10)


def test_sizes_and_validity():
    for k in range(1, 6):
        for h_extra in range(3):
            for seed in range(4):
                m = fc.random_movie(k, h_extra=h_extra, seed=seed)
                assert fc.validate(m).ok
                assert fc.singularity_counts(m) == (k, k, k - 1, k - 1)


def test_generated_movies_are_tree_like(random_corpus):
    for m in random_corpus:
        assert fc.is_tree(fc.build_gpp(m))


def test_seeds_spread_over_classes():
    forms = {fc.canonical_form(fc.random_movie(4, h_extra=2, seed=s)) for s in range(40)}
    assert len(forms) > 3
