"""Positive-saddle graph, tree test, dividing circles."""

import folcalc as fc
from oracles import dividing_oracle, positive_graph, tree_oracle


def graph(vertices, edges):
    return fc.GppGraph(
        vertices=tuple(vertices),
        edges=tuple(fc.GppEdge(rank=r, ends=ends) for r, ends in edges),
    )


def test_single_vertex_is_a_tree():
    assert fc.is_tree(graph(["p1"], []))


def test_path_is_a_tree():
    g = graph(["p1", "p2", "p3"], [(1, ("p1", "p2")), (2, ("p2", "p3"))])
    assert fc.is_tree(g)


def test_parallel_edges_are_not_a_tree():
    g = graph(["p1", "p2"], [(1, ("p1", "p2")), (2, ("p1", "p2"))])
    assert not fc.is_tree(g)


def test_loop_is_not_a_tree():
    g = graph(["p1"], [(1, ("p1", "p1"))])
    assert not fc.is_tree(g)


def test_disconnected_is_not_a_tree():
    g = graph(["p1", "p2"], [])
    assert not fc.is_tree(g)


def test_boundary_circles_of_small_graphs():
    assert fc.boundary_circles(graph(["p1"], [])) == 1
    assert fc.boundary_circles(graph(["p1", "p2"], [(1, ("p1", "p2"))])) == 1
    assert (
        fc.boundary_circles(graph(["p1", "p2"], [(1, ("p1", "p2")), (2, ("p1", "p2"))]))
        == 2
    )


def test_gpp_built_from_movie_matches_oracle(census, random_corpus):
    for m in census + random_corpus:
        g = fc.build_gpp(m)
        verts, edges = positive_graph(m)
        assert sorted(g.vertices) == sorted(verts)
        assert sorted((e.rank, tuple(sorted(e.ends))) for e in g.edges) == sorted(
            (r, tuple(sorted(ends))) for r, ends in edges
        )
        assert fc.is_tree(g) == tree_oracle(verts, edges)


def test_no_movie_produces_a_loop(census, random_corpus):
    for m in census + random_corpus:
        assert all(not e.is_loop() for e in fc.build_gpp(m).edges)


def test_dividing_count_matches_face_oracle(census, random_corpus):
    for m in census + random_corpus:
        assert fc.dividing_circle_count(m) == dividing_oracle(m)


def test_tree_iff_one_dividing_circle(census, random_corpus):
    for m in census + random_corpus:
        tree = fc.is_tree(fc.build_gpp(m))
        assert tree == (fc.dividing_circle_count(m) == 1)


def test_verdict_strings(census):
    for m in census:
        verdict = fc.tightness_verdict(m)
        if fc.is_tree(fc.build_gpp(m)):
            assert verdict == fc.TIGHT == "tight-compatible"
        else:
            assert verdict == fc.OVERTWISTED == "overtwisted-witness"


def test_trivial_movie_is_tight_compatible():
    m = fc.trivial_movie()
    assert fc.dividing_circle_count(m) == 1
    assert fc.tightness_verdict(m) == fc.TIGHT


def test_census_k2_split():
    k2 = [m for m in fc.enumerate_movies(2) if len(m.positives()) == 2]
    verdicts = sorted(fc.tightness_verdict(m) for m in k2)
    assert verdicts == [fc.OVERTWISTED, fc.OVERTWISTED, fc.TIGHT]
