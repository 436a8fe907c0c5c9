import numpy as np
from hypothesis import given, settings, strategies as st

from bramsey.coloring import Color, Coloring, L, R
from bramsey.matching import (
    ComponentType, analyze, bipartite_max_matching, bipartite_min_cover, component_from_edges,
    component_type, components, cover_vertices, largest_connected_matching, max_matching,
    meets_thresholds, min_vertex_cover,
)
from oracles import all_min_covers, brute_largest_cm, brute_nu

edge_lists = st.integers(1, 7).flatmap(
    lambda nl: st.integers(1, 7).flatmap(
        lambda nr: st.lists(st.tuples(st.integers(0, nl - 1), st.integers(0, nr - 1)), max_size=nl * nr, unique=True)
    )
)


@settings(max_examples=200, deadline=None)
@given(edge_lists)
def test_matching_size_matches_brute_force(edges):
    m = bipartite_max_matching(edges)
    assert len(m) == brute_nu(edges)
    assert set(m) <= set(edges)
    assert len({u for u, _ in m}) == len(m) == len({v for _, v in m})


@settings(max_examples=200, deadline=None)
@given(edge_lists)
def test_konig_cover_is_minimum_and_covers(edges):
    left, right = bipartite_min_cover(edges)
    assert all(u in left or v in right for u, v in edges)
    assert len(left) + len(right) == brute_nu(edges)


@settings(max_examples=100, deadline=None)
@given(edge_lists.filter(bool))
def test_cover_vertices_are_union_of_min_covers(edges):
    comp = component_from_edges(Color.RED, edges)
    expected = set()
    for a, b in all_min_covers(edges):
        expected |= {L(u) for u in a} | {R(v) for v in b}
    assert set(cover_vertices(comp)) == expected


def test_component_types():
    star = component_from_edges(Color.RED, [(0, 0), (0, 1), (0, 2)])
    assert component_type(star) is ComponentType.TYPE_L
    rstar = component_from_edges(Color.RED, [(0, 0), (1, 0)])
    assert component_type(rstar) is ComponentType.TYPE_R
    k22 = component_from_edges(Color.RED, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert component_type(k22) is ComponentType.UNSPECIFIED
    assert component_type(component_from_edges(Color.RED, [])) is ComponentType.NOT_CONNECTED_TO_BOTH_SIDES


def test_single_edge_is_unspecified():
    # both {L0} and {R0} are minimum covers
    edge = component_from_edges(Color.RED, [(0, 0)])
    assert cover_vertices(edge) == {L(0), R(0)}
    assert component_type(edge) is ComponentType.UNSPECIFIED


def test_components_partition_edges(rng):
    for _ in range(30):
        c = Coloring(rng.integers(-1, 3, size=(5, 6)).astype(np.int8))
        for col in Color:
            comps = components(c, col)
            edges = [e for k in comps for e in k.edges]
            assert sorted(edges) == sorted(c.edges(col))
            lefts = [u for k in comps for u in k.left]
            assert len(lefts) == len(set(lefts))


def test_largest_connected_matching_vs_brute_force(rng):
    for _ in range(100):
        c = Coloring(rng.integers(-1, 3, size=(5, 5)).astype(np.int8))
        for col in Color:
            cm = largest_connected_matching(c, col)
            assert cm.size == brute_largest_cm(c.cells, int(col))
            assert cm.matching.is_valid()
            if cm.size:
                assert all(u in cm.component.left and v in cm.component.right for u, v in cm.matching.edges)


def test_disconnected_matching_is_not_connected():
    # two disjoint red edges: matching number 2 overall, but no red 2-connected matching
    c = Coloring([[0, 1], [1, 0]])
    assert largest_connected_matching(c, Color.RED).size == 1
    assert meets_thresholds(c, 2, 3, 3) == (False, None)


def test_thresholds_zero_and_witness():
    c = Coloring([[0, 0], [0, 0]])
    hit, w = meets_thresholds(c, 2, 1, 1)
    assert hit and w.color is Color.RED and len(w) == 2
    assert meets_thresholds(c, 3, 0, 3)[0]


def test_analyze_report_consistency():
    comp = component_from_edges(Color.BLUE, [(0, 0), (0, 1), (1, 1), (2, 1)])
    rep = analyze(comp)
    assert rep.matching_number == len(max_matching(comp)) == 2
    assert len(min_vertex_cover(comp)) == 2
    assert rep.min_cover <= rep.cover_vertices
