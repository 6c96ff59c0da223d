import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcol.gadgets import gen_fig1, gen_G_k5
from lcol.graph import (
    Graph,
    bfs_distances,
    check_coloring,
    component_distance,
    components,
    make_lists,
    small_big_split,
    validate_f_assignment,
)

from support import complete, cycle, graphs


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(-1, [])


def test_from_adjacency_relabels_sorted():
    g, order = Graph.from_adjacency({10: [30], 30: [10, 20], 20: [30]})
    assert order == [10, 20, 30]
    assert g.sorted_edges() == [(0, 2), (1, 2)]


def test_make_lists_rejects_empty_and_negative():
    assert make_lists([[1, 2], [3]]) == {0: frozenset({1, 2}), 1: frozenset({3})}
    with pytest.raises(ValueError):
        make_lists({0: []})
    with pytest.raises(ValueError):
        make_lists({0: [-1]})


def test_f_assignment_examples():
    inst = gen_fig1(4)
    assert validate_f_assignment(inst.graph, inst.lists, 4)
    k3 = complete(3)
    assert validate_f_assignment(k3, {v: {1, 2} for v in range(3)}, 5)
    assert not validate_f_assignment(k3, {v: {1} for v in range(3)}, 5)
    # a missing vertex is not an assignment
    assert not validate_f_assignment(k3, {0: {1, 2}, 1: {1, 2}}, 5)


def test_f_assignment_large_gadget():
    inst = gen_G_k5()
    assert validate_f_assignment(inst.graph, inst.lists, 5)


def test_small_big_split_examples():
    s, b = small_big_split(complete(4), 5)
    assert s == frozenset(range(4)) and b == frozenset()
    inst = gen_fig1(4)
    g = inst.graph
    s, b = small_big_split(g, 4)
    assert len(b) == 2
    assert all(g.degree(v) == 3 for v in s)
    assert all(g.degree(v) >= 4 for v in b)


def test_component_distance_examples():
    assert component_distance(cycle(5), range(5)) == 0
    assert component_distance(cycle(5), []) == 0
    inst = gen_fig1(4)
    s, _ = small_big_split(inst.graph, 4)
    assert component_distance(inst.graph, s) == 2


def test_component_distance_far_gadget():
    inst = gen_G_k5()
    s, _ = small_big_split(inst.graph, 5)
    assert component_distance(inst.graph, s) == 4


def test_component_distance_across_pieces_is_vertex_count():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert component_distance(g, [0, 2]) == 4


def test_check_coloring_examples():
    c4 = cycle(4)
    lists = {v: {1, 2} for v in range(4)}
    assert check_coloring(c4, lists, {0: 1, 1: 2, 2: 1, 3: 2})
    assert not check_coloring(Graph.from_edges(2, [(0, 1)]), {0: {1}, 1: {1}}, {0: 1, 1: 1})
    assert not check_coloring(c4, lists, {0: 1, 1: 2, 2: 1})
    assert not check_coloring(c4, lists, {0: 1, 1: 2, 2: 1, 3: 3})


def _brute_distance(g, subset):
    comps = components(g.adjacency(), subset)
    if len(comps) <= 1:
        return 0
    best = g.n
    for a, b in itertools.combinations(comps, 2):
        dist = bfs_distances(g.adjacency(), a)
        best = min([best] + [dist[v] for v in b if v in dist])
    return best


@given(graphs(max_n=10), st.data())
def test_component_distance_matches_all_pairs_bfs(g, data):
    subset = data.draw(st.sets(st.integers(0, g.n - 1)))
    assert component_distance(g, subset) == _brute_distance(g, subset)


@given(graphs(max_n=10), st.integers(1, 9))
def test_split_partitions_vertices(g, k):
    s, b = small_big_split(g, k)
    assert s | b == frozenset(range(g.n))
    assert not s & b


@given(graphs(max_n=10), st.integers(1, 9))
def test_small_side_distance_at_least_two(g, k):
    s, _ = small_big_split(g, k)
    d = component_distance(g, s)
    n_comps = len(components(g.adjacency(), s))
    assert (d == 0) == (n_comps <= 1)
    if n_comps > 1:
        # components of G[S] are never adjacent
        assert d >= 2


@given(graphs(max_n=8), st.data())
def test_check_coloring_rejection_survives_extension(g, data):
    lists = {v: set(range(3)) for v in range(g.n)}
    coloring = {v: data.draw(st.integers(0, 2)) for v in range(g.n)}
    if check_coloring(g, lists, coloring):
        return
    bigger = {v: ls | {3, 4} for v, ls in lists.items()}
    # a conflicting edge stays conflicting whatever the new colors allow
    if any(coloring[a] == coloring[b] for a, b in g.edges):
        assert not check_coloring(g, bigger, coloring)


@given(graphs(max_n=10))
def test_components_match_networkx(g):
    nxg = nx.Graph(list(g.edges))
    nxg.add_nodes_from(range(g.n))
    ours = sorted(components(g.adjacency()))
    theirs = sorted(sorted(c) for c in nx.connected_components(nxg))
    assert ours == theirs
