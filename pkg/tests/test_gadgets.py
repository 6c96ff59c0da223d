import itertools

import networkx as nx
import pytest

from lcol.errors import ColorClash, PreconditionError
from lcol.gadgets import (
    G5_COPIES,
    H_FACES,
    far_big_vertex,
    g5_copy_subinstance,
    gen_complete_minus_clique,
    gen_fig1,
    gen_G_k5,
    gen_H_k5,
    gen_one_sum,
    gen_triangle_augmented,
)
from lcol.graph import Graph, component_distance, small_big_split, validate_f_assignment
from lcol.solver import Verdict, solve_exact
from lcol.structure import block_decomposition, has_k5_minor, vertex_connectivity

from support import complete


def octahedron():
    h = nx.octahedral_graph()
    return Graph.from_edges(6, h.edges())


def four_lists(n):
    return {v: {1, 2, 3, 4} for v in range(n)}


# ------------------------------------------------------------ 2-connected family


@pytest.mark.parametrize("k,n,m", [(3, 8, 16), (4, 14, 31), (5, 22, 51)])
def test_fig1_counts(k, n, m):
    inst = gen_fig1(k)
    assert (inst.graph.n, inst.graph.m) == (n, m)
    assert validate_f_assignment(inst.graph, inst.lists, k)


def test_fig1_k4_metadata():
    inst = gen_fig1(4)
    c = inst.meta.computed
    assert (c["kappa"], c["delta"], c["d_sk"]) == (2, 3, 2)
    assert not inst.meta.notes
    assert nx.check_planarity(nx.Graph(list(inst.graph.edges)))[0]


def test_fig1_k3_flags_empty_small_side():
    inst = gen_fig1(3)
    assert inst.meta.computed["d_sk"] == 0
    assert any("d_sk=2 but computed 0" in n for n in inst.meta.notes)
    assert any("S_3 is empty" in n for n in inst.meta.notes)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_fig1_every_xy_coloring_kills_one_page(k):
    inst = gen_fig1(k)
    g, lists = inst.graph, inst.lists
    s = inst.meta.labels["s"]
    for cx, cy in itertools.permutations(range(1, k + 1), 2):
        dead = []
        for i in range(s):
            u, v = 2 + i, 2 + s + i
            left_u = lists[u] - {cx, cy}
            left_v = lists[v] - {cx, cy}
            if left_u == left_v == {0}:
                dead.append(i)
                assert v in g.adj[u]
        assert len(dead) == 1


def test_fig1_rejects_small_k():
    with pytest.raises(PreconditionError):
        gen_fig1(2)


# ------------------------------------------------------------ 3-connected family


def test_complete_minus_clique_k3_is_k4():
    inst = gen_complete_minus_clique(3)
    assert inst.graph.m == 6 and inst.graph.n == 4
    assert solve_exact(inst.graph, inst.lists).verdict is Verdict.UNCOLORABLE


def test_complete_minus_clique_k4():
    inst = gen_complete_minus_clique(4)
    assert (inst.graph.n, inst.graph.m) == (7, 15)
    assert solve_exact(inst.graph, inst.lists).verdict is Verdict.UNCOLORABLE
    assert inst.meta.computed["kappa"] == 3
    assert vertex_connectivity(inst.graph) == 3
    assert not has_k5_minor(inst.graph)[0]
    assert validate_f_assignment(inst.graph, inst.lists, 4)


@pytest.mark.parametrize("k", range(4, 9))
def test_complete_minus_clique_uncolorable(k):
    inst = gen_complete_minus_clique(k)
    assert inst.meta.computed["d_sk"] == 2
    assert solve_exact(inst.graph, inst.lists).verdict is Verdict.UNCOLORABLE


# ------------------------------------------------------------ triangle augmentation


def test_triangle_augmented_k5_base_k7():
    inst = gen_triangle_augmented(complete(5), four_lists(5), 7)
    assert inst.graph.n == 20
    assert validate_f_assignment(inst.graph, inst.lists, 7)
    assert solve_exact(inst.graph, inst.lists).verdict is Verdict.UNCOLORABLE


def test_triangle_augmented_pendant_variant():
    inst = gen_triangle_augmented(complete(5), four_lists(5), 5)
    assert inst.graph.n == 10
    assert solve_exact(inst.graph, inst.lists).verdict is Verdict.UNCOLORABLE


@pytest.mark.parametrize("k", [5, 6, 7])
def test_triangle_augmented_keeps_colorability(k):
    base = octahedron()
    assert solve_exact(base, four_lists(6)).colorable
    inst = gen_triangle_augmented(base, four_lists(6), k)
    assert solve_exact(inst.graph, inst.lists).colorable
    assert validate_f_assignment(inst.graph, inst.lists, k)
    assert inst.meta.computed["d_sk"] == 3
    assert inst.meta.computed["kappa"] == 1


def test_triangle_augmented_preconditions():
    with pytest.raises(PreconditionError):
        gen_triangle_augmented(complete(5), four_lists(5), 8)
    with pytest.raises(PreconditionError):
        gen_triangle_augmented(complete(4), four_lists(4), 7)
    with pytest.raises(PreconditionError):
        gen_triangle_augmented(complete(5), {v: {1, 2, 3} for v in range(5)}, 7)


# ------------------------------------------------------------ k = 5 block


def test_h_counts_and_degrees():
    inst = gen_H_k5(7, 12)
    g = inst.graph
    assert (g.n, g.m) == (30, 83)
    assert g.degree(0) == 10
    degs = sorted(g.degree(v) for v in range(6, 30))
    assert degs.count(3) == 6 and degs.count(5) == 18


def test_h_uncolorable():
    inst = gen_H_k5(7, 12)
    assert solve_exact(inst.graph, inst.lists).verdict is Verdict.UNCOLORABLE


def test_h_color_clash():
    with pytest.raises(ColorClash):
        gen_H_k5(3, 12)
    with pytest.raises(ColorClash):
        gen_H_k5(9, 9)


def test_h_every_frame_coloring_meets_a_prescribed_face():
    a, b = 7, 12
    inst = gen_H_k5(a, b)
    g, lists = inst.graph, inst.lists
    lab = inst.meta.labels
    faces = [(6 + 4 * i, 7 + 4 * i, 8 + 4 * i, 9 + 4 * i) for i in range(6)]
    for us in itertools.product((1, 2, 3), repeat=4):
        if any(us[i] == us[i + 1] for i in range(3)):
            continue
        color = {lab["x"]: a, lab["y"]: b, **{lab[f"u{i + 1}"]: us[i] for i in range(4)}}
        hits = []
        for (corners, pres), (w1, w2, w3, z) in zip(H_FACES, faces):
            want = tuple(a if c == "a" else b if c == "b" else c for c in pres)
            if tuple(color[lab[c]] for c in corners) != want:
                continue
            hits.append(corners)
            # the interior cannot be completed
            for combo in itertools.product(*(sorted(lists[v]) for v in (w1, w2, w3, z))):
                cw = dict(zip((w1, w2, w3, z), combo))
                ok = all(cw[v] != cw[w] for v, w in itertools.combinations((w1, w2, w3, z), 2))
                ok = ok and all(cw[v] != color[c] for v in (w1, w2, w3) for c in g.adj[v] if c in color)
                assert not ok
        assert hits, us


# ------------------------------------------------------------ k = 5 composite


@pytest.fixture(scope="module")
def g5():
    return gen_G_k5()


def test_g5_metadata(g5):
    c = g5.meta.computed
    assert (c["n"], c["m"], c["delta"], c["d_sk"], c["f_assignment"]) == (702, 2099, 3, 4, 1)
    assert "kappa" not in c
    assert set(g5.meta.trusted) >= {"kappa", "k5_minor_free"}
    assert g5.lists[0] == frozenset(range(7, 12)) and g5.lists[1] == frozenset(range(12, 17))


def test_g5_small_side_is_the_z_vertices(g5):
    small, _ = small_big_split(g5.graph, 5)
    assert len(small) == 6 * G5_COPIES
    assert all(g5.graph.degree(v) == 3 for v in small)
    assert component_distance(g5.graph, small) == 4


def test_g5_every_copy_blocks_its_pair(g5):
    seen = set()
    for c in range(G5_COPIES):
        adj, lists = g5_copy_subinstance(g5, c)
        seen.add((min(lists[0]), min(lists[1])))
        assert solve_exact(adj, lists).verdict is Verdict.UNCOLORABLE
    # every (color of x*, color of y*) pair is covered by some copy
    assert seen == set(itertools.product(range(7, 12), range(12, 17)))


# ------------------------------------------------------------ 1-sums


def test_one_sum_of_fig1():
    inst = gen_fig1(4)
    v = far_big_vertex(inst)
    out = gen_one_sum(inst, v)
    g = out.graph
    assert g.n == 2 * inst.graph.n - 1
    assert block_decomposition(g).cut_vertices == {v}
    assert out.meta.computed["kappa"] == 1
    assert out.meta.provenance == "fig1+1sum"
    assert validate_f_assignment(g, out.lists, 4)
    assert solve_exact(g, out.lists).verdict is Verdict.UNCOLORABLE


def test_one_sum_needs_big_vertex():
    inst = gen_fig1(4)
    small, _ = small_big_split(inst.graph, 4)
    with pytest.raises(PreconditionError):
        gen_one_sum(inst, min(small))


def test_one_sum_of_g5_keeps_distance(g5):
    v = far_big_vertex(g5)
    out = gen_one_sum(g5, v)
    assert out.meta.computed["d_sk"] == 4
    assert out.meta.computed["kappa"] == 1
    assert out.meta.computed["f_assignment"] == 1


# ------------------------------------------------------------ determinism


@pytest.mark.parametrize(
    "make",
    [
        lambda: gen_fig1(5),
        lambda: gen_complete_minus_clique(5),
        lambda: gen_H_k5(8, 13),
        lambda: gen_triangle_augmented(octahedron(), four_lists(6), 6),
    ],
)
def test_generators_are_deterministic(make):
    a, b = make(), make()
    assert a.graph.sorted_edges() == b.graph.sorted_edges()
    assert a.lists == b.lists
    assert a.meta.as_lines() == b.meta.as_lines()
