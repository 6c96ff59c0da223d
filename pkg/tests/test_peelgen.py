import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcol.errors import InfeasibleOptions, PreconditionError
from lcol.graph import component_distance, components, small_big_split, validate_f_assignment
from lcol.peel import peel_color_k8
from lcol.peelgen import SHAPES, PeelOptions, gen_peel_instance, shape
from lcol.structure import block_decomposition, is_gallai_tree, small_vertex_cut, vertex_connectivity


def _planar(g):
    h = nx.Graph(g.sorted_edges())
    h.add_nodes_from(range(g.n))
    return nx.check_planarity(h)[0]


def _clusters(inst):
    g, k = inst.graph, inst.meta.k
    small, _ = small_big_split(g, k)
    return small, components(g.adjacency(), small)


def _assert_well_formed(inst, k, spacing):
    g = inst.graph
    assert _planar(g)
    assert inst.meta.computed["planar"] == 1
    assert validate_f_assignment(g, inst.lists, k)
    small, clusters = _clusters(inst)
    d = component_distance(g, small)
    assert d == 0 or d >= spacing
    assert clusters or not small


# ------------------------------------------------------------ shapes


@pytest.mark.parametrize("name", sorted(SHAPES))
def test_table_shapes_are_connected_gallai_trees(name):
    n, edges, walk = shape(name)
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    assert len(components(adj)) == 1
    # the diamond is the one deliberate non-Gallai cluster
    assert is_gallai_tree(adj)[0] == (name != "diamond")
    assert set(walk) <= set(range(n))


@pytest.mark.parametrize("name,n,m", [("C7", 7, 7), ("C9+K1", 10, 10), ("C5+K3", 7, 8)])
def test_cycle_shape_names(name, n, m):
    size, edges, walk = shape(name)
    assert (size, len(edges)) == (n, m)
    assert len(set(walk)) == int(name[1:].split("+")[0])


@pytest.mark.parametrize("bad", ["C2", "K9", "cycle", "C5+K2"])
def test_unknown_shapes_rejected(bad):
    with pytest.raises(ValueError):
        shape(bad)


def test_options_validation():
    with pytest.raises(ValueError):
        PeelOptions(shapes=("nope",))
    with pytest.raises(ValueError):
        PeelOptions(template="7c")
    with pytest.raises(ValueError):
        PeelOptions(kappa=4)
    with pytest.raises(ValueError):
        PeelOptions(kappa=3, max_kappa=2)


# ------------------------------------------------------------ preconditions


def test_generator_preconditions():
    with pytest.raises(PreconditionError):
        gen_peel_instance(0, 4)
    with pytest.raises(PreconditionError):
        gen_peel_instance(0, 8, spacing=1)
    with pytest.raises(InfeasibleOptions):
        gen_peel_instance(0, 7, spacing=6)


# ------------------------------------------------------------ documented instances


def test_k6_singletons_at_distance_three():
    inst = gen_peel_instance(1, 6, spacing=3)
    small, clusters = _clusters(inst)
    assert clusters and all(len(c) == 1 for c in clusters)
    adj = inst.graph.adjacency()
    # degree <= 5 vertices pairwise at distance >= 3
    for s in small:
        for w in adj[s]:
            assert not ((adj[w] | {w}) & small - {s})
    _assert_well_formed(inst, 6, 3)


def test_k6_spacing_five():
    inst = gen_peel_instance(2, 6, spacing=5)
    small, _ = _clusters(inst)
    assert component_distance(inst.graph, small) >= 5
    _assert_well_formed(inst, 6, 5)


def test_k8_with_nested_k4_reaches_case_seven():
    inst = gen_peel_instance(3, 8, spacing=3, options=PeelOptions(shapes=("K4.K4",)))
    assert any(name == "K4.K4" for name, _ in inst.parts)
    _, trace = peel_color_k8(inst.graph, inst.lists, 8)
    assert "7" in trace.case_labels()


# ------------------------------------------------------------ properties


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from([7, 8, 9]), st.sampled_from([3, 4]))
def test_generated_instances_are_well_formed(seed, k, spacing):
    inst = gen_peel_instance(seed, k, spacing)
    _assert_well_formed(inst, k, spacing)
    assert inst.meta.computed["f_assignment"] == 1
    assert inst.meta.labels["seed"] == seed


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.sampled_from([6, 8]))
def test_generator_is_deterministic(seed, k):
    a = gen_peel_instance(seed, k)
    b = gen_peel_instance(seed, k)
    assert a.graph.sorted_edges() == b.graph.sorted_edges()
    assert a.lists == b.lists
    assert a.meta.as_lines() == b.meta.as_lines()


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_requested_shapes_are_placed(seed):
    inst = gen_peel_instance(seed, 8, options=PeelOptions(shapes=("C7+K3", "K4.C5")))
    names = [name for name, _ in inst.parts]
    assert "C7+K3" in names and "K4.C5" in names
    g = inst.graph
    for name, verts in inst.parts:
        size, edges, _ = shape(name)
        assert len(verts) == size
        assert all(g.degree(v) < 8 for v in verts)


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_kappa_lower_bound(seed):
    inst = gen_peel_instance(seed, 7, options=PeelOptions(kappa=3))
    assert small_vertex_cut(inst.graph) is None
    if inst.graph.n <= 100:
        assert vertex_connectivity(inst.graph) >= 3


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_kappa_upper_bound_two(seed):
    inst = gen_peel_instance(seed, 8, options=PeelOptions(max_kappa=2))
    cut = small_vertex_cut(inst.graph)
    assert cut is not None
    assert _planar(inst.graph)


@settings(max_examples=5)
@given(st.integers(0, 10**6))
def test_k6_two_sum_has_low_connectivity(seed):
    inst = gen_peel_instance(seed, 6, spacing=5, options=PeelOptions(max_kappa=2))
    assert small_vertex_cut(inst.graph) is not None
    assert validate_f_assignment(inst.graph, inst.lists, 6)


@pytest.mark.parametrize("spacing", [4, 5])
def test_ringed_cells_hit_spacing_exactly(spacing):
    inst = gen_peel_instance(11, 8, spacing)
    small, _ = _clusters(inst)
    assert component_distance(inst.graph, small) == spacing
    _assert_well_formed(inst, 8, spacing)


@pytest.mark.parametrize("template", ["7a", "7b"])
def test_templates_produce_k4_end_blocks(template):
    inst = gen_peel_instance(5, 8, options=PeelOptions(template=template))
    g = inst.graph
    small, clusters = _clusters(inst)
    kinds = []
    for c in clusters:
        sub = {v: g.adj[v] & set(c) for v in c}
        dec = block_decomposition(sub)
        kinds.append(sorted(len(dec.blocks[i]) for i in dec.end_blocks()))
    assert any(len(k) >= 2 and all(size == 4 for size in k) for k in kinds)
