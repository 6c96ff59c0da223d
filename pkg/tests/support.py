"""Strategies and small graph builders shared by the tests."""

import itertools

from hypothesis import strategies as st

from lcol.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {e for e, keep in zip(pairs, mask) if keep}
    if connected:
        # a random spanning tree keeps every draw connected
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


@st.composite
def list_assignments(draw, g, palette=4, min_size=1, max_size=3):
    out = {}
    for v in range(g.n):
        size = draw(st.integers(min_size, max_size))
        out[v] = draw(st.sets(st.integers(1, palette), min_size=size, max_size=size))
    return out


@st.composite
def degree_lists(draw, g, palette=6):
    """|L(v)| = d(v), isolated vertices get one color."""
    out = {}
    for v in range(g.n):
        size = max(1, g.degree(v))
        out[v] = draw(st.sets(st.integers(1, max(palette, size)), min_size=size, max_size=size))
    return out


def brute_colorable(g, lists) -> bool:
    for combo in itertools.product(*[sorted(lists[v]) for v in range(g.n)]):
        if all(combo[a] != combo[b] for a, b in g.edges):
            return True
    return False


def complete(n):
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def glue(*parts):
    """Disjoint union of edge lists on given vertex ids, as a Graph."""
    edges = set()
    for es in parts:
        edges.update((min(a, b), max(a, b)) for a, b in es)
    n = 1 + max(max(e) for e in edges)
    return Graph.from_edges(n, sorted(edges))


@st.composite
def gallai_trees(draw, max_n=12, certified=None):
    """A connected Gallai tree with degree-sized lists.

    With ``certified`` true the lists come from disjoint per-block color
    sets, so the instance is uncolorable; with false they are random.
    """
    edges: list[tuple[int, int]] = []
    blocks: list[list[int]] = []
    n = 1
    while True:
        kind = draw(st.sampled_from(["K2", "K3", "K4", "C5", "C7"]))
        size = int(kind[1])
        if blocks and n + size - 1 > max_n:
            break
        at = draw(st.integers(0, n - 1))
        verts = [at] + list(range(n, n + size - 1))
        n += size - 1
        if kind.startswith("K"):
            edges += list(itertools.combinations(verts, 2))
        else:
            edges += [(verts[i], verts[(i + 1) % size]) for i in range(size)]
        blocks.append(verts)
        if draw(st.integers(0, 3)) == 0:
            break
    g = Graph.from_edges(n, sorted((min(e), max(e)) for e in edges))
    if certified is None:
        certified = draw(st.booleans())
    if certified:
        lists = {v: set() for v in range(n)}
        fresh = itertools.count(1)
        for verts in blocks:
            want = 2 if len(verts) >= 5 else len(verts) - 1
            colors = {next(fresh) for _ in range(want)}
            for v in verts:
                lists[v] |= colors
        # scramble color names so certificates are not trivially sequential
        perm = draw(st.permutations(range(1, next(fresh))))
        rename = {c: perm[c - 1] for c in range(1, len(perm) + 1)}
        lists = {v: {rename[c] for c in cs} for v, cs in lists.items()}
    else:
        lists = draw(degree_lists(g, palette=5))
    return g, lists

