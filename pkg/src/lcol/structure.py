"""Block decomposition, Gallai trees, vertex connectivity and K5 minors."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import BudgetExceeded
from .graph import Adjacency, GraphLike, as_adjacency, components, induced


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    # incidence of the block-cut tree: block index -> cut vertices in it
    block_cuts: tuple[frozenset[int], ...]

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def tree_edges(self) -> list[tuple[int, int]]:
        """Edges ``(block index, cut vertex)`` of the block-cut tree."""
        return [(i, c) for i, cs in enumerate(self.block_cuts) for c in sorted(cs)]

    def end_blocks(self) -> list[int]:
        return [i for i, cs in enumerate(self.block_cuts) if len(cs) <= 1]


def block_decomposition(g: GraphLike) -> BlockDecomposition:
    """Biconnected components by the iterative lowpoint algorithm.

    Isolated vertices form single-vertex blocks.  Blocks are sorted by their
    smallest vertex, then by size, so the output is deterministic.
    """
    adj = as_adjacency(g)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[frozenset[int]] = []
    counter = 0
    for root in sorted(adj):
        if root in index:
            continue
        if not adj[root]:
            index[root] = low[root] = counter
            counter += 1
            blocks.append(frozenset([root]))
            continue
        index[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, None, iter(sorted(adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if index[w] < index[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], index[w])
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= index[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, u):
                        break
                blocks.append(frozenset(comp))
    blocks.sort(key=lambda b: (min(b), len(b), sorted(b)))
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c > 1)
    return BlockDecomposition(
        tuple(blocks), cuts, tuple(frozenset(b & cuts) for b in blocks)
    )


def block_kind(adj: Mapping[int, Iterable[int]], block: Iterable[int]) -> str:
    """Classify an induced block: ``K<n>``, ``odd_cycle``, or ``other``."""
    block = set(block)
    n = len(block)
    degs = [len(set(adj[v]) & block) for v in block]
    m = sum(degs) // 2
    if m == n * (n - 1) // 2:
        return f"K{n}"
    if n % 2 == 1 and m == n and all(d == 2 for d in degs):
        return "odd_cycle"
    return "other"


def is_gallai_block(adj: Mapping[int, Iterable[int]], block: Iterable[int]) -> bool:
    return block_kind(adj, block) != "other"


def is_gallai_tree(g: GraphLike) -> tuple[bool, frozenset[int] | None]:
    """Every block complete or an odd cycle?  Returns ``(ok, offending block)``."""
    adj = as_adjacency(g)
    for block in block_decomposition(adj).blocks:
        if not is_gallai_block(adj, block):
            return False, block
    return True, None


# ---------------------------------------------------------------- connectivity


class _SplitNetwork:
    """Vertex-split unit-capacity digraph, built once and reused per pair.

    Vertex ``v`` becomes arc ``in(v) -> out(v)``; each edge ``vw`` becomes
    ``out(v) -> in(w)`` and ``out(w) -> in(v)``.  Arcs are stored with their
    reverse arc at index ``a ^ 1``.
    """

    def __init__(self, adj: Adjacency):
        self.index = {v: i for i, v in enumerate(sorted(adj))}
        size = 2 * len(self.index)
        self.out: list[list[int]] = [[] for _ in range(size)]
        self.head: list[int] = []
        self.base: list[int] = []
        self.inner = []
        for i in range(len(self.index)):
            self.inner.append(len(self.head))
            self._arc(2 * i, 2 * i + 1, 1)
        for v, i in self.index.items():
            for w in adj[v]:
                self._arc(2 * i + 1, 2 * self.index[w], 1)

    def _arc(self, a, b, cap):
        self.out[a].append(len(self.head))
        self.head.append(b)
        self.base.append(cap)
        self.out[b].append(len(self.head))
        self.head.append(a)
        self.base.append(0)

    def max_paths(self, s: int, t: int, cap: int | None) -> int:
        si, ti = self.index[s], self.index[t]
        res = list(self.base)
        big = len(self.index)
        # s and t themselves are not capacity-limited
        res[self.inner[si]] = big
        res[self.inner[ti]] = big
        source, sink = 2 * si + 1, 2 * ti
        flow = 0
        while cap is None or flow < cap:
            via = {source: -1}
            queue = deque([source])
            while queue and sink not in via:
                a = queue.popleft()
                for arc in self.out[a]:
                    b = self.head[arc]
                    if res[arc] > 0 and b not in via:
                        via[b] = arc
                        queue.append(b)
            if sink not in via:
                break
            b = sink
            while via[b] != -1:
                arc = via[b]
                res[arc] -= 1
                res[arc ^ 1] += 1
                b = self.head[arc ^ 1]
            flow += 1
        return flow


def local_vertex_connectivity(adj: Adjacency, s: int, t: int, cap: int | None = None) -> int:
    """Number of internally disjoint s-t paths (s, t non-adjacent).

    Unit-capacity augmenting paths on the vertex-split digraph; stops once
    ``cap`` paths are found.
    """
    return _SplitNetwork(adj).max_paths(s, t, cap)


def vertex_connectivity(g: GraphLike) -> int:
    """Size of a smallest vertex cut; ``n-1`` for complete graphs."""
    adj = as_adjacency(g)
    n = len(adj)
    if n <= 1:
        return 0
    if len(components(adj)) > 1:
        return 0
    order = sorted(adj)
    best = min(len(adj[v]) for v in order)
    if all(len(adj[v]) == n - 1 for v in order):
        return n - 1
    net = _SplitNetwork(adj)
    # some vertex among the first best+1 avoids a minimum cut, and the far
    # side of that cut holds only later vertices
    i = 0
    while i <= best and i < n:
        u = order[i]
        for w in order[i + 1:]:
            if w in adj[u]:
                continue
            best = min(best, net.max_paths(u, w, cap=best))
        i += 1
    return best


def small_vertex_cut(g: GraphLike) -> tuple[int, ...] | None:
    """A vertex cut of size at most 2, or ``None`` if the graph is 3-connected.

    Graphs on at most 3 vertices count as having a cut unless complete
    (``K_4`` has none); a disconnected graph returns the empty cut.
    """
    adj = as_adjacency(g)
    if len(components(adj)) > 1:
        return ()
    if len(adj) == 4 and all(len(ns) == 3 for ns in adj.values()):
        return None
    if len(adj) <= 3:
        # no separating set exists; kappa = n - 1 <= 2 all the same
        return tuple(sorted(adj))[:2] if len(adj) > 2 else ()
    cuts = block_decomposition(adj).cut_vertices
    if cuts:
        return (min(cuts),)
    return _two_cut(adj)


# ------------------------------------------------------------------- K5 minor


@dataclass
class _MinorSearch:
    """Branch on an edge: contract it, or forbid contracting it forever.

    Every K5 model either has the edge inside a branch set (then some
    spanning tree of that set uses it) or never needs to contract it, so
    the two branches are exhaustive.  Once every edge is frozen a model
    exists only as a K5 subgraph.
    """

    max_nodes: int
    nodes: int = 0

    def __post_init__(self):
        self.memo: set[tuple[frozenset, frozenset]] = set()

    def run(self, adj, bags, frozen: frozenset):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded("K5-minor search exceeded its node budget", self.nodes)
        adj, bags, frozen = _reduce(adj, bags, frozen)
        if len(adj) < 5:
            return None
        key = frozenset(_edge(u, w) for u in adj for w in adj[u] if u < w)
        state = (key, frozen)
        if state in self.memo:
            return None
        clique = _find_k5(adj)
        if clique is not None:
            return [bags[v] for v in clique]
        m = len(key)
        n = len(adj)
        # planar graphs have no K5 minor; denser than 3n-6 cannot be planar
        if m < 10 or (m <= 3 * n - 6 and _planar(adj)):
            self.memo.add(state)
            return None
        pieces = _biconnected_pieces(adj)
        if not pieces or len(pieces[0]) < len(adj):
            for piece in pieces:
                sub = {v: adj[v] & piece for v in piece}
                found = self.run(sub, {v: bags[v] for v in piece}, frozen)
                if found is not None:
                    return found
            self.memo.add(state)
            return None
        edge = _pick_edge(adj, frozen)
        if edge is None:
            self.memo.add(state)
            return None
        u, w = edge
        found = self.run(*_contract(adj, bags, frozen, u, w))
        if found is None:
            found = self.run(adj, bags, frozen | {_edge(u, w)})
        if found is None:
            self.memo.add(state)
        return found


def _edge(u, w):
    return (u, w) if u < w else (w, u)


def _reduce(adj, bags, frozen):
    """Shrink the graph without losing any K5 model that respects ``frozen``.

    Vertices of degree <= 1 go.  A degree-2 vertex is merged into a neighbour
    along an unfrozen edge, or deleted when both its edges are frozen.  A
    vertex with all edges frozen and degree < 4 can only be unused.
    """
    adj = {v: set(ns) for v, ns in adj.items()}
    bags = dict(bags)
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v not in adj:
                continue
            d = len(adj[v])
            free = sorted(w for w in adj[v] if _edge(v, w) not in frozen)
            if d <= 1 or (d < 4 and not free):
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
                changed = True
            elif d == 2:
                adj, bags, frozen = _contract(adj, bags, frozen, free[0], v)
                changed = True
    frozen = frozenset(e for e in frozen if e[0] in adj and e[1] in adj[e[0]])
    return adj, bags, frozen


def _contract(adj, bags, frozen, u, w):
    adj = {v: set(ns) for v, ns in adj.items()}
    bags = dict(bags)
    keep, gone = (u, w) if u < w else (w, u)
    new_frozen = set(e for e in frozen if gone not in e)
    for x in adj[gone]:
        if x == keep:
            continue
        # a merged edge may be contracted if either original could be
        if _edge(x, gone) in frozen and (x not in adj[keep] or _edge(x, keep) in frozen):
            new_frozen.add(_edge(x, keep))
        else:
            new_frozen.discard(_edge(x, keep))
        adj[x].discard(gone)
        adj[x].add(keep)
        adj[keep].add(x)
    adj[keep].discard(gone)
    del adj[gone]
    bags[keep] = bags[keep] | bags.pop(gone)
    return adj, bags, frozenset(new_frozen)


def _planar(adj) -> bool:
    g = nx.Graph()
    g.add_nodes_from(adj)
    g.add_edges_from((u, w) for u in adj for w in adj[u] if u < w)
    return nx.check_planarity(g)[0]


def _find_k5(adj):
    cand = sorted(v for v in adj if len(adj[v]) >= 4)
    for a in cand:
        higher = [x for x in adj[a] if x > a and len(adj[x]) >= 4]
        for quad in combinations(sorted(higher), 4):
            if all(y in adj[x] for x, y in combinations(quad, 2)):
                return (a, *quad)
    return None


def _pick_edge(adj, frozen):
    # unfrozen edge whose endpoints have the most combined degree
    best = None
    for u in adj:
        for w in adj[u]:
            if u < w and (u, w) not in frozen:
                score = (len(adj[u]) + len(adj[w]), -u, -w)
                if best is None or score > best[0]:
                    best = (score, u, w)
    return None if best is None else (best[1], best[2])


def _biconnected_pieces(adj):
    dec = block_decomposition(adj)
    return sorted((b for b in dec.blocks if len(b) >= 5), key=len, reverse=True)


def has_k5_minor(g: GraphLike, max_nodes: int = 200_000) -> tuple[bool, list[frozenset[int]] | None]:
    """Exact K5-minor test.

    The graph is cut into blocks and then along 2-vertex cuts (each piece
    gets the cut pair as a virtual edge); pieces that are not planar go to a
    contract/freeze branching search.  Returns ``(found, branch_sets)``.
    Raises :class:`BudgetExceeded` when the search visits more than
    ``max_nodes`` states.
    """
    adj = as_adjacency(g)
    search = _MinorSearch(max_nodes)
    found = _split_search({v: set(ns) for v, ns in adj.items()}, search)
    if found is None:
        return False, None
    return True, sorted(found, key=min)


def _split_search(adj: dict[int, set[int]], search: _MinorSearch):
    adj = _drop_simplicial(adj)
    m = sum(len(ns) for ns in adj.values()) // 2
    n = len(adj)
    if n < 5 or m < 10 or (m <= 3 * n - 6 and _planar(adj)):
        return None
    blocks = [b for b in block_decomposition(adj).blocks if len(b) >= 5]
    if len(blocks) != 1 or len(blocks[0]) < n:
        for b in blocks:
            found = _split_search({v: adj[v] & b for v in b}, search)
            if found is not None:
                return found
        return None
    cut = _two_cut(adj)
    if cut is None:
        return search.run(adj, {v: frozenset([v]) for v in adj}, frozenset())
    a, b = cut
    sides = components(adj, set(adj) - {a, b})
    for i, side in enumerate(sides):
        keep = set(side) | {a, b}
        piece = {v: adj[v] & keep for v in keep}
        piece[a] = piece[a] | {b}
        piece[b] = piece[b] | {a}
        found = _split_search(piece, search)
        if found is None:
            continue
        if b in adj[a]:
            return found
        # route the virtual edge through another side, inside a's branch set
        other = set(sides[1 if i == 0 else 0])
        path = _path_through(adj, a, b, other)
        return [bag | path if a in bag else bag for bag in found]
    return None


def _drop_simplicial(adj):
    # a vertex of degree <= 3 with a clique neighbourhood splits off a K4 summand
    adj = {v: set(ns) for v, ns in adj.items()}
    todo = sorted(adj)
    while todo:
        v = todo.pop()
        if v not in adj or len(adj[v]) > 3:
            continue
        ns = adj[v]
        if all(y in adj[x] for x, y in combinations(ns, 2)):
            for w in ns:
                adj[w].discard(v)
                todo.append(w)
            del adj[v]
    return adj


def _articulation_points(nbrs: dict[int, list[int]], skip: int) -> list[int]:
    """Cut vertices of the connected graph ``nbrs - skip`` (iterative lowpoint)."""
    start = next(v for v in nbrs if v != skip)
    index = {start: 0}
    low = {start: 0}
    out = set()
    root_children = 0
    stack = [(start, -1, iter(nbrs[start]))]
    while stack:
        u, parent, it = stack[-1]
        for w in it:
            if w == skip or w == parent:
                continue
            if w in index:
                if index[w] < low[u]:
                    low[u] = index[w]
                continue
            index[w] = low[w] = len(index)
            stack.append((w, u, iter(nbrs[w])))
            break
        else:
            stack.pop()
            if parent == -1:
                continue
            if low[u] < low[parent]:
                low[parent] = low[u]
            if parent == start:
                root_children += 1
            elif low[u] >= index[parent]:
                out.add(parent)
    if root_children > 1:
        out.add(start)
    return sorted(out)


def _two_cut(adj):
    # the graph is 2-connected here, so removing one vertex keeps it connected
    nbrs = {v: sorted(ns) for v, ns in adj.items()}
    for a in sorted(adj):
        cuts = _articulation_points(nbrs, a)
        if cuts:
            return a, cuts[0]
    return None


def _path_through(adj, a, b, inside: set[int]) -> frozenset[int]:
    """Interior vertices of a shortest ``a``-``b`` path with interior in ``inside``."""
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w == b and u != a:
                out = set()
                while u != a:
                    out.add(u)
                    u = prev[u]
                return frozenset(out)
            if w in inside and w not in prev:
                prev[w] = u
                queue.append(w)
    raise AssertionError("2-connected graph lost a path between cut vertices")


def is_k5_model(g: GraphLike, bags: list[frozenset[int]]) -> bool:
    """Check a claimed K5 minor model: disjoint, connected, pairwise adjacent."""
    adj = as_adjacency(g)
    if len(bags) != 5:
        return False
    seen: set[int] = set()
    for b in bags:
        if not b or seen & b or not b <= set(adj):
            return False
        seen |= b
        if len(components(induced(adj, b))) != 1:
            return False
    for a, b in combinations(bags, 2):
        if not any(adj[v] & b for v in a):
            return False
    return True


# ----------------------------------------------------------------- end blocks


@dataclass(frozen=True)
class EndBlockClass:
    label: str  # K1, K2, K3, K4, odd_cycle, other
    block: frozenset[int]
    attachment: int | None


def end_block_label(adj: Mapping[int, Iterable[int]], block: Iterable[int]) -> str:
    kind = block_kind(adj, block)
    if kind in ("K1", "K2", "K3", "K4", "odd_cycle"):
        return kind
    return "other"


def classify_end_blocks(g: GraphLike) -> list[EndBlockClass]:
    """One entry per leaf of the block-cut tree, in block order."""
    adj = as_adjacency(g)
    dec = block_decomposition(adj)
    out = []
    for i in dec.end_blocks():
        block = dec.blocks[i]
        cuts = dec.block_cuts[i]
        out.append(EndBlockClass(end_block_label(adj, block), block, min(cuts) if cuts else None))
    return out
