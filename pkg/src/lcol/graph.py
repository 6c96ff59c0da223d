"""Graphs, list assignments, colorings and the small/big degree split.

Algorithms in this package take either a :class:`Graph` (vertex ids
``0..n-1``) or a plain adjacency mapping ``{v: neighbors}``.  The mapping form
is what the peeling code uses internally, because it keeps original vertex ids
while working on subgraphs.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

Adjacency = dict[int, frozenset[int]]
ListAssignment = dict[int, frozenset[int]]
Coloring = dict[int, int]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise ValueError(f"parallel edge {e}")
            canon.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, frozenset(canon), tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]]) -> tuple[Graph, list[int]]:
        """Relabel an adjacency mapping to ``0..n-1``; also return the old ids."""
        order = sorted(adj)
        index = {v: i for i, v in enumerate(order)}
        edges = {
            (index[u], index[w])
            for u in order
            for w in adj[u]
            if index[u] < index[w]
        }
        return cls.from_edges(len(order), sorted(edges)), order

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def adjacency(self) -> Adjacency:
        return dict(enumerate(self.adj))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)


GraphLike = Graph | Mapping[int, Iterable[int]]


def as_adjacency(g: GraphLike) -> Adjacency:
    if isinstance(g, Graph):
        return g.adjacency()
    return {v: frozenset(ns) for v, ns in g.items()}


def make_lists(lists: Mapping[int, Iterable[int]] | Iterable[Iterable[int]]) -> ListAssignment:
    """Normalise a list assignment; lists must be non-empty sets of ints >= 0."""
    items = lists.items() if isinstance(lists, Mapping) else enumerate(lists)
    out: ListAssignment = {}
    for v, colors in items:
        cs = frozenset(int(c) for c in colors)
        if not cs:
            raise ValueError(f"empty list at vertex {v}")
        if min(cs) < 0:
            raise ValueError(f"negative color at vertex {v}")
        out[v] = cs
    return out


def induced(adj: Mapping[int, Iterable[int]], keep: Iterable[int]) -> Adjacency:
    keep = set(keep)
    return {v: frozenset(w for w in adj[v] if w in keep) for v in adj if v in keep}


def components(adj: Mapping[int, Iterable[int]], within: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components (of the induced subgraph on ``within``), sorted."""
    allowed = set(adj) if within is None else set(within)
    seen: set[int] = set()
    out = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(adj: Mapping[int, Iterable[int]]) -> bool:
    return len(components(adj)) <= 1


def bfs_distances(adj: Mapping[int, Iterable[int]], sources: Iterable[int]) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def validate_f_assignment(g: GraphLike, lists: Mapping[int, Iterable[int]], k: int) -> bool:
    """True iff ``|L(v)| == min(d(v), k)`` for every vertex."""
    adj = as_adjacency(g)
    if set(lists) != set(adj):
        return False
    return all(len(set(lists[v])) == min(len(adj[v]), k) for v in adj)


def small_big_split(g: GraphLike, k: int) -> tuple[frozenset[int], frozenset[int]]:
    """Return ``(S_k, B_k)``: vertices of degree ``< k`` and ``>= k``."""
    adj = as_adjacency(g)
    small = frozenset(v for v in adj if len(adj[v]) < k)
    return small, frozenset(adj) - small


def component_distance(g: GraphLike, subset: Iterable[int]) -> int:
    """Minimum distance in ``g`` between distinct components of ``g[subset]``.

    Returns 0 when the induced subgraph has at most one component.  Distances
    are measured in the whole graph, so paths may leave ``subset``.
    """
    adj = as_adjacency(g)
    comps = components(adj, subset)
    if len(comps) <= 1:
        return 0
    owner = {v: i for i, comp in enumerate(comps) for v in comp}
    best = None
    for i, comp in enumerate(comps[:-1]):
        dist = {v: 0 for v in comp}
        queue = deque(comp)
        while queue:
            u = queue.popleft()
            if best is not None and dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w in dist:
                    continue
                dist[w] = dist[u] + 1
                if owner.get(w, i) != i:
                    best = dist[w]
                    queue.clear()
                    break
                queue.append(w)
    # S-components in different pieces of g are infinitely far apart; the
    # vertex count stands in for infinity
    return len(adj) if best is None else best


def check_coloring(g: GraphLike, lists: Mapping[int, Iterable[int]], coloring: Mapping[int, int]) -> bool:
    """True iff ``coloring`` is total, proper, and respects the lists."""
    adj = as_adjacency(g)
    for v in adj:
        if v not in coloring or coloring[v] not in lists[v]:
            return False
    for v, ns in adj.items():
        cv = coloring[v]
        for w in ns:
            if w > v and coloring[w] == cv:
                return False
    return True


def conflicts(adj: Mapping[int, Iterable[int]], coloring: Mapping[int, int]) -> list[tuple[int, int]]:
    """Edges with both ends colored the same (partial colorings allowed)."""
    bad = []
    for v, ns in adj.items():
        if v not in coloring:
            continue
        for w in ns:
            if w > v and w in coloring and coloring[w] == coloring[v]:
                bad.append((v, w))
    return bad
