"""Exact list coloring and the degree-choosability machinery.

``solve_exact`` is the oracle used to check every colorability claim.
``color_degree_choosable`` colors a connected graph whose lists are at least
as long as the degrees, unless the Gallai-tree obstruction applies, and
``uncolorability_certificate`` finds that obstruction.
"""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from .errors import BudgetExceeded, PreconditionError
from .graph import Adjacency, Coloring, GraphLike, as_adjacency, check_coloring, components, induced
from .structure import block_decomposition, block_kind

DEFAULT_MAX_NODES = 10**8
# end blocks up to this size are solved for every color of their cut vertex
PRUNE_BLOCK_LIMIT = 40


def default_max_nodes() -> int:
    return int(os.environ.get("LCOL_MAX_NODES", DEFAULT_MAX_NODES))


@dataclass(frozen=True)
class SolveBudget:
    max_nodes: int = field(default_factory=default_max_nodes)
    # the search has no random choices; the seed is recorded for reports
    seed: int = 0

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be >= 1")


class Verdict(str, Enum):
    COLORABLE = "colorable"
    UNCOLORABLE = "uncolorable"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class GallaiCertificate:
    """Per-block color sets proving a degree-list Gallai tree uncolorable."""

    block_lists: dict[frozenset[int], frozenset[int]]

    def check(self, g: GraphLike, lists: Mapping[int, Iterable[int]]) -> bool:
        adj = as_adjacency(g)
        blocks = block_decomposition(adj).blocks
        if set(blocks) != set(self.block_lists):
            return False
        for b in blocks:
            kind = block_kind(adj, b)
            want = 2 if kind == "odd_cycle" else len(b) - 1
            if kind == "other" or len(self.block_lists[b]) != want:
                return False
        for v in adj:
            mine = [self.block_lists[b] for b in blocks if v in b]
            union = frozenset().union(*mine)
            if union != frozenset(lists[v]) or sum(map(len, mine)) != len(union):
                return False
        return True


@dataclass(frozen=True)
class SolveResult:
    verdict: Verdict
    coloring: Coloring | None = None
    certificate: GallaiCertificate | None = None
    nodes: int = 0

    @property
    def colorable(self) -> bool:
        return self.verdict is Verdict.COLORABLE


# --------------------------------------------------------------- exact search


class _Search:
    """Backtracking with forward checking, unit propagation and splitting.

    Whenever the uncolored vertices fall apart into several components, each
    is solved on its own; the first one that fails refutes the whole branch.
    """

    def __init__(self, adj: Adjacency, max_nodes: int):
        self.adj = adj
        self.max_nodes = max_nodes
        self.nodes = 0

    def solve(self, domains: dict[int, set[int]]) -> Coloring | None:
        assigned: Coloring = {}
        if not self._propagate(domains, assigned, list(domains)):
            return None
        free = set(domains) - set(assigned)
        hung = self._prune_end_blocks(domains, free)
        if hung is None:
            return None
        rest = self._free(domains, free)
        if rest is None:
            return None
        assigned.update(rest)
        # hanging parts only touch their cut vertex, which is colored by now
        for cut, part in reversed(hung):
            found = self._extend(domains, part, cut, assigned[cut])
            if found is None:
                raise AssertionError("pruned cut vertex color did not extend")
            assigned.update(found)
        return assigned

    def _extend(self, domains, part, cut, color) -> Coloring | None:
        trial = {u: set(domains[u]) - ({color} if cut in self.adj[u] else set()) for u in part}
        fixed: Coloring = {}
        if not self._propagate(trial, fixed, list(part)):
            return None
        rest = self._free(trial, set(part) - set(fixed))
        if rest is None:
            return None
        fixed.update(rest)
        return fixed

    def _prune_end_blocks(self, domains, free: set[int]) -> list | None:
        """Detach small end blocks, keeping only cut colors that extend into them.

        Shrinks ``free`` in place; returns ``(cut, detached part)`` pairs in
        detach order, or None if some cut vertex has no extendable color.
        """
        hung = []
        while True:
            dec = block_decomposition(induced(self.adj, free))
            progress = False
            for i in dec.end_blocks():
                cuts = dec.block_cuts[i]
                block = dec.blocks[i]
                if len(cuts) != 1 or len(block) > PRUNE_BLOCK_LIMIT:
                    continue
                (cut,) = cuts
                if cut not in free:
                    continue  # detached earlier in this round
                part = sorted(block - {cut})
                if not set(part) <= free:
                    continue
                ok = {c for c in domains[cut] if self._extend(domains, part, cut, c) is not None}
                if not ok:
                    return None
                domains[cut] = ok
                free.difference_update(part)
                hung.append((cut, part))
                progress = True
            if not progress:
                return hung

    def _propagate(self, domains, assigned, pending) -> bool:
        # unit propagation: singleton domains are assigned immediately
        queue = deque(v for v in pending if v not in assigned and len(domains[v]) == 1)
        while queue:
            v = queue.popleft()
            if v in assigned:
                continue
            if not domains[v]:
                return False
            (c,) = domains[v]
            assigned[v] = c
            for w in self.adj[v]:
                if w in assigned:
                    if assigned[w] == c:
                        return False
                    continue
                dw = domains.get(w)
                # vertices outside the current part were fixed earlier
                if dw is not None and c in dw:
                    dw.discard(c)
                    if not dw:
                        return False
                    if len(dw) == 1:
                        queue.append(w)
        return True

    def _free(self, domains, free: set[int]) -> Coloring | None:
        if not free:
            return {}
        parts = components(self.adj, free)
        parts.sort(key=lambda p: (len(p), p[0]))
        out: Coloring = {}
        for part in parts:
            found = self._branch(domains, part)
            if found is None:
                return None
            out.update(found)
        return out

    def _branch(self, domains, part: list[int]) -> Coloring | None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded("exact search exceeded its node budget", self.nodes)
        # fewest colors per uncolored neighbour (dom/deg), then lowest id;
        # hubs go first, so their removal can split the part
        inside = set(part)
        v = min(part, key=lambda u: (len(domains[u]) / (1 + sum(w in inside for w in self.adj[u])), u))
        for c in sorted(domains[v]):
            trial = {u: set(domains[u]) for u in part}
            trial[v] = {c}
            fixed: Coloring = {}
            if not self._propagate(trial, fixed, [v]):
                continue
            rest = self._free(trial, set(part) - set(fixed))
            if rest is not None:
                fixed.update(rest)
                return fixed
        return None


def solve_exact(g: GraphLike, lists: Mapping[int, Iterable[int]], budget: SolveBudget | None = None) -> SolveResult:
    """Exact list coloring by backtracking with forward checking.

    Branches on a vertex with the fewest remaining colors per uncolored
    neighbour (ties: lowest id) and tries colors in ascending order.  Deterministic.  When the instance is
    uncolorable, connected and has degree-sized lists, a Gallai-tree
    certificate is attached if one exists.
    """
    budget = budget or SolveBudget()
    adj = as_adjacency(g)
    domains = {v: set(lists[v]) for v in adj}
    search = _Search(adj, budget.max_nodes)
    try:
        found = search.solve(domains)
    except BudgetExceeded:
        return SolveResult(Verdict.BUDGET_EXCEEDED, nodes=search.nodes)
    if found is not None:
        assert check_coloring(adj, lists, found)
        return SolveResult(Verdict.COLORABLE, found, nodes=search.nodes)
    cert = None
    if len(components(adj)) == 1 and all(len(set(lists[v])) >= len(adj[v]) for v in adj):
        cert = uncolorability_certificate(adj, lists)
    return SolveResult(Verdict.UNCOLORABLE, certificate=cert, nodes=search.nodes)


def is_colorable(g: GraphLike, lists, max_nodes: int | None = None) -> bool:
    budget = SolveBudget() if max_nodes is None else SolveBudget(max_nodes)
    res = solve_exact(g, lists, budget)
    if res.verdict is Verdict.BUDGET_EXCEEDED:
        raise BudgetExceeded("exact search exceeded its node budget", res.nodes)
    return res.colorable


# ------------------------------------------------------------- certificates


def uncolorability_certificate(g: GraphLike, lists: Mapping[int, Iterable[int]]) -> GallaiCertificate | None:
    """Find per-block color sets witnessing that no L-coloring exists.

    Blocks are processed leaves-first over the block-cut tree.  Every vertex
    of a non-root block except its parent cut vertex has no unprocessed block
    left, so the block's color set is forced to equal that vertex's residual
    list; the parent cut vertex then loses those colors.
    """
    adj = as_adjacency(g)
    if not adj or len(components(adj)) != 1:
        return None
    dec = block_decomposition(adj)
    blocks = dec.blocks
    sizes = []
    for b in blocks:
        kind = block_kind(adj, b)
        if kind == "other" or len(b) == 1:
            return None
        sizes.append(2 if kind == "odd_cycle" else len(b) - 1)
    residual = {v: frozenset(lists[v]) for v in adj}
    if any(len(residual[v]) != len(adj[v]) for v in adj):
        return None

    parent_cut: dict[int, int | None] = {0: None}
    order = [0]
    seen_blocks = {0}
    seen_cuts: set[int] = set()
    queue = deque([0])
    while queue:
        bi = queue.popleft()
        for c in sorted(dec.block_cuts[bi]):
            if c in seen_cuts:
                continue
            seen_cuts.add(c)
            for bj in dec.blocks_of(c):
                if bj not in seen_blocks:
                    seen_blocks.add(bj)
                    parent_cut[bj] = c
                    order.append(bj)
                    queue.append(bj)

    chosen: dict[frozenset[int], frozenset[int]] = {}
    for bi in reversed(order):
        block = blocks[bi]
        up = parent_cut[bi]
        own = [residual[v] for v in sorted(block) if v != up]
        colors = own[0]
        if any(r != colors for r in own) or len(colors) != sizes[bi]:
            return None
        if up is not None:
            if not colors <= residual[up]:
                return None
            residual[up] = residual[up] - colors
        chosen[block] = colors
    cert = GallaiCertificate(chosen)
    return cert if cert.check(adj, lists) else None


# ------------------------------------------ degree-choosable construction


def _surplus_coloring(adj: Adjacency, lists, root: int) -> Coloring:
    """Greedy along reverse BFS order from a surplus vertex ``root``."""
    order = []
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        order.append(u)
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    coloring: Coloring = {}
    for v in reversed(order):
        used = {coloring[w] for w in adj[v] if w in coloring}
        free = sorted(set(lists[v]) - used)
        if not free:
            raise PreconditionError(f"greedy stalled at vertex {v}", witness=v)
        coloring[v] = free[0]
    return coloring


def _non_cut(adj: Adjacency) -> set[int]:
    return set(adj) - block_decomposition(adj).cut_vertices


def _remove_colored(adj: Adjacency, lists, colored: Coloring):
    rest = induced(adj, set(adj) - set(colored))
    reduced = {
        v: frozenset(lists[v]) - {colored[w] for w in adj[v] if w in colored}
        for v in rest
    }
    return rest, reduced


def _finish_with_surplus(adj, lists, pre: Coloring, root: int, trace, label) -> Coloring:
    rest, reduced = _remove_colored(adj, lists, pre)
    if trace is not None:
        trace.append(label)
    out = dict(pre)
    if rest:
        out.update(_surplus_coloring(rest, reduced, root))
    return out


def color_degree_choosable(
    g: GraphLike,
    lists: Mapping[int, Iterable[int]],
    trace: list[str] | None = None,
    budget: SolveBudget | None = None,
) -> Coloring:
    """Color a graph whose lists satisfy ``|L(v)| >= d(v)``.

    Components are handled independently.  Per component the first matching
    route wins: a surplus vertex; an edge ``uv`` with ``u`` not a cut vertex
    and a color in ``L(u)`` missing from ``L(v)``; two non-adjacent
    neighbours of some vertex sharing a color whose removal keeps the graph
    connected; and finally the exact solver (recorded as ``fallback``).

    Raises :class:`PreconditionError` if lists are too short or if the
    component is an uncolorable Gallai tree (a certificate exists).
    """
    adj = as_adjacency(g)
    for v in adj:
        if len(set(lists[v])) < len(adj[v]):
            raise PreconditionError(f"|L({v})| < d({v})", witness=v)
    coloring: Coloring = {}
    for comp in components(adj):
        sub = induced(adj, comp)
        coloring.update(_color_component(sub, lists, trace, budget))
    assert check_coloring(adj, lists, coloring)
    return coloring


def _color_component(adj: Adjacency, lists, trace, budget) -> Coloring:
    verts = sorted(adj)
    for v in verts:
        if len(set(lists[v])) > len(adj[v]):
            if trace is not None:
                trace.append("surplus")
            return _surplus_coloring(adj, lists, v)

    cert = uncolorability_certificate(adj, lists)
    if cert is not None:
        raise PreconditionError(
            "Gallai tree with degree-sized lists admits a certificate: no L-coloring exists",
            witness=cert,
        )

    non_cut = _non_cut(adj)
    for u in verts:
        if u not in non_cut:
            continue
        for v in sorted(adj[u]):
            extra = sorted(set(lists[u]) - set(lists[v]))
            if extra:
                return _finish_with_surplus(adj, lists, {u: extra[0]}, v, trace, "unequal-edge")

    for w in verts:
        nbrs = sorted(adj[w])
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if y in adj[x]:
                    continue
                common = sorted(set(lists[x]) & set(lists[y]))
                if not common:
                    continue
                rest = set(adj) - {x, y}
                if len(components(adj, rest)) != 1:
                    continue
                return _finish_with_surplus(
                    adj, lists, {x: common[0], y: common[0]}, w, trace, "twin-neighbours"
                )

    if trace is not None:
        trace.append("fallback")
    res = solve_exact(adj, lists, budget)
    if res.verdict is Verdict.BUDGET_EXCEEDED:
        raise BudgetExceeded("fallback solve exceeded its node budget", res.nodes)
    if not res.colorable:
        raise PreconditionError("instance has no L-coloring", witness=res.certificate)
    return res.coloring
