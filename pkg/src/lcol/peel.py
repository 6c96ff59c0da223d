"""Peeling colorers for graphs whose low-degree vertices form far-apart clusters.

Every operation here colors a graph by the same outline: handle each cluster
of small-degree vertices (a component of ``G[S_k]``) locally, color what
remains of the big-degree vertices with the exact solver, then finish the
deferred part of each cluster with :func:`color_degree_choosable`.  The local
step per cluster is chosen by :func:`classify_component_case`; each choice
keeps the number of colors removed from any big vertex's list within a fixed
bound so the remainder always has lists of length at least five.

Two cluster shapes are handled by recursion instead: an end block hanging
off the rest of the graph at a single vertex (case ``3``) and the split
across a ``K4`` end block (case ``7b``).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InternalConsistencyError, PreconditionError
from .graph import (
    Adjacency,
    Coloring,
    GraphLike,
    as_adjacency,
    check_coloring,
    component_distance,
    components,
    induced,
    is_connected,
)
from .solver import SolveBudget, Verdict, color_degree_choosable, solve_exact
from .structure import (
    block_decomposition,
    block_kind,
    has_k5_minor,
    is_gallai_tree,
    small_vertex_cut,
)

K8 = "k8"
THREECONN = "threeconn"
DELETION_BOUND = {K8: 3, THREECONN: 2}
VALID_CASES = {
    K8: {"i", "1", "2", "3", "4", "5", "6", "7", "7a", "7b"},
    THREECONN: {"i", "1", "2", "2a", "2b", "3", "4", "5"},
}
# graphs up to this size get the auxiliary-edge minor check
AUX_MINOR_LIMIT = 400


@dataclass(frozen=True)
class CaseLabel:
    mode: str
    case: str
    subcase: str | None = None
    justification: str = ""

    def __post_init__(self):
        if self.label not in VALID_CASES[self.mode]:
            raise ValueError(f"case {self.label!r} is not valid in mode {self.mode}")

    @property
    def label(self) -> str:
        return self.subcase or self.case


@dataclass
class ComponentRecord:
    component: tuple[int, ...]
    case: CaseLabel
    precolored: dict[int, int] = field(default_factory=dict)
    reserved: dict[int, frozenset[int]] = field(default_factory=dict)
    deleted: dict[int, frozenset[int]] = field(default_factory=dict)
    deferred: tuple[int, ...] = ()
    aux_added: list[tuple[int, int]] = field(default_factory=list)
    aux_removed: list[tuple[int, int]] = field(default_factory=list)
    condition: str | None = None
    children: list[PeelTrace] = field(default_factory=list)


@dataclass
class PeelTrace:
    mode: str
    k: int
    regime: str = ""
    minor_check: str = "assumed"
    aux_minor_check: str = "none"
    records: list[ComponentRecord] = field(default_factory=list)
    # regimes of further connected components handled at this level
    extra: list[PeelTrace] = field(default_factory=list)

    def walk(self) -> Iterator[PeelTrace]:
        yield self
        for t in self.extra:
            yield from t.walk()
        for r in self.records:
            for c in r.children:
                yield from c.walk()

    def case_labels(self) -> set[str]:
        out = set()
        for t in self.walk():
            for r in t.records:
                out.add(r.case.label)
                out.add(r.case.case)
        return out

    def max_deleted(self) -> int:
        """Largest number of colors removed from one big vertex at one level."""
        best = 0
        for t in self.walk():
            per: dict[int, set[int]] = {}
            for r in t.records:
                for w, cs in r.deleted.items():
                    per.setdefault(w, set()).update(cs)
            best = max([best, *(len(cs) for cs in per.values())])
        return best

    def lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        out = [f"{pad}level mode={self.mode} k={self.k} regime={self.regime} minor={self.minor_check}"]
        if self.aux_minor_check != "none":
            out.append(f"{pad}  aux-minor={self.aux_minor_check}")
        for r in self.records:
            comp = ",".join(map(str, r.component))
            out.append(f"{pad}  component [{comp}] case={r.case.label} ({r.case.justification})")
            if r.precolored:
                pc = " ".join(f"{v}:{c}" for v, c in sorted(r.precolored.items()))
                out.append(f"{pad}    precolored {pc}")
            if r.reserved:
                rs = " ".join(f"{v}:{sorted(cs)}" for v, cs in sorted(r.reserved.items()))
                out.append(f"{pad}    reserved {rs}")
            if r.deleted:
                worst = max(len(cs) for cs in r.deleted.values())
                out.append(f"{pad}    deleted from {len(r.deleted)} big vertices, at most {worst} each")
            if r.deferred:
                out.append(f"{pad}    deferred {','.join(map(str, r.deferred))} condition={r.condition}")
            if r.aux_added:
                out.append(f"{pad}    aux edges {r.aux_added}")
            if r.aux_removed:
                out.append(f"{pad}    removed edges {r.aux_removed}")
            for c in r.children:
                out.extend(c.lines(indent + 2))
        for t in self.extra:
            out.extend(t.lines(indent))
        return out


@dataclass
class _Plan:
    label: CaseLabel
    component: list[int]
    precolor: dict[int, int] = field(default_factory=dict)
    reserve: dict[int, frozenset[int]] = field(default_factory=dict)
    deferred: set[int] = field(default_factory=set)
    aux: list[tuple[int, int]] = field(default_factory=list)
    recurse: str | None = None
    block: frozenset[int] | None = None
    cut: int | None = None


@dataclass
class _Context:
    mode: str
    k: int
    budget: SolveBudget


# ------------------------------------------------------------------ helpers


def _outside(adj: Adjacency, comp: set[int], v: int) -> list[int]:
    return sorted(adj[v] - comp)


def _cycle_from(adj: Adjacency, block: frozenset[int], start: int) -> list[int]:
    order = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in adj[cur] if w in block and w != prev)
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt
        if len(order) > len(block):
            raise InternalConsistencyError("block is not a cycle", witness=block)


def _first_diff(lists, pairs) -> tuple[int, int, int] | None:
    for a, b in pairs:
        extra = lists[a] - lists[b]
        if extra:
            return a, b, min(extra)
    return None


def _first_private_neighbour(adj: Adjacency, comp: set[int], pairs) -> tuple[int, int, int] | None:
    """``(i, j, w)``: a vertex ``w`` outside ``comp`` adjacent to ``i`` but not ``j``."""
    for a, b in pairs:
        for w in _outside(adj, comp, a):
            if w not in adj[b]:
                return a, b, w
    return None


def _ordered_pairs(vs: list[int]) -> list[tuple[int, int]]:
    return [(a, b) for a in vs for b in vs if a != b]


def _path_pairs(path: list[int]) -> list[tuple[int, int]]:
    out = []
    for a, b in zip(path, path[1:]):
        out += [(a, b), (b, a)]
    return out


def _end_blocks(hadj: Adjacency):
    # ordered by smallest non-cut vertex so the chosen end block is stable
    dec = block_decomposition(hadj)
    ends = [(dec.blocks[i], min(dec.block_cuts[i])) for i in dec.end_blocks()]
    return sorted(ends, key=lambda bc: min(set(bc[0]) - {bc[1]}))


def _aux_edges(adj: Adjacency, comp: set[int], w: int, j: int) -> list[tuple[int, int]]:
    return [(w, x) if w < x else (x, w) for x in _outside(adj, comp, j) if x != w]


def _k5_block(label: str, block) -> PreconditionError:
    return PreconditionError(f"{label}: block of size {len(block)} is a K5 subgraph", witness=sorted(block))


def reinsertion_condition(hadj: Adjacency, lists: Mapping[int, frozenset[int]]) -> str | None:
    """Which of the three finishing conditions a deferred part meets, if any.

    ``"i"``: not a Gallai tree; ``"ii"``: some vertex has more colors than
    neighbours; ``"iii"``: two adjacent non-cut vertices have different lists.
    Returns ``None`` if the part is disconnected or none hold.
    """
    if not hadj or not is_connected(hadj):
        return None
    if not is_gallai_tree(hadj)[0]:
        return "i"
    for v in sorted(hadj):
        if len(lists[v]) > len(hadj[v]):
            return "ii"
    cuts = block_decomposition(hadj).cut_vertices
    for v in sorted(hadj):
        if v in cuts:
            continue
        for w in hadj[v]:
            if w not in cuts and lists[v] != lists[w]:
                return "iii"
    return None


# --------------------------------------------------------- case analysis


def _analyse(adj: Adjacency, lists, comp: list[int], mode: str, k: int) -> _Plan:
    cset = set(comp)
    hadj = induced(adj, cset)
    if not is_gallai_tree(hadj)[0]:
        return _Plan(CaseLabel(mode, "i", justification="not a Gallai tree"), comp, deferred=set(comp))
    if mode == K8:
        return _analyse_k8(adj, hadj, lists, comp, cset)
    return _analyse_3conn(adj, hadj, lists, comp, cset, k)


def _analyse_k8(adj, hadj, lists, comp, cset) -> _Plan:
    blocks = block_decomposition(hadj).blocks
    if len(blocks) == 1:
        kind = block_kind(hadj, cset)
        if kind == "odd_cycle":
            return _k8_cycle(adj, lists, comp, cset)
        if len(comp) >= 5:
            raise _k5_block("cluster", comp)
        label = CaseLabel(K8, "1", justification=f"cluster is {kind}")
        try:
            pre = color_degree_choosable(hadj, {v: lists[v] for v in comp})
        except PreconditionError as exc:
            raise InternalConsistencyError(
                "complete cluster without a big neighbour is a Gallai-tree component",
                witness=comp,
            ) from exc
        return _Plan(label, comp, precolor=pre)

    ends = _end_blocks(hadj)
    for block, cut in ends:
        if all(adj[u] <= block for u in block - {cut}):
            label = CaseLabel(K8, "3", justification=f"end block {sorted(block)} attached only through {cut}")
            return _Plan(label, comp, recurse="3", block=block, cut=cut)
    kinds = [(block_kind(hadj, b), b, c) for b, c in ends]
    for kind, block, cut in kinds:
        if kind == "odd_cycle":
            return _k8_end_cycle(adj, lists, comp, cset, block, cut)
    for kind, block, cut in kinds:
        if kind == "K2":
            (v2,) = block - {cut}
            if len(lists[v2]) < 2:
                raise InternalConsistencyError("end vertex with a single color", witness=v2)
            ab = frozenset(sorted(lists[v2])[:2])
            label = CaseLabel(K8, "5", justification=f"end block K2 at {cut}; reserve {sorted(ab)} on {v2}")
            return _Plan(label, comp, reserve={v2: ab}, deferred=set(comp))
    for kind, block, cut in kinds:
        if kind == "K3":
            for v in sorted(block - {cut}):
                if len(lists[v]) >= 3:
                    abc = frozenset(sorted(lists[v])[:3])
                    label = CaseLabel(K8, "6", justification=f"end block K3 at {cut}; reserve {sorted(abc)} on {v}")
                    return _Plan(label, comp, reserve={v: abc}, deferred=set(comp))
            raise InternalConsistencyError("K3 end block with short lists outside case 3", witness=sorted(block))
    for kind, block, _ in kinds:
        if kind != "K4":
            raise _k5_block("end block", block)
    block, cut = ends[0]
    return _k8_k4_end(adj, lists, comp, cset, block, cut)


def _k8_cycle(adj, lists, comp, cset) -> _Plan:
    order = _cycle_from(adj, frozenset(cset), min(comp))
    ring = order + order[:1]
    diff = _first_diff(lists, _path_pairs(ring))
    if diff is not None:
        vi, vj, c = diff
        label = CaseLabel(K8, "2", justification=f"odd cycle; {c} in L({vi}) not in L({vj})")
        return _Plan(label, comp, precolor={vi: c}, deferred=cset - {vi})
    colors = sorted(lists[order[0]])
    if len(colors) < 3:
        raise PreconditionError("odd cycle with equal 2-lists is an isolated Gallai-tree component", witness=comp)
    c1, c2, c3 = colors[:3]
    pre = {v: (c1 if i % 2 == 0 else c2) for i, v in enumerate(order[:-1])}
    pre[order[-1]] = c3
    label = CaseLabel(K8, "2", justification="odd cycle with equal lists; three colors")
    return _Plan(label, comp, precolor=pre)


def _k8_end_cycle(adj, lists, comp, cset, block, cut) -> _Plan:
    order = _cycle_from(adj, block, cut)
    rest = order[1:]
    diff = _first_diff(lists, _path_pairs(rest))
    if diff is not None:
        vi, vj, c = diff
        label = CaseLabel(K8, "4", justification=f"end odd cycle at {cut}; {c} in L({vi}) not in L({vj})")
        return _Plan(label, comp, precolor={vi: c}, deferred=cset - {vi})
    colors = sorted(lists[rest[0]])
    if len(colors) < 3:
        raise InternalConsistencyError("end cycle with 2-lists outside case 3", witness=sorted(block))
    c1, c2, c3 = colors[:3]
    pre = {rest[0]: c1, rest[-1]: c1}
    for i, v in enumerate(rest[1:-1]):
        pre[v] = c2 if i % 2 == 0 else c3
    label = CaseLabel(K8, "4", justification=f"end odd cycle at {cut}; both neighbours of the cut get {c1}")
    return _Plan(label, comp, precolor=pre, deferred=cset - set(rest))


def _k8_k4_end(adj, lists, comp, cset, block, cut) -> _Plan:
    others = sorted(block - {cut})
    pairs = _ordered_pairs(others)
    diff = _first_diff(lists, pairs)
    if diff is not None:
        vi, vj, c = diff
        label = CaseLabel(K8, "7", justification=f"K4 end blocks; {c} in L({vi}) not in L({vj})")
        return _Plan(label, comp, precolor={vi: c}, deferred=cset - {vi})
    if len(lists[others[0]]) <= 3:
        raise InternalConsistencyError("K4 end block with 3-lists outside case 3", witness=others)
    private = _first_private_neighbour(adj, cset, pairs)
    if private is not None:
        vi, vj, w = private
        label = CaseLabel(K8, "7", "7a", f"{w} sees {vi} but not {vj}")
        return _Plan(label, comp, deferred=set(comp), aux=_aux_edges(adj, cset, w, vj))
    label = CaseLabel(K8, "7", "7b", f"every big neighbour of {others} sees all of them")
    return _Plan(label, comp, recurse="7b", block=block, cut=cut)


def _analyse_3conn(adj, hadj, lists, comp, cset, k) -> _Plan:
    blocks = block_decomposition(hadj).blocks
    if len(blocks) == 1:
        kind = block_kind(hadj, cset)
        if kind == "K1":
            (v,) = comp
            label = CaseLabel(THREECONN, "1", justification="single vertex")
            return _Plan(label, comp, precolor={v: min(lists[v])})
        if kind == "K2":
            return _tc_pair(adj, lists, comp, cset, comp[0], comp[1], "cluster is K2")
        if kind == "odd_cycle":
            order = _cycle_from(adj, frozenset(cset), min(comp))
            return _tc_cycle(adj, lists, comp, cset, order[1:], "cluster is an odd cycle")
        if kind in ("K3", "K4"):
            return _tc_triangle(adj, lists, comp, cset, comp[:3], f"cluster is {kind}")
        raise _k5_block("cluster", comp)

    ends = _end_blocks(hadj)
    kinds = [(block_kind(hadj, b), b, c) for b, c in ends]
    for kind, block, cut in kinds:
        if kind == "K3":
            v1, v2 = sorted(block - {cut})
            return _tc_pair(adj, lists, comp, cset, v1, v2, f"end block K3 at {cut}")
    for kind, block, cut in kinds:
        if kind == "odd_cycle":
            order = _cycle_from(adj, block, cut)
            return _tc_cycle(adj, lists, comp, cset, order[1:], f"end odd cycle at {cut}")
    for kind, block, cut in kinds:
        if kind == "K4":
            return _tc_triangle(adj, lists, comp, cset, sorted(block - {cut}), f"end block K4 at {cut}")
    for kind, block, _ in kinds:
        if kind != "K2":
            raise _k5_block("end block", block)
    block, cut = ends[0]
    (v2,) = block - {cut}
    if k < 7:
        raise PreconditionError("all end blocks K2: not supported for k < 7", witness=sorted(block))
    if len(lists[v2]) < 3:
        raise InternalConsistencyError("end vertex of degree < 3 in a 3-connected graph", witness=v2)
    ab = frozenset(sorted(lists[v2])[:2])
    label = CaseLabel(THREECONN, "5", justification=f"end blocks K2; reserve {sorted(ab)} on {v2}")
    return _Plan(label, comp, reserve={v2: ab}, deferred=set(comp))


def _tc_pair(adj, lists, comp, cset, v1, v2, why) -> _Plan:
    pairs = [(v1, v2), (v2, v1)]
    diff = _first_diff(lists, pairs)
    if diff is not None:
        vi, vj, c = diff
        label = CaseLabel(THREECONN, "2", justification=f"{why}; {c} in L({vi}) not in L({vj})")
        return _Plan(label, comp, precolor={vi: c}, deferred=cset - {vi})
    private = _first_private_neighbour(adj, cset, pairs)
    if private is not None:
        vi, vj, z = private
        label = CaseLabel(THREECONN, "2", "2a", f"{why}; {z} sees {vi} but not {vj}")
        return _Plan(label, comp, deferred=set(comp), aux=_aux_edges(adj, cset, z, vj))
    raise _contradiction(f"{why}: every outside neighbour of {v1},{v2} sees both, which forces a K5 minor", adj)


def _tc_cycle(adj, lists, comp, cset, path, why) -> _Plan:
    pairs = _path_pairs(path)
    diff = _first_diff(lists, pairs)
    if diff is not None:
        vi, vj, c = diff
        label = CaseLabel(THREECONN, "3", justification=f"{why}; {c} in L({vi}) not in L({vj})")
        return _Plan(label, comp, precolor={vi: c}, deferred=cset - {vi})
    private = _first_private_neighbour(adj, cset, pairs)
    if private is not None:
        vi, vj, w = private
        label = CaseLabel(THREECONN, "3", justification=f"{why}; {w} sees {vi} but not {vj}")
        return _Plan(label, comp, deferred=set(comp), aux=_aux_edges(adj, cset, w, vj))
    raise _contradiction(f"{why}: all outside neighbours see the whole cycle, which forces a K5 minor", adj)


def _tc_triangle(adj, lists, comp, cset, tri, why) -> _Plan:
    pairs = _ordered_pairs(list(tri))
    diff = _first_diff(lists, pairs)
    if diff is not None:
        vi, vj, c = diff
        label = CaseLabel(THREECONN, "4", justification=f"{why}; {c} in L({vi}) not in L({vj})")
        return _Plan(label, comp, precolor={vi: c}, deferred=cset - {vi})
    private = _first_private_neighbour(adj, cset, pairs)
    if private is not None:
        vi, vj, w = private
        label = CaseLabel(THREECONN, "4", justification=f"{why}; {w} sees {vi} but not {vj}")
        return _Plan(label, comp, deferred=set(comp), aux=_aux_edges(adj, cset, w, vj))
    raise _contradiction(f"{why}: all outside neighbours see the whole triangle, which forces a K5 minor", adj)


def _contradiction(msg: str, adj: Adjacency) -> InternalConsistencyError:
    bags = _minor_witness(adj)
    if bags is None:
        msg += "; no K5 minor was found, so the forcing argument does not apply here"
    return InternalConsistencyError(msg, witness=bags)


def _minor_witness(adj):
    try:
        return has_k5_minor(adj, max_nodes=50_000)[1]
    except BudgetExceeded:
        return None


def classify_component_case(
    g: GraphLike, lists: Mapping[int, Iterable[int]], comp: Iterable[int], k: int, mode: str = K8
) -> CaseLabel:
    """Case that the peeling step applies to the cluster ``comp``.

    ``comp`` must be a component of the subgraph induced by vertices of
    degree ``< k``.  Cases are tried in their fixed order and the first
    match wins.
    """
    adj = as_adjacency(g)
    comp = sorted(comp)
    small = {v for v in adj if len(adj[v]) < k}
    if not set(comp) <= small or sorted(components(adj, small)[_index_of(adj, small, comp)]) != comp:
        raise PreconditionError("not a component of the small-degree subgraph", witness=comp)
    ls = {v: frozenset(lists[v]) for v in adj}
    return _analyse(adj, ls, comp, mode, k).label


def _index_of(adj, small, comp):
    for i, c in enumerate(components(adj, small)):
        if comp[0] in c:
            return i
    raise PreconditionError("vertex not in the small-degree subgraph", witness=comp[0])


# ----------------------------------------------------------------- driver


def _color(adj: Adjacency, lists, ctx: _Context, trace: PeelTrace) -> Coloring:
    out: Coloring = {}
    parts = components(adj)
    for idx, part in enumerate(parts):
        t = trace if idx == 0 else PeelTrace(ctx.mode, ctx.k, minor_check=trace.minor_check)
        if idx > 0:
            trace.extra.append(t)
        sub = induced(adj, part)
        out.update(_color_connected(sub, {v: lists[v] for v in part}, ctx, t))
    return out


def _solve_or_raise(adj, lists, ctx: _Context, what: str) -> Coloring:
    res = solve_exact(adj, lists, ctx.budget)
    if res.verdict is Verdict.BUDGET_EXCEEDED:
        raise BudgetExceeded(f"{what}: exact solve exceeded its node budget", res.nodes)
    if not res.colorable:
        raise InternalConsistencyError(f"{what}: reduced instance has no coloring", witness=res.certificate)
    return res.coloring


def _color_connected(adj: Adjacency, lists, ctx: _Context, trace: PeelTrace) -> Coloring:
    if all(len(lists[v]) >= len(adj[v]) for v in adj):
        trace.regime = "degree-choosable"
        try:
            return color_degree_choosable(adj, lists, budget=ctx.budget)
        except PreconditionError as exc:
            raise InternalConsistencyError(
                "degree-sized lists on a Gallai tree reached the finishing step", witness=exc.witness
            ) from exc
    if all(len(lists[v]) >= 5 for v in adj):
        trace.regime = "five-lists"
        return _solve_or_raise(adj, lists, ctx, "five-list regime")

    trace.regime = "peel"
    small = {v for v in adj if len(adj[v]) < ctx.k}
    clusters = components(adj, small)
    owner: dict[int, int] = {}
    for i, comp in enumerate(clusters):
        for v in comp:
            for w in adj[v] - small:
                if owner.setdefault(w, i) != i:
                    raise InternalConsistencyError("big vertex next to two clusters", witness=w)

    plans = [_analyse(adj, lists, comp, ctx.mode, ctx.k) for comp in clusters]
    for plan in plans:
        if plan.recurse == "3":
            return _recurse_end_block(adj, lists, ctx, trace, plan)
        if plan.recurse == "7b":
            return _recurse_split(adj, lists, ctx, trace, plan)
    return _execute(adj, lists, small, plans, ctx, trace)


def _recurse_end_block(adj, lists, ctx, trace, plan: _Plan) -> Coloring:
    part = set(plan.block) - {plan.cut}
    record = ComponentRecord(tuple(plan.component), plan.label, deferred=())
    trace.records.append(record)
    padj = induced(adj, part)
    first = color_degree_choosable(padj, {v: lists[v] for v in part}, budget=ctx.budget)
    record.precolored = dict(first)
    rest = set(adj) - part
    radj = induced(adj, rest)
    rlists = {v: lists[v] for v in rest}
    rlists[plan.cut] = lists[plan.cut] - {first[u] for u in adj[plan.cut] & part}
    child = PeelTrace(ctx.mode, ctx.k, minor_check=trace.minor_check)
    record.children.append(child)
    out = _color(radj, rlists, ctx, child)
    out.update(first)
    return out


def _recurse_split(adj, lists, ctx, trace, plan: _Plan) -> Coloring:
    v1 = plan.cut
    others = sorted(plan.block - {v1})
    cut_edges = [(v1, v) if v1 < v else (v, v1) for v in others]
    record = ComponentRecord(tuple(plan.component), plan.label, aux_removed=cut_edges)
    trace.records.append(record)
    split = {v: set(ns) for v, ns in adj.items()}
    for v in others:
        split[v1].discard(v)
        split[v].discard(v1)
    split = {v: frozenset(ns) for v, ns in split.items()}
    parts = components(split)
    side1 = next(p for p in parts if v1 in p)
    if others[0] in side1:
        raise _contradiction("removing the cut-vertex edges of the K4 end block does not separate it", adj)
    side2 = next(p for p in parts if others[0] in p)
    g1 = induced(split, side1)
    g2 = induced(split, side2)
    if is_gallai_tree(g2)[0]:
        raise InternalConsistencyError("far side of the split is a Gallai tree", witness=sorted(side2))
    child1 = PeelTrace(ctx.mode, ctx.k, minor_check=trace.minor_check)
    child2 = PeelTrace(ctx.mode, ctx.k, minor_check=trace.minor_check)
    record.children += [child1, child2]
    col1 = _color(g1, {v: lists[v] for v in side1}, ctx, child1)
    l2 = {v: lists[v] for v in side2}
    for v in others:
        l2[v] = lists[v] - {col1[v1]}
    col2 = _color(g2, l2, ctx, child2)
    out = dict(col1)
    out.update(col2)
    leftover = set(adj) - set(side1) - set(side2)
    if leftover:
        raise InternalConsistencyError("split produced more than two sides", witness=sorted(leftover))
    return out


def _execute(adj, lists, small, plans: list[_Plan], ctx: _Context, trace: PeelTrace) -> Coloring:
    big = set(adj) - small
    coloring: Coloring = {}
    blists = {w: set(lists[w]) for w in big}
    aux: set[tuple[int, int]] = set()
    records = []
    for plan in plans:
        deleted: dict[int, set[int]] = {}
        for v, c in plan.precolor.items():
            coloring[v] = c
            for w in adj[v] & big:
                deleted.setdefault(w, set()).add(c)
        for v, cs in plan.reserve.items():
            for w in adj[v] & big:
                deleted.setdefault(w, set()).update(cs)
        for w, cs in deleted.items():
            blists[w] -= cs
        aux.update(plan.aux)
        rec = ComponentRecord(
            tuple(plan.component),
            plan.label,
            precolored=dict(plan.precolor),
            reserved=dict(plan.reserve),
            deleted={w: frozenset(cs) for w, cs in deleted.items()},
            deferred=tuple(sorted(plan.deferred)),
            aux_added=sorted(plan.aux),
        )
        records.append(rec)
        trace.records.append(rec)
        bound = DELETION_BOUND[ctx.mode]
        worst = max((len(cs) for cs in deleted.values()), default=0)
        if worst > bound:
            raise InternalConsistencyError(
                f"case {plan.label.label} removed {worst} colors from one big vertex (bound {bound})",
                witness=plan.component,
            )

    badj = {w: set(adj[w] & big) for w in big}
    for a, b in aux:
        badj[a].add(b)
        badj[b].add(a)
    badj = {w: frozenset(ns) for w, ns in badj.items()}
    if aux:
        trace.aux_minor_check = _check_aux_minor(badj)
    if badj:
        coloring.update(_solve_or_raise(badj, {w: frozenset(cs) for w, cs in blists.items()}, ctx, "big-vertex remainder"))

    for plan, rec in zip(plans, records):
        if not plan.deferred:
            continue
        hadj = induced(adj, plan.deferred)
        reduced = {}
        for v in plan.deferred:
            base = plan.reserve.get(v, lists[v])
            reduced[v] = frozenset(base) - {coloring[w] for w in adj[v] if w in coloring}
            if len(reduced[v]) < len(hadj[v]):
                raise InternalConsistencyError(f"deferred vertex {v} lost too many colors", witness=v)
        cond = reinsertion_condition(hadj, reduced)
        rec.condition = cond
        if cond is None:
            raise InternalConsistencyError(
                f"deferred part of case {plan.label.label} meets none of the finishing conditions",
                witness=sorted(plan.deferred),
            )
        try:
            coloring.update(color_degree_choosable(hadj, reduced, budget=ctx.budget))
        except PreconditionError as exc:
            raise InternalConsistencyError("deferred part could not be finished", witness=exc.witness) from exc
    if not check_coloring(adj, lists, coloring):
        raise InternalConsistencyError("peeling produced an invalid coloring")
    return coloring


def _check_aux_minor(badj: Adjacency) -> str:
    if len(badj) > AUX_MINOR_LIMIT:
        return "trusted"
    try:
        found, bags = has_k5_minor(badj)
    except BudgetExceeded:
        return "trusted"
    if found:
        raise PreconditionError("auxiliary edges created a K5 minor", witness=bags)
    return "verified"


# ----------------------------------------------------------- entry points


def _check_lists(adj: Adjacency, lists, k: int) -> dict[int, frozenset[int]]:
    out = {}
    for v in adj:
        if v not in lists:
            raise PreconditionError(f"vertex {v} has no list", witness=v)
        out[v] = frozenset(lists[v])
        if len(out[v]) < min(len(adj[v]), k):
            raise PreconditionError(f"|L({v})| < min(d({v}), {k})", witness=v)
    return out


def _check_spacing(adj: Adjacency, k: int, need: int) -> None:
    small = {v for v in adj if len(adj[v]) < k}
    d = component_distance(adj, small)
    if d != 0 and d < need:
        raise PreconditionError(f"clusters of degree < {k} are at distance {d} < {need}", witness=d)


def _check_minor(adj: Adjacency, verify: bool, trace: PeelTrace) -> None:
    if not verify:
        trace.minor_check = "assumed"
        return
    try:
        found, bags = has_k5_minor(adj)
    except BudgetExceeded:
        trace.minor_check = "unverified"
        return
    if found:
        raise PreconditionError("graph has a K5 minor", witness=bags)
    trace.minor_check = "verified"


def peel_color_k8(
    g: GraphLike,
    lists: Mapping[int, Iterable[int]],
    k: int = 8,
    *,
    verify_minor: bool = True,
    budget: SolveBudget | None = None,
) -> tuple[Coloring, PeelTrace]:
    """Color a K5-minor-free graph with ``|L(v)| >= min(d(v), k)``, ``k >= 8``.

    Requires clusters of degree-``< k`` vertices at pairwise distance at
    least 3 (a single cluster is accepted) and no component that is a
    Gallai tree.  Returns the coloring and a trace of the cases used.
    """
    if k < 8:
        raise PreconditionError("k must be >= 8", witness=k)
    adj = as_adjacency(g)
    ls = _check_lists(adj, lists, k)
    _check_spacing(adj, k, 3)
    for comp in components(adj):
        if is_gallai_tree(induced(adj, comp))[0]:
            raise PreconditionError("a component is a Gallai tree", witness=comp)
    trace = PeelTrace(K8, k)
    _check_minor(adj, verify_minor, trace)
    ctx = _Context(K8, k, budget or SolveBudget())
    coloring = _color(adj, ls, ctx, trace)
    if not check_coloring(adj, ls, coloring):
        raise InternalConsistencyError("output coloring failed verification")
    return coloring, trace


def peel_color_3connected(
    g: GraphLike,
    lists: Mapping[int, Iterable[int]],
    k: int = 7,
    *,
    allow_k6: bool = False,
    verify_minor: bool = True,
    budget: SolveBudget | None = None,
) -> tuple[Coloring, PeelTrace]:
    """Color a 3-connected, non-complete, K5-minor-free graph, ``k >= 7``.

    ``allow_k6`` admits ``k = 6`` experimentally; the all-``K2``-end-blocks
    case then raises :class:`PreconditionError`.
    """
    if k < 6 or (k == 6 and not allow_k6):
        raise PreconditionError("k must be >= 7", witness=k)
    adj = as_adjacency(g)
    n = len(adj)
    if all(len(adj[v]) == n - 1 for v in adj):
        raise PreconditionError("graph is complete", witness=n)
    cut = small_vertex_cut(adj)
    if cut is not None:
        raise PreconditionError(f"graph is not 3-connected; cut {list(cut)}", witness=cut)
    ls = _check_lists(adj, lists, k)
    _check_spacing(adj, k, 3)
    trace = PeelTrace(THREECONN, k)
    _check_minor(adj, verify_minor, trace)
    ctx = _Context(THREECONN, k, budget or SolveBudget())
    coloring = _color(adj, ls, ctx, trace)
    if not check_coloring(adj, ls, coloring):
        raise InternalConsistencyError("output coloring failed verification")
    return coloring, trace


# ------------------------------------------------------------- fast paths


def color_distance3(
    g: GraphLike, lists: Mapping[int, Iterable[int]], budget: SolveBudget | None = None
) -> Coloring:
    """Color when all vertices of degree <= 5 are pairwise at distance >= 3.

    Each such vertex takes its smallest color; the rest is solved exactly
    from lists that lost at most one color each.
    """
    adj = as_adjacency(g)
    ls = _check_lists(adj, lists, 6)
    small = sorted(v for v in adj if len(adj[v]) <= 5)
    sset = set(small)
    for s in small:
        for w in adj[s]:
            near = (adj[w] | {w}) & sset - {s}
            if near:
                raise PreconditionError(
                    f"vertices {s} and {min(near)} of degree <= 5 are closer than 3", witness=(s, min(near))
                )
    coloring = {s: min(ls[s]) for s in small}
    rest = set(adj) - sset
    radj = induced(adj, rest)
    rl = {v: ls[v] - {coloring[w] for w in adj[v] if w in coloring} for v in rest}
    ctx = _Context(K8, 6, budget or SolveBudget())
    if radj:
        coloring.update(_solve_or_raise(radj, rl, ctx, "distance-3 remainder"))
    if not check_coloring(adj, ls, coloring):
        raise InternalConsistencyError("output coloring failed verification")
    return coloring


def color_far_components(
    g: GraphLike, lists: Mapping[int, Iterable[int]], k: int = 6, budget: SolveBudget | None = None
) -> Coloring:
    """Color when clusters of degree-``< k`` vertices are at distance >= 5.

    Per cluster, one big neighbour ``w`` of a cluster vertex ``v`` is colored
    from ``L(w) - L(v)``; the big remainder is solved exactly; each cluster
    is then finished with ``v`` holding a spare color.
    """
    adj = as_adjacency(g)
    ls = _check_lists(adj, lists, k)
    _check_spacing(adj, k, 5)
    small = {v for v in adj if len(adj[v]) < k}
    clusters = components(adj, small)
    coloring: Coloring = {}
    helpers = []
    for comp in clusters:
        pick = None
        for v in comp:
            outside = sorted(adj[v] - small)
            if outside:
                pick = (v, outside[0])
                break
        if pick is None:
            raise InternalConsistencyError("cluster has no big neighbour", witness=comp)
        v, w = pick
        spare = sorted(ls[w] - ls[v])
        if not spare:
            raise PreconditionError(f"L({w}) is contained in L({v})", witness=(w, v))
        coloring[w] = spare[0]
        helpers.append(w)
    rest = set(adj) - small - set(helpers)
    radj = induced(adj, rest)
    rl = {u: ls[u] - {coloring[x] for x in adj[u] if x in coloring} for u in rest}
    ctx = _Context(K8, k, budget or SolveBudget())
    if radj:
        coloring.update(_solve_or_raise(radj, rl, ctx, "far-cluster remainder"))
    for comp in clusters:
        hadj = induced(adj, comp)
        reduced = {u: ls[u] - {coloring[x] for x in adj[u] if x in coloring} for u in comp}
        try:
            coloring.update(color_degree_choosable(hadj, reduced, budget=ctx.budget))
        except PreconditionError as exc:
            raise InternalConsistencyError("cluster could not be finished", witness=comp) from exc
    if not check_coloring(adj, ls, coloring):
        raise InternalConsistencyError("output coloring failed verification")
    return coloring

