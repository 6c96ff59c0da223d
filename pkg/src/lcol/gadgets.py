"""Generators for the counterexample constructions.

Each generator returns a :class:`GadgetInstance`: the graph, its list
assignment, and the properties the construction is claimed to have.  For
instances of at most ``AUDIT_LIMIT`` vertices the structural claims are
recomputed at generation time and stored alongside the claims.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ColorClash, PreconditionError
from .graph import (
    Graph,
    ListAssignment,
    bfs_distances,
    component_distance,
    make_lists,
    small_big_split,
    validate_f_assignment,
)
from .structure import block_decomposition, vertex_connectivity

AUDIT_LIMIT = 100


@dataclass
class GadgetMeta:
    k: int
    provenance: str
    claimed_verdict: str | None = None  # "uncolorable", "colorable" or None
    claimed: dict[str, int] = field(default_factory=dict)
    computed: dict[str, int] = field(default_factory=dict)
    trusted: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    labels: dict[str, int] = field(default_factory=dict)

    def as_lines(self) -> list[str]:
        out = [f"k={self.k}", f"provenance={self.provenance}"]
        if self.claimed_verdict:
            out.append(f"claimed_verdict={self.claimed_verdict}")
        out += [f"claimed.{k}={v}" for k, v in sorted(self.claimed.items())]
        out += [f"computed.{k}={v}" for k, v in sorted(self.computed.items())]
        out += [f"trusted={t}" for t in self.trusted]
        out += [f"note={n}" for n in self.notes]
        return out


@dataclass
class GadgetInstance:
    graph: Graph
    lists: ListAssignment
    meta: GadgetMeta
    # (shape name, vertex ids) per placed cluster shape; peeling instances only
    parts: list[tuple[str, list[int]]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.graph.n


def audit(inst: GadgetInstance, kappa: bool = True) -> GadgetInstance:
    """Recompute delta, kappa and d(S_k); record mismatches with the claims."""
    g, k = inst.graph, inst.meta.k
    comp = inst.meta.computed
    comp["n"] = g.n
    comp["m"] = g.m
    comp["delta"] = g.min_degree()
    small, _ = small_big_split(g, k)
    comp["d_sk"] = component_distance(g, small)
    comp["f_assignment"] = int(validate_f_assignment(g, inst.lists, k))
    if kappa and g.n <= AUDIT_LIMIT:
        comp["kappa"] = vertex_connectivity(g)
    elif "kappa" in inst.meta.claimed:
        inst.meta.trusted.append("kappa")
    for key, want in inst.meta.claimed.items():
        if key in comp and comp[key] != want:
            inst.meta.notes.append(f"claimed {key}={want} but computed {comp[key]}")
    return inst


# ------------------------------------------------------------- 2-connected


def gen_fig1(k: int) -> GadgetInstance:
    """``C(k,2)`` K4 pages glued on the edge ``xy``; not colorable."""
    if k < 3:
        raise PreconditionError("k must be >= 3", witness=k)
    pairs = list(combinations(range(1, k + 1), 2))
    s = len(pairs)
    x, y = 0, 1
    u = [2 + i for i in range(s)]
    v = [2 + s + i for i in range(s)]
    edges = [(x, y)]
    for i in range(s):
        edges += [(x, u[i]), (x, v[i]), (y, u[i]), (y, v[i]), (u[i], v[i])]
    lists = {x: range(1, k + 1), y: range(1, k + 1)}
    for i, (a, b) in enumerate(pairs):
        lists[u[i]] = lists[v[i]] = (0, a, b)
    meta = GadgetMeta(
        k,
        "fig1",
        "uncolorable",
        claimed={"kappa": 2, "delta": 3, "d_sk": 2},
        labels={"x": x, "y": y, "s": s},
    )
    inst = audit(GadgetInstance(Graph.from_edges(2 + 2 * s, edges), make_lists(lists), meta))
    if k == 3:
        meta.notes.append("for k=3 every degree is >= 3, so S_3 is empty and d(S_3)=0")
    return inst


# ------------------------------------------------------------- 3-connected


def gen_complete_minus_clique(k: int) -> GadgetInstance:
    """``K_{s+3} - E(K_s)`` with ``s = C(k,3)``; not colorable."""
    if k < 3:
        raise PreconditionError("k must be >= 3", witness=k)
    triples = list(combinations(range(1, k + 1), 3))
    s = len(triples)
    x, y, z = 0, 1, 2
    edges = [(x, y), (x, z), (y, z)]
    lists = {x: range(1, k + 1), y: range(1, k + 1), z: range(1, k + 1)}
    for i, t in enumerate(triples):
        v = 3 + i
        edges += [(x, v), (y, v), (z, v)]
        lists[v] = t
    meta = GadgetMeta(
        k,
        "kplus",
        "uncolorable",
        claimed={"kappa": 3, "d_sk": 2},
        labels={"x": x, "y": y, "z": z, "s": s},
    )
    inst = audit(GadgetInstance(Graph.from_edges(3 + s, edges), make_lists(lists), meta))
    if k == 3:
        meta.notes.append("for k=3 the graph is K4, S_3 is empty and d(S_3)=0")
    return inst


# ---------------------------------------------------------- d(S_k)=3 family


def gen_triangle_augmented(base: Graph, base_lists, k: int) -> GadgetInstance:
    """Hang a clique ``K_{k-4}`` on every base vertex, using fresh colors.

    The result is colorable exactly when the base is colorable from its
    4-lists: every pendant clique needs all the fresh colors, so each base
    vertex must take a color from its original list.
    """
    if k not in (5, 6, 7):
        raise PreconditionError("k must be 5, 6 or 7", witness=k)
    base_lists = make_lists(base_lists)
    if base.min_degree() < 4:
        raise PreconditionError("base graph needs minimum degree >= 4", witness=base.min_degree())
    bad = [v for v in range(base.n) if len(base_lists[v]) != 4]
    if bad:
        raise PreconditionError("every base list must have 4 colors", witness=bad)
    t = k - 4
    top = max(max(cs) for cs in base_lists.values())
    fresh = list(range(top + 1, top + 1 + t))
    edges = list(base.sorted_edges())
    lists: dict[int, frozenset[int]] = {v: base_lists[v] | frozenset(fresh) for v in range(base.n)}
    nxt = base.n
    for v in range(base.n):
        clique = list(range(nxt, nxt + t))
        nxt += t
        edges += [(v, c) for c in clique]
        edges += list(combinations(clique, 2))
        for c in clique:
            lists[c] = frozenset(fresh)
    meta = GadgetMeta(
        k,
        "thm7",
        None,
        claimed={"d_sk": 3, "kappa": 1},
        labels={"base_n": base.n, "t": t},
    )
    meta.notes.append("colorable iff the base graph is colorable from its 4-lists")
    return audit(GadgetInstance(Graph.from_edges(nxt, edges), make_lists(lists), meta))


# -------------------------------------------------------------------- k = 5

# corner triples (as frame labels) and prescribed colors per face; "a"/"b"
# stand for the colors of x and y
H_FACES = (
    (("u1", "u2", "x"), (2, 1, "a")),
    (("u1", "u2", "y"), (3, 1, "b")),
    (("u2", "u3", "x"), (2, 3, "a")),
    (("u2", "u3", "y"), (3, 2, "b")),
    (("u3", "u4", "x"), (1, 2, "a")),
    (("u3", "u4", "y"), (1, 3, "b")),
)
H_SIZE = 30


def _h_copy(frame: dict[str, int], first: int, a: int, b: int):
    """Edges and lists of one face-filled copy; interior ids start at ``first``."""
    edges = []
    lists = {}
    for lab in ("u1", "u2", "u3", "u4"):
        lists[frame[lab]] = (a, b, 1, 2, 3)
        edges += [(frame["x"], frame[lab]), (frame["y"], frame[lab])]
    edges += [(frame["u1"], frame["u2"]), (frame["u2"], frame["u3"]), (frame["u3"], frame["u4"])]
    nxt = first
    faces = []
    for corners, colors in H_FACES:
        al, be, ga = (a if c == "a" else b if c == "b" else c for c in colors)
        pa, pb, pg = (frame[c] for c in corners)
        w1, w2, w3, z = nxt, nxt + 1, nxt + 2, nxt + 3
        nxt += 4
        edges += [(w1, w2), (w2, w3), (w1, w3)]
        edges += [(w1, pa), (w1, pb), (w2, pb), (w2, pg), (w3, pa), (w3, pg)]
        edges += [(z, w1), (z, w2), (z, w3)]
        lists[w1] = (al, be, 4, 5, 6)
        lists[w2] = (be, ga, 4, 5, 6)
        lists[w3] = (al, ga, 4, 5, 6)
        lists[z] = (4, 5, 6)
        faces.append((w1, w2, w3, z))
    return edges, lists, faces, nxt


def gen_H_k5(a: int = 7, b: int = 12) -> GadgetInstance:
    """The 30-vertex building block with ``L(x)={a}``, ``L(y)={b}``."""
    if a in range(1, 7) or b in range(1, 7) or a == b:
        raise ColorClash(f"colors a={a}, b={b} must be distinct and outside 1..6")
    frame = {"x": 0, "y": 1, "u1": 2, "u2": 3, "u3": 4, "u4": 5}
    edges, lists, faces, nxt = _h_copy(frame, 6, a, b)
    lists[0] = (a,)
    lists[1] = (b,)
    meta = GadgetMeta(5, "h5", "uncolorable", labels=dict(frame))
    g = Graph.from_edges(nxt, edges)
    inst = GadgetInstance(g, make_lists(lists), meta)
    meta.computed.update(n=g.n, m=g.m)
    return inst


G5_COPIES = 25


def gen_G_k5() -> GadgetInstance:
    """25 copies of H sharing ``x*`` and ``y*``, chained ``u4 -> u1``.

    Copy ``c = 5*i + j`` (``0 <= i, j < 5``) uses ``(a, b) = (7+i, 12+j)``.
    """
    xs, ys = 0, 1
    edges = []
    lists: dict[int, tuple] = {xs: tuple(range(7, 12)), ys: tuple(range(12, 17))}
    nxt = 2
    frames = []
    for c in range(G5_COPIES):
        i, j = divmod(c, 5)
        frame = {"x": xs, "y": ys, "u1": nxt, "u2": nxt + 1, "u3": nxt + 2, "u4": nxt + 3}
        e, ls, _, nxt = _h_copy(frame, nxt + 4, 7 + i, 12 + j)
        edges += e
        lists.update(ls)
        frames.append(frame)
    for c in range(G5_COPIES - 1):
        edges.append((frames[c]["u4"], frames[c + 1]["u1"]))
    g = Graph.from_edges(nxt, edges)
    meta = GadgetMeta(
        5,
        "g5",
        "uncolorable",
        claimed={"d_sk": 4, "kappa": 3},
        trusted=["kappa", "k5_minor_free", "planar"],
        labels={"x": xs, "y": ys},
    )
    inst = GadgetInstance(g, make_lists(lists), meta)
    audit(inst, kappa=False)
    return inst


def g5_copy_vertices(c: int) -> list[int]:
    """Vertex ids of copy ``c`` of :func:`gen_G_k5`, excluding ``x*``, ``y*``."""
    start = 2 + c * (H_SIZE - 2)
    return list(range(start, start + H_SIZE - 2))


def g5_copy_subinstance(inst: GadgetInstance, c: int):
    """Copy ``c`` with ``x*``, ``y*`` precolored by the copy's ``(a, b)``.

    Returns ``(adjacency, lists)`` on the original vertex ids.  Dropping the
    rest of the graph only removes constraints, so uncolorability of this
    piece for every copy means no coloring of the whole graph extends the
    matching colors of ``x*`` and ``y*``.
    """
    i, j = divmod(c, 5)
    keep = set(g5_copy_vertices(c)) | {0, 1}
    adj = {v: frozenset(w for w in inst.graph.adj[v] if w in keep) for v in sorted(keep)}
    lists = {v: inst.lists[v] for v in keep}
    lists[0] = frozenset([7 + i])
    lists[1] = frozenset([12 + j])
    return adj, lists



# ----------------------------------------------------------------- 1-sums


def gen_one_sum(inst: GadgetInstance, v: int) -> GadgetInstance:
    """Two copies of ``inst`` glued at vertex ``v`` only.

    A coloring of the result restricts to a coloring of the first copy, so
    the result is uncolorable whenever ``inst`` is.  ``v`` must already be
    big, so its list size stays ``k``; distances between small clusters of
    different copies pass through ``v``.  Copy two's vertex ``u != v`` gets
    id ``n + u - (u > v)``.
    """
    g, k = inst.graph, inst.meta.k
    if g.degree(v) < k:
        raise PreconditionError(f"glue vertex must have degree >= {k}", witness=v)
    n = g.n

    def twin(u):
        return v if u == v else n + u - (u > v)

    edges = g.sorted_edges() + [(twin(a), twin(b)) for a, b in g.sorted_edges()]
    lists = dict(inst.lists)
    lists.update({twin(u): inst.lists[u] for u in range(n) if u != v})
    meta = GadgetMeta(
        k,
        f"{inst.meta.provenance}+1sum",
        inst.meta.claimed_verdict,
        claimed={**inst.meta.claimed, "kappa": 1},
        trusted=[t for t in inst.meta.trusted if t != "kappa"],
        labels={**inst.meta.labels, "glue": v},
    )
    out = GadgetInstance(Graph.from_edges(2 * n - 1, edges), make_lists(lists), meta)
    audit(out, kappa=False)
    if block_decomposition(out.graph).cut_vertices:
        meta.computed["kappa"] = 1
    return out


def far_big_vertex(inst: GadgetInstance) -> int:
    """A big vertex farthest from the small ones (ties: lowest id)."""
    g, k = inst.graph, inst.meta.k
    small, big = small_big_split(g, k)
    dist = bfs_distances(g.adjacency(), small)
    return min(big, key=lambda u: (-dist.get(u, 0), u))
