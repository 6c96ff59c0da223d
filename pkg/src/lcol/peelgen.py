"""Seeded positive instances for the peeling colorers.

A planar triangulation (the frame) supplies the big-degree vertices.  Each
small-degree cluster is a fixed shape drawn inside one frame face and joined
to the face corners, or to a ring of extra big vertices inside the face
when clusters must be four or more apart.  Every join pattern triangulates
the annulus between two nested closed walks, so the result stays planar.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

import networkx as nx

from .errors import InfeasibleOptions, PreconditionError
from .frames import Frame, frame_by_name, geodesic, icosahedron
from .gadgets import AUDIT_LIMIT, GadgetInstance, GadgetMeta, audit
from .graph import Graph, bfs_distances, component_distance, make_lists, small_big_split
from .structure import small_vertex_cut, vertex_connectivity

# shape: vertex count, edges, outer boundary walk; vertices missing from the
# walk are drawn inside and get no frame neighbours
_K3 = [(0, 1), (0, 2), (1, 2)]
_K4 = _K3 + [(0, 3), (1, 3), (2, 3)]


def _cycle(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def _clique(vs):
    return list(combinations(vs, 2))


SHAPES: dict[str, tuple[int, list[tuple[int, int]], list[int]]] = {
    "K1": (1, [], [0]),
    "K2": (2, [(0, 1)], [0, 1]),
    "K3": (3, _K3, [0, 1, 2]),
    "K4": (4, _K4, [0, 1, 2]),
    "diamond": (4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], [0, 1, 3, 2]),
    "P3": (3, [(0, 1), (1, 2)], [0, 1, 2, 1]),
    "P4": (4, [(0, 1), (1, 2), (2, 3)], [0, 1, 2, 3, 2, 1]),
    "K3.K2": (4, _K3 + [(2, 3)], [0, 1, 2, 3, 2]),
    "K4.K2": (5, _K4 + [(2, 4)], [0, 1, 2, 4, 2]),
    "K3.K3": (5, _K3 + _clique([2, 3, 4]), [0, 1, 2, 3, 4, 2]),
    "K3.K4": (6, _K3 + _clique([2, 3, 4, 5]), [0, 1, 2, 3, 4, 2]),
    "K4.K4": (7, _K4 + _clique([0, 4, 5, 6]), [0, 1, 2, 0, 4, 5]),
    "C5.K2": (6, _cycle(list(range(5))) + [(0, 5)], [0, 1, 2, 3, 4, 0, 5]),
    "C5.K3": (7, _cycle(list(range(5))) + _clique([0, 5, 6]), [0, 1, 2, 3, 4, 0, 5, 6]),
    "K4.C5": (8, _K4 + _cycle([0, 4, 5, 6, 7]), [0, 1, 2, 0, 4, 5, 6, 7]),
    # end blocks hanging inside, attached only through their cut vertex
    "K4+K1": (5, _K4 + [(0, 4)], [0, 1, 2]),
    "K3+K1": (4, _K3 + [(0, 3)], [0, 1, 2]),
    # host block for the nested K4 template; vertex 3 is the shared cut vertex
    "K4c": (4, _K4, [0, 1, 2]),
}
_CYCLE_NAME = re.compile(r"C(\d+)(\+K1|\+K3)?$")

DEFAULT_FILLER = ("K3", "K4", "C5", "P3", "K3.K2", "C5.K2", "K3.K3", "K4.K4", "P4", "K2", "K1")
RING_FILLER = ("C9", "C11", "C13", "C15", "C17", "C19", "C21", "C23", "C25")


def shape(name: str) -> tuple[int, list[tuple[int, int]], list[int]]:
    """Vertex count, edges and boundary walk of a named shape.

    Besides the fixed table, ``C<n>`` is a cycle, ``C<n>+K1`` adds a pendant
    vertex inside it and ``C<n>+K3`` a triangle hanging inside at vertex 0.
    """
    if name in SHAPES:
        return SHAPES[name]
    m = _CYCLE_NAME.match(name)
    if not m or int(m.group(1)) < 3:
        raise ValueError(f"unknown shape {name!r}")
    n = int(m.group(1))
    edges = _cycle(list(range(n)))
    if m.group(2) == "+K1":
        return n + 1, edges + [(0, n)], list(range(n))
    if m.group(2) == "+K3":
        return n + 2, edges + _clique([0, n, n + 1]), list(range(n))
    return n, edges, list(range(n))


@dataclass(frozen=True)
class PeelOptions:
    shapes: tuple[str, ...] = ()  # each placed at least once
    filler: tuple[str, ...] = DEFAULT_FILLER
    ring_filler: tuple[str, ...] = RING_FILLER  # shapes for ringed cells
    frame: str | None = None
    template: str | None = None  # None, "7a" or "7b"
    equal_lists: bool = True
    kappa: int | None = None  # lower bound on connectivity, at most 3
    max_kappa: int | None = None  # upper bound on connectivity
    max_cells: int = 6  # used only when no frame vertex needs extra degree
    palette_extra: int = 3
    max_tries: int = 40

    def __post_init__(self):
        for s in (*self.shapes, *self.filler, *self.ring_filler):
            shape(s)
        if self.template not in (None, "7a", "7b"):
            raise ValueError(f"unknown template {self.template!r}")
        if self.kappa is not None and self.kappa > 3:
            raise ValueError("kappa lower bounds above 3 are not supported")
        if self.kappa and self.max_kappa is not None and self.max_kappa < self.kappa:
            raise ValueError("max_kappa < kappa")


@dataclass
class _Cell:
    corners: tuple[int, ...]
    face: tuple[int, int, int]
    shape: str
    attach: dict[int, set[int]]  # shape vertex -> corners, or ring positions
    ring: int = 0
    ring_attach: dict[int, set[int]] = field(default_factory=dict)  # ring position -> corners


@dataclass
class _World:
    frame: Frame
    cells: list[_Cell]

    def build(self, offset: int) -> tuple[int, list[tuple[int, int]], list[tuple[str, list[int]]]]:
        """Edges on ids starting at ``offset``; frame vertices come first."""
        edges = [(a + offset, b + offset) for a, b in self.frame.edges()]
        nxt = offset + self.frame.n
        placed = []
        for cell in self.cells:
            ring = list(range(nxt, nxt + cell.ring))
            nxt += cell.ring
            if ring:
                edges += _cycle(ring)
                for pos, cs in cell.ring_attach.items():
                    edges += [(ring[pos], c + offset) for c in sorted(cs)]
            size, sedges, _ = shape(cell.shape)
            ids = list(range(nxt, nxt + size))
            nxt += size
            edges += [(ids[a], ids[b]) for a, b in sedges]
            for sv, ts in cell.attach.items():
                edges += [(ids[sv], ring[t] if ring else t + offset) for t in sorted(ts)]
            placed.append((cell.shape, ids))
        return nxt, edges, placed


# ----------------------------------------------------------- join patterns


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _pattern(walk, inc, c):
    attach: dict[int, set[int]] = {}
    t = 0
    for p, step_count in enumerate(inc):
        for step in range(step_count + 1):
            attach.setdefault(walk[p], set()).add((t + step) % c)
        t += step_count
    return tuple(sorted((sv, frozenset(cs)) for sv, cs in attach.items()))


EXHAUSTIVE_PATTERNS = 5000


def _patterns(walk, c, rng, samples=3000):
    """Ways to join a closed walk to ``c`` targets in cyclic order, no crossings.

    Position ``p`` sees targets ``t_p .. t_p + inc_p`` (cyclically); the
    increments sum to ``c``, so the joins triangulate the annulus between
    the walk and the targets.  Enumerated when few, sampled otherwise.
    """
    walk = tuple(walk)
    if comb(len(walk) + c - 1, c - 1) <= EXHAUSTIVE_PATTERNS:
        incs = list(_compositions(c, len(walk)))
        rng.shuffle(incs)
    else:
        incs = (_random_composition(c, len(walk), rng) for _ in range(samples))
    # lazy: callers usually stop at the first fit
    return (_pattern(walk, inc, c) for inc in incs)


def _random_composition(total, parts, rng):
    inc = [0] * parts
    for _ in range(total):
        inc[rng.randrange(parts)] += 1
    return inc


def _fit_shape(name, targets, need, k, rng, strict3):
    """Join pattern giving every target ``need[t]`` shape neighbours, or None."""
    size, sedges, walk = shape(name)
    sdeg = [0] * size
    for a, b in sedges:
        sdeg[a] += 1
        sdeg[b] += 1
    if any(d >= k for d in sdeg):
        return None
    if len(walk) + len(targets) < sum(need[t] for t in targets):
        return None
    # targets lie on a cycle: only rotations and reflections keep joins planar
    ts = list(targets)
    shift = rng.randrange(len(ts))
    ts = ts[shift:] + ts[:shift]
    if rng.random() < 0.5:
        ts.reverse()
    found = _join_search(walk, sdeg, [need[t] for t in ts], k, strict3, rng)
    if found is None:
        return None
    return {sv: {ts[i] for i in idx} for sv, idx in found.items()}


JOIN_SEARCH_NODES = 20_000


def _join_search(walk, sdeg, need, k, strict3, rng, max_nodes=JOIN_SEARCH_NODES):
    """Depth-first choice of the increments of a join pattern (see ``_patterns``).

    Target ``j >= 1`` is final once the walk has moved past it, so its count
    is checked there; target 0 is shared by the first and last positions and
    is checked at the end.  Increments are tried in a seeded random order.
    Returns ``{shape vertex: target indices}`` or None.
    """
    c, steps = len(need), len(walk)
    attach: dict[int, set[int]] = {}
    hits = [set() for _ in range(c)]
    nodes = 0

    def place(sv, lo, hi):
        added = []
        mine = attach.setdefault(sv, set())
        for j in range(lo, hi + 1):
            j %= c
            if j not in mine:
                mine.add(j)
                added.append(j)
            hits[j].add(sv)
        return added

    def undo(sv, added, lo, hi):
        for j in added:
            attach[sv].discard(j)
        for j in range(lo, hi + 1):
            j %= c
            if j not in attach[sv]:
                hits[j].discard(sv)

    def rec(p, t):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            return False
        if p == steps:
            if len(hits[0]) < need[0]:
                return False
            return not strict3 or all(sdeg[sv] + len(attach.get(sv, ())) >= 3 for sv in range(len(sdeg)))
        sv = walk[p]
        options = [c - t] if p == steps - 1 else list(range(c - t + 1))
        rng.shuffle(options)
        for inc in options:
            added = place(sv, t, t + inc)
            if sdeg[sv] + len(attach[sv]) < k and all(len(hits[j]) >= need[j] for j in range(max(t, 1), t + inc)):
                if rec(p + 1, t + inc):
                    return True
            undo(sv, added, t, t + inc)
        return False

    if not rec(0, 0):
        return None
    return {sv: set(js) for sv, js in attach.items() if js}


# ------------------------------------------------------------- plain cells


def _place_cells(frame, k, opts, rng, required, extra, banned_vertices, banned_faces, spacing, budget=20_000):
    deg = {v: len(ns) + extra.get(v, 0) for v, ns in frame.adjacency().items()}
    need = {v: max(0, k - deg[v]) for v in range(frame.n)}
    must = sorted(v for v in range(frame.n) if need[v] > 0 and v not in banned_vertices)
    if any(need[v] > 0 for v in banned_vertices):
        return None
    dist = {}
    if spacing > 3:
        fadj = frame.adjacency()
        dist = {v: bfs_distances(fadj, [v]) for v in range(frame.n)}
    sizes = (3,) if opts.kappa else (1, 2, 3)
    strict3 = bool(opts.kappa)
    for name in required:
        fits = any(
            _fit_shape(name, cs, need, k, rng, strict3)
            for face in frame.faces
            if face not in banned_faces and not set(face) & banned_vertices
            for size in sizes
            for cs in combinations(face, size)
        )
        if not fits:
            return None
    used_vertices: set[int] = set(banned_vertices)
    used_faces: set[tuple] = set(banned_faces)
    cells: list[_Cell] = []
    steps = [0]

    def far_enough(cs):
        if spacing <= 3:
            return True
        return all(dist[a][b] >= spacing - 2 for a in cs for cell in cells for b in cell.corners)

    def options_at(v):
        faces = frame.faces_at(v)
        rng.shuffle(faces)
        for face in faces:
            if face in used_faces:
                continue
            free = [u for u in face if u not in used_vertices and u != v]
            for size in sorted(sizes, key=lambda s: rng.random()):
                for rest in combinations(free, size - 1):
                    cs = (v, *rest)
                    if far_enough(cs):
                        yield face, cs

    def shapes_to_try():
        placed = {c.shape for c in cells}
        first = [s for s in required if s not in placed]
        rest = [s for s in opts.filler if s not in first]
        rng.shuffle(first)
        rng.shuffle(rest)
        return first + rest

    def add(cell):
        cells.append(cell)
        used_vertices.update(cell.corners)
        used_faces.add(cell.face)

    def drop():
        cell = cells.pop()
        used_vertices.difference_update(cell.corners)
        used_faces.discard(cell.face)

    def dfs(todo):
        steps[0] += 1
        if steps[0] > budget:
            return False
        todo = [v for v in todo if v not in used_vertices]
        if not todo:
            placed = {c.shape for c in cells}
            return all(s in placed for s in required)
        # fewest open faces first; a vertex with none is a dead end
        counts = {u: sum(1 for _ in options_at(u)) for u in todo}
        v = min(todo, key=lambda u: (counts[u], u))
        if counts[v] == 0:
            return False
        for face, cs in options_at(v):
            for name in shapes_to_try():
                attach = _fit_shape(name, cs, need, k, rng, strict3)
                if attach is None:
                    continue
                add(_Cell(cs, face, name, attach))
                if dfs(todo):
                    return True
                drop()
                break  # one shape per corner choice keeps the search small
        return False

    if must:
        return _World(frame, cells) if dfs(must) else None
    # nothing is forced: place the required shapes and then some filler
    pool = [v for v in range(frame.n) if v not in banned_vertices]
    rng.shuffle(pool)
    for v in pool:
        if len(cells) >= max(opts.max_cells, len(required)):
            break
        if v in used_vertices:
            continue
        for face, cs in options_at(v):
            name = shapes_to_try()[0]
            attach = _fit_shape(name, cs, need, k, rng, strict3)
            if attach is not None:
                add(_Cell(cs, face, name, attach))
                break
    placed = {c.shape for c in cells}
    return _World(frame, cells) if all(s in placed for s in required) else None


# ------------------------------------------------------------ ringed cells


def _face_packing(frame, rng, budget=20_000):
    """Vertex-disjoint faces covering every frame vertex, or None."""
    chosen: list[tuple] = []
    covered: set[int] = set()
    steps = [0]

    def dfs():
        steps[0] += 1
        if steps[0] > budget:
            return False
        free = [v for v in range(frame.n) if v not in covered]
        if not free:
            return True
        opts = {v: [f for f in frame.faces_at(v) if not set(f) & covered] for v in free}
        v = min(free, key=lambda u: (len(opts[u]), u))
        faces = opts[v]
        rng.shuffle(faces)
        for f in faces:
            chosen.append(f)
            covered.update(f)
            if dfs():
                return True
            chosen.pop()
            covered.difference_update(f)
        return False

    return list(chosen) if dfs() else None


def _place_ringed(frame, k, opts, rng, spacing):
    """Cells with a ring of big vertices between the corners and the shape.

    Spacing 4 rings every face; spacing 5 rings a set of vertex-disjoint
    faces covering the frame, so corners of different cells are distinct.
    """
    deg = {v: len(ns) for v, ns in frame.adjacency().items()}
    if spacing == 4:
        holes = list(frame.faces)
    else:
        holes = _face_packing(frame, rng)
        if holes is None:
            return None
    per_corner = {v: 0 for v in range(frame.n)}
    for f in holes:
        for v in f:
            per_corner[v] += 1
    if any(per_corner[v] == 0 and deg[v] < k for v in range(frame.n)):
        return None
    need = {v: -(-max(0, k - deg[v]) // max(1, per_corner[v])) for v in range(frame.n)}
    strict3 = bool(opts.kappa)
    required = list(opts.shapes)
    rng.shuffle(required)
    cells = []
    for i, face in enumerate(holes):
        names = ([required[i]] if i < len(required) else []) + rng.sample(opts.ring_filler, len(opts.ring_filler))
        cell = None
        for r in rng.sample(range(3, 9), 6):
            ring_attach = _fit_ring(face, r, need, rng, strict3)
            if ring_attach is None:
                continue
            ring_need = {p: max(0, k - 2 - len(ring_attach.get(p, ()))) for p in range(r)}
            for name in names:
                attach = _fit_shape(name, tuple(range(r)), ring_need, k, rng, strict3)
                if attach is not None:
                    cell = _Cell(face, face, name, attach, ring=r, ring_attach=ring_attach)
                    break
            if cell is not None or (i < len(required)):
                break
        if cell is None:
            return None
        cells.append(cell)
    if len(holes) < len(required):
        return None
    return _World(frame, cells)


def _linked(attach, corners):
    # three ring positions matched to distinct corners, else a 2-cut exists
    return any(
        all(c in attach.get(p, ()) for p, c in zip(ps, perm))
        for ps in combinations(sorted(attach), 3)
        for perm in permutations(corners)
    )


def _fit_ring(face, r, need, rng, strict3=False):
    corners = rng.sample(list(face), 3)
    for pattern in _patterns(range(r), 3, rng):
        attach = {p: {corners[i] for i in idx} for p, idx in pattern}
        if strict3 and not _linked(attach, corners):
            continue
        got = dict.fromkeys(face, 0)
        for cs in attach.values():
            for c in cs:
                got[c] += 1
        if all(got[c] >= need[c] for c in face):
            return attach
    return None


# --------------------------------------------------------------- k = 6


def _far_face(frame, sources):
    dist = bfs_distances(frame.adjacency(), sources)
    return max(frame.faces, key=lambda f: (min(dist[v] for v in f), tuple(-v for v in f)))


def _attempt_k6(spacing, opts, rng):
    """Geodesic frames whose degree-5 corners are the small vertices."""
    if set(opts.shapes) - {"K1"} or opts.template:
        raise InfeasibleOptions("for k=6 only single-vertex clusters are generated")
    nu = max(spacing, 2) + rng.randrange(2)
    frame = geodesic(nu)
    edges = frame.edges()
    if opts.max_kappa is not None and opts.max_kappa <= 2:
        # two copies glued along an edge far from the corners: a 2-cut
        a, b = sorted(_far_face(frame, range(12)))[:2]
        n = frame.n
        rest = [v for v in range(n) if v not in (a, b)]
        m = {v: n + i for i, v in enumerate(rest)}
        m[a], m[b] = a, b
        edges = edges + [(m[u], m[v]) for u, v in frame.edges()]
        return 2 * n - 2, edges, [("K1", [v]) for v in range(12)] + [("K1", [m[v]]) for v in range(12)], {"frame": f"{frame.name}x2"}
    if opts.kappa:
        # one degree-3 vertex inside a face far from the corners
        face = _far_face(frame, range(12))
        while min(bfs_distances(frame.adjacency(), range(12))[v] for v in face) + 1 < spacing:
            frame = geodesic(int(frame.name[8:]) + 1)
            edges = frame.edges()
            face = _far_face(frame, range(12))
        apex = frame.n
        edges = edges + [(v, apex) for v in face]
        return frame.n + 1, edges, [("K1", [v]) for v in range(12)] + [("K1", [apex])], {"frame": f"{frame.name}+apex"}
    return frame.n, edges, [("K1", [v]) for v in range(12)], {"frame": frame.name}


# ------------------------------------------------------------- templates


def _relabel(n, edges, first):
    order = list(first) + [v for v in range(n) if v not in set(first)]
    index = {v: i for i, v in enumerate(order)}
    return [(index[a], index[b]) for a, b in edges], index


def _attempt_template(k, spacing, opts, rng):
    """Two K4 blocks sharing a vertex, with the far side of one block closed off.

    The end block ``{v1, v2, v3, v4}`` gets the smallest ids; ``v2..v4`` see
    only a second frame placed inside their triangle, through one vertex
    (``7b``) or through a face, each frame vertex seeing two of them (``7a``).
    """
    if k != 8 or spacing > 3:
        raise InfeasibleOptions("the nested K4 template is built for k=8 and spacing <= 3 only")
    outer = None
    for name in _frames_for(opts):
        outer = _place_cells(frame_by_name(name), k, opts, rng, ("K4c", *opts.shapes), {}, set(), set(), spacing)
        if outer is not None:
            break
    if outer is None:
        return None
    if opts.template == "7b":
        inner_frame = icosahedron()
        face = rng.choice(inner_frame.faces_at(0))
        zs = [0]
        band = [(0, 0), (1, 0), (2, 0)]  # (index into v2..v4, index into zs)
        extra = {0: 3}
    else:
        inner_frame = geodesic(2)
        deg = {v: len(ns) for v, ns in inner_frame.adjacency().items()}
        face = rng.choice([f for f in inner_frame.faces if all(deg[u] == 6 for u in f)])
        zs = list(face)
        # hexagonal band: v_i sees z_i and z_{i+1}
        band = [(i, i) for i in range(3)] + [(i, (i + 1) % 3) for i in range(3)]
        extra = {z: 2 for z in zs}
    opts_in = PeelOptions(filler=opts.filler, equal_lists=opts.equal_lists, kappa=opts.kappa)
    inner = _place_cells(inner_frame, k, opts_in, rng, (), extra, set(zs), {face}, spacing)
    if inner is None:
        return None
    n1, edges, placed = outer.build(0)
    host = next(ids for name, ids in placed if name == "K4c")
    v1 = host[3]
    vs = [n1, n1 + 1, n1 + 2]
    edges += _clique(vs) + [(v1, v) for v in vs]
    n2, e2, placed2 = inner.build(n1 + 3)
    edges += e2
    edges += [(vs[i], zs[j] + n1 + 3) for i, j in band]
    placed = placed + placed2 + [("K4-end", [v1, *vs])]
    edges, index = _relabel(n2, edges, [*vs, v1])
    placed = [(name, [index[v] for v in ids]) for name, ids in placed]
    info = {"frame": f"{outer.frame.name}+{inner_frame.name}", "z": [index[z + n1 + 3] for z in zs]}
    return n2, edges, placed, info


# ------------------------------------------------------------------ driver


def _frames_for(opts):
    return [opts.frame] if opts.frame else ["icosahedron", "geodesic2"]


def _attempt(k, spacing, opts, rng):
    if k == 6:
        return _attempt_k6(spacing, opts, rng)
    if opts.template is not None:
        return _attempt_template(k, spacing, opts, rng)
    if k >= 7 and spacing >= 4:
        world = _place_ringed(frame_by_name(opts.frame or "icosahedron"), k, opts, rng, spacing)
        if world is None:
            return None
        n, edges, placed = world.build(0)
        return n, edges, placed, {"frame": f"{world.frame.name}-ringed"}
    for name in _frames_for(opts):
        world = _place_cells(frame_by_name(name), k, opts, rng, opts.shapes, {}, set(), set(), spacing)
        if world is not None:
            n, edges, placed = world.build(0)
            return n, edges, placed, {"frame": name}
    return None


def _kappa_ok(g: Graph, opts: PeelOptions) -> bool:
    if opts.kappa and opts.kappa >= 3 and small_vertex_cut(g) is not None:
        return False
    if opts.max_kappa is None:
        return True
    if small_vertex_cut(g) is not None:
        return True
    if opts.max_kappa <= 2:
        return False
    if g.min_degree() <= opts.max_kappa:
        return True
    return vertex_connectivity(g) <= opts.max_kappa


def _peel_lists(g: Graph, k, opts, rng):
    palette = list(range(1, k + opts.palette_extra + 1))
    perm = rng.sample(palette, len(palette))
    lists = {}
    for v in range(g.n):
        d = g.degree(v)
        if d >= k:
            lists[v] = sorted(rng.sample(palette, k))
        elif opts.equal_lists:
            lists[v] = sorted(perm[:d])
        else:
            lists[v] = sorted(rng.sample(palette, d))
    return lists


def gen_peel_instance(seed: int, k: int, spacing: int = 3, options: PeelOptions | None = None) -> GadgetInstance:
    """Planar instance whose small-degree clusters are chosen Gallai-tree shapes.

    Every frame vertex reaches degree ``k``, clusters are at distance at
    least ``spacing`` (exactly ``spacing`` for ringed cells), and the lists
    form a seeded f-assignment.  For ``k = 6`` the frame's own degree-5
    vertices are the clusters.  ``meta.computed`` holds the audited values.
    """
    opts = options or PeelOptions()
    if k < 5:
        raise PreconditionError("k must be >= 5", witness=k)
    if spacing < 2:
        raise PreconditionError("spacing must be >= 2", witness=spacing)
    if k >= 7 and spacing > 5:
        raise InfeasibleOptions(f"spacing {spacing} > 5 would leave frame vertices of degree < {k}")
    for attempt in range(opts.max_tries):
        rng = random.Random(seed * 7919 + attempt)
        res = _attempt(k, spacing, opts, rng)
        if res is None:
            continue
        n, edges, placed, info = res
        g = Graph.from_edges(n, sorted({(min(a, b), max(a, b)) for a, b in edges}))
        small, _ = small_big_split(g, k)
        d = component_distance(g, small)
        if d != 0 and d < spacing:
            continue
        if not _kappa_ok(g, opts):
            continue
        lists = _peel_lists(g, k, opts, rng)
        meta = GadgetMeta(k, "peel", "colorable", labels={"seed": seed, "attempt": attempt})
        meta.notes.append(f"frame={info['frame']}")
        meta.notes.append("shapes=" + ",".join(name for name, _ in placed))
        meta.labels.update({f"z{i}": z for i, z in enumerate(info.get("z", ()))})
        inst = GadgetInstance(g, make_lists(lists), meta, parts=placed)
        meta.computed["planar"] = int(nx.check_planarity(nx.Graph(g.sorted_edges()))[0])
        audit(inst, kappa=g.n <= AUDIT_LIMIT)
        return inst
    raise InfeasibleOptions(f"no instance for k={k}, spacing={spacing}, {opts} after {opts.max_tries} tries")
