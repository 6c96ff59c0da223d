"""Planar triangulations used as high-degree frames, described by their faces.

Only the combinatorics matter: a frame is a vertex count plus a list of
triangular faces.  Anything drawn inside a single face, attached only to
that face's corners, keeps the whole graph planar.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class Frame:
    name: str
    n: int
    faces: tuple[tuple[int, int, int], ...]

    def edges(self) -> list[tuple[int, int]]:
        es = set()
        for f in self.faces:
            for a, b in combinations(sorted(f), 2):
                es.add((a, b))
        return sorted(es)

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in range(self.n)}
        for a, b in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def faces_at(self, v: int) -> list[tuple[int, int, int]]:
        return [f for f in self.faces if v in f]


def icosahedron() -> Frame:
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    faces = []
    for i in range(5):
        u, u1 = 1 + i, 1 + (i + 1) % 5
        d, d1 = 6 + i, 6 + (i + 1) % 5
        faces += [(0, u, u1), (11, d, d1), (u, u1, d), (u1, d, d1)]
    return Frame("icosahedron", 12, tuple(tuple(sorted(f)) for f in faces))


def geodesic(nu: int) -> Frame:
    """Icosahedron with every face cut into ``nu**2`` triangles.

    Has ``10*nu**2 + 2`` vertices: the twelve original ones keep degree 5
    and lie at pairwise distance ``nu``; all others have degree 6.
    """
    if nu < 1:
        raise ValueError("nu must be >= 1")
    base = icosahedron()
    ids: dict[frozenset, int] = {}

    def vid(pt):
        key = frozenset((c, w) for c, w in pt if w)
        if key not in ids:
            ids[key] = len(ids)
        return ids[key]

    # original corners first so they keep ids 0..11
    for v in range(12):
        vid(((v, nu),))
    faces = []
    for a, b, c in base.faces:
        def p(i, j, l, a=a, b=b, c=c):
            return vid(((a, i), (b, j), (c, l)))

        for i in range(nu + 1):
            for j in range(nu + 1 - i):
                l = nu - i - j
                if i >= 1:
                    faces.append((p(i, j, l), p(i - 1, j + 1, l), p(i - 1, j, l + 1)))
                if j >= 1 and l >= 1:
                    faces.append((p(i, j, l), p(i + 1, j - 1, l), p(i + 1, j, l - 1)))
    return Frame(f"geodesic{nu}", len(ids), tuple(tuple(sorted(f)) for f in faces))


FRAMES = {"icosahedron": icosahedron, "geodesic2": lambda: geodesic(2), "geodesic3": lambda: geodesic(3)}


def frame_by_name(name: str) -> Frame:
    if name.startswith("geodesic") and name[8:].isdigit():
        return geodesic(int(name[8:]))
    if name not in FRAMES:
        raise ValueError(f"unknown frame {name!r}")
    return FRAMES[name]()
