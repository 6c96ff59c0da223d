"""Reading and writing the ``p lcol`` instance text format.

::

    # free comment
    # meta k=4
    p lcol 3 2
    e 0 1
    e 1 2
    l 0 1 2
    l 1 1 2
    l 2 3

Vertices are ``0..n-1``; every vertex needs exactly one ``l`` line with at
least one color.  ``# meta key=value`` comments are kept in order.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InstanceParseError
from .graph import Graph, ListAssignment, make_lists

META_PREFIX = "# meta "


@dataclass(frozen=True)
class Instance:
    graph: Graph
    lists: ListAssignment
    meta: tuple[str, ...] = field(default=())

    def meta_dict(self) -> dict[str, str]:
        out = {}
        for line in self.meta:
            key, sep, value = line.partition("=")
            if sep:
                out[key.strip()] = value.strip()
        return out


def _ints(tokens, cols, lineno, what):
    out = []
    for tok, col in zip(tokens, cols):
        try:
            value = int(tok)
        except ValueError:
            raise InstanceParseError(f"expected an integer {what}, got {tok!r}", lineno, col) from None
        if value < 0:
            raise InstanceParseError(f"negative {what} {value}", lineno, col)
        out.append(value)
    return out


def _tokens(line):
    # (token, 1-based column) pairs
    out, col = [], 0
    for tok in line.split():
        col = line.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def parse_document(text: str) -> Instance:
    header = None
    edges: dict[tuple[int, int], int] = {}
    lists: dict[int, list[int]] = {}
    meta: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            stripped = raw.strip()
            if stripped.startswith(META_PREFIX):
                meta.append(stripped[len(META_PREFIX):].strip())
            continue
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        kind, kcol = toks[0]
        words = [t for t, _ in toks[1:]]
        cols = [c for _, c in toks[1:]]
        if kind == "p":
            if header is not None:
                raise InstanceParseError("second problem line", lineno, kcol)
            if len(words) != 3 or words[0] != "lcol":
                raise InstanceParseError("expected 'p lcol <n> <m>'", lineno, kcol)
            header = tuple(_ints(words[1:], cols[1:], lineno, "count"))
            continue
        if header is None:
            raise InstanceParseError(f"{kind!r} line before the problem line", lineno, kcol)
        n = header[0]
        if kind == "e":
            if len(words) != 2:
                raise InstanceParseError("expected 'e <u> <v>'", lineno, kcol)
            u, v = _ints(words, cols, lineno, "vertex")
            for x, col in ((u, cols[0]), (v, cols[1])):
                if x >= n:
                    raise InstanceParseError(f"vertex {x} out of range for n={n}", lineno, col)
            if u == v:
                raise InstanceParseError(f"self-loop at vertex {u}", lineno, cols[1])
            key = (min(u, v), max(u, v))
            if key in edges:
                raise InstanceParseError(f"duplicate edge {key} (first on line {edges[key]})", lineno, kcol)
            edges[key] = lineno
        elif kind == "l":
            if not words:
                raise InstanceParseError("expected 'l <v> <c1> ...'", lineno, kcol)
            (v,) = _ints(words[:1], cols[:1], lineno, "vertex")
            if v >= n:
                raise InstanceParseError(f"list for unknown vertex {v} (n={n})", lineno, cols[0])
            if v in lists:
                raise InstanceParseError(f"second list for vertex {v}", lineno, kcol)
            colors = _ints(words[1:], cols[1:], lineno, "color")
            if not colors:
                raise InstanceParseError(f"empty list for vertex {v}", lineno, cols[0])
            if len(set(colors)) != len(colors):
                raise InstanceParseError(f"repeated color in list of vertex {v}", lineno, cols[0])
            lists[v] = colors
        else:
            raise InstanceParseError(f"unknown line type {kind!r}", lineno, kcol)
    if header is None:
        raise InstanceParseError("missing 'p lcol <n> <m>' line")
    n, m = header
    if len(edges) != m:
        raise InstanceParseError(f"header declares {m} edges but {len(edges)} were given")
    missing = [v for v in range(n) if v not in lists]
    if missing:
        raise InstanceParseError(f"no list for vertices {missing[:10]}")
    graph = Graph.from_edges(n, sorted(edges))
    return Instance(graph, make_lists(lists), tuple(meta))


def parse_instance(text: str) -> tuple[Graph, ListAssignment]:
    inst = parse_document(text)
    return inst.graph, inst.lists


def write_instance(g: Graph, lists: Mapping[int, Iterable[int]], meta: Iterable[str] = ()) -> str:
    """Canonical text: meta lines, header, sorted edges, lists by vertex."""
    out = [f"{META_PREFIX}{line}" for line in meta]
    out.append(f"p lcol {g.n} {g.m}")
    out += [f"e {u} {v}" for u, v in g.sorted_edges()]
    for v in range(g.n):
        out.append(" ".join(["l", str(v), *map(str, sorted(lists[v]))]))
    return "\n".join(out) + "\n"
