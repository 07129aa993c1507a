"""Finite directed graphs, the graph DSL, and the graph-theoretic predicates.

Conventions follow the "range/source" style: a finite path is a word
``mu_1 mu_2 ... mu_n`` with ``s(mu_i) == r(mu_{i+1})``, its range is
``r(mu_1)`` and its source is ``s(mu_n)``.  An infinite path therefore moves
from a vertex ``x`` to ``s(e)`` along an edge ``e`` with ``r(e) == x``.

``v <= w`` (:func:`reaches`) holds when some path has range ``v`` and source
``w``, i.e. ``w`` can be reached from ``v`` by walking along infinite-path
direction.  The trivial path makes the relation reflexive.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "Graph",
    "GraphSyntaxError",
    "Validity",
    "parse_graph",
    "format_graph",
    "validate",
    "enumerate_paths",
    "is_path",
    "simple_cycles",
    "canonical_rotation",
    "cycle_entries",
    "condition_L",
    "count_return_paths",
    "return_path_edges",
    "condition_K",
    "reaches",
    "reach_table",
    "cofinal",
    "strongly_connected_components",
    "cycle_vertices",
]

_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


class GraphSyntaxError(ValueError):
    """Raised for malformed graph documents; carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """An immutable finite directed graph ``(E0, E1, r, s)``.

    Vertices and edges are string identifiers; every listing the graph hands
    out is sorted so reports are reproducible.
    """

    __slots__ = ("vertices", "edges", "range", "source", "_r_inv", "_s_inv")

    def __init__(self, vertices: Iterable[str], edges: Mapping[str, tuple[str, str]]):
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        rng, src = {}, {}
        for e in sorted(edges):
            r, s = edges[e]
            for x in (r, s):
                if x not in vset:
                    raise ValueError(f"edge {e} uses undeclared vertex {x}")
            rng[e], src[e] = r, s
        r_inv = {v: [] for v in verts}
        s_inv = {v: [] for v in verts}
        for e in rng:
            r_inv[rng[e]].append(e)
            s_inv[src[e]].append(e)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(rng))
        object.__setattr__(self, "range", rng)
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "_r_inv", {v: tuple(es) for v, es in r_inv.items()})
        object.__setattr__(self, "_s_inv", {v: tuple(es) for v, es in s_inv.items()})

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> "Graph":
        """Build from ``(edge, range, source)`` triples."""
        table = {}
        for e, r, s in edges:
            if e in table:
                raise ValueError(f"duplicate edge {e}")
            table[e] = (r, s)
        return cls(vertices, table)

    def r(self, e: str) -> str:
        return self.range[e]

    def s(self, e: str) -> str:
        return self.source[e]

    def r_inv(self, v: str) -> tuple[str, ...]:
        return self._r_inv[v]

    def s_inv(self, v: str) -> tuple[str, ...]:
        return self._s_inv[v]

    def c(self, v: str) -> int:
        """Number of edges with source ``v``; the normalising count of the transfer operator."""
        return len(self._s_inv[v])

    def successors(self, v: str) -> list[str]:
        """Vertices one step further along an infinite path from ``v``."""
        return sorted({self.source[e] for e in self._r_inv[v]})

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertices, self.range, self.source) == (other.vertices, other.range, other.source)

    def __hash__(self):
        return hash((self.vertices, tuple(self.range.items()), tuple(self.source.items())))

    def __repr__(self):
        es = ", ".join(f"{e}:{self.range[e]}<-{self.source[e]}" for e in self.edges)
        return f"Graph(vertices={list(self.vertices)}, edges=[{es}])"


# -- DSL ---------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph DSL.

    Lines are ``vertex <id>`` or ``edge <id> r=<vertex> s=<vertex>``; blank
    lines and lines starting with ``#`` are ignored.  Vertices must be
    declared before an edge uses them, and vertex and edge identifiers share
    one namespace.
    """
    vertices: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2 or not _IDENT.match(parts[1]):
                raise GraphSyntaxError(f"expected 'vertex <id>', got {line!r}", lineno)
            name = parts[1]
            if name in seen:
                raise GraphSyntaxError(f"duplicate identifier {name}", lineno)
            seen.add(name)
            vertices.append(name)
        elif kind == "edge":
            if len(parts) != 4 or not _IDENT.match(parts[1]):
                raise GraphSyntaxError(f"expected 'edge <id> r=<v> s=<v>', got {line!r}", lineno)
            name = parts[1]
            ends = {}
            for item in parts[2:]:
                key, sep, val = item.partition("=")
                if not sep or key not in ("r", "s") or key in ends or not _IDENT.match(val):
                    raise GraphSyntaxError(f"bad endpoint {item!r}", lineno)
                ends[key] = val
            if name in seen:
                raise GraphSyntaxError(f"duplicate identifier {name}", lineno)
            for key in ("r", "s"):
                if ends[key] not in vertices:
                    raise GraphSyntaxError(f"undeclared vertex {ends[key]}", lineno)
            seen.add(name)
            edges[name] = (ends["r"], ends["s"])
        else:
            raise GraphSyntaxError(f"unknown declaration {kind!r}", lineno)
    return Graph(vertices, edges)


def format_graph(g: Graph) -> str:
    """Inverse of :func:`parse_graph` (up to comments and ordering)."""
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e} r={g.r(e)} s={g.s(e)}" for e in g.edges]
    return "\n".join(lines) + "\n"


# -- validity ------------------------------------------------------------------

@dataclass(frozen=True)
class Validity:
    no_sources: bool
    shift_total: bool
    row_finite: bool = True
    column_finite: bool = True
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.no_sources and self.shift_total and self.row_finite and self.column_finite

    def as_dict(self) -> dict:
        return {
            "no_sources": self.no_sources,
            "shift_total": self.shift_total,
            "row_finite": self.row_finite,
            "column_finite": self.column_finite,
            "witnesses": {k: list(v) for k, v in sorted(self.witnesses.items())},
        }


def validate(g: Graph) -> Validity:
    """Report the standing hypotheses; never raises.

    A finite graph is always row- and column-finite, the flags are kept so
    the report has the same shape as the hypotheses it mirrors.
    """
    sources = [v for v in g.vertices if not g.r_inv(v)]
    sinks = [v for v in g.vertices if not g.s_inv(v)]
    witnesses = {}
    if sources:
        witnesses["no_sources"] = sources
    if sinks:
        witnesses["shift_total"] = sinks
    return Validity(no_sources=not sources, shift_total=not sinks, witnesses=witnesses)


# -- paths and cycles ------------------------------------------------------------

def is_path(g: Graph, mu: tuple[str, ...]) -> bool:
    return bool(mu) and all(g.s(a) == g.r(b) for a, b in zip(mu, mu[1:]))


def enumerate_paths(g: Graph, depth: int, start_vertex: str | None = None) -> list:
    """All paths of length ``depth``, sorted lexicographically.

    For ``depth == 0`` the "paths" are the vertices themselves.  With
    ``start_vertex`` only paths of range ``start_vertex`` are returned.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return list(_paths(g, depth, start_vertex))


@lru_cache(maxsize=4096)
def _paths(g: Graph, depth: int, start_vertex: str | None) -> tuple:
    if depth == 0:
        return (start_vertex,) if start_vertex is not None else g.vertices
    if depth == 1:
        es = g.edges if start_vertex is None else g.r_inv(start_vertex)
        return tuple(sorted((e,) for e in es))
    shorter = _paths(g, depth - 1, start_vertex)
    return tuple(sorted(mu + (e,) for mu in shorter for e in g.r_inv(g.s(mu[-1]))))


def canonical_rotation(cycle: tuple[str, ...]) -> tuple[str, ...]:
    return min(cycle[i:] + cycle[:i] for i in range(len(cycle)))


def simple_cycles(g: Graph) -> list[tuple[str, ...]]:
    """Every cycle with pairwise distinct vertices, once, as its minimal rotation."""
    found = set()
    # Grow paths from each base vertex, only through vertices larger than the base,
    # so each cycle is produced from its smallest vertex exactly once per rotation class.
    for base in g.vertices:
        stack = [((e,), {base}) for e in g.r_inv(base)]
        while stack:
            mu, used = stack.pop()
            end = g.s(mu[-1])
            if end == base:
                found.add(canonical_rotation(mu))
                continue
            if end in used or end < base:
                continue
            nused = used | {end}
            for e in g.r_inv(end):
                stack.append((mu + (e,), nused))
    return sorted(found, key=lambda c: (len(c), c))


def cycle_vertices(g: Graph, cycle: tuple[str, ...]) -> list[str]:
    return [g.r(e) for e in cycle]


def cycle_entries(g: Graph, cycle: tuple[str, ...], within: Iterable[str] | None = None) -> list[str]:
    """Edges ``e`` with ``r(e) == r(cycle_j)`` and ``e != cycle_j`` for some ``j``.

    With ``within`` given, only entries whose source lies in that vertex set count.
    """
    inside = None if within is None else set(within)
    out = set()
    for mu_j in cycle:
        for e in g.r_inv(g.r(mu_j)):
            if e != mu_j and (inside is None or g.s(e) in inside):
                out.add(e)
    return sorted(out)


def condition_L(g: Graph) -> tuple[bool, tuple[str, ...] | None]:
    """Every cycle has an entry.  Returns ``(holds, entryless_cycle_or_None)``."""
    for cyc in simple_cycles(g):
        if not cycle_entries(g, cyc):
            return False, cyc
    return True, None


def _reach_avoiding(g: Graph, start: set[str], step, avoid: str) -> set[str]:
    seen = set(start)
    todo = deque(start)
    while todo:
        x = todo.popleft()
        for y in step(x):
            if y != avoid and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def return_path_edges(g: Graph, v: str) -> list[str]:
    """Edges lying on some return path based at ``v``.

    ``v`` is split into an exit copy (where return paths start) and an entry
    copy (where they finish); an edge counts when its range is reachable from
    the exit copy and its source reaches the entry copy, both without passing
    through ``v`` in between.
    """
    forward = lambda x: {g.s(e) for e in g.r_inv(x)}
    backward = lambda x: {g.r(e) for e in g.s_inv(x)}
    out_side = _reach_avoiding(g, {g.s(e) for e in g.r_inv(v)} - {v}, forward, v) | {v}
    in_side = _reach_avoiding(g, {g.r(e) for e in g.s_inv(v)} - {v}, backward, v) | {v}
    return [e for e in g.edges if g.r(e) in out_side and g.s(e) in in_side]


def count_return_paths(g: Graph, v: str) -> str:
    """Classify the return paths based at ``v`` as ``"0"``, ``"1"`` or ``"many"``.

    There is exactly one return path when the edges on return paths form a
    single cycle through ``v``; any branching lets return paths be combined
    or pumped into infinitely many.
    """
    edges = return_path_edges(g, v)
    if not edges:
        return "0"
    outdeg, indeg = {}, {}
    for e in edges:
        outdeg[g.r(e)] = outdeg.get(g.r(e), 0) + 1
        indeg[g.s(e)] = indeg.get(g.s(e), 0) + 1
    if all(n == 1 for n in outdeg.values()) and all(n == 1 for n in indeg.values()):
        return "1"
    return "many"


def condition_K(g: Graph) -> tuple[bool, str | None]:
    """No vertex has exactly one return path.  Returns ``(holds, witness_vertex)``."""
    for v in g.vertices:
        if count_return_paths(g, v) == "1":
            return False, v
    return True, None


# -- reachability ------------------------------------------------------------------

def reach_table(g: Graph) -> dict[str, frozenset[str]]:
    """``table[v]`` is the set of ``w`` with ``v <= w``."""
    table = {}
    for v in g.vertices:
        table[v] = frozenset(_reach_avoiding(g, {v}, g.successors, avoid=None))
    return table


def reaches(g: Graph, v: str, w: str) -> bool:
    """``v <= w``: some path ``mu`` has ``r(mu) == v`` and ``s(mu) == w``."""
    if v == w:
        return True
    return w in _reach_avoiding(g, {v}, g.successors, avoid=None)


def strongly_connected_components(g: Graph) -> list[frozenset[str]]:
    table = reach_table(g)
    comps, done = [], set()
    for v in g.vertices:
        if v in done:
            continue
        comp = frozenset(w for w in table[v] if v in table[w])
        done |= comp
        comps.append(comp)
    return comps


def cofinal(g: Graph) -> tuple[bool, tuple[str, tuple[str, ...]] | None]:
    """Every vertex can be reached from every infinite path.

    An infinite path in a finite graph eventually stays inside one strongly
    connected component carrying a cycle, and every such component carries a
    periodic path, so it is enough to ask that every vertex reaches every
    simple cycle.  The witness is ``(vertex, cycle)`` for a failing pair.
    """
    table = reach_table(g)
    for cyc in simple_cycles(g):
        on_cycle = set(cycle_vertices(g, cyc))
        for v in g.vertices:
            if not (table[v] & on_cycle):
                return False, (v, cyc)
    return True, None
