"""Small-graph corpora: exhaustive up to isomorphism, plus seeded random graphs."""

from __future__ import annotations

import itertools
import random

from .graph import Graph, validate

VERTEX_NAMES = "uvwxyz"


def _vertex_names(n: int) -> list[str]:
    if n <= len(VERTEX_NAMES):
        return list(VERTEX_NAMES[:n])
    return [f"v{i}" for i in range(n)]


def _edge_names(k: int) -> list[str]:
    return [f"e{i}" for i in range(k)]


def graph_from_pairs(n: int, pairs) -> Graph:
    """Graph on ``n`` vertices with one edge per ``(range, source)`` index pair."""
    names = _vertex_names(n)
    edges = {e: (names[r], names[s]) for e, (r, s) in zip(_edge_names(len(pairs)), sorted(pairs))}
    return Graph(names, edges)


def _admissible(n: int, pairs) -> bool:
    ranges = {r for r, _ in pairs}
    sources = {s for _, s in pairs}
    return len(ranges) == n and len(sources) == n


def _canonical(n: int, pairs, perms) -> tuple:
    return min(tuple(sorted((p[r], p[s]) for r, s in pairs)) for p in perms)


def exhaustive(max_vertices: int = 4, max_edges: int = 6):
    """Every graph with no sources and no sinks within the size limits, one per isomorphism class.

    Edges are a multiset of ``(range, source)`` pairs; classes are told apart
    by the lexicographically least relabelling of that multiset.
    """
    for n in range(1, max_vertices + 1):
        perms = list(itertools.permutations(range(n)))
        slots = [(r, s) for r in range(n) for s in range(n)]
        seen = set()
        for k in range(n, max_edges + 1):
            for pairs in itertools.combinations_with_replacement(slots, k):
                if not _admissible(n, pairs):
                    continue
                key = _canonical(n, pairs, perms)
                if key in seen:
                    continue
                seen.add(key)
                yield graph_from_pairs(n, key)


def random_graph(rng: random.Random, min_vertices: int = 2, max_vertices: int = 7,
                 max_edges: int | None = None) -> Graph:
    """Uniform vertex count, then edges drawn until the graph is valid.

    Edges are redrawn from scratch (rejection) whenever a draw leaves a
    vertex with no incoming or no outgoing edge.
    """
    n = rng.randint(min_vertices, max_vertices)
    max_edges = 2 * n + 2 if max_edges is None else max_edges
    while True:
        k = rng.randint(n, max(n, max_edges))
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(k)]
        g = graph_from_pairs(n, pairs)
        if validate(g).ok:
            return g


def random_corpus(count: int, seed: int, **kw) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng, **kw) for _ in range(count)]
