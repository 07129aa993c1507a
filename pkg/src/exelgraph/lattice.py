"""Saturated hereditary vertex sets, maximal heads and the primitive-ideal catalogue.

Gauge-invariant ideals of the graph algebra correspond to saturated
hereditary vertex sets; primitive ideals are indexed by maximal heads, where a
head carrying a cycle without an entry inside the head contributes a whole
circle's worth of non-gauge-invariant primitives.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .graph import (
    Graph,
    condition_K,
    condition_L,
    cofinal,
    cycle_entries,
    cycle_vertices,
    reach_table,
    simple_cycles,
)

DEFAULT_MAX_SUBSETS = 2 ** 20
ENV_MAX_SUBSETS = "EXELGRAPH_MAX_SUBSETS"


class EnumerationBoundError(RuntimeError):
    """The graph is too large for exhaustive vertex-set enumeration."""


def max_subsets() -> int:
    raw = os.environ.get(ENV_MAX_SUBSETS)
    return int(raw) if raw else DEFAULT_MAX_SUBSETS


def _check_bound(g: Graph, bound: int | None) -> None:
    limit = max_subsets() if bound is None else bound
    if 2 ** len(g.vertices) > limit:
        raise EnumerationBoundError(
            f"{len(g.vertices)} vertices give 2^{len(g.vertices)} subsets, over the bound {limit}"
        )


def vset(vertices) -> frozenset[str]:
    return frozenset(vertices)


def sorted_set(h) -> list[str]:
    return sorted(h)


def is_hereditary(g: Graph, h) -> bool:
    """``v in H`` and ``r(e) == v`` force ``s(e) in H``.

    Ideals containing ``p_v`` contain every ``s_e`` with ``r(e) == v`` and hence
    ``s_e^* s_e = p_{s(e)}``; on the path space this is closure of the set of
    paths that enter ``H`` under the shift.
    """
    h = set(h)
    return all(g.s(e) in h for v in h for e in g.r_inv(v))


def is_saturated(g: Graph, h) -> bool:
    """Every ``v`` whose edges ``r^{-1}(v)`` all have source in ``H`` lies in ``H``.

    ``p_v`` is the sum of ``s_e s_e^*`` over ``r(e) == v``, so an ideal holding
    every ``p_{s(e)}`` already holds ``p_v``.  Vertices with ``r^{-1}(v)`` empty
    are not forced in (they are sources, which analysis refuses anyway).
    """
    h = set(h)
    for v in g.vertices:
        es = g.r_inv(v)
        if v not in h and es and all(g.s(e) in h for e in es):
            return False
    return True


def sat_hered_closure(g: Graph, h) -> frozenset[str]:
    """Smallest saturated hereditary set containing ``h``."""
    out = set(h)
    changed = True
    while changed:
        changed = False
        todo = list(out)
        while todo:
            v = todo.pop()
            for e in g.r_inv(v):
                w = g.s(e)
                if w not in out:
                    out.add(w)
                    todo.append(w)
        for v in g.vertices:
            es = g.r_inv(v)
            if v not in out and es and all(g.s(e) in out for e in es):
                out.add(v)
                changed = True
    return frozenset(out)


@dataclass(frozen=True)
class Lattice:
    """Saturated hereditary sets ordered by inclusion."""

    sets: tuple[frozenset[str], ...]

    def __len__(self):
        return len(self.sets)

    def covers(self) -> list[tuple[frozenset[str], frozenset[str]]]:
        """Pairs ``(a, b)`` with ``a < b`` and nothing strictly in between."""
        out = []
        for a in self.sets:
            for b in self.sets:
                if a < b and not any(a < c < b for c in self.sets):
                    out.append((a, b))
        return out

    def as_lists(self) -> list[list[str]]:
        return [sorted_set(h) for h in self.sets]


def _set_key(h):
    return (len(h), sorted(h))


def enumerate_sat_hered(g: Graph, bound: int | None = None) -> Lattice:
    """All saturated hereditary subsets of the vertices.

    Every such set is the closure of a smaller one plus one vertex, so a
    closure-driven search from the closure of the empty set reaches all of
    them without touching every subset.
    """
    _check_bound(g, bound)
    start = sat_hered_closure(g, ())
    found = {start}
    todo = [start]
    while todo:
        h = todo.pop()
        for v in g.vertices:
            if v not in h:
                k = sat_hered_closure(g, h | {v})
                if k not in found:
                    found.add(k)
                    todo.append(k)
    return Lattice(tuple(sorted(found, key=_set_key)))


def brute_force_sat_hered(g: Graph) -> list[frozenset[str]]:
    """Reference enumeration over every subset; exponential, used as an oracle."""
    verts = g.vertices
    out = []
    for mask in range(2 ** len(verts)):
        h = frozenset(v for i, v in enumerate(verts) if mask >> i & 1)
        if is_hereditary(g, h) and is_saturated(g, h):
            out.append(h)
    return sorted(out, key=_set_key)


# -- maximal heads -------------------------------------------------------------

@dataclass(frozen=True)
class MaximalHead:
    vertices: frozenset[str]
    has_entryless_cycle: bool
    witness_cycle: tuple[str, ...] | None = None

    def as_dict(self) -> dict:
        d = {"head": sorted_set(self.vertices), "entryless_cycle": self.has_entryless_cycle}
        if self.witness_cycle is not None:
            d["witness_cycle"] = list(self.witness_cycle)
        return d


def head_conditions(g: Graph, m, table=None) -> tuple[bool, bool, bool]:
    """Truth values of the three maximal-head axioms for the vertex set ``m``.

    (MH1) ``v <= w`` and ``w in M`` imply ``v in M``;
    (MH2) each ``v in M`` has an edge ``e`` with ``r(e) == v`` and ``s(e) in M``;
    (MH3) any two vertices of ``M`` have a common ``y in M`` above both.
    """
    m = set(m)
    table = reach_table(g) if table is None else table
    mh1 = all(v in m for v in g.vertices if table[v] & m)
    mh2 = all(any(g.s(e) in m for e in g.r_inv(v)) for v in m)
    mh3 = all(table[v] & table[w] & m for v in m for w in m)
    return mh1, mh2, mh3


def is_maximal_head(g: Graph, m, table=None) -> bool:
    return bool(m) and all(head_conditions(g, m, table))


def entryless_cycle_in(g: Graph, m, cycles=None) -> tuple[str, ...] | None:
    """A cycle inside ``m`` none of whose entries has source in ``m``, if any."""
    m = set(m)
    for cyc in simple_cycles(g) if cycles is None else cycles:
        if set(cycle_vertices(g, cyc)) <= m and not cycle_entries(g, cyc, within=m):
            return cyc
    return None


def maximal_heads(g: Graph, bound: int | None = None) -> list[MaximalHead]:
    """All maximal heads, each flagged when it carries an entry-less cycle.

    (MH1) and (MH2) say exactly that the complement is hereditary and
    saturated, so candidates are complements of the lattice; (MH3) and the
    other two axioms are then checked directly on each candidate.
    """
    lattice = enumerate_sat_hered(g, bound)
    table = reach_table(g)
    cycles = simple_cycles(g)
    everything = frozenset(g.vertices)
    heads = []
    for h in lattice.sets:
        m = everything - h
        if not is_maximal_head(g, m, table):
            continue
        cyc = entryless_cycle_in(g, m, cycles)
        heads.append(MaximalHead(m, cyc is not None, cyc))
    return sorted(heads, key=lambda mh: _set_key(mh.vertices))


def brute_force_maximal_heads(g: Graph) -> list[frozenset[str]]:
    verts = g.vertices
    table = reach_table(g)
    out = []
    for mask in range(1, 2 ** len(verts)):
        m = frozenset(v for i, v in enumerate(verts) if mask >> i & 1)
        if is_maximal_head(g, m, table):
            out.append(m)
    return sorted(out, key=_set_key)


@dataclass(frozen=True)
class PrimIdealCatalog:
    """Primitive ideals grouped by maximal head.

    ``gauge_invariant`` heads each give one primitive ideal (the ideal of the
    complementary saturated hereditary set).  Each head in ``circle_families``
    gives a family of primitive ideals indexed by the unit circle, which is
    kept symbolic.
    """

    gauge_invariant: tuple[MaximalHead, ...]
    circle_families: tuple[MaximalHead, ...]

    def as_dict(self) -> dict:
        return {
            "gauge_invariant": [sorted_set(h.vertices) for h in self.gauge_invariant],
            "circle_families": [
                {"head": sorted_set(h.vertices), "parameter": "T"} for h in self.circle_families
            ],
            "counts": {
                "gauge_invariant": len(self.gauge_invariant),
                "circle_families": len(self.circle_families),
            },
        }


def primitive_catalog(g: Graph, bound: int | None = None) -> PrimIdealCatalog:
    heads = maximal_heads(g, bound)
    return PrimIdealCatalog(
        gauge_invariant=tuple(h for h in heads if not h.has_entryless_cycle),
        circle_families=tuple(h for h in heads if h.has_entryless_cycle),
    )


# -- verdicts --------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    topologically_free: bool
    irreducible: bool
    entryless_cycle: tuple[str, ...] | None = None
    cofinality_witness: tuple[str, tuple[str, ...]] | None = None

    def as_dict(self) -> dict:
        d = {
            "simple": self.simple,
            "topologically_free": self.topologically_free,
            "irreducible": self.irreducible,
        }
        if self.entryless_cycle is not None:
            d["entryless_cycle"] = list(self.entryless_cycle)
        if self.cofinality_witness is not None:
            v, cyc = self.cofinality_witness
            d["cofinality_witness"] = {"vertex": v, "cycle": list(cyc)}
        return d


def simplicity(g: Graph) -> SimplicityVerdict:
    free, cyc = condition_L(g)
    irred, wit = cofinal(g)
    return SimplicityVerdict(free and irred, free, irred, cyc, wit)


def all_ideals_gauge_invariant(g: Graph) -> bool:
    return condition_K(g)[0]
