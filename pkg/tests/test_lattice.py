import itertools

import pytest

from exelgraph.graph import Graph, cofinal, condition_K, condition_L
from exelgraph.lattice import (
    EnumerationBoundError,
    all_ideals_gauge_invariant,
    brute_force_maximal_heads,
    brute_force_sat_hered,
    enumerate_sat_hered,
    is_hereditary,
    is_maximal_head,
    is_saturated,
    maximal_heads,
    primitive_catalog,
    sat_hered_closure,
    simplicity,
)


def subsets(g):
    vs = g.vertices
    for k in range(len(vs) + 1):
        for c in itertools.combinations(vs, k):
            yield frozenset(c)


def test_hereditary_examples(G1, G4):
    assert is_hereditary(G4, {"w"})
    assert not is_hereditary(G4, {"v"})
    assert is_hereditary(G1, set())


def test_saturated_examples(G2, G3, G4):
    assert is_saturated(G4, {"w"})
    assert not is_saturated(G3, {"u"})
    assert is_saturated(G2, {"v"})


def test_closure_examples(G3, G4, fixtures):
    assert sat_hered_closure(G4, {"v"}) == {"v", "w"}
    assert sat_hered_closure(G3, {"u"}) == {"u", "v"}
    for g in fixtures.values():
        assert sat_hered_closure(g, set()) == frozenset()


def test_closure_idempotent_monotone(fixtures, small_corpus):
    for g in list(fixtures.values()) + small_corpus[::11]:
        subs = list(subsets(g))
        for a in subs:
            ca = sat_hered_closure(g, a)
            assert a <= ca
            assert sat_hered_closure(g, ca) == ca
            assert is_hereditary(g, ca) and is_saturated(g, ca)
            for b in subs:
                if a <= b:
                    assert ca <= sat_hered_closure(g, b)


def test_lattice_examples(G1, G2, G4):
    assert enumerate_sat_hered(G1).as_lists() == [[], ["v"]]
    assert enumerate_sat_hered(G4).as_lists() == [[], ["w"], ["v", "w"]]
    assert enumerate_sat_hered(G2).as_lists() == [[], ["v"]]


def test_lattice_covers(G4):
    covers = enumerate_sat_hered(G4).covers()
    assert covers == [(frozenset(), frozenset({"w"})), (frozenset({"w"}), frozenset({"v", "w"}))]


def test_lattice_matches_brute_force(small_corpus):
    for g in small_corpus:
        assert list(enumerate_sat_hered(g).sets) == brute_force_sat_hered(g)


def test_lattice_closed_under_intersection(small_corpus):
    for g in small_corpus:
        sets = set(enumerate_sat_hered(g).sets)
        assert frozenset() in sets and frozenset(g.vertices) in sets
        for a in sets:
            for b in sets:
                assert a & b in sets


def test_bound_exceeded():
    g = Graph.from_edges([f"v{i:02d}" for i in range(21)], [(f"e{i}", f"v{i:02d}", f"v{i:02d}") for i in range(21)])
    with pytest.raises(EnumerationBoundError):
        enumerate_sat_hered(g)
    with pytest.raises(EnumerationBoundError):
        maximal_heads(g)
    small = Graph.from_edges([f"v{i:02d}" for i in range(10)], [(f"e{i}", f"v{i:02d}", f"v{i:02d}") for i in range(10)])
    with pytest.raises(EnumerationBoundError):
        enumerate_sat_hered(small, bound=2 ** 9)
    assert len(enumerate_sat_hered(small, bound=2 ** 10)) == 2 ** 10


def test_bound_from_environment(monkeypatch, G4):
    monkeypatch.setenv("EXELGRAPH_MAX_SUBSETS", "2")
    with pytest.raises(EnumerationBoundError):
        enumerate_sat_hered(G4)
    monkeypatch.setenv("EXELGRAPH_MAX_SUBSETS", "4")
    assert len(enumerate_sat_hered(G4)) == 3


def test_maximal_heads_examples(G1, G2, G4):
    [h] = maximal_heads(G1)
    assert h.vertices == {"v"} and h.has_entryless_cycle and h.witness_cycle == ("e",)
    heads = maximal_heads(G4)
    assert [sorted(h.vertices) for h in heads] == [["v"], ["v", "w"]]
    assert [h.has_entryless_cycle for h in heads] == [True, True]
    assert heads[0].witness_cycle == ("e",) and heads[1].witness_cycle == ("k",)
    [h] = maximal_heads(G2)
    assert h.vertices == {"v"} and not h.has_entryless_cycle


def test_maximal_heads_match_brute_force(small_corpus):
    for g in small_corpus:
        assert [h.vertices for h in maximal_heads(g)] == brute_force_maximal_heads(g)


def test_head_complements_are_sat_hered(small_corpus):
    for g in small_corpus:
        for h in maximal_heads(g):
            rest = frozenset(g.vertices) - h.vertices
            assert is_hereditary(g, rest) and is_saturated(g, rest)
            assert is_maximal_head(g, h.vertices)


def test_catalog_examples(G1, G2, G4):
    cat = primitive_catalog(G1)
    assert len(cat.gauge_invariant) == 0 and [h.vertices for h in cat.circle_families] == [{"v"}]
    cat = primitive_catalog(G2)
    assert [h.vertices for h in cat.gauge_invariant] == [{"v"}] and cat.circle_families == ()
    cat = primitive_catalog(G4)
    assert cat.gauge_invariant == ()
    assert [sorted(h.vertices) for h in cat.circle_families] == [["v"], ["v", "w"]]
    d = cat.as_dict()
    assert d["circle_families"][0] == {"head": ["v"], "parameter": "T"}
    assert d["counts"] == {"gauge_invariant": 0, "circle_families": 2}


def test_catalog_is_partition(small_corpus):
    for g in small_corpus:
        cat = primitive_catalog(g)
        a = {h.vertices for h in cat.gauge_invariant}
        b = {h.vertices for h in cat.circle_families}
        assert not a & b
        assert a | b == {h.vertices for h in maximal_heads(g)}


def test_simplicity_examples(G1, G2, G4):
    v = simplicity(G2)
    assert v.simple and v.topologically_free and v.irreducible
    v = simplicity(G1)
    assert not v.simple and not v.topologically_free and v.irreducible
    v = simplicity(G4)
    assert not v.simple and not v.topologically_free and not v.irreducible
    assert v.entryless_cycle == ("k",)


def test_simplicity_through_lattice(small_corpus, random_graphs):
    for g in small_corpus + random_graphs:
        two = len(enumerate_sat_hered(g)) == 2
        assert simplicity(g).simple == (two and condition_L(g)[0])
        assert cofinal(g)[0] == two


def test_gauge_invariance_examples(G1, G2, G3):
    assert all_ideals_gauge_invariant(G2)
    assert not all_ideals_gauge_invariant(G1)
    assert not all_ideals_gauge_invariant(G3)
    assert condition_K(G3) == (False, "u")
