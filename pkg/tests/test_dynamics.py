import pytest

from exelgraph.dynamics import (
    DiscreteCycle,
    EvPath,
    PropertyViolation,
    TRUNCATED,
    cluster_point_by_search,
    cluster_point_search,
    cylinder_in_Hmn,
    discrete_cycles,
    heads_correspondence,
    in_Y,
    invariant_roundtrip,
    is_cluster_point,
    maximal_head_of_cycle,
    period,
    periodic_orbits,
    preimages,
    shift,
    test_points as sample_points,
    topologically_free,
    topologically_free_by_cylinders,
)
from exelgraph.graph import condition_K, condition_L, count_return_paths, parse_graph
from exelgraph.lattice import enumerate_sat_hered


def P(text):
    return EvPath.parse(text)


# -- EvPath -------------------------------------------------------------------------

def test_canonical_form():
    assert EvPath(("e", "e"), ("e",)) == P("|e")
    assert EvPath((), ("e", "e")) == P("|e")
    assert EvPath(("a",), ("b", "a")) == P("|a,b")
    assert EvPath(("h", "k"), ("k", "k")) == P("h|k")
    # the phase of a cycle is part of the point
    assert P("|a,b") != P("|b,a")


def test_parse_and_format():
    assert str(P("h|k")) == "h|k"
    assert str(P("|a,b")) == "|a,b"
    assert P("h|k").head == ("h",) and P("h|k").cycle == ("k",)
    with pytest.raises(ValueError):
        P("h,k")
    with pytest.raises(ValueError):
        P("h|")


def test_make_checks_composability(G3, G4):
    assert EvPath.make(G4, ("h",), ("k",)) == P("h|k")
    with pytest.raises(ValueError):
        EvPath.make(G4, ("k",), ("e",))
    with pytest.raises(ValueError):
        EvPath.make(G3, (), ("a",))


def test_prefix(G4):
    assert P("h|k").prefix(4) == ("h", "k", "k", "k")
    assert P("|a,b").prefix(3) == ("a", "b", "a")


def test_shift_examples():
    assert shift(P("|e"), 5) == P("|e")
    assert shift(P("h|k"), 1) == P("|k")
    assert shift(P("|a,b"), 1) == P("|b,a")
    assert shift(P("e,h|k"), 0) == P("e,h|k")
    with pytest.raises(ValueError):
        shift(P("|e"), -1)


def test_preimage_examples(G1, G2, G4):
    assert sorted(preimages(G2, P("|e"))) == sorted([P("|e"), P("f|e")])
    assert preimages(G1, P("|e")) == [P("|e")]
    assert sorted(preimages(G4, P("|k"))) == sorted([P("h|k"), P("|k")])


def test_period_examples():
    assert period(P("|a,b")) == 2
    assert period(P("h|k")) is None
    assert period(EvPath((), ("e", "e"))) == 1


# -- topological freeness --------------------------------------------------------------

def test_cylinder_examples(G1, G2, G3, G4):
    assert cylinder_in_Hmn(G1, ("e",), 0, 1)
    assert not cylinder_in_Hmn(G2, ("e",), 0, 1)
    assert cylinder_in_Hmn(G4, ("k",), 0, 1)
    assert cylinder_in_Hmn(G3, ("a",), 0, 2)
    assert not cylinder_in_Hmn(G3, ("a",), 0, 1)
    assert cylinder_in_Hmn(G4, ("h",), 1, 2)
    assert not cylinder_in_Hmn(G4, ("h",), 0, 1)
    assert not cylinder_in_Hmn(G4, "v", 0, 1)
    assert cylinder_in_Hmn(G4, "w", 0, 1)
    with pytest.raises(ValueError):
        cylinder_in_Hmn(G1, ("e",), 1, 1)


def test_topologically_free_examples(G1, G2, G3):
    assert topologically_free(G2) and topologically_free_by_cylinders(G2)[0]
    assert not topologically_free(G1) and not topologically_free_by_cylinders(G1)[0]
    assert not topologically_free(G3) and not topologically_free_by_cylinders(G3)[0]


def test_topological_freeness_two_ways(small_corpus):
    for g in small_corpus:
        assert topologically_free(g) == condition_L(g)[0]


# -- cluster points ----------------------------------------------------------------------

def test_cluster_point_examples(G1, G2, G3):
    assert is_cluster_point(G2, P("|e"))
    assert not is_cluster_point(G1, P("|e"))
    assert not is_cluster_point(G3, P("|a,b"))


def test_cluster_search_witness(G2):
    rho = cluster_point_search(G2, P("|e"), 3, 10)
    assert rho is not None and rho[:3] == ("e", "e", "e")
    point = P("|e").prepend(rho)
    assert point != P("|e") and point.prefix(3) == ("e", "e", "e")


def test_cluster_search_needs_periodic(G4):
    with pytest.raises(ValueError):
        is_cluster_point(G4, P("h|k"))


def test_cluster_search_bound_too_small_is_undecided():
    # the only way back onto e^oo other than e itself is through the 3-cycle
    g = parse_graph("""
vertex v
vertex x
vertex y
edge e r=v s=v
edge a r=v s=x
edge b r=x s=y
edge c r=y s=v
""")
    assert count_return_paths(g, "v") == "many"
    assert is_cluster_point(g, P("|e"), depth=2)
    assert cluster_point_by_search(g, P("|e"), depth=2) is True
    # too short to go round the 3-cycle: undecided, and the return-path answer stands
    assert cluster_point_search(g, P("|e"), 0, 2) is TRUNCATED
    assert cluster_point_by_search(g, P("|e"), depth=2, search_bound=3) is None
    assert is_cluster_point(g, P("|e"), depth=2, search_bound=3)


def test_cluster_search_exhausts_when_no_witness(G3):
    assert cluster_point_search(G3, P("|a,b"), 3, 100) is None
    assert cluster_point_by_search(G3, P("|a,b")) is False


def test_cluster_disagreement_raises(G2, monkeypatch):
    import exelgraph.dynamics as dyn

    monkeypatch.setattr(dyn, "count_return_paths", lambda g, v: "1")
    with pytest.raises(PropertyViolation):
        is_cluster_point(G2, P("|e"))


def test_cluster_points_agree_with_K(small_corpus):
    for g in small_corpus:
        all_cluster = all(is_cluster_point(g, xi) for xi in periodic_orbits(g))
        assert all_cluster == condition_K(g)[0]


# -- discrete cycles and heads ------------------------------------------------------------

def test_discrete_cycle_examples(G1, G2, G4):
    assert discrete_cycles(G1) == [DiscreteCycle(P("|e"), 1)]
    assert discrete_cycles(G2) == []
    assert discrete_cycles(G4) == [DiscreteCycle(P("|e"), 1), DiscreteCycle(P("|k"), 1)]


def test_discrete_cycle_orbit(G3):
    [beta] = discrete_cycles(G3)
    assert beta.orbit() == [P("|a,b"), P("|b,a")]
    assert all(period(x) == 2 for x in beta.orbit())


def test_head_of_cycle_examples(G1, G4):
    assert maximal_head_of_cycle(G1, DiscreteCycle(P("|e"), 1)) == {"v"}
    assert maximal_head_of_cycle(G4, DiscreteCycle(P("|k"), 1)) == {"v", "w"}
    assert maximal_head_of_cycle(G4, DiscreteCycle(P("|e"), 1)) == {"v"}


def test_head_of_non_discrete_cycle_is_rejected(G2):
    with pytest.raises(PropertyViolation):
        maximal_head_of_cycle(G2, DiscreteCycle(P("|e"), 1))


def test_heads_correspondence_examples(G1, G2, G4):
    assert heads_correspondence(G1)
    assert heads_correspondence(G2)
    assert heads_correspondence(G4)


# -- invariant sets --------------------------------------------------------------------------

def test_roundtrip_examples(G1, G3, G4):
    assert invariant_roundtrip(G4, {"w"})
    assert invariant_roundtrip(G1, set())
    assert invariant_roundtrip(G3, {"u", "v"})


def test_membership_uses_all_shifts(G4):
    h = {"w"}
    assert in_Y(G4, h, P("|e"))
    assert not in_Y(G4, h, P("h|k"))
    assert not in_Y(G4, h, P("|k"))


def test_roundtrip_rejects_non_sat_hered(G4):
    with pytest.raises(ValueError):
        invariant_roundtrip(G4, {"v"})


def test_sample_points_cover_vertices(small_corpus):
    for g in small_corpus[::5]:
        pts = sample_points(g)
        assert {g.r(x.edge(0)) for x in pts} == set(g.vertices)
        assert all(shift(x) in pts or len(x.head) == 0 for x in pts)


def test_roundtrip_all_sets(small_corpus):
    for g in small_corpus[::3]:
        for h in enumerate_sat_hered(g).sets:
            assert invariant_roundtrip(g, h)
