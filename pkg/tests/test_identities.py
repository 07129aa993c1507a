import random
from fractions import Fraction

import pytest

from exelgraph import identities as ids
from exelgraph import transfer
from exelgraph.gaussq import ONE, ZERO
from exelgraph.identities import CHECKS, basis, cylinder_transfer_formula, random_cylfun, verify_identities
from exelgraph.transfer import chi, inner, mult, op_matrix, theta


def test_g2_depth3(G2):
    rep = verify_identities(G2, 3)
    assert rep.passed
    assert [c.name for c in rep.checks] == list(CHECKS)
    assert all(c.instances > 0 for c in rep.checks)


def test_g1_depth4(G1):
    assert verify_identities(G1, 4).passed


def test_g4_depth3(G4):
    assert verify_identities(G4, 3).passed


def test_g4_vertex_sum_by_hand(G4):
    # at v: c(s(e)) = 1, c(s(h)) = 2
    e, h = chi(G4, "e"), chi(G4, "h")
    lhs = op_matrix(G4, theta(e, e) * 1 + theta(h, h) * 2, 1)
    assert lhs.basis == (("e",), ("h",), ("k",))
    assert lhs.dense() == [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ZERO]]
    assert lhs == op_matrix(G4, mult(chi(G4, "v")), 1)
    # each weight alone is wrong
    assert op_matrix(G4, theta(h, h), 1) != op_matrix(G4, mult(h), 1)


def test_basis(G4):
    assert basis(G4, 1) == ["v", "w", ("e",), ("h",), ("k",)]


def test_cylinder_formula(G4):
    assert cylinder_transfer_formula(G4, ("h", "k")) == chi(G4, "k") * Fraction(1, 2)
    assert cylinder_transfer_formula(G4, ("e",)) == chi(G4, "v")


def test_random_functions_are_seeded(G4):
    a = random_cylfun(G4, 2, random.Random(5))
    b = random_cylfun(G4, 2, random.Random(5))
    assert a == b and a.depth == 2


def test_report_shape(G1):
    d = verify_identities(G1, 2, samples=10).as_dict()
    assert d["depth"] == 2 and d["passed"]
    assert [c["name"] for c in d["checks"]] == list(CHECKS)


def test_broken_normalisation_is_caught(G4, monkeypatch):
    # drop the 1/c factor from L and every check that depends on it must fail
    real = transfer.transfer_L

    def unnormalised(g, f):
        out = real(g, f)
        if f.depth == 0:
            return out
        return transfer.CylFun(g, out.depth, {
            k: v * g.c(g.s(k[0]) if not isinstance(k, str) else k) for k, v in out.data.items()
        })

    monkeypatch.setattr(ids, "transfer_L", unnormalised)
    rep = verify_identities(G4, 2, samples=5)
    assert not rep["left_inverse"].passed
    assert not rep["cylinder_transfer"].passed
    cx = rep["cylinder_transfer"].counterexample
    assert set(cx) == {"f", "lhs", "rhs"}


def test_broken_inner_product_is_caught(G4, monkeypatch):
    # a bilinear form in place of the sesquilinear one is not positive
    def no_conj(g, f, h):
        return transfer.transfer_L(g, f * h)

    monkeypatch.setattr(ids, "inner", no_conj)
    rep = verify_identities(G4, 2, samples=50)
    assert not rep["faithfulness"].passed
    assert "inner" in rep["faithfulness"].counterexample


def test_adjoint_by_hand(G2):
    x, y = chi(G2, "e"), chi(G2, ("e", "f"))
    z, w = chi(G2, ("e", "f")), chi(G2, "e")
    lhs = inner(G2, transfer.apply_op(G2, theta(x, y), z, 2), w)
    rhs = inner(G2, z, transfer.apply_op(G2, theta(y, x), w, 2))
    assert lhs == rhs
    assert not lhs.is_zero()


def test_unnormalised_pairing(fixtures, small_corpus):
    from exelgraph.identities import check_unnormalised_pairing, unnormalised_inner

    G2 = fixtures["G2"]
    # two preimages, summed rather than averaged
    assert unnormalised_inner(G2, chi(G2, "v"), chi(G2, "v")) == chi(G2, "v") * 2
    assert unnormalised_inner(G2, chi(G2, "e"), chi(G2, "e")) == chi(G2, "v")
    for g in list(fixtures.values()) + small_corpus[::20]:
        assert check_unnormalised_pairing(g, 2).passed
