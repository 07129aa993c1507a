"""Exact verification of the transfer-operator and module identities.

Every check runs over cylinder indicators up to a chosen depth.  The square
roots that appear when the graph algebra's generators are written in terms of
the module always come in pairs, so each identity below is stated in a
radical-free form and decided in exact Gaussian-rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .gaussq import GaussQ
from .graph import Graph, enumerate_paths
from .transfer import (
    CylFun,
    alpha,
    apply_op,
    chi,
    inner,
    mult,
    op_matrix,
    refine,
    theta,
    transfer_L,
)

CHECKS = (
    "transfer_law",
    "left_inverse",
    "cylinder_transfer",
    "projection_as_rank_one",
    "resolution_of_identity",
    "ck_vertex_sum",
    "edge_orthogonality",
    "theta_adjoint",
    "faithfulness",
)


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    instances: int = 0
    counterexample: dict | None = None

    def fail(self, **detail):
        if self.passed:
            self.passed = False
            self.counterexample = detail

    def as_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "instances": self.instances}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class IdentityReport:
    depth: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {"depth": self.depth, "passed": self.passed, "checks": [c.as_dict() for c in self.checks]}


def basis(g: Graph, max_depth: int) -> list:
    """Cylinder names of length ``0..max_depth`` (vertices first)."""
    return [mu for d in range(max_depth + 1) for mu in enumerate_paths(g, d)]


def _name(mu) -> str:
    return mu if isinstance(mu, str) else ",".join(mu)


def _tables(**funs) -> dict:
    return {k: (f.to_json() if isinstance(f, CylFun) else f) for k, f in funs.items()}


def _matrix_diff(a, b) -> dict:
    keys = sorted(set(a.entries) | set(b.entries))
    for k in keys:
        if a[k] != b[k]:
            return {"row": _name(k[0]), "column": _name(k[1]), "lhs": str(a[k]), "rhs": str(b[k])}
    return {}


def cylinder_transfer_formula(g: Graph, mu) -> CylFun:
    """``c(s(mu_1))^-1 chi(mu_2 ... mu_n)``, written down without applying ``L``."""
    weight = Fraction(1, g.c(g.s(mu[0])))
    rest = mu[1:] if len(mu) > 1 else g.s(mu[0])
    return chi(g, rest) * weight


def _random_scalar(rng: random.Random, span: int) -> GaussQ:
    r = rng.random
    n = 2 * span + 1
    return GaussQ(
        mpq(int(r() * n) - span, 1 + int(r() * span)),
        mpq(int(r() * n) - span, 1 + int(r() * span)),
    )


def random_cylfun(g: Graph, depth: int, rng: random.Random, density: float = 0.6, span: int = 4) -> CylFun:
    """Random Gaussian-rational function of the given depth; sometimes identically zero."""
    data = {}
    for mu in enumerate_paths(g, depth):
        if rng.random() < density:
            data[mu] = _random_scalar(rng, span)
    return CylFun(g, depth, data)


def sparse_random_cylfun(g: Graph, depth: int, rng: random.Random, terms: int = 3, span: int = 4) -> CylFun:
    """Random combination of at most ``terms`` cylinder indicators of the given depth."""
    paths = enumerate_paths(g, depth)
    picks = rng.sample(paths, min(terms, len(paths)))
    return CylFun(g, depth, {mu: _random_scalar(rng, span) for mu in picks})


def check_transfer_law(g, fs, res: CheckResult):
    """``L(alpha(f) h) == f L(h)``."""
    for mu in fs:
        f = chi(g, mu)
        af = alpha(g, f)
        for nu in fs:
            h = chi(g, nu)
            lhs = transfer_L(g, af * h)
            rhs = f * transfer_L(g, h)
            res.instances += 1
            if lhs != rhs:
                res.fail(f=_name(mu), h=_name(nu), **_tables(lhs=lhs, rhs=rhs))
                return


def check_left_inverse(g, fs, res):
    """``L(alpha(f)) == f``."""
    for mu in fs:
        f = chi(g, mu)
        lhs = transfer_L(g, alpha(g, f))
        res.instances += 1
        if lhs != f:
            res.fail(f=_name(mu), **_tables(lhs=lhs, rhs=f))
            return


def check_cylinder_transfer(g, fs, res):
    for mu in fs:
        if isinstance(mu, str):
            continue
        lhs = transfer_L(g, chi(g, mu))
        rhs = cylinder_transfer_formula(g, mu)
        res.instances += 1
        if lhs != rhs:
            res.fail(f=_name(mu), **_tables(lhs=lhs, rhs=rhs))
            return


def _depths(mu_depth: int, max_depth: int) -> list[int]:
    d = max(mu_depth, 1)
    return sorted({d, min(d + 1, max(max_depth, d))})


def check_projection_as_rank_one(g, fs, max_depth, res):
    """``mult(chi(mu)) == c(s(mu_1)) Theta(chi(mu), chi(mu_1)) == c(s(mu_1)) Theta(chi(mu_1), chi(mu))``."""
    for mu in fs:
        if isinstance(mu, str):
            continue
        c = g.c(g.s(mu[0]))
        f, f1 = chi(g, mu), chi(g, mu[:1])
        lhs_op = mult(f)
        rhs_ops = (theta(f, f1) * c, theta(f1, f) * c)
        for d in _depths(len(mu), max_depth):
            lhs = op_matrix(g, lhs_op, d)
            for which, op in enumerate(rhs_ops):
                rhs = op_matrix(g, op, d)
                res.instances += 1
                if lhs != rhs:
                    res.fail(mu=_name(mu), depth=d, form=which, **_matrix_diff(lhs, rhs))
                    return


def _edge_frame(g: Graph, f: CylFun):
    total = None
    for e in g.edges:
        ce = chi(g, (e,))
        term = theta(f * ce, ce) * g.c(g.s(e))
        total = term if total is None else total + term
    return total


def check_resolution_of_identity(g, fs, max_depth, res):
    """``mult(f) == sum_e c(s(e)) Theta(f chi(e), chi(e))``."""
    for mu in fs:
        f = chi(g, mu)
        lhs_op, rhs_op = mult(f), _edge_frame(g, f)
        for d in _depths(f.depth, max_depth):
            lhs, rhs = op_matrix(g, lhs_op, d), op_matrix(g, rhs_op, d)
            res.instances += 1
            if lhs != rhs:
                res.fail(f=_name(mu), depth=d, **_matrix_diff(lhs, rhs))
                return


def check_ck_vertex_sum(g, max_depth, res):
    """``sum_{r(e) = v} c(s(e)) Theta(chi(e), chi(e)) == mult(chi(v))``."""
    for v in g.vertices:
        total = None
        for e in g.r_inv(v):
            ce = chi(g, (e,))
            term = theta(ce, ce) * g.c(g.s(e))
            total = term if total is None else total + term
        for d in sorted({1, max(max_depth, 1)}):
            lhs = op_matrix(g, total, d)
            rhs = op_matrix(g, mult(chi(g, v)), d)
            res.instances += 1
            if lhs != rhs:
                res.fail(vertex=v, depth=d, **_matrix_diff(lhs, rhs))
                return


def check_edge_orthogonality(g, res):
    """``<chi(e), chi(e')> == delta_{e,e'} c(s(e))^-1 chi(s(e))``."""
    for e in g.edges:
        for e2 in g.edges:
            lhs = inner(g, chi(g, (e,)), chi(g, (e2,)))
            if e == e2:
                rhs = chi(g, g.s(e)) * Fraction(1, g.c(g.s(e)))
            else:
                rhs = CylFun(g, 0)
            res.instances += 1
            if lhs != rhs:
                res.fail(e=e, e2=e2, **_tables(lhs=lhs, rhs=rhs))
                return


def check_theta_adjoint(g, fs, rng, res):
    """``<Theta(x, y) z, w> == <z, Theta(y, x) w>`` with ``z, w`` sparse random combinations."""
    for mu in fs:
        for nu in fs:
            x, y = chi(g, mu), chi(g, nu)
            d = max(x.depth, y.depth, 1)
            z, w = sparse_random_cylfun(g, d, rng), sparse_random_cylfun(g, d, rng)
            lhs = inner(g, apply_op(g, theta(x, y), z, d), w)
            rhs = inner(g, z, apply_op(g, theta(y, x), w, d))
            res.instances += 1
            if lhs != rhs:
                res.fail(x=_name(mu), y=_name(nu), **_tables(z=z, w=w, lhs=lhs, rhs=rhs))
                return


def check_faithfulness(g, max_depth, rng, samples, res):
    """``<f, f> == 0`` exactly when ``f == 0``, and ``<f, f>`` is real and nonnegative."""
    for i in range(samples):
        d = rng.randint(0, max_depth)
        density = 0.0 if rng.random() < 0.05 else rng.choice((0.3, 0.7, 1.0))
        f = random_cylfun(g, d, rng, density=density)
        while density and f.is_zero():
            f = random_cylfun(g, d, rng, density=density)
        ff = inner(g, f, f)
        res.instances += 1
        bad_sign = any(not v.is_real() or v.re < 0 for v in ff.data.values())
        if ff.is_zero() != f.is_zero() or bad_sign:
            res.fail(sample=i, **_tables(f=f, inner=ff))
            return


def unnormalised_inner(g: Graph, f: CylFun, h: CylFun) -> CylFun:
    """``<f, h>_E(xi) = sum_{s(e) = r(xi)} conj(f) h (e xi)``: the preimage sum without averaging."""
    prod = f.conj() * h
    if prod.depth == 0:
        prod = refine(prod, 1)
    out: dict = {}
    for mu, val in prod.data.items():
        tail = mu[1:] if len(mu) > 1 else g.s(mu[0])
        out[tail] = out.get(tail, 0) + val
    return CylFun(g, prod.depth - 1, out)


def check_unnormalised_pairing(g: Graph, max_depth: int) -> CheckResult:
    """``<Uf, Ug>_L == <f, g>_E`` where ``U`` multiplies by ``sqrt(c(r(sigma(xi))))``.

    ``U`` is never formed: ``conj(Uf) Ug`` is ``c(s(xi_1)) conj(f) g``, in which
    the two square roots have already met.
    """
    res = CheckResult("unnormalised_pairing")
    fs = basis(g, max_depth)
    for mu in fs:
        for nu in fs:
            f, h = chi(g, mu), chi(g, nu)
            prod = f.conj() * h
            if prod.depth == 0:
                prod = refine(prod, 1)
            weighted = CylFun(g, prod.depth, {k: v * g.c(g.s(k[0])) for k, v in prod.data.items()})
            lhs = transfer_L(g, weighted)
            rhs = unnormalised_inner(g, f, h)
            res.instances += 1
            if lhs != rhs:
                res.fail(f=_name(mu), h=_name(nu), **_tables(lhs=lhs, rhs=rhs))
                return res
    return res


def verify_identities(g: Graph, max_depth: int, seed: int = 0, samples: int = 200) -> IdentityReport:
    """Run all nine checks on cylinder indicators of length ``<= max_depth``."""
    rng = random.Random(seed)
    fs = basis(g, max_depth)
    report = IdentityReport(max_depth)
    res = {name: CheckResult(name) for name in CHECKS}
    check_transfer_law(g, fs, res["transfer_law"])
    check_left_inverse(g, fs, res["left_inverse"])
    check_cylinder_transfer(g, fs, res["cylinder_transfer"])
    check_projection_as_rank_one(g, fs, max_depth, res["projection_as_rank_one"])
    check_resolution_of_identity(g, fs, max_depth, res["resolution_of_identity"])
    check_ck_vertex_sum(g, max_depth, res["ck_vertex_sum"])
    check_edge_orthogonality(g, res["edge_orthogonality"])
    check_theta_adjoint(g, fs, rng, res["theta_adjoint"])
    check_faithfulness(g, max_depth, rng, samples, res["faithfulness"])
    report.checks = [res[name] for name in CHECKS]
    return report
