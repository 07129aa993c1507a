"""Locally constant functions on the path space and the transfer-operator calculus.

A :class:`CylFun` of depth ``d`` is constant on each cylinder ``Z(mu)`` with
``|mu| == d`` (on each ``Z(v)`` when ``d == 0``).  These functions form a
dense subspace of the module completed from ``C_c`` of the path space, and on
them the endomorphism ``alpha(f) = f o sigma``, the averaging transfer
operator ``L``, the module operations and the rank-one operators
``Theta_{x,y}`` are all exact finite computations over Gaussian rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gaussq import GaussQ, ONE, ZERO, q, qstr
from .graph import Graph, enumerate_paths, is_path

__all__ = [
    "CylFun",
    "CylOperator",
    "OpMatrix",
    "DepthError",
    "chi",
    "constant",
    "refine",
    "alpha",
    "transfer_L",
    "inner",
    "right_act",
    "mult",
    "theta",
    "apply_op",
    "op_matrix",
]


class DepthError(ValueError):
    """An operator was applied at a depth below one of its ingredients."""


@lru_cache(maxsize=None)
def _extensions(g: Graph, v: str, n: int) -> tuple:
    """Paths of length ``n`` with range ``v`` (``()`` alone when ``n == 0``)."""
    if n == 0:
        return ((),)
    return tuple(enumerate_paths(g, n, start_vertex=v))


def _truncate(g: Graph, key, depth: int):
    if depth == 0:
        return key if isinstance(key, str) else g.r(key[0])
    return key[:depth]


@lru_cache(maxsize=None)
def _inv(n: int):
    return q(1) / n


class CylFun:
    """A depth-``d`` locally constant function, stored sparsely.

    ``data`` maps basis paths (vertices at depth 0) to nonzero values; paths
    missing from it carry the value 0, so the table is total over
    ``enumerate_paths(g, depth)``.
    """

    __slots__ = ("graph", "depth", "data")

    def __init__(self, graph: Graph, depth: int, data=None):
        self.graph = graph
        self.depth = depth
        clean = {}
        for key, val in (data or {}).items():
            val = GaussQ.coerce(val)
            if val:
                clean[key] = val
        self.data = clean

    @classmethod
    def _raw(cls, graph, depth, data):
        f = cls.__new__(cls)
        f.graph, f.depth, f.data = graph, depth, data
        return f

    def __call__(self, key) -> GaussQ:
        """Value on the cylinder named by ``key`` (any depth at least ``self.depth``)."""
        return self.data.get(_truncate(self.graph, key, self.depth), ZERO)

    def table(self) -> dict:
        return {mu: self.data.get(mu, ZERO) for mu in enumerate_paths(self.graph, self.depth)}

    def is_zero(self) -> bool:
        return not self.data

    def support(self) -> list:
        return sorted(self.data)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other: "CylFun") -> "CylFun":
        d = max(self.depth, other.depth)
        a, b = refine(self, d), refine(other, d)
        out = dict(a.data)
        for k, v in b.data.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return CylFun._raw(self.graph, d, out)

    def __neg__(self):
        return CylFun._raw(self.graph, self.depth, {k: -v for k, v in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Pointwise product, or scaling by a number."""
        if not isinstance(other, CylFun):
            c = GaussQ.coerce(other)
            if not c:
                return CylFun._raw(self.graph, self.depth, {})
            return CylFun._raw(self.graph, self.depth, {k: v * c for k, v in self.data.items()})
        deep, shallow = (self, other) if self.depth >= other.depth else (other, self)
        out = {}
        for k, v in deep.data.items():
            w = shallow(k)
            if w:
                out[k] = v * w
        return CylFun._raw(self.graph, deep.depth, out)

    __rmul__ = __mul__

    def conj(self) -> "CylFun":
        return CylFun._raw(self.graph, self.depth, {k: v.conjugate() for k, v in self.data.items()})

    def __eq__(self, other):
        """Equality as functions on the path space (depths may differ)."""
        if not isinstance(other, CylFun):
            return NotImplemented
        d = max(self.depth, other.depth)
        return refine(self, d).data == refine(other, d).data

    __hash__ = None

    def __repr__(self):
        items = ", ".join(f"{_fmt_key(k)}: {v}" for k, v in sorted(self.data.items()))
        return f"CylFun(depth={self.depth}, {{{items}}})"

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "entries": [
                {"path": _fmt_key(k), "re": qstr(v.re), "im": qstr(v.im)}
                for k, v in sorted(self.data.items())
            ],
        }


def _fmt_key(key) -> str:
    return key if isinstance(key, str) else ",".join(key)


def chi(g: Graph, mu) -> CylFun:
    """Indicator of ``Z(mu)``; ``mu`` is a vertex or a path."""
    if isinstance(mu, str) and mu in g.range and mu not in g.vertices:
        mu = (mu,)
    if isinstance(mu, str):
        if mu not in g.vertices:
            raise ValueError(f"unknown vertex {mu}")
        return CylFun._raw(g, 0, {mu: ONE})
    mu = tuple(mu)
    if not is_path(g, mu):
        raise ValueError(f"{mu} is not a path")
    return CylFun._raw(g, len(mu), {mu: ONE})


def constant(g: Graph, value=1) -> CylFun:
    return CylFun(g, 0, {v: value for v in g.vertices})


def refine(f: CylFun, depth: int) -> CylFun:
    """The same function written at a larger depth."""
    if depth < f.depth:
        raise DepthError(f"cannot refine depth {f.depth} down to {depth}")
    if depth == f.depth:
        return f
    g = f.graph
    out = {}
    n = depth - f.depth
    for k, v in f.data.items():
        if f.depth == 0:
            for mu in _extensions(g, k, n):
                out[mu] = v
        else:
            for rest in _extensions(g, g.s(k[-1]), n):
                out[k + rest] = v
    return CylFun._raw(g, depth, out)


def alpha(g: Graph, f: CylFun) -> CylFun:
    """``f o sigma``, one level deeper: ``alpha(f)(e mu) = f(mu)``."""
    out = {}
    for k, v in f.data.items():
        if f.depth == 0:
            for e in g.s_inv(k):
                out[(e,)] = v
        else:
            for e in g.s_inv(g.r(k[0])):
                out[(e,) + k] = v
    return CylFun._raw(g, f.depth + 1, out)


def transfer_L(g: Graph, f: CylFun) -> CylFun:
    """Average over preimages: ``L(f)(xi) = c(r(xi))^-1 sum_{s(e) = r(xi)} f(e xi)``.

    The result has depth ``max(depth - 1, 0)``; on vertex functions it reads
    ``L(f)(v) = c(v)^-1 sum_{s(e) = v} f(r(e))``.
    """
    out: dict = {}
    if f.depth == 0:
        for u, val in f.data.items():
            for e in g.r_inv(u):
                v = g.s(e)
                out[v] = out.get(v, ZERO) + val * _inv(g.c(v))
        depth = 0
    else:
        for mu, val in f.data.items():
            tail = mu[1:] if len(mu) > 1 else g.s(mu[0])
            out[tail] = out.get(tail, ZERO) + val * _inv(g.c(g.s(mu[0])))
        depth = f.depth - 1
    return CylFun._raw(g, depth, {k: v for k, v in out.items() if v})


def inner(g: Graph, f: CylFun, h: CylFun) -> CylFun:
    """``<f, h>_L = L(conj(f) h)``; conjugate-linear in ``f``."""
    return transfer_L(g, f.conj() * h)


def right_act(g: Graph, f: CylFun, a: CylFun) -> CylFun:
    """``f . a = f alpha(a)``."""
    return f * alpha(g, a)


# -- operators ------------------------------------------------------------------

@dataclass(frozen=True)
class _Term:
    coef: GaussQ
    kind: str
    args: tuple


class CylOperator:
    """A finite combination of multiplication operators and rank-one ``Theta_{x,y}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple(terms)

    @property
    def depth(self) -> int:
        return max((a.depth for t in self.terms for a in t.args), default=0)

    @property
    def has_theta(self) -> bool:
        return any(t.kind == "theta" for t in self.terms)

    def __add__(self, other: "CylOperator") -> "CylOperator":
        return CylOperator(self.terms + other.terms)

    def __mul__(self, c):
        c = GaussQ.coerce(c)
        return CylOperator(_Term(t.coef * c, t.kind, t.args) for t in self.terms)

    __rmul__ = __mul__

    def __repr__(self):
        parts = [f"{t.coef}*{t.kind}({', '.join(repr(a) for a in t.args)})" for t in self.terms]
        return " + ".join(parts) or "0"


def mult(a: CylFun) -> CylOperator:
    """Left action of ``a`` by pointwise multiplication."""
    return CylOperator([_Term(ONE, "mult", (a,))])


def theta(x: CylFun, y: CylFun) -> CylOperator:
    """``Theta_{x,y}(z) = x . <y, z>_L = x alpha(L(conj(y) z))``."""
    return CylOperator([_Term(ONE, "theta", (x, y))])


def apply_op(g: Graph, T: CylOperator, z: CylFun, at_depth: int) -> CylFun:
    if at_depth < T.depth or at_depth < z.depth or (T.has_theta and at_depth < 1):
        raise DepthError(
            f"depth {at_depth} is below the operator ({T.depth}) or argument ({z.depth}) depth"
        )
    total = CylFun._raw(g, at_depth, {})
    for t in T.terms:
        if t.kind == "mult":
            piece = t.args[0] * z
        else:
            x, y = t.args
            inner_val = transfer_L(g, y.conj() * z)
            if inner_val.is_zero():
                continue
            piece = x * alpha(g, inner_val)
        total = total + piece * t.coef
    return refine(total, at_depth)


class OpMatrix:
    """Exact matrix of an operator on the span of depth-``d`` cylinder indicators."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis, entries):
        self.basis = tuple(basis)
        self.entries = {k: v for k, v in entries.items() if v}

    def __getitem__(self, rc) -> GaussQ:
        return self.entries.get(rc, ZERO)

    def dense(self) -> list[list[GaussQ]]:
        return [[self[(r, c)] for c in self.basis] for r in self.basis]

    def __eq__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self.basis == other.basis and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"OpMatrix({len(self.basis)}x{len(self.basis)}, {len(self.entries)} nonzero)"


def op_matrix(g: Graph, T: CylOperator, d: int) -> OpMatrix:
    """Column ``mu`` is ``T(chi(mu))`` at depth ``d``; rows and columns in path order."""
    basis = enumerate_paths(g, d)
    entries = {}
    for mu in basis:
        col = apply_op(g, T, CylFun._raw(g, d, {mu: ONE}), d)
        for row, val in col.data.items():
            entries[(row, mu)] = val
    return OpMatrix(basis, entries)
