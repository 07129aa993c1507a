"""Eventually periodic infinite paths and the shift on them.

An :class:`EvPath` stands for the infinite path ``head . cycle . cycle ...``.
These points are dense in the path space, closed under the shift and under
choosing preimages, and every witness needed by the dual checks below is of
this form, so all the dynamics here is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import (
    Graph,
    condition_L,
    count_return_paths,
    cycle_vertices,
    enumerate_paths,
    is_path,
    reaches,
    simple_cycles,
)
from . import lattice

__all__ = [
    "EvPath",
    "DiscreteCycle",
    "PropertyViolation",
    "shift",
    "preimages",
    "period",
    "path_range",
    "cylinder_in_Hmn",
    "topologically_free",
    "topologically_free_by_cylinders",
    "is_cluster_point",
    "cluster_point_search",
    "cluster_point_by_search",
    "discrete_cycles",
    "maximal_head_of_cycle",
    "test_points",
    "in_Y",
    "invariant_roundtrip",
    "heads_correspondence",
]


class PropertyViolation(AssertionError):
    """Two independent computations of the same property disagreed."""


def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass(frozen=True, order=True)
class EvPath:
    """The infinite path ``head cycle cycle cycle ...`` in canonical form.

    Canonical means the head is as short as possible and the cycle is
    primitive; two values are equal exactly when they spell the same infinite
    path.  The cycle is *not* rotated to a minimal representative, since
    rotating it changes the point (``(ab)^oo != (ba)^oo``).
    """

    head: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("an eventually periodic path needs a nonempty cycle")
        head, cyc = tuple(self.head), _primitive_root(tuple(self.cycle))
        while head and head[-1] == cyc[-1]:
            head = head[:-1]
            cyc = cyc[-1:] + cyc[:-1]
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "cycle", cyc)

    @classmethod
    def make(cls, g: Graph, head, cycle) -> "EvPath":
        """Construct and check composability in ``g``."""
        head, cycle = tuple(head), tuple(cycle)
        word = head + cycle + cycle[:1]
        if not is_path(g, word):
            raise ValueError(f"{head}|{cycle} is not an infinite path in the graph")
        return cls(head, cycle)

    @classmethod
    def parse(cls, text: str) -> "EvPath":
        """Read ``head|cycle`` with comma-separated edge ids, e.g. ``h|k`` or ``|a,b``."""
        head, sep, cyc = text.partition("|")
        if not sep:
            raise ValueError(f"missing '|' in {text!r}")
        split = lambda s: tuple(x for x in s.split(",") if x)
        return cls(split(head), split(cyc))

    def __str__(self):
        return ",".join(self.head) + "|" + ",".join(self.cycle)

    @property
    def is_periodic(self) -> bool:
        return not self.head

    def edge(self, i: int) -> str:
        """The ``i``-th edge, counting from 0."""
        if i < len(self.head):
            return self.head[i]
        return self.cycle[(i - len(self.head)) % len(self.cycle)]

    def prefix(self, n: int) -> tuple[str, ...]:
        return tuple(self.edge(i) for i in range(n))

    def prepend(self, edges) -> "EvPath":
        return EvPath(tuple(edges) + self.head, self.cycle)


def path_range(g: Graph, xi: EvPath) -> str:
    return g.r(xi.edge(0))


def shift(xi: EvPath, k: int = 1) -> EvPath:
    """``sigma^k``: drop ``k`` edges, rotating the cycle once the head is used up."""
    if k < 0:
        raise ValueError("shift count must be non-negative")
    if k <= len(xi.head):
        return EvPath(xi.head[k:], xi.cycle)
    j = (k - len(xi.head)) % len(xi.cycle)
    return EvPath((), xi.cycle[j:] + xi.cycle[:j])


def preimages(g: Graph, xi: EvPath) -> list[EvPath]:
    """``sigma^{-1}(xi) = {e xi : s(e) == r(xi)}``."""
    return [xi.prepend((e,)) for e in g.s_inv(path_range(g, xi))]


def period(xi: EvPath) -> int | None:
    return len(xi.cycle) if xi.is_periodic else None


def _shifts(xi: EvPath) -> list[EvPath]:
    """The finitely many distinct points ``sigma^k(xi)``."""
    return [shift(xi, k) for k in range(len(xi.head) + len(xi.cycle))]


# -- topological freeness -------------------------------------------------------

def _deterministic_from(g: Graph, v: str) -> bool:
    """Every vertex met by infinite paths from ``v`` has exactly one edge out."""
    seen, todo = {v}, [v]
    while todo:
        x = todo.pop()
        es = g.r_inv(x)
        if len(es) != 1:
            return False
        y = g.s(es[0])
        if y not in seen:
            seen.add(y)
            todo.append(y)
    return True


def _unique_continuation(g: Graph, v: str) -> EvPath:
    """The only infinite path from a deterministic vertex ``v``."""
    edges, first_visit = [], {}
    x = v
    while x not in first_visit:
        first_visit[x] = len(edges)
        e = g.r_inv(x)[0]
        edges.append(e)
        x = g.s(e)
    k = first_visit[x]
    return EvPath(tuple(edges[:k]), tuple(edges[k:]))


def cylinder_in_Hmn(g: Graph, mu, m: int, n: int) -> bool:
    """Whether the cylinder ``Z(mu)`` lies inside ``{xi : sigma^m xi == sigma^n xi}``.

    ``mu`` is a path (tuple of edges) or a vertex.  The cylinder is split into
    cylinders of length at least ``n``; each such piece lies in the set iff
    its source vertex has a unique continuation and the resulting single
    point satisfies the equation, because any branching beyond the word
    produces two extensions that cannot both obey it.
    """
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    if isinstance(mu, str):
        depth, pieces = 0, [mu]
    else:
        depth, pieces = len(mu), [tuple(mu)]
    target = max(depth, n)
    if target > depth:
        if depth == 0:
            pieces = enumerate_paths(g, target, start_vertex=mu)
        else:
            pieces = [tuple(mu) + rest for rest in enumerate_paths(g, target - depth, g.s(mu[-1]))]
    for nu in pieces:
        end = g.s(nu[-1])
        if not _deterministic_from(g, end):
            return False
        xi = _unique_continuation(g, end).prepend(nu)
        if shift(xi, m) != shift(xi, n):
            return False
    return True


def topologically_free_by_cylinders(g: Graph, max_length: int | None = None) -> tuple[bool, tuple | None]:
    """No cylinder of length ``<= max_length`` sits inside ``{xi : sigma^p xi == xi}``.

    Periods run over ``1..|E0|``: an interior point of any ``H_{m,n}`` pushes
    forward to one of ``H_{0,n-m}``, and such an interior forces an entry-less
    cycle whose length is at most the number of vertices.
    """
    nv = len(g.vertices)
    max_length = nv if max_length is None else max_length
    for length in range(max_length + 1):
        for mu in enumerate_paths(g, length):
            for p in range(1, nv + 1):
                if cylinder_in_Hmn(g, mu, 0, p):
                    return False, (mu, p)
    return True, None


def topologically_free(g: Graph) -> bool:
    """Condition (L), confirmed against the cylinder search."""
    a = condition_L(g)[0]
    b = topologically_free_by_cylinders(g)[0]
    if a != b:
        raise PropertyViolation(f"topological freeness: condition (L) says {a}, cylinders say {b}")
    return a


# -- cluster points ---------------------------------------------------------------

class _Truncated:
    """Marker for a search cut short by its length bound."""


TRUNCATED = _Truncated()


def cluster_point_search(g: Graph, xi: EvPath, depth: int, bound: int):
    """A path ``rho`` with ``rho xi != xi`` agreeing with ``xi`` on ``depth`` edges.

    Only ``rho`` of the form ``xi_1 .. xi_depth tau`` with ``len(rho) <= bound``
    are searched (any witness can be padded to that form by a whole number of
    periods).  The search runs over states ``(vertex, still_matching, phase)``
    where ``still_matching`` records whether ``tau`` so far copies
    ``sigma^depth(xi)``; ``tau xi == sigma^depth xi`` happens exactly when
    ``tau`` copies it all the way and ``depth + len(tau)`` is a multiple of
    the period.

    Returns the witness, ``None`` when the state space is exhausted without
    one (so none exists), or ``TRUNCATED`` when the bound stopped the search
    first.
    """
    if not xi.is_periodic:
        raise ValueError("cluster-point search needs a periodic point")
    n = len(xi.cycle)
    base = path_range(g, xi)
    prefix = xi.prefix(depth)
    start = g.s(prefix[-1]) if prefix else base
    budget = bound - depth
    if budget < 0:
        return TRUNCATED
    # tau is built edge by edge from its range end; tau empty is a candidate too.
    state0 = (start, True, depth % n)
    parents = {state0: None}
    frontier = deque([(state0, 0)])
    cut = False
    while frontier:
        state, used = frontier.popleft()
        vertex, matching, phase = state
        if vertex == base and not (matching and phase == 0):
            tau = []
            while parents[state] is not None:
                state, e = parents[state]
                tau.append(e)
            return prefix + tuple(reversed(tau))
        for e in g.r_inv(vertex):
            still = matching and e == xi.cycle[phase]
            nxt = (g.s(e), still, (phase + 1) % n if still else 0)
            if nxt not in parents:
                if used == budget:
                    cut = True
                    continue
                parents[nxt] = (state, e)
                frontier.append((nxt, used + 1))
    return TRUNCATED if cut else None


def cluster_point_by_search(g: Graph, xi: EvPath, depth: int = 8, search_bound: int | None = None) -> bool | None:
    """Search route: ``True``/``False``, or ``None`` when the bound left it undecided."""
    bound = len(g.vertices) * len(g.edges) + depth if search_bound is None else search_bound
    undecided = False
    for d in range(depth + 1):
        found = cluster_point_search(g, xi, d, bound)
        if found is None:
            return False
        if found is TRUNCATED:
            undecided = True
    return None if undecided else True


def is_cluster_point(g: Graph, xi: EvPath, depth: int = 8, search_bound: int | None = None) -> bool:
    """Whether periodic ``xi`` is a limit of other points of its backward orbit.

    The answer is read off the return paths at ``r(xi)``; it is then checked
    against a search for nearby backward-orbit points at every depth up to
    ``depth``.  A definite disagreement raises :class:`PropertyViolation`; a
    search stopped by ``search_bound`` leaves the first answer standing.
    """
    if not xi.is_periodic:
        raise ValueError("cluster points are only asked of periodic points")
    answer = count_return_paths(g, path_range(g, xi)) == "many"
    found = cluster_point_by_search(g, xi, depth, search_bound)
    if found is not None and found != answer:
        raise PropertyViolation(
            f"cluster point {xi}: return paths say {answer}, search says {found}"
        )
    return answer


# -- discrete cycles and heads -----------------------------------------------------

@dataclass(frozen=True, order=True)
class DiscreteCycle:
    """The orbit ``{sigma^k(point) : 0 <= k < period}`` of an isolated periodic point."""

    point: EvPath
    period: int

    def orbit(self) -> list[EvPath]:
        return [shift(self.point, k) for k in range(self.period)]

    def base(self, g: Graph) -> str:
        return path_range(g, self.point)


def periodic_orbits(g: Graph) -> list[EvPath]:
    """One periodic point per orbit coming from a simple cycle."""
    return [EvPath((), cyc) for cyc in simple_cycles(g)]


def discrete_cycles(g: Graph, depth: int = 8) -> list[DiscreteCycle]:
    """Orbits of periodic points that are not cluster points of their backward orbit.

    A non-cluster periodic point has a unique return path at its range, which
    is then a simple cycle, so scanning simple cycles finds every orbit.
    """
    out = []
    for xi in periodic_orbits(g):
        if not is_cluster_point(g, xi, depth):
            out.append(DiscreteCycle(xi, len(xi.cycle)))
    return out


def maximal_head_of_cycle(g: Graph, beta: DiscreteCycle) -> frozenset[str]:
    """Vertices that can reach the orbit: ``{v : v <= base(beta)}``."""
    base = beta.base(g)
    m = frozenset(v for v in g.vertices if reaches(g, v, base))
    if not lattice.is_maximal_head(g, m):
        raise PropertyViolation(f"{sorted(m)} from {beta.point} fails the head axioms")
    if lattice.entryless_cycle_in(g, m) is None:
        raise PropertyViolation(f"{sorted(m)} from {beta.point} has no entry-less cycle")
    return m


def heads_correspondence(g: Graph, depth: int = 8) -> bool:
    """Discrete cycles match the heads carrying an entry-less cycle, one to one."""
    flagged = {h.vertices for h in lattice.maximal_heads(g) if h.has_entryless_cycle}
    images = [maximal_head_of_cycle(g, beta) for beta in discrete_cycles(g, depth)]
    if len(set(images)) != len(images):
        raise PropertyViolation("two discrete cycles give the same maximal head")
    if set(images) != flagged:
        raise PropertyViolation(
            f"heads from discrete cycles {sorted(map(sorted, images))} "
            f"!= flagged heads {sorted(map(sorted, flagged))}"
        )
    return True


# -- closed invariant sets ------------------------------------------------------

def test_points(g: Graph, head_depth: int | None = None) -> list[EvPath]:
    """Every ``nu kappa^oo`` with ``kappa`` a rotation of a simple cycle and ``|nu| <= head_depth``.

    With the default ``head_depth = |E0|`` every vertex that starts an
    infinite path avoiding a given set also starts one of these.
    """
    head_depth = len(g.vertices) if head_depth is None else head_depth
    points = set()
    for cyc in simple_cycles(g):
        for i in range(len(cyc)):
            rot = cyc[i:] + cyc[:i]
            points.add(EvPath((), rot))
            base = g.r(rot[0])
            # heads nu with s(nu) == base, grown backwards edge by edge
            layer = [()]
            for _ in range(head_depth):
                layer = [(e,) + nu for nu in layer for e in g.s_inv(g.r(nu[0]) if nu else base)]
                points.update(EvPath(nu, rot) for nu in layer)
    return sorted(points)


def in_Y(g: Graph, h, xi: EvPath) -> bool:
    """Membership in the closed invariant set attached to ``h``: ``xi`` never enters ``h``."""
    return all(path_range(g, eta) not in h for eta in _shifts(xi))


def invariant_roundtrip(g: Graph, h, head_depth: int | None = None) -> bool:
    """Check that ``h -> Y_h -> h`` is the identity and ``Y_h`` is invariant.

    On the test points: ``Y_h`` is closed under the shift and under taking
    preimages, and the vertices all of whose infinite paths leave ``Y_h``
    are exactly ``h``.
    """
    h = frozenset(h)
    if not (lattice.is_hereditary(g, h) and lattice.is_saturated(g, h)):
        raise ValueError(f"{sorted(h)} is not saturated and hereditary")
    pts = test_points(g, head_depth)
    for xi in pts:
        if in_Y(g, h, xi):
            if not in_Y(g, h, shift(xi)):
                raise PropertyViolation(f"shift of {xi} leaves Y_H")
            for eta in preimages(g, xi):
                if not in_Y(g, h, eta):
                    raise PropertyViolation(f"preimage {eta} of {xi} leaves Y_H")
    meets_y = {path_range(g, xi) for xi in pts if in_Y(g, h, xi)}
    recovered = frozenset(v for v in g.vertices if v not in meets_y)
    if recovered != h:
        raise PropertyViolation(f"H_(Y_H) = {sorted(recovered)} != H = {sorted(h)}")
    return True
