"""Structure reports and verification suites, as plain JSON-ready dicts.

Every list in a report is sorted and every rational is a ``p/q`` string, so
``json.dumps(report, sort_keys=True)`` is byte-for-byte reproducible.
"""

from __future__ import annotations

import json

from . import dynamics, lattice
from .graph import (
    Graph,
    condition_K,
    condition_L,
    cofinal,
    count_return_paths,
    format_graph,
    validate,
)
from .identities import verify_identities

SUITES = (
    "identities",
    "topological_freeness",
    "cluster_points",
    "invariant_roundtrip",
    "heads_correspondence",
)


def graph_summary(g: Graph) -> dict:
    return {
        "vertex_count": len(g.vertices),
        "edge_count": len(g.edges),
        "vertices": list(g.vertices),
        "edges": [{"id": e, "r": g.r(e), "s": g.s(e)} for e in g.edges],
        "c": {v: g.c(v) for v in g.vertices},
    }


def predicates(g: Graph) -> dict:
    verdict = lattice.simplicity(g)
    k, k_witness = condition_K(g)
    out = {
        "condition_L": verdict.topologically_free,
        "condition_K": k,
        "cofinal": verdict.irreducible,
        "topologically_free": verdict.topologically_free,
        "irreducible": verdict.irreducible,
        "simple": verdict.simple,
        "all_ideals_gauge_invariant": k,
        "return_paths": {v: count_return_paths(g, v) for v in g.vertices},
        "witnesses": {},
    }
    if verdict.entryless_cycle is not None:
        out["witnesses"]["condition_L"] = list(verdict.entryless_cycle)
    if verdict.cofinality_witness is not None:
        v, cyc = verdict.cofinality_witness
        out["witnesses"]["cofinal"] = {"vertex": v, "cycle": list(cyc)}
    if k_witness is not None:
        out["witnesses"]["condition_K"] = k_witness
    return out


def ideals(g: Graph, bound: int | None = None) -> dict:
    lat = lattice.enumerate_sat_hered(g, bound)
    heads = lattice.maximal_heads(g, bound)
    return {
        "count": len(lat),
        "lattice": lat.as_lists(),
        "covers": sorted([lattice.sorted_set(a), lattice.sorted_set(b)] for a, b in lat.covers()),
        "maximal_heads": [h.as_dict() for h in heads],
    }


# -- suites --------------------------------------------------------------------

def _suite(name: str, fn) -> dict:
    try:
        detail = fn()
    except dynamics.PropertyViolation as exc:
        return {"name": name, "passed": False, "counterexample": str(exc)}
    passed = detail.pop("passed", True)
    return {"name": name, "passed": passed, **detail}


def _identities(g, depth, seed, samples):
    rep = verify_identities(g, depth, seed=seed, samples=samples)
    return {"passed": rep.passed, "depth": depth, "checks": [c.as_dict() for c in rep.checks]}


def _topological_freeness(g):
    a = condition_L(g)[0]
    b, witness = dynamics.topologically_free_by_cylinders(g)
    d = {"passed": a == b, "condition_L": a, "cylinders": b}
    if witness is not None:
        mu, p = witness
        d["interior_witness"] = {"cylinder": list(mu) if not isinstance(mu, str) else mu, "period": p}
    return d


def _cluster_points(g, orbit_depth, bound):
    points = {}
    for xi in dynamics.periodic_orbits(g):
        answer = dynamics.is_cluster_point(g, xi, orbit_depth, bound)
        found = dynamics.cluster_point_by_search(g, xi, orbit_depth, bound)
        points[str(xi)] = {
            "return_paths": answer,
            "search": "indeterminate" if found is None else found,
        }
    d = {"orbit_depth": orbit_depth, "points": points}
    if any(p["search"] == "indeterminate" for p in points.values()):
        d["note"] = "search bound reached before a witness was found; return-path answer kept"
    return d


def _roundtrip(g, bound):
    sets = lattice.enumerate_sat_hered(g, bound).sets
    for h in sets:
        dynamics.invariant_roundtrip(g, h)
    return {"sets_checked": len(sets)}


def _heads(g, orbit_depth):
    dynamics.heads_correspondence(g, orbit_depth)
    return {"discrete_cycles": [str(b.point) for b in dynamics.discrete_cycles(g, orbit_depth)]}


def run_suites(g: Graph, depth: int = 3, orbit_depth: int = 8, orbit_bound: int | None = None,
               seed: int = 0, samples: int = 200, bound: int | None = None) -> dict:
    """Run every verification suite; the graph must have no sources and be shift-total."""
    suites = [
        _suite("identities", lambda: _identities(g, depth, seed, samples)),
        _suite("topological_freeness", lambda: _topological_freeness(g)),
        _suite("cluster_points", lambda: _cluster_points(g, orbit_depth, orbit_bound)),
        _suite("invariant_roundtrip", lambda: _roundtrip(g, bound)),
        _suite("heads_correspondence", lambda: _heads(g, orbit_depth)),
    ]
    return {"passed": all(s["passed"] for s in suites), "suites": suites}


def structure_report(g: Graph, depth: int = 2, orbit_depth: int = 8, orbit_bound: int | None = None,
                     seed: int = 0, samples: int = 200, bound: int | None = None) -> dict:
    """The full analysis.  Suites are skipped (and say why) on graphs that are not shift-total."""
    validity = validate(g)
    report = {
        "graph": graph_summary(g),
        "validity": validity.as_dict(),
        "predicates": predicates(g),
        "ideals": ideals(g, bound),
        "primitive_ideals": lattice.primitive_catalog(g, bound).as_dict(),
    }
    if validity.ok:
        report["verification"] = run_suites(g, depth, orbit_depth, orbit_bound, seed, samples, bound)
    else:
        report["verification"] = {"passed": None, "skipped": "graph is not shift-total", "suites": []}
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_text(report: dict) -> str:
    g, p = report["graph"], report["predicates"]
    lines = [
        f"graph: {g['vertex_count']} vertices, {g['edge_count']} edges",
        "c: " + " ".join(f"{v}={n}" for v, n in g["c"].items()),
    ]
    bad = [k for k, v in report["validity"].items() if v is False]
    lines.append("validity: ok" if not bad else "validity: fails " + ", ".join(bad))
    for key in ("simple", "topologically_free", "irreducible", "condition_L", "condition_K", "cofinal"):
        lines.append(f"{key}: {str(p[key]).lower()}")
    for key, w in sorted(p["witnesses"].items()):
        lines.append(f"  witness for {key}: {json.dumps(w, sort_keys=True)}")
    ids = report["ideals"]
    lines.append(f"gauge-invariant ideals: {ids['count']}")
    for h in ids["lattice"]:
        lines.append("  {" + ", ".join(h) + "}")
    lines.append(f"maximal heads: {len(ids['maximal_heads'])}")
    for mh in ids["maximal_heads"]:
        flag = " (entry-less cycle " + ",".join(mh["witness_cycle"]) + ")" if mh["entryless_cycle"] else ""
        lines.append("  {" + ", ".join(mh["head"]) + "}" + flag)
    prim = report["primitive_ideals"]
    lines.append(
        f"primitive ideals: {prim['counts']['gauge_invariant']} gauge-invariant, "
        f"{prim['counts']['circle_families']} circle families"
    )
    ver = report.get("verification")
    if ver is not None:
        lines.extend(suite_lines(ver))
    return "\n".join(lines) + "\n"


def suite_lines(ver: dict) -> list[str]:
    if ver.get("skipped"):
        return [f"verification skipped: {ver['skipped']}"]
    lines = []
    for s in ver["suites"]:
        lines.append(f"{'PASS' if s['passed'] else 'FAIL'} {s['name']}")
        if s["name"] == "identities":
            for c in s.get("checks", []):
                lines.append(f"  {'pass' if c['passed'] else 'FAIL'} {c['name']} ({c['instances']} instances)")
                if not c["passed"]:
                    lines.append("    " + json.dumps(c["counterexample"], sort_keys=True))
        elif s.get("note"):
            lines.append(f"  note: {s['note']}")
        if s["name"] != "identities" and not s["passed"]:
            lines.append("  " + json.dumps({k: v for k, v in s.items() if k not in ("name", "passed")},
                                           sort_keys=True))
    return lines


# -- corpus ----------------------------------------------------------------------

def equivalence_violations(g: Graph, orbit_depth: int = 8) -> list[str]:
    """The four graph/dynamics equivalences, checked on one graph.

    Returns a description of each one that fails (empty when all hold).
    """
    out = []
    a = condition_L(g)[0]
    b = dynamics.topologically_free_by_cylinders(g)[0]
    if a != b:
        out.append(f"topological freeness: condition (L) {a}, cylinders {b}")
    irreducible = len(lattice.enumerate_sat_hered(g)) == 2
    if cofinal(g)[0] != irreducible:
        out.append(f"irreducibility: cofinal {cofinal(g)[0]}, two ideals {irreducible}")
    try:
        clusters = all(dynamics.is_cluster_point(g, xi, orbit_depth) for xi in dynamics.periodic_orbits(g))
        if condition_K(g)[0] != clusters:
            out.append(f"condition (K) {condition_K(g)[0]}, all orbits cluster {clusters}")
    except dynamics.PropertyViolation as exc:
        out.append(str(exc))
    try:
        dynamics.heads_correspondence(g, orbit_depth)
    except dynamics.PropertyViolation as exc:
        out.append(str(exc))
    return out


def counterexample_text(g: Graph, problems: list[str]) -> str:
    return "".join(f"# {p}\n" for p in problems) + format_graph(g)
