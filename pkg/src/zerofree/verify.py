"""Verification suites shared by the command line and the acceptance tests.

Each suite returns a plain dict with ``name``, ``ok`` and details that
serialize to JSON unchanged.
"""
from __future__ import annotations

import math
import random
from typing import Iterable

from .analysis import verify_section4
from .graphs import (
    Graph,
    RootedTree,
    complete_dary_tree,
    complete_graph,
    cycle_graph,
    path_graph,
    random_corpus,
    saw_tree,
    star_graph,
)
from .poly import Polynomial, brute_force_polynomial, divides, evaluate, independence_polynomial, tree_polynomial
from .regions import HALF_PI, new_domain_radius, region_containment_scan

SUITES = ("s4", "regions", "divisibility", "zerofree")
CORPUS_SIZE = 200
ZERO_MARGIN = 1e-8


def parse_delta_range(text: str) -> list[int]:
    """"3..12" -> [3, ..., 12]; a single integer is a one-element range."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ValueError(f"bad Delta range {text!r}; expected like 3..12") from None
    if a > b:
        raise ValueError(f"empty Delta range {text!r}")
    return list(range(a, b + 1))


def named_graphs(max_n: int = 12) -> list[Graph]:
    """K_n, C_n, P_n and stars for n <= max_n."""
    out = []
    for n in range(1, max_n + 1):
        out += [complete_graph(n), path_graph(n)]
        if n >= 3:
            out.append(cycle_graph(n))
        out.append(star_graph(n - 1))
    return out


def divisibility_suite(seed: int, count: int = CORPUS_SIZE) -> dict:
    """Z_G divides Z of the self-avoiding-walk tree at every vertex of every corpus graph."""
    failures = []
    checked = 0
    for i, g in enumerate(random_corpus(count, seed)):
        zg = independence_polynomial(g)
        for v in range(g.vertex_count):
            tree, _ = saw_tree(g, v)
            checked += 1
            if not divides(zg, tree_polynomial(tree)):
                failures.append({"graph": i, "vertex": v})
    return {"name": "divisibility", "ok": not failures, "checked": checked, "failures": failures}


def oracle_suite(seed: int, count: int = CORPUS_SIZE) -> dict:
    """Deletion recursion against subset enumeration."""
    failures = []
    graphs = random_corpus(count, seed) + named_graphs()
    for i, g in enumerate(graphs):
        if independence_polynomial(g) != brute_force_polynomial(g):
            failures.append(i)
    return {"name": "oracle", "ok": not failures, "checked": len(graphs), "failures": failures}


def sample_new_domain(d: int, count: int, seed: int, shrink: float = 0.95) -> list[complex]:
    """Seeded points of D pulled towards 0 by ``shrink``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        alpha = rng.uniform(-HALF_PI, HALF_PI)
        r = new_domain_radius(alpha, d)
        if r is None:
            continue
        out.append(shrink * r * math.sqrt(rng.random()) * complex(math.cos(alpha), math.sin(alpha)))
    return out


def tree_value(tree: RootedTree, lam: complex) -> complex:
    """Z_T(lam) in floating point by the rooted out/occupied recursion."""
    out: dict[int, complex] = {}
    occ: dict[int, complex] = {}
    for v in reversed(tree.order):
        free, used = 1 + 0j, complex(lam)
        for c in tree.children(v):
            free *= out[c] + occ[c]
            used *= out.pop(c)
            occ.pop(c)
        out[v], occ[v] = free, used
    return out[tree.root] + occ[tree.root]


def zerofree_suite(
    deltas: Iterable[int],
    seed: int,
    points: int = 50,
    shrink: float = 0.95,
    count: int = CORPUS_SIZE,
) -> dict:
    """|Z_G(lam)| > ZERO_MARGIN for sampled lam in D and every graph of degree <= Delta.

    Graphs are the seeded corpus plus the named graphs (filtered to max
    degree <= Delta) and the complete trees T_{k, Delta-1}, k <= 3.
    """
    corpus = random_corpus(count, seed) + named_graphs()
    polys = [(g.max_degree, independence_polynomial(g)) for g in corpus]
    per_delta = []
    ok = True
    for delta in deltas:
        d = delta - 1
        lams = sample_new_domain(d, points, seed + delta, shrink)
        eligible: list[Polynomial] = [p for deg, p in polys if deg <= delta]
        trees = [complete_dary_tree(d, k) for k in range(4)]
        worst, witness = math.inf, None
        for lam in lams:
            for p in eligible:
                val = abs(evaluate(p, lam, prec=128))
                if val < worst:
                    worst, witness = val, lam
            for t in trees:
                val = abs(tree_value(t, lam))
                if val < worst:
                    worst, witness = val, lam
        passed = worst > ZERO_MARGIN
        ok &= passed
        per_delta.append(
            {
                "delta": delta,
                "graphs": len(eligible) + len(trees),
                "points": len(lams),
                "min_abs_value": worst,
                "witness": None if witness is None else {"re": witness.real, "im": witness.imag},
                "ok": passed,
            }
        )
    return {"name": "zerofree", "ok": ok, "results": per_delta}


def regions_suite(deltas: Iterable[int], samples: int = 64) -> dict:
    reports = []
    for delta in deltas:
        scan = region_containment_scan(delta, samples)
        reports.append(scan.to_dict() | {"ok": scan.ok})
    return {"name": "regions", "ok": all(r["ok"] for r in reports), "results": reports}


def s4_suite(deltas: Iterable[int], grid: int = 257) -> dict:
    d_values = [delta - 1 for delta in deltas if delta >= 3]
    report = verify_section4(d_values, grid)
    return {
        "name": "s4",
        "ok": report.ok,
        "checks": [c.to_dict() for c in report.checks],
        "undefined": [{"d": d, "beta": b} for d, b in report.undefined],
        "observations": report.observations,
    }

