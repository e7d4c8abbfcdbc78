"""Verification campaigns over tree corpora and random graphs.

Each campaign returns a :class:`CampaignReport`. Reports are deterministic in
their parameters: counts are sums over instances, violations are sorted, and
wall time is kept out of the JSON unless explicitly requested.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .alphalab import (
    alpha_branch_properties,
    alpha_of,
    contraction_identity_details,
    key_lemma_audit,
    lambda_,
    lambda_nonpositive_on_samples,
    separates,
)
from .charpoly import charpoly
from .cospectral import (
    cospectral_groups,
    derivative_identity_check,
    phi,
    strongly_cospectral_classes,
    strongly_cospectral_pairs,
    wronskian_identity_check,
)
from .errors import VerificationFailure
from .graphs import MAX_TREE_ORDER, Graph, TreeStream, parse_graph6, to_graph6, tree_path
from .spectral import eigendecompose, parity_consistency

CACHE_DIR_ENV = "STRONGCOSPEC_CACHE_DIR"
# Random graphs: Python's random.Random (Mersenne Twister) seeded with an int;
# edge probabilities cycle through these densities, every fifth instance is a
# uniform random labelled tree built from a Pruefer sequence.
RANDOM_DENSITIES = (0.2, 0.35, 0.5, 0.7)


@dataclass
class CampaignReport:
    name: str
    parameters: dict
    per_order: dict[int, Counter] = field(default_factory=dict)
    totals: Counter = field(default_factory=Counter)
    violations: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def success(self) -> bool:
        return not self.violations

    def add(self, order: int, key: str, amount: int = 1) -> None:
        self.per_order.setdefault(order, Counter())[key] += amount
        self.totals[key] += amount

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "campaign": self.name,
            "parameters": self.parameters,
            "success": self.success,
            "totals": dict(sorted(self.totals.items())),
            "per_order": {str(n): dict(sorted(c.items())) for n, c in sorted(self.per_order.items())},
            "violations": sorted(self.violations, key=lambda v: json.dumps(v, sort_keys=True)),
            "extra": self.extra,
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def dumps(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json(include_timing), sort_keys=True, indent=2)


class _JsonLinesLog:
    """Append-only progress log, one JSON object per line."""

    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path else None
        if self.path:
            self.path.parent.mkdir(parents=True, exist_ok=True)

    def write(self, record: dict) -> None:
        if self.path:
            with self.path.open("a") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")


def _default_log(name: str) -> str | None:
    root = os.environ.get(CACHE_DIR_ENV)
    return str(Path(root) / f"{name}.jsonl") if root else None


# ---------------------------------------------------------------------------
# trees: no three pairwise strongly cospectral vertices


def on_common_path(t: Graph, a: int, b: int, c: int) -> bool:
    """Whether three vertices of a tree lie on one path."""
    for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
        if x in tree_path(t, y, z):
            return True
    return False


def _tree_stats(t: Graph) -> tuple[Counter, list[dict]]:
    stats: Counter = Counter()
    violations: list[dict] = []
    stats["trees"] += 1
    groups = cospectral_groups(t)
    sc_pairs = strongly_cospectral_pairs(t)
    stats["cospectral_pairs"] += sum(len(gr) * (len(gr) - 1) // 2 for gr in groups)
    stats["strongly_cospectral_pairs"] += len(sc_pairs)
    if sc_pairs:
        stats["trees_with_strongly_cospectral_pair"] += 1
    sc = set(sc_pairs)
    for gr in groups:
        for a, b, c in itertools.combinations(gr, 3):
            stats["cospectral_triples"] += 1
            if on_common_path(t, a, b, c):
                violations.append(_dump(t, "cospectral triple on a common path", [a, b, c]))
            if (a, b) in sc and (a, c) in sc and (b, c) in sc:
                stats["strongly_cospectral_triples"] += 1
                violations.append(_dump(t, "three pairwise strongly cospectral vertices", [a, b, c]))
    return stats, violations


def _dump(g: Graph, what: str, vertices: list[int]) -> dict:
    return {
        "violation": what,
        "graph6": to_graph6(g),
        "vertices": vertices,
        "charpoly": charpoly(g).to_json(),
        "deleted": {str(v): phi(g, {v}).to_json() for v in vertices},
    }


def _verify_chunk(codes: list[str]) -> tuple[Counter, list[dict]]:
    total: Counter = Counter()
    violations: list[dict] = []
    for code in codes:
        stats, bad = _tree_stats(parse_graph6(code))
        total.update(stats)
        violations.extend(bad)
    return total, violations


def verify_trees(max_n: int, jobs: int = 1, log_path: str | None = None,
                 limit: int = MAX_TREE_ORDER) -> CampaignReport:
    """Exhaustive check over all free trees with at most ``max_n`` vertices.

    For each tree: every strongly cospectral pair is found exactly, no three
    vertices may be pairwise strongly cospectral, and no pairwise cospectral
    triple may lie on a common path.
    """
    stream = TreeStream(max_n, limit=limit)
    report = CampaignReport("verify-trees", {"max_n": max_n})
    log = _JsonLinesLog(log_path or _default_log("verify-trees"))
    start = time.perf_counter()
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for n, trees in stream.by_order():
            codes = [to_graph6(t) for t in trees]
            if pool is None:
                results = [_verify_chunk(codes)]
            else:
                size = max(1, len(codes) // (4 * jobs))
                chunks = [codes[k:k + size] for k in range(0, len(codes), size)]
                results = list(pool.map(_verify_chunk, chunks))
            for stats, bad in results:
                for key, val in stats.items():
                    report.add(n, key, val)
                report.violations.extend(bad)
            log.write({"order": n, **dict(sorted(report.per_order.get(n, Counter()).items()))})
    finally:
        if pool is not None:
            pool.shutdown()
    report.extra["trees_per_order"] = [report.per_order.get(n, Counter())["trees"] for n in range(1, max_n + 1)]
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# cut-vertex audits


def separated_cospectral_triples(g: Graph) -> list[tuple[int, tuple[int, int, int]]]:
    """All ``(v, (i, j, k))`` with ``i, j, k`` pairwise cospectral and split by ``v``."""
    out = []
    for gr in cospectral_groups(g):
        for triple in itertools.combinations(gr, 3):
            for v in range(g.n):
                if separates(g, v, triple):
                    out.append((v, triple))
    return sorted(out, key=lambda vt: (vt[1], vt[0]))


def _audit_graph(g: Graph, report: CampaignReport, order: int, kind: str) -> None:
    for v, (i, j, k) in separated_cospectral_triples(g):
        audit = key_lemma_audit(g, v, i, j, k)
        report.add(order, "instances")
        report.add(order, f"instances_{kind}")
        for branch, count in audit.branch_counts.items():
            report.add(order, f"lambda_branch_{branch}", count)
        report.add(order, "zeros_audited", len(audit.records))
        for rec in audit.records:
            for name, chk in rec["checks"].items():
                if chk["hypothesis"]:
                    report.add(order, f"hypothesis_{name}")
        if audit.pairwise_strongly_cospectral:
            report.add(order, "theorem_counterexamples")
        else:
            report.add(order, "theorem_confirmed")
        if audit.obstructed:
            report.add(order, "obstructed_instances")
        for what in audit.violations:
            report.violations.append({
                "violation": what, "graph6": to_graph6(g), "v": v, "triple": [i, j, k],
            })


def audit_cut_triples(max_n: int, random_graphs: int = 0, seed: int = 0,
                      limit: int = MAX_TREE_ORDER, log_path: str | None = None) -> CampaignReport:
    """Run the cut-vertex audit on every separated pairwise-cospectral triple.

    Covers all free trees up to ``max_n`` vertices, plus ``random_graphs``
    seeded random connected graphs of order at most ``max_n``.
    """
    report = CampaignReport("audit-triples", {"max_n": max_n, "random_graphs": random_graphs, "seed": seed})
    log = _JsonLinesLog(log_path or _default_log("audit-triples"))
    start = time.perf_counter()
    for n, trees in TreeStream(max_n, limit=limit).by_order():
        for t in trees:
            _audit_graph(t, report, n, "tree")
        log.write({"order": n, **dict(sorted(report.per_order.get(n, Counter()).items()))})
    rng = random.Random(seed)
    for _ in range(random_graphs):
        g = random_connected_graph(rng, rng.randint(4, max(4, max_n)))
        _audit_graph(g, report, g.n, "random")
    branches = {b: report.totals.get(f"lambda_branch_{b}", 0) for b in ("zero", "finite", "pole")}
    report.extra["lambda_branches"] = branches
    report.extra["all_branches_exercised"] = all(branches.values())
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# random instances and identity fuzzing


def random_tree(rng: random.Random, n: int) -> Graph:
    if n <= 2:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int) -> Graph:
    """A random tree plus extra edges with probability 0.25."""
    t = random_tree(rng, n)
    extra = [(a, b) for a in range(n) for b in range(a + 1, n) if not t.has_edge(a, b) and rng.random() < 0.25]
    return Graph.from_edges(n, t.edges() + extra)


def random_instances(count: int, max_n: int, seed: int, min_n: int = 1):
    """Deterministic stream of random graphs: Erdos-Renyi at several densities plus trees."""
    rng = random.Random(seed)
    for k in range(count):
        n = rng.randint(min_n, max_n)
        if k % 5 == 4:
            yield k, "tree", random_tree(rng, n)
        else:
            p = RANDOM_DENSITIES[k % 5 % len(RANDOM_DENSITIES)]
            yield k, f"gnp{p}", random_graph(rng, n, p)


def identity_checks(g: Graph, rng: random.Random, samples: int = 20) -> dict[str, bool]:
    """All identity and branch checks on one graph and one random vertex pair."""
    out = {"derivative": derivative_identity_check(g)}
    if g.n >= 1:
        v = rng.randrange(g.n)
        out["alpha_branch"] = alpha_branch_properties(alpha_of(g, v), samples)["ok"]
    if g.n >= 2:
        i, j = rng.sample(range(g.n), 2)
        out["wronskian"] = wronskian_identity_check(g, i, j)
        for name, ok in contraction_identity_details(g, i, j).items():
            out[name] = ok
        try:
            lam = lambda_(g, i, j)
            out["lambda_square_structure"] = True
            out["lambda_nonpositive"] = lambda_nonpositive_on_samples(lam.value, samples)
        except VerificationFailure:
            out["lambda_square_structure"] = False
    return out


def fuzz_identities(count: int, max_n: int, seed: int, samples: int = 20) -> CampaignReport:
    if count < 1:
        raise ValueError("count must be at least 1")
    report = CampaignReport("fuzz", {"count": count, "max_n": max_n, "seed": seed, "samples": samples})
    start = time.perf_counter()
    for k, kind, g in random_instances(count, max_n, seed):
        rng = random.Random(f"{seed}:{k}")
        report.add(g.n, "instances")
        report.add(g.n, f"kind_{kind}")
        for name, ok in identity_checks(g, rng, samples).items():
            report.add(g.n, f"checked_{name}")
            if not ok:
                report.violations.append({"violation": name, "index": k, "seed": seed,
                                          "graph6": to_graph6(g)})
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# strongly cospectral sets with parity data

PARITY_TOLERANCE_BITS = 64


def find_sets(g: Graph, precision_bits: int = 128) -> list[dict]:
    """Strongly cospectral classes, largest first, each with parity signatures.

    For a class with smallest member ``i`` the signature of member ``j`` lists
    ``s_r`` with ``E_r e_j = s_r E_r e_i``; ``parity_error`` is the largest
    ``|s_r (E_r)_{ii} - (E_r)_{ij}|`` seen in the class.
    """
    classes = strongly_cospectral_classes(g)
    if not classes:
        return []
    from .spectral import _compare_columns

    dec = eigendecompose(g, precision_bits)
    out = []
    for cls in classes:
        base = cls[0]
        sigs = {}
        worst = 0.0
        for j in cls[1:]:
            verdict, signature = _compare_columns(dec, base, j)
            if verdict is not True:
                raise VerificationFailure(
                    "numeric projectors disagree with the exact decision",
                    {"graph6": to_graph6(g), "pair": [base, j]},
                )
            sigs[str(j)] = signature
            worst = max(worst, float(parity_consistency(dec, base, j, signature)))
        out.append({
            "vertices": cls,
            "size": len(cls),
            "base": base,
            "eigenvalues": [float(x) for x in dec.eigenvalues],
            "signatures": sigs,
            "parity_error": worst,
            "parity_ok": worst < 2.0 ** -PARITY_TOLERANCE_BITS,
        })
    return out
