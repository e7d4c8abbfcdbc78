"""Exact cospectrality and strong cospectrality of vertex pairs.

Strong cospectrality is decided without ever touching an eigenvalue. Two
vertices are strongly cospectral when ``phi(G - i) == phi(G - j)`` and every
pole of ``phi(G - {i, j}) / phi(G)`` is simple. The pole condition is the
single divisibility test::

    phi(G)  divides  phi(G - {i, j}) * squarefree_part(phi(G))

because at a root of ``phi(G)`` of multiplicity ``m`` the right side vanishes
to order ``mult_{G - {i,j}} + 1``, which is at least ``m`` exactly when the
pole there has order at most one.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from .charpoly import charpoly
from .errors import DomainError, VerificationFailure
from .graphs import Graph, delete_vertices, simple_paths_between, to_graph6
from .poly import ZERO, IntPoly, divides, exact_div, poly_gcd, squarefree_part
from .realroots import isolate_real_roots


def phi(g: Graph, removed: frozenset[int] | tuple[int, ...] | set[int] = ()) -> IntPoly:
    """Characteristic polynomial of ``g`` with the given vertices deleted."""
    return charpoly(delete_vertices(g, removed) if removed else g)


def _check_pair(g: Graph, i: int, j: int) -> None:
    g.check_vertex(i, j)
    if i == j:
        raise DomainError("a vertex pair needs two distinct vertices")


def are_cospectral(g: Graph, i: int, j: int) -> bool:
    _check_pair(g, i, j)
    return phi(g, {i}) == phi(g, {j})


def path_sum_poly(g: Graph, i: int, j: int) -> IntPoly:
    """Sum of ``phi(G - P)`` over all paths ``P`` from ``i`` to ``j``."""
    _check_pair(g, i, j)
    total = ZERO
    for path in simple_paths_between(g, i, j):
        total = total + phi(g, path)
    return total


def wronskian_identity_check(g: Graph, i: int, j: int) -> bool:
    """``phi(G-i) phi(G-j) - phi(G-{i,j}) phi(G)`` equals the squared path sum."""
    _check_pair(g, i, j)
    lhs = phi(g, {i}) * phi(g, {j}) - phi(g, {i, j}) * phi(g)
    s = path_sum_poly(g, i, j)
    return lhs == s * s


def derivative_identity_check(g: Graph) -> bool:
    total = ZERO
    for v in range(g.n):
        total = total + phi(g, {v})
    return charpoly(g).derivative() == total


@dataclass
class PairDecision:
    i: int
    j: int
    cospectral: bool
    strongly_cospectral: bool
    witness: dict | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "vertices": [self.i, self.j],
            "cospectral": self.cospectral,
            "strongly_cospectral": self.strongly_cospectral,
            "witness": self.witness,
        }


def pole_excess_factor(g: Graph, i: int, j: int) -> IntPoly:
    """Polynomial whose roots are the non-simple poles of ``phi(G-{i,j}) / phi(G)``.

    Equal to ``1`` exactly when every pole is simple.
    """
    p = charpoly(g)
    q = phi(g, {i, j}) * squarefree_part(p)
    return exact_div(p.primitive(), poly_gcd(p, q)).primitive()


def are_strongly_cospectral_exact(g: Graph, i: int, j: int) -> PairDecision:
    _check_pair(g, i, j)
    pi, pj = phi(g, {i}), phi(g, {j})
    if pi != pj:
        return PairDecision(i, j, False, False, {
            "kind": "charpoly_mismatch",
            "phi_minus_i": pi.to_json(),
            "phi_minus_j": pj.to_json(),
        })
    p = charpoly(g)
    if divides(p, phi(g, {i, j}) * squarefree_part(p)):
        return PairDecision(i, j, True, True, None)
    bad = pole_excess_factor(g, i, j)
    return PairDecision(i, j, True, False, {
        "kind": "non_simple_pole",
        "factor": bad.to_json(),
        "roots": [r.to_json() for r in isolate_real_roots(bad)],
    })


def all_pair_decisions(g: Graph) -> list[PairDecision]:
    return [are_strongly_cospectral_exact(g, i, j) for i, j in itertools.combinations(range(g.n), 2)]


def cospectral_groups(g: Graph) -> list[list[int]]:
    """Vertices grouped by ``phi(G - v)``; only groups of size >= 2."""
    by_poly: dict[IntPoly, list[int]] = defaultdict(list)
    for v in range(g.n):
        by_poly[phi(g, {v})].append(v)
    return sorted(vs for vs in by_poly.values() if len(vs) > 1)


def strongly_cospectral_pairs(g: Graph) -> list[tuple[int, int]]:
    """All strongly cospectral pairs ``(i, j)`` with ``i < j``, in lexicographic order."""
    out = []
    p = charpoly(g)
    sq = squarefree_part(p)
    for group in cospectral_groups(g):
        for i, j in itertools.combinations(group, 2):
            if divides(p, phi(g, {i, j}) * sq):
                out.append((i, j))
    return sorted(out)


def strongly_cospectral_classes(g: Graph) -> list[list[int]]:
    """Maximal sets of pairwise strongly cospectral vertices (size >= 2).

    Classes are the connected components of the strong-cospectrality graph,
    and every pair inside a class is re-checked; a missing pair means the
    relation failed to be transitive, which aborts with a full dump.
    """
    pairs = strongly_cospectral_pairs(g)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    members: dict[int, list[int]] = defaultdict(list)
    for v in range(g.n):
        members[find(v)].append(v)
    pair_set = set(pairs)
    classes = []
    for vs in members.values():
        if len(vs) < 2:
            continue
        for i, j in itertools.combinations(vs, 2):
            if (i, j) not in pair_set:
                raise VerificationFailure(
                    f"strong cospectrality not transitive on {vs}: ({i}, {j}) fails",
                    {"graph6": to_graph6(g), "class": vs, "pair": [i, j],
                     "charpoly": charpoly(g).to_json()},
                )
        classes.append(vs)
    classes.sort(key=lambda c: (-len(c), c))
    return classes
