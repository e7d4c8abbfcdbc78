"""Exact characteristic polynomials of graphs and their vertex-deleted subgraphs."""

from __future__ import annotations

import threading
from collections.abc import Iterable

from .graphs import Graph, _bits, canonical_key, components, delete_vertices, induced
from .poly import ONE, IntPoly

_cache: dict[str, IntPoly] = {}
_cache_lock = threading.Lock()


def charpoly(g: Graph) -> IntPoly:
    """``det(tI - A)`` with exact integer coefficients; the empty graph gives 1.

    The polynomial of a disconnected graph is the product over components,
    and component results are memoized under an isomorphism-invariant key for
    forests (see :func:`graphs.canonical_key`).
    """
    out = ONE
    for comp in components(g):
        out = out * _component_charpoly(g, comp)
    return out


def _component_charpoly(g: Graph, comp: int) -> IntPoly:
    sub = induced(g, comp) if comp != (1 << g.n) - 1 else g
    key = canonical_key(sub)[0]
    hit = _cache.get(key)
    if hit is not None:
        return hit
    p = faddeev_leverrier(sub)
    with _cache_lock:
        _cache.setdefault(key, p)
    return p


def faddeev_leverrier(g: Graph) -> IntPoly:
    """Characteristic polynomial by the Faddeev-LeVerrier recurrence.

    ``M_k = A M_{k-1} + c_{n-k+1} I`` and ``c_{n-k} = -tr(A M_k) / k``; the
    division is exact over the integers. ``A M`` is formed by summing rows of
    ``M`` over neighbourhoods, so each step costs O(n * |E|).
    """
    n = g.n
    nbrs = [list(_bits(row)) for row in g.adj]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        am = []
        for i in range(n):
            row = [0] * n
            for j in nbrs[i]:
                mj = m[j]
                for col in range(n):
                    row[col] += mj[col]
            row[i] += c_prev
            am.append(row)
        m = am
        coeffs[n - k] = -(_tr_product(nbrs, m) // k)
    return IntPoly(coeffs)


def _tr_product(nbrs: list[list[int]], m: list[list[int]]) -> int:
    # tr(A M) = sum_i sum_{j ~ i} M[j][i]
    return sum(m[j][i] for i in range(len(nbrs)) for j in nbrs[i])


def deleted_charpoly(g: Graph, removed: Iterable[int]) -> IntPoly:
    return charpoly(delete_vertices(g, removed))


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def cache_size() -> int:
    return len(_cache)
