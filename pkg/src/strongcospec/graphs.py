"""Simple undirected graphs, graph6 I/O, vertex deletion, products and trees.

Graphs are immutable. Adjacency is stored as one integer bitmask per vertex,
which keeps vertex deletion, component search and path enumeration cheap at
the sizes this package targets (tens of vertices).
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence

from .errors import ConfigurationError, DomainError, Graph6Error

MAX_TREE_ORDER = 16


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``origin`` records, for a graph obtained by deleting vertices, the label
    each vertex carried in the parent graph. It is bookkeeping only and does
    not take part in equality or hashing.
    """

    __slots__ = ("n", "adj", "origin", "_hash")

    def __init__(self, n: int, adj: Sequence[int], origin: Sequence[int] | None = None):
        if len(adj) != n:
            raise DomainError(f"adjacency has {len(adj)} rows for {n} vertices")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full or row >> v & 1:
                raise DomainError(f"bad adjacency row for vertex {v}")
            for u in _bits(row):
                if not adj[u] >> v & 1:
                    raise DomainError(f"asymmetric edge {v}-{u}")
        self.n = n
        self.adj = tuple(adj)
        self.origin = tuple(range(n)) if origin is None else tuple(origin)
        self._hash = hash((n, self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    def __len__(self) -> int:
        return self.n

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in _bits(self.adj[v]) if u < v]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def check_vertex(self, *vs: int) -> None:
        for v in vs:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise DomainError(f"vertex {v!r} not in graph of order {self.n}")

    def to_graph6(self) -> str:
        return to_graph6(self)

    def to_json(self) -> dict:
        return {"n": self.n, "adjacency": [self.neighbors(v) for v in range(self.n)]}

    @classmethod
    def from_json(cls, data: dict | str) -> Graph:
        if isinstance(data, str):
            data = json.loads(data)
        n = data["n"]
        return cls.from_edges(n, ((u, v) for u, row in enumerate(data["adjacency"]) for v in row if u < v))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# named graphs


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center labelled 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def spider_graph(legs: Sequence[int]) -> Graph:
    """A center (label 0) with pendant paths of the given lengths."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


# ---------------------------------------------------------------------------
# graph6


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (an optional ``>>graph6<<`` header is allowed)."""
    s = text.strip()
    offset = 0
    if s.startswith(">>graph6<<"):
        offset = len(">>graph6<<")
    data = s.encode("ascii", errors="replace")

    def byte(pos: int) -> int:
        if pos >= len(data):
            raise Graph6Error(f"unexpected end of input at byte {pos}")
        b = data[pos]
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {pos} out of range: {b!r}")
        return b - 63

    pos = offset
    if pos >= len(data):
        raise Graph6Error(f"empty graph6 string at byte {pos}")
    if data[pos] == 126:
        if pos + 1 < len(data) and data[pos + 1] == 126:
            n = 0
            for k in range(6):
                n = n << 6 | byte(pos + 2 + k)
            pos += 8
        else:
            n = 0
            for k in range(3):
                n = n << 6 | byte(pos + 1 + k)
            pos += 4
    else:
        n = byte(pos)
        pos += 1

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise Graph6Error(
            f"expected {nbytes} edge bytes after byte {pos}, found {len(data) - pos}"
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            b = byte(pos + k // 6)
            if b >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        last = byte(pos + nbytes - 1)
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise Graph6Error(f"nonzero padding bits in byte {pos + nbytes - 1}")
    return Graph(n, adj)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    elif n <= 258047:
        out = ["~"] + [chr((n >> s & 63) + 63) for s in (12, 6, 0)]
    else:
        out = ["~~"] + [chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0)]
    bits = [g.adj[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        out.append(chr(v + 63))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        if line.strip():
            yield parse_graph6(line)


# ---------------------------------------------------------------------------
# surgery and products


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    """Induced subgraph on the vertices not in ``s``, relabelled ``0..m-1``.

    The result's ``origin`` maps each new label to its label in ``g``'s own
    parent labelling, so repeated deletions still point back at the root.
    """
    drop = set(s)
    g.check_vertex(*drop)
    if not drop:
        return g
    keep = [v for v in range(g.n) if v not in drop]
    new_index = {v: k for k, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for u in _bits(g.adj[v]):
            k = new_index.get(u)
            if k is not None:
                row |= 1 << k
        adj.append(row)
    return Graph(len(keep), adj, origin=[g.origin[v] for v in keep])


def relabel_after_delete(g: Graph, s: Iterable[int], v: int) -> int:
    """Label that vertex ``v`` of ``g`` carries in ``delete_vertices(g, s)``."""
    drop = set(s)
    if v in drop:
        raise DomainError(f"vertex {v} was deleted")
    g.check_vertex(v)
    return v - sum(1 for u in drop if u < v)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, adj)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex ``(a, x)`` gets label ``a * h.n + x``."""
    if g.n == 0 or h.n == 0:
        raise DomainError("cartesian product needs nonempty factors")
    m = h.n
    edges = []
    for a in range(g.n):
        for x, y in h.edges():
            edges.append((a * m + x, a * m + y))
    for a, b in g.edges():
        for x in range(m):
            edges.append((a * m + x, b * m + x))
    return Graph.from_edges(g.n * m, edges)


# ---------------------------------------------------------------------------
# connectivity and paths


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components as bitmasks, ordered by smallest vertex."""
    todo = (1 << g.n) - 1 if within is None else within
    out = []
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            nxt &= todo & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        todo &= ~comp
    return out


def component_of(g: Graph, v: int, removed: int = 0) -> int:
    allowed = ((1 << g.n) - 1) & ~removed
    comp = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in _bits(frontier):
            nxt |= g.adj[u]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.num_edges() == g.n - 1 and is_connected(g)


def is_forest(g: Graph) -> bool:
    return g.num_edges() == g.n - len(components(g))


def simple_paths_between(g: Graph, i: int, j: int) -> list[tuple[int, ...]]:
    """All simple paths from ``i`` to ``j``, by exhaustive depth-first search."""
    g.check_vertex(i, j)
    if i == j:
        raise DomainError("path endpoints must differ")
    if not component_of(g, i) >> j & 1:
        return []
    paths: list[tuple[int, ...]] = []
    stack = [i]

    def dfs(v: int, used: int) -> None:
        for u in _bits(g.adj[v] & ~used):
            stack.append(u)
            if u == j:
                paths.append(tuple(stack))
            else:
                dfs(u, used | 1 << u)
            stack.pop()

    dfs(i, 1 << i)
    return paths


def tree_path(g: Graph, i: int, j: int) -> tuple[int, ...]:
    """The unique path between two vertices of a forest (empty if none)."""
    parent = {i: -1}
    frontier = [i]
    while frontier and j not in parent:
        nxt = []
        for v in frontier:
            for u in _bits(g.adj[v]):
                if u not in parent:
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    if j not in parent:
        return ()
    out = [j]
    while out[-1] != i:
        out.append(parent[out[-1]])
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# canonical forms


def _rooted_code(g: Graph, root: int, allowed: int, blocked: int = -1) -> str:
    # iterative AHU encoding of the subtree hanging from root
    order = []
    parent = {root: blocked}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for u in _bits(g.adj[v] & allowed):
            if u != parent[v]:
                parent[u] = v
                stack.append(u)
    codes: dict[int, list[str]] = {v: [] for v in order}
    enc = {}
    for v in reversed(order):
        kids = codes[v]
        kids.sort()
        enc[v] = "(" + "".join(kids) + ")"
        p = parent[v]
        if p in codes:
            codes[p].append(enc[v])
    return enc[root]


def _centers(g: Graph, comp: int) -> list[int]:
    deg = {v: (g.adj[v] & comp).bit_count() for v in _bits(comp)}
    remaining = comp
    layer = [v for v, d in deg.items() if d <= 1]
    count = comp.bit_count()
    while count > 2:
        count -= len(layer)
        nxt = []
        for v in layer:
            remaining &= ~(1 << v)
        for v in layer:
            for u in _bits(g.adj[v] & remaining):
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(_bits(remaining))


def tree_code(g: Graph, comp: int | None = None) -> str:
    """Isomorphism-invariant string for a tree (or one tree component)."""
    if comp is None:
        comp = (1 << g.n) - 1
    cs = _centers(g, comp)
    if len(cs) == 1:
        return "C" + _rooted_code(g, cs[0], comp)
    a, b = cs
    left = _rooted_code(g, a, comp, blocked=b)
    right = _rooted_code(g, b, comp, blocked=a)
    if right < left:
        left, right = right, left
    return "B" + left + right


def tree_from_code(code: str) -> Graph:
    """Rebuild a tree from :func:`tree_code` output with a fixed labelling."""
    edges: list[tuple[int, int]] = []
    count = 0

    def build(s: str, parent: int) -> int:
        nonlocal count
        stack = []
        for ch in s:
            if ch == "(":
                v = count
                count += 1
                p = stack[-1] if stack else parent
                if p >= 0:
                    edges.append((p, v))
                stack.append(v)
            else:
                stack.pop()
        return 0

    if code[0] == "C":
        build(code[1:], -1)
    else:
        body = code[1:]
        depth = 0
        for k, ch in enumerate(body):
            depth += 1 if ch == "(" else -1
            if depth == 0:
                break
        build(body[:k + 1], -1)
        first_root = 0
        second_root = count
        build(body[k + 1:], -1)
        edges.append((first_root, second_root))
    return Graph.from_edges(count, edges)


def canonical_key(g: Graph) -> tuple:
    """Cache key invariant under relabelling for forests.

    Forest components are keyed by their tree code; other components fall
    back to their labelled graph6 string, which is still a sound key.
    """
    parts = []
    for comp in components(g):
        size = comp.bit_count()
        edges = sum((g.adj[v] & comp).bit_count() for v in _bits(comp)) // 2
        if edges == size - 1:
            parts.append(tree_code(g, comp))
        else:
            parts.append("G" + to_graph6(induced(g, comp)))
    parts.sort()
    return tuple(parts)


def induced(g: Graph, mask: int) -> Graph:
    return delete_vertices(g, [v for v in range(g.n) if not mask >> v & 1])


# ---------------------------------------------------------------------------
# free trees


class TreeStream:
    """Iterator over all non-isomorphic free trees with 1..max_n vertices.

    Trees of order ``n`` are grown from those of order ``n - 1`` by attaching
    a leaf at every vertex and keeping one tree per canonical code. Within an
    order, trees come out sorted by code so every run yields the same sequence
    with the same labellings.
    """

    def __init__(self, max_n: int, min_n: int = 1, limit: int = MAX_TREE_ORDER):
        if not 1 <= max_n <= limit:
            raise ConfigurationError(f"max_n={max_n} outside 1..{limit}")
        self.max_n = max_n
        self.min_n = max(1, min_n)

    def __iter__(self) -> Iterator[Graph]:
        for _, trees in self.by_order():
            yield from trees

    def by_order(self) -> Iterator[tuple[int, list[Graph]]]:
        codes = ["C()"]
        for n in range(1, self.max_n + 1):
            if n > 1:
                codes = _grow(codes)
            if n >= self.min_n:
                yield n, [tree_from_code(c) for c in codes]

    def counts(self) -> dict[int, int]:
        return {n: len(ts) for n, ts in self.by_order()}


def _grow(codes: list[str]) -> list[str]:
    seen: set[str] = set()
    for code in codes:
        t = tree_from_code(code)
        n = t.n
        for v in range(n):
            adj = list(t.adj) + [1 << v]
            adj[v] |= 1 << n
            seen.add(tree_code(Graph(n + 1, adj)))
    return sorted(seen)


def enumerate_trees(max_n: int, limit: int = MAX_TREE_ORDER) -> TreeStream:
    return TreeStream(max_n, limit=limit)


def trees_of_order(n: int) -> list[Graph]:
    for order, trees in TreeStream(n, min_n=n).by_order():
        if order == n:
            return trees
    return []
