"""Exhaustive enumeration up to isomorphism and canonical codes.

Two code flavors: a recursive sorted-subtree code for (rooted or free)
trees, annotated with metric edge lengths so brooms with fractional
Dirichlet edges compare correctly; and a minimal-adjacency code for general
simple graphs, pruned by Weisfeiler-Lehman color refinement. Both codes are
decodable strings, which is what the on-disk class cache stores.

The main tree stream is networkx's free-tree generator; a Prufer-sequence
enumeration and an Otter-recurrence counter act as independent oracles.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import networkx as nx

from .errors import (
    InvalidParamsError,
    NotATreeError,
    OutOfSupportedRangeError,
    ParseError,
)
from .graph import WeightedBoundaryGraph, combinatorial_graph, make_graph

MAX_TREE_N = 16
MAX_GRAPH_N = 7
MAX_CODE_N = 10
GENERATOR_VERSION = "v1"


# -- tree codes --------------------------------------------------------------------


def _edge_length_str(w) -> str:
    if isinstance(w, float):
        return repr(1.0 / w)
    return str(Fraction(1) / Fraction(w))


def _rooted_code(g: WeightedBoundaryGraph, root: int) -> str:
    def rec(v: int, parent: int) -> str:
        parts = []
        for u in g.adjacency[v]:
            if u != parent:
                parts.append(_edge_length_str(g.weight(v, u)) + rec(u, v))
        return "(" + "".join(sorted(parts)) + ")"

    return rec(root, -1)


def _centroids(g: WeightedBoundaryGraph) -> list[int]:
    n = g.n
    if n == 1:
        return [0]
    best = None
    out: list[int] = []
    for v in range(n):
        sizes = []
        seen = {v}
        for u in g.adjacency[v]:
            stack, cnt = [u], 0
            local = {u} | {v}
            while stack:
                x = stack.pop()
                cnt += 1
                for y in g.adjacency[x]:
                    if y not in local:
                        local.add(y)
                        stack.append(y)
            sizes.append(cnt)
        weight = max(sizes)
        if best is None or weight < best:
            best, out = weight, [v]
        elif weight == best:
            out.append(v)
    return out


def tree_code(g: WeightedBoundaryGraph, root: int | None = None) -> str:
    """Canonical code of a (metric) tree; rooted when ``root`` is given."""
    if not g.is_tree():
        raise NotATreeError("tree codes need a tree")
    if root is not None:
        return _rooted_code(g, root)
    return min(_rooted_code(g, c) for c in _centroids(g))


def tree_from_code(code: str) -> WeightedBoundaryGraph:
    """Rebuild a combinatorial tree from its code (weights = 1/length)."""
    edges = []
    pos = 0

    def parse(parent: int | None, length_str: str, next_id: list[int]) -> None:
        nonlocal pos
        if code[pos] != "(":
            raise ParseError(f"bad tree code at {pos}")
        pos += 1
        me = next_id[0]
        next_id[0] += 1
        if parent is not None:
            length = Fraction(length_str)
            edges.append((parent, me, Fraction(1) / length))
        while code[pos] != ")":
            start = pos
            while code[pos] != "(":
                pos += 1
            parse(me, code[start:pos], next_id)
        pos += 1

    counter = [0]
    try:
        parse(None, "", counter)
    except (IndexError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed tree code: {code!r}") from exc
    if pos != len(code):
        raise ParseError("trailing characters in tree code")
    g = make_graph(counter[0], edges)
    from .graph import combinatorial_boundary

    return g.with_roles(combinatorial_boundary(g))


# -- general graph codes -------------------------------------------------------------


def _wl_colors(adj: list[set[int]], n: int) -> list[int]:
    color = [0] * n
    while True:
        sig = [
            (color[v], tuple(sorted(color[u] for u in adj[v]))) for v in range(n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sig)))}
        fresh = [order[s] for s in sig]
        if fresh == color:
            return color
        color = fresh


def graph_code(g: WeightedBoundaryGraph) -> str:
    """Lexicographically minimal adjacency bits over WL-partition-respecting
    permutations. Exact canonical form; intended for n <= 10."""
    n = g.n
    if n > MAX_CODE_N:
        raise OutOfSupportedRangeError(f"general codes support n <= {MAX_CODE_N}")
    if any(w != 1 for _, _, w in g.edges):
        raise InvalidParamsError("general graph codes are for unit-weight graphs")
    adj = [set(g.adjacency[v]) for v in range(n)]
    colors = _wl_colors(adj, n)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    ordered_cells = [cells[c] for c in sorted(cells)]
    masks = [sum(1 << u for u in adj[v]) for v in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = None
    for perm_parts in itertools.product(
        *(itertools.permutations(cell) for cell in ordered_cells)
    ):
        p = [v for part in perm_parts for v in part]
        bits = 0
        for i, j in pairs:
            bits = (bits << 1) | ((masks[p[i]] >> p[j]) & 1)
        if best is None or bits < best:
            best = bits
    return f"g{n}:{best:0{max(1, n * (n - 1) // 2)}b}" if n > 1 else "g1:0"


def graph_from_code(code: str) -> WeightedBoundaryGraph:
    if not code.startswith("g") or ":" not in code:
        raise ParseError(f"bad graph code {code!r}")
    head, bits = code.split(":", 1)
    try:
        n = int(head[1:])
    except ValueError as exc:
        raise ParseError(f"bad graph code {code!r}") from exc
    if n == 1:
        return combinatorial_graph(1, [])
    if n < 1 or len(bits) != n * (n - 1) // 2 or set(bits) - {"0", "1"}:
        raise ParseError(f"bad graph code {code!r}")
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits[k] == "1":
                edges.append((i, j))
            k += 1
    return combinatorial_graph(n, edges)


def canonical_code(g: WeightedBoundaryGraph, root: int | None = None) -> str:
    """Tree code when the graph is a tree (optionally rooted), else graph code."""
    if g.is_tree():
        return tree_code(g, root)
    if root is not None:
        raise InvalidParamsError("rooted codes are defined for trees only")
    return graph_code(g)


def is_isomorphic(g1: WeightedBoundaryGraph, g2: WeightedBoundaryGraph) -> bool:
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    return canonical_code(g1) == canonical_code(g2)


# -- class streams -------------------------------------------------------------------


def _cache_dir() -> Path | None:
    raw = os.environ.get("STEKLOV_CACHE_DIR", ".steklov-cache")
    if raw == "":
        return None
    return Path(raw)


def _cache_load(kind: str, n: int) -> list[str] | None:
    d = _cache_dir()
    if d is None:
        return None
    path = d / f"{kind}-n{n}-{GENERATOR_VERSION}.txt"
    try:
        text = path.read_text(encoding="utf-8")
    except OSError:
        return None
    return [line for line in text.splitlines() if line]


def _cache_store(kind: str, n: int, codes: list[str]) -> None:
    d = _cache_dir()
    if d is None:
        return
    try:
        d.mkdir(parents=True, exist_ok=True)
        path = d / f"{kind}-n{n}-{GENERATOR_VERSION}.txt"
        path.write_text("\n".join(codes) + "\n", encoding="utf-8")
    except OSError:
        pass  # cache is best-effort


class GraphClassStream:
    """Materialized stream of isomorphism-class representatives with a cursor."""

    def __init__(self, kind: str, n: int, codes: list[str]):
        self.kind = kind
        self.n = n
        self.codes = codes
        self.cursor = 0

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self):
        decode = tree_from_code if self.kind == "trees" else graph_from_code
        while self.cursor < len(self.codes):
            code = self.codes[self.cursor]
            self.cursor += 1
            yield decode(code)

    def reset(self) -> None:
        self.cursor = 0


@lru_cache(maxsize=None)
def _tree_codes(n: int) -> tuple[str, ...]:
    cached = _cache_load("trees", n)
    if cached is not None:
        return tuple(cached)
    if n == 1:
        codes = ["()"]
    else:
        codes = [
            tree_code(combinatorial_graph(n, t.edges()))
            for t in nx.nonisomorphic_trees(n)
        ]
    codes.sort()
    _cache_store("trees", n, codes)
    return tuple(codes)


def enumerate_trees(n: int) -> GraphClassStream:
    """All free trees on n vertices up to isomorphism, unit weight,
    degree-based boundary."""
    if not 1 <= n <= MAX_TREE_N:
        raise OutOfSupportedRangeError(f"tree enumeration supports 1 <= n <= {MAX_TREE_N}")
    return GraphClassStream("trees", n, list(_tree_codes(n)))


@lru_cache(maxsize=None)
def _graph_codes(n: int) -> tuple[str, ...]:
    cached = _cache_load("connected", n)
    if cached is not None:
        return tuple(cached)
    # Orderly augmentation: grow the set of all graphs on n vertices (up to
    # isomorphism) one edge at a time, then keep the connected ones.
    layer = {graph_code(combinatorial_graph(n, []))}
    seen = set(layer)
    max_edges = n * (n - 1) // 2
    for _ in range(max_edges):
        nxt = set()
        for code in layer:
            g = graph_from_code(code)
            present = {(u, v) for u, v, _ in g.edges}
            for i in range(n):
                for j in range(i + 1, n):
                    if (i, j) not in present:
                        h = combinatorial_graph(
                            n, sorted(present | {(i, j)})
                        )
                        nxt.add(graph_code(h))
        layer = nxt - seen
        seen |= nxt
    codes = sorted(c for c in seen if graph_from_code(c).is_connected())
    _cache_store("connected", n, codes)
    return tuple(codes)


def enumerate_connected_graphs(n: int) -> GraphClassStream:
    """All connected simple graphs on n vertices up to isomorphism."""
    if not 1 <= n <= MAX_GRAPH_N:
        raise OutOfSupportedRangeError(
            f"connected-graph enumeration supports 1 <= n <= {MAX_GRAPH_N}"
        )
    return GraphClassStream("connected", n, list(_graph_codes(n)))


# -- independent oracles ----------------------------------------------------------


def prufer_tree_classes(n: int) -> set[str]:
    """Brute-force oracle: canonical codes of all labeled trees via Prufer
    sequences. Exponential; intended for n <= 8."""
    if n < 1:
        raise OutOfSupportedRangeError("n >= 1")
    if n == 1:
        return {"()"}
    if n == 2:
        return {tree_code(combinatorial_graph(2, [(0, 1)]))}
    codes = set()
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        avail = sorted(i for i in range(n) if degree[i] == 1)
        degs = degree[:]
        import heapq

        heap = avail[:]
        heapq.heapify(heap)
        for x in seq:
            leaf = heapq.heappop(heap)
            edges.append((leaf, x))
            degs[x] -= 1
            if degs[x] == 1:
                heapq.heappush(heap, x)
        u, v = heapq.heappop(heap), heapq.heappop(heap)
        edges.append((u, v))
        codes.add(tree_code(combinatorial_graph(n, edges)))
    return codes


def free_tree_count(n: int) -> int:
    """Otter-recurrence count of free trees; independent of any generator."""
    if n < 1:
        raise OutOfSupportedRangeError("n >= 1")
    r = [0, 1]  # rooted tree counts, 1-indexed
    for m in range(2, n + 1):
        total = 0
        for j in range(1, m):
            c = sum(d * r[d] for d in range(1, j + 1) if j % d == 0)
            total += c * r[m - j]
        r.append(total // (m - 1))
    pair = sum(r[i] * r[n - i] for i in range(1, n))
    middle = r[n // 2] if n % 2 == 0 else 0
    two_t = 2 * r[n] - pair + middle
    assert two_t % 2 == 0
    return two_t // 2


def graph_subset_classes(n: int) -> set[str]:
    """Brute-force oracle: all connected graphs via every edge subset.
    Exponential; intended for n <= 6."""
    if n < 1:
        raise OutOfSupportedRangeError("n >= 1")
    all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    codes = set()
    for mask in range(1 << len(all_pairs)):
        edges = [all_pairs[k] for k in range(len(all_pairs)) if (mask >> k) & 1]
        g = combinatorial_graph(n, edges)
        if g.is_connected():
            codes.add(graph_code(g))
    return codes
