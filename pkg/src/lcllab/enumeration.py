"""Exhaustive enumeration of small connected graphs, labeled or up to isomorphism.

Canonical forms use individualization-refinement: colour refinement to a
stable ordered partition, then branching on the first non-singleton cell
(with twin pruning), keeping the smallest adjacency code over all leaves.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .graph import Graph

MAX_N = 8


class TooLarge(ValueError):
    pass


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_N:
        raise TooLarge(f"enumeration is limited to n <= {MAX_N}, got {n}")


def _connected(n: int, nbr_masks: list[int]) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        v = 0
        f = frontier
        while f:
            if f & 1:
                reach |= nbr_masks[v]
            f >>= 1
            v += 1
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def labeled_connected_graphs(n: int) -> Iterator[Graph]:
    """Every simple connected graph on nodes ``0..n-1`` (no isomorphism reduction)."""
    _check_n(n)
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        if mask.bit_count() < n - 1:
            continue
        nbr = [0] * n
        for k, (u, v) in enumerate(pairs):
            if mask >> k & 1:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
        if _connected(n, nbr):
            adj = tuple(tuple(u for u in range(n) if nbr[v] >> u & 1) for v in range(n))
            yield Graph._trusted(n, adj)


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    # split cells by neighbour counts into every cell until stable
    while True:
        where = {}
        for i, cell in enumerate(cells):
            for v in cell:
                where[v] = i
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {}
            for v in cell:
                counts = [0] * len(cells)
                for u in adj[v]:
                    counts[where[u]] += 1
                sig.setdefault(tuple(counts), []).append(v)
            if len(sig) > 1:
                changed = True
            out.extend(sig[k] for k in sorted(sig))
        cells = out
        if not changed:
            return cells


def _code(adj, order: list[int]) -> tuple[tuple[int, int], ...]:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for v in order for u in adj[v] if pos[u] > pos[v]))


def _twin(adj_sets, u: int, w: int) -> bool:
    return adj_sets[u] - {w} == adj_sets[w] - {u}


def canonical_order(g: Graph) -> list[int]:
    """A node ordering such that isomorphic graphs yield identical adjacency codes."""
    adj_sets = [set(a) for a in g.adj]
    best: list = [None, None]

    def search(cells):
        cells = _refine(g.adj, cells)
        split = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if split is None:
            order = [c[0] for c in cells]
            code = _code(g.adj, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[split]
        reps: list[int] = []
        for x in cell:
            # swapping twins is an automorphism fixing all individualized nodes
            if not any(_twin(adj_sets, x, r) for r in reps):
                reps.append(x)
        for x in reps:
            rest = [y for y in cell if y != x]
            search(cells[:split] + [[x], rest] + cells[split + 1 :])

    search([sorted(g.nodes(), key=lambda v: len(g.adj[v]))] if g.n else [])
    return best[1]


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    return g.n, _code(g.adj, canonical_order(g))


def canonical_graph(g: Graph) -> Graph:
    n, code = canonical_form(g)
    return Graph.from_edges(n, code)


def isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and canonical_form(a) == canonical_form(b)


@lru_cache(maxsize=None)
def connected_graph_classes(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class of connected graphs on n nodes.

    Every connected graph has a non-cut node, so extending each class on n-1
    nodes by a new node joined to a non-empty neighbour set reaches all of them.
    """
    _check_n(n)
    if n == 1:
        return (Graph(1, ((),)),)
    found: dict = {}
    for base in connected_graph_classes(n - 1):
        edges = base.edges
        for mask in range(1, 1 << (n - 1)):
            extra = [(u, n - 1) for u in range(n - 1) if mask >> u & 1]
            g = Graph.from_edges(n, edges + extra)
            key = canonical_form(g)
            if key not in found:
                found[key] = Graph.from_edges(n, key[1])
    return tuple(found[k] for k in sorted(found, key=lambda k: (len(k[1]), k[1])))


def enumerate_connected_graphs(n: int, dedup: bool = False) -> Iterator[Graph]:
    """All connected graphs on n nodes; ``dedup`` keeps one per isomorphism class."""
    _check_n(n)
    if dedup:
        yield from connected_graph_classes(n)
    else:
        yield from labeled_connected_graphs(n)


def tree_classes(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in connected_graph_classes(n) if g.m == n - 1)
