"""Anonymous simple connected graphs, neighbourhoods, local views and routes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for input that is not a simple connected undirected graph."""


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph on nodes ``0..n-1``.

    Node indices are implementation handles only; verifiers never see them
    except through re-indexed :class:`LocalView` values.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("graph needs at least one node")
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"neighbours of {v} are not a sorted set")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"edge ({v},{u}) leaves the node range")
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric edge ({v},{u})")
        if len(_reach(self.adj, 0)) != self.n:
            raise GraphError("graph is not connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) leaves the node range")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def _trusted(cls, n: int, adj: tuple[tuple[int, ...], ...]) -> Graph:
        # skips validation; callers guarantee a simple connected graph
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def nodes(self) -> range:
        return range(self.n)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the isomorphic copy in which node ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges])


def _reach(adj, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 nodes")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def distances_from(g: Graph, v: int, limit: int | None = None) -> dict[int, int]:
    """BFS distances from ``v``, truncated at ``limit`` hops when given."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def neighborhood(g: Graph, v: int, k: int) -> frozenset[int]:
    """``N_k(v)``: every node within ``k`` hops of ``v``, ``v`` included."""
    if k < 0:
        raise ValueError("radius must be non-negative")
    return frozenset(distances_from(g, v, k))


def all_pairs_distances(g: Graph) -> list[list[int]]:
    return [[d for _, d in sorted(distances_from(g, v).items())] for v in g.nodes()]


def has_cycle(g: Graph) -> bool:
    return g.m >= g.n


def core_nodes(g: Graph) -> frozenset[int]:
    """Nodes of the 2-core: those on a cycle or on a path joining two cycles.

    Computed by repeatedly stripping nodes of degree <= 1.
    """
    deg = [len(a) for a in g.adj]
    alive = [True] * g.n
    stack = [v for v in g.nodes() if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for u in g.adj[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1:
                    stack.append(u)
    return frozenset(v for v in g.nodes() if alive[v])


def distance_to_set(g: Graph, sources: Iterable[int]) -> list[int]:
    """Multi-source BFS distance from every node to the nearest source."""
    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def two_coloring(g: Graph) -> list[int] | None:
    """BFS 2-colouring with node 0 coloured 0, or None if an odd cycle exists."""
    color = [-1] * g.n
    color[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if color[y] < 0:
                color[y] = 1 - color[x]
                queue.append(y)
            elif color[y] == color[x]:
                return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def _arms(g: Graph, v: int, length: int) -> list[tuple[int, ...]]:
    # non-backtracking walks of the given length starting next to v
    arms: list[tuple[int, ...]] = [()]
    for _ in range(length):
        grown = []
        for arm in arms:
            last = arm[-1] if arm else v
            prev = (arm[-2] if len(arm) >= 2 else v) if arm else None
            for y in g.adj[last]:
                if y != prev:
                    grown.append(arm + (y,))
        arms = grown
    return arms


def centered_routes(g: Graph, v: int, half_len: int) -> set[tuple[int, ...]]:
    """All routes of ``2*half_len`` edges with ``v`` as the exact middle node.

    A route is a walk with no immediate backtracking (``r[i] != r[i+2]``); it
    may wind around a cycle. Both reading directions are returned.
    """
    if half_len < 1:
        raise ValueError("half_len must be at least 1")
    arms = _arms(g, v, half_len)
    routes = set()
    for left, right in product(arms, repeat=2):
        if left[0] != right[0]:
            routes.add(tuple(reversed(left)) + (v,) + right)
    return routes


def is_route(g: Graph, route: Sequence[int]) -> bool:
    if any(b not in g.adj[a] for a, b in zip(route, route[1:])):
        return False
    return all(route[i] != route[i + 2] for i in range(len(route) - 2))


@dataclass(frozen=True)
class LocalView:
    """What a verifier at one node may read: ``G[N_k(v)]``, its labels, and ``v``.

    Nodes are re-indexed locally in BFS order, so the centre is local node 0
    and ``dist[x]`` is the hop distance of local node ``x`` from the centre.
    """

    graph: Graph
    labels: tuple[int, ...]
    radius: int
    dist: tuple[int, ...]
    center: int = 0

    @property
    def boundary(self) -> frozenset[int]:
        return frozenset(x for x, d in enumerate(self.dist) if d == self.radius)

    def label(self, x: int) -> int:
        return self.labels[x]

    def neighbor_labels(self, x: int | None = None) -> list[int]:
        x = self.center if x is None else x
        return [self.labels[y] for y in self.graph.adj[x]]


@dataclass(frozen=True)
class ViewSkeleton:
    """Unlabelled part of a local view plus the local-to-global node map.

    Built once per (graph, node, radius) so that labelled views for many
    labelings are cheap to produce.
    """

    graph: Graph
    radius: int
    dist: tuple[int, ...]
    nodes: tuple[int, ...]  # local index -> global node

    def view(self, labels: Sequence[int]) -> LocalView:
        return LocalView(self.graph, tuple(labels[x] for x in self.nodes), self.radius, self.dist)


def view_skeleton(g: Graph, v: int, k: int) -> ViewSkeleton:
    dist = distances_from(g, v, k)
    order = sorted(dist, key=lambda x: (dist[x], x))
    local = {x: i for i, x in enumerate(order)}
    adj = tuple(tuple(sorted(local[y] for y in g.adj[x] if y in local)) for x in order)
    return ViewSkeleton(Graph._trusted(len(order), adj), k, tuple(dist[x] for x in order), tuple(order))


def local_view(g: Graph, labels, v: int, k: int) -> LocalView:
    """Induced subgraph on ``N_k(v)`` with the restricted labelling, centred at ``v``.

    ``labels`` is a :class:`~lcllab.labelings.Labeling` or any sequence of ints.
    """
    seq = getattr(labels, "labels", labels)
    if len(seq) != g.n:
        raise ValueError("labelling is not total on the graph")
    return view_skeleton(g, v, k).view(seq)


def read_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format."""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not rows:
        raise GraphError("empty graph file")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphError(f"malformed edge list: {exc}") from exc
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
