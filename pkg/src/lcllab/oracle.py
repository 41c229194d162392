"""Exhaustive completeness/soundness checks and executable impossibility constructions.

An impossibility argument of the form "if every node of A accepts, every node
of B accepts too" is mechanized as a :class:`ViewTransferCertificate`: a map
from each node of B to a node of A whose local view is the same up to
re-indexing. Any verifier that is a function of the view alone must then decide
both nodes alike.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product

from .enumeration import MAX_N, TooLarge, enumerate_connected_graphs
from .graph import Graph, LocalView, distances_from, local_view, path_graph, view_skeleton
from .labelings import Labeling
from .schemes import SchemeId, SchemeSpec, get_scheme

GROWING = (SchemeId.CYCLE_N, SchemeId.ACYCLIC_N)


class NoRepeat(ValueError):
    """No (2d+1)-window repeats along the path, so no cycle can be built."""


def n_limit(spec: SchemeSpec) -> int:
    if spec.scheme_id in GROWING:
        return 5
    return {2: MAX_N, 3: 7}.get(spec.alphabet_size, 6)


def spec_for_n(spec: SchemeSpec, n: int) -> SchemeSpec:
    """The distance schemes use alphabet ``{0..n}``, so they are re-sized per graph."""
    if spec.scheme_id in GROWING:
        return replace(spec, alphabet_size=n + 1)
    return spec


def all_labelings(n: int, lam: int):
    for labs in product(range(lam), repeat=n):
        yield Labeling(labs, lam)


def accepting_labelings(g: Graph, spec: SchemeSpec, brute: bool = False):
    """Every labeling over the scheme alphabet under which all nodes accept.

    The default search assigns labels in BFS order and tests a node as soon as
    its whole radius-d ball is assigned, abandoning the branch on a reject.
    ``brute`` walks all ``lambda**n`` labelings instead.
    """
    lam, d = spec.alphabet_size, spec.view_distance
    skels = [view_skeleton(g, v, d) for v in g.nodes()]
    if brute:
        for labs in product(range(lam), repeat=g.n):
            if all(spec.verifier(s.view(labs)) for s in skels):
                yield Labeling(labs, lam)
        return
    dist0 = distances_from(g, 0)
    order = sorted(g.nodes(), key=lambda v: (dist0[v], v))
    pos = {v: k for k, v in enumerate(order)}
    ready: list[list[int]] = [[] for _ in order]
    for v, s in enumerate(skels):
        ready[max(pos[u] for u in s.nodes)].append(v)
    labels = [-1] * g.n

    def extend(k):
        if k == g.n:
            yield Labeling(tuple(labels), lam)
            return
        v = order[k]
        for a in range(lam):
            labels[v] = a
            if all(spec.verifier(skels[u].view(labels)) for u in ready[k]):
                yield from extend(k + 1)
        labels[v] = -1

    yield from extend(0)


@dataclass
class GraphResult:
    n: int
    in_property: bool
    labelings_checked: int = 0
    completeness_failures: list = field(default_factory=list)
    soundness_failures: list = field(default_factory=list)


def check_graph(g: Graph, spec: SchemeSpec, brute: bool = False, max_witnesses: int = 5) -> GraphResult:
    spec = spec_for_n(spec, g.n)
    res = GraphResult(g.n, spec.prop.holds(g))
    if res.in_property:
        lab = spec.label(g)
        skels = [view_skeleton(g, v, spec.view_distance) for v in g.nodes()]
        rejecting = [v for v, s in enumerate(skels) if not spec.verifier(s.view(lab.labels))]
        res.labelings_checked = 1
        if rejecting:
            res.completeness_failures.append({"edges": g.edges, "n": g.n, "labels": list(lab.labels),
                                              "rejecting": rejecting})
    else:
        res.labelings_checked = spec.alphabet_size ** g.n
        for lab in accepting_labelings(g, spec, brute=brute):
            if len(res.soundness_failures) < max_witnesses:
                res.soundness_failures.append({"edges": g.edges, "n": g.n, "labels": list(lab.labels)})
            else:
                break
    return res


@dataclass
class SchemeReport:
    scheme_id: str
    n_range: tuple[int, int]
    dedup: bool
    graphs_checked: int = 0
    property_graphs: int = 0
    labelings_checked: int = 0
    completeness_failures: list = field(default_factory=list)
    soundness_failures: list = field(default_factory=list)
    per_n: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.completeness_failures and not self.soundness_failures

    def add(self, r: GraphResult) -> None:
        self.graphs_checked += 1
        self.property_graphs += r.in_property
        self.labelings_checked += r.labelings_checked
        self.completeness_failures.extend(r.completeness_failures)
        self.soundness_failures.extend(r.soundness_failures)
        row = self.per_n.setdefault(r.n, {"graphs": 0, "property": 0, "completeness_failures": 0,
                                           "soundness_failures": 0})
        row["graphs"] += 1
        row["property"] += r.in_property
        row["completeness_failures"] += len(r.completeness_failures)
        row["soundness_failures"] += len(r.soundness_failures)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme_id,
            "n_range": list(self.n_range),
            "dedup": self.dedup,
            "graphs_checked": self.graphs_checked,
            "property_graphs": self.property_graphs,
            "labelings_checked": self.labelings_checked,
            "passed": self.passed,
            "completeness_failures": self.completeness_failures,
            "soundness_failures": self.soundness_failures,
            "per_n": {str(k): v for k, v in sorted(self.per_n.items())},
            "wall_time": self.wall_time,
        }


def _check_one(args):
    g, spec, brute = args
    return check_graph(g, spec, brute)


def default_jobs() -> int:
    env = os.environ.get("LCLLAB_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def check_scheme(spec: SchemeSpec | SchemeId | str, n_max: int, *, n_min: int = 1, dedup: bool = True,
                 brute: bool = False, jobs: int = 1) -> SchemeReport:
    """Completeness on every property graph and soundness on every other graph, n_min..n_max.

    With ``dedup`` one graph per isomorphism class is checked; labeler and
    verifier commute with relabelling nodes, so this covers the labeled run.
    """
    if not isinstance(spec, SchemeSpec):
        spec = get_scheme(spec, n_max)
    if n_max > n_limit(spec):
        raise TooLarge(f"{spec.scheme_id.value} is checked up to n={n_limit(spec)}, asked for {n_max}")
    t0 = time.perf_counter()
    report = SchemeReport(spec.scheme_id.value, (n_min, n_max), dedup)
    work = ((g, spec, brute) for n in range(n_min, n_max + 1) for g in enumerate_connected_graphs(n, dedup=dedup))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            for r in ex.map(_check_one, work, chunksize=64):
                report.add(r)
    else:
        for item in work:
            report.add(_check_one(item))
    report.wall_time = time.perf_counter() - t0
    return report


# -- view isomorphism ------------------------------------------------------


def view_isomorphic(a: LocalView, b: LocalView) -> bool:
    """Centre-, label- and edge-preserving isomorphism between two views."""
    return view_match(a, b, tolerance=0) is not None


def view_match(a: LocalView, b: LocalView, tolerance: int = 0) -> dict[int, int] | None:
    """A centre-preserving graph isomorphism ``a -> b`` with at most ``tolerance`` label mismatches.

    Returns the node map or None. Nodes are matched layer by layer (distance
    from the centre), pruning on degree inside the view.
    """
    if a.radius != b.radius or a.graph.n != b.graph.n or a.graph.m != b.graph.m:
        return None
    ga, gb = a.graph, b.graph
    if sorted(a.dist) != sorted(b.dist):
        return None
    if sorted(len(x) for x in ga.adj) != sorted(len(x) for x in gb.adj):
        return None
    order = sorted(range(ga.n), key=lambda x: (a.dist[x], x))
    order.remove(a.center)
    order.insert(0, a.center)
    fwd: dict[int, int] = {}
    used: set[int] = set()

    def cost(x, y):
        return int(a.labels[x] != b.labels[y])

    def ok(x, y):
        if a.dist[x] != b.dist[y] or len(ga.adj[x]) != len(gb.adj[y]):
            return False
        for u in ga.adj[x]:
            if u in fwd and fwd[u] not in gb.adj[y]:
                return False
        # edges from y into already-mapped nodes must come from x as well
        mapped_nbrs = sum(1 for u in ga.adj[x] if u in fwd)
        return mapped_nbrs == sum(1 for w in gb.adj[y] if w in used)

    def search(k, budget):
        if k == len(order):
            return True
        x = order[k]
        cands = [b.center] if k == 0 else [y for y in range(gb.n) if y not in used]
        for y in cands:
            c = cost(x, y)
            if c > budget or not ok(x, y):
                continue
            fwd[x] = y
            used.add(y)
            if search(k + 1, budget - c):
                return True
            del fwd[x]
            used.discard(y)
        return False

    return dict(fwd) if search(0, tolerance) else None


# -- certificates ----------------------------------------------------------


@dataclass
class ViewTransferCertificate:
    """Each target node maps to a source node with the same radius-``radius`` view.

    ``tolerance`` > 0 allows that many label mismatches per matched view: the
    target view then equals a view of the source under a labeling that
    differs from the source labeling in at most ``tolerance`` nodes.
    """

    source_graph: Graph
    source_labeling: Labeling
    target_graph: Graph
    target_labeling: Labeling
    correspondence: dict[int, int]
    radius: int
    tolerance: int = 0
    note: str = ""

    def failures(self, radius: int | None = None) -> list[int]:
        r = self.radius if radius is None else radius
        bad = []
        for t in self.target_graph.nodes():
            if t not in self.correspondence:
                bad.append(t)
                continue
            vt = local_view(self.target_graph, self.target_labeling, t, r)
            vs = local_view(self.source_graph, self.source_labeling, self.correspondence[t], r)
            if view_match(vt, vs, self.tolerance) is None:
                bad.append(t)
        return bad

    def validate(self, radius: int | None = None) -> bool:
        return not self.failures(radius)

    def to_dict(self) -> dict:
        return {
            "source": {"n": self.source_graph.n, "edges": self.source_graph.edges,
                       "labels": list(self.source_labeling.labels)},
            "target": {"n": self.target_graph.n, "edges": self.target_graph.edges,
                       "labels": list(self.target_labeling.labels)},
            "correspondence": {str(k): v for k, v in sorted(self.correspondence.items())},
            "radius": self.radius,
            "tolerance": self.tolerance,
            "note": self.note,
            "valid": self.validate(),
        }


def thm32_graph() -> Graph:
    """Path v1..v7 (nodes 0..6) plus the chord (v5, v7)."""
    return Graph.from_edges(7, [(k, k + 1) for k in range(6)] + [(4, 6)])


def thm32_construction(l1: Labeling) -> ViewTransferCertificate:
    """Acyclic path whose every radius-1 view already occurs in the 7-node cyclic graph."""
    if len(l1) != 7 or l1.alphabet_size != 2:
        raise ValueError("needs a 2-labeling of the 7-node graph")
    g1 = thm32_graph()
    v = l1.labels  # v[k] is the label of v_{k+1}
    if v[1] == v[2]:
        labs, src, case = (v[0], v[1], v[1], v[0]), [0, 1, 1, 0], "i"
    elif v[2] == v[3]:
        labs, src, case = (v[0], v[1], v[2], v[2], v[1], v[0]), [0, 1, 2, 2, 1, 0], "ii"
    else:
        labs, src, case = (v[0], v[1], v[2], v[1], v[0]), [0, 1, 2, 1, 0], "iii"
    target = path_graph(len(labs))
    return ViewTransferCertificate(g1, l1, target, Labeling(labs, 2), dict(enumerate(src)), radius=1,
                                   note=f"case {case}")


def label_lower_bound(n: int, d: int) -> int:
    """Smallest lambda with lambda**(2d+1) >= n - 2d."""
    need = n - 2 * d
    lam = 1
    while lam ** (2 * d + 1) < need:
        lam += 1
    return lam


def pigeonhole_length(lam: int, d: int) -> int:
    """Shortest path on which some (2d+1)-window of lambda labels must repeat."""
    return lam ** (2 * d + 1) + 2 * d + 1


def repeated_window(labels, d: int) -> tuple[int, int] | None:
    """First pair i < j with equal (2d+1)-windows starting at i and j."""
    w = 2 * d + 1
    first: dict = {}
    for j in range(len(labels) - w + 1):
        key = tuple(labels[j : j + w])
        if key in first:
            return first[key], j
        first[key] = j
    return None


def thm36_construction(path_labeling: Labeling, d: int) -> ViewTransferCertificate:
    """Cycle whose every radius-d view occurs on the labelled path.

    With a repeat at i < j and q = j - i, the path labels on [i, j+2d] agree
    with the q-periodic extension of labels[i:j]. The cycle has the smallest
    length p >= 2d+2 divisible by q, so every radius-d view on it is a path of
    2d+1 nodes, and cycle node s (reading labels[i + s mod q]) maps to the
    path node t in [i+d, i+d+q) with t = i+s (mod q).
    """
    labels = path_labeling.labels
    rep = repeated_window(labels, d)
    if rep is None:
        raise NoRepeat(f"no repeated {2 * d + 1}-window on a path of {len(labels)} nodes")
    i, j = rep
    q = j - i
    p = q * -(-(2 * d + 2) // q)
    cycle = Graph.from_edges(p, [(s, (s + 1) % p) for s in range(p)])
    clabs = tuple(labels[i + s % q] for s in range(p))
    corr = {}
    for s in range(p):
        t = i + d + ((s - d) % q)
        corr[s] = t
    kind = "overlap" if q <= 2 * d else "disjoint"
    return ViewTransferCertificate(path_graph(len(labels)), path_labeling, cycle,
                                   Labeling(clabs, path_labeling.alphabet_size), corr, radius=d,
                                   note=f"windows at {i},{j} ({kind}), cycle length {p}")


def thm61_graph(i: int) -> Graph:
    """Path v_1..v_{3i+1} (nodes 0..3i) plus triangle x,y,z with x joined to v_{3i+1}."""
    k = 3 * i + 1
    x, y, z = k, k + 1, k + 2
    return Graph.from_edges(k + 3, [(s, s + 1) for s in range(k - 1)] + [(k - 1, x), (x, y), (y, z), (x, z)])


def thm61_construction(i: int, accepted_labeling: Labeling) -> ViewTransferCertificate:
    """Bare (3i+1)-path labelled from the path-plus-triangle graph, tolerance i.

    u_s copies v_s for s <= 2i+1 and u_{3i+2-s} copies v_s for s <= i, so the
    middle block u_{i+1}..u_{2i+1} carries l_1..l_{i+1} and both ends carry the
    labels next to the leaf. Every u_s matches v_s or v_{3i+2-s} up to at most
    i label changes, which a verifier tolerating i errors must accept.
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    k = 3 * i + 1
    g2 = thm61_graph(i)
    if len(accepted_labeling) != g2.n:
        raise ValueError(f"labeling must cover the {g2.n} nodes of the path-plus-triangle graph")
    v = accepted_labeling.labels  # node s-1 is v_s
    u = [0] * k
    for s in range(1, 2 * i + 2):
        u[s - 1] = v[s - 1]
    for s in range(1, i + 1):
        u[k + 1 - s - 1] = v[s - 1]
    g1 = path_graph(k)
    corr = {}
    for s in range(1, k + 1):
        corr[s - 1] = s - 1 if s <= 2 * i + 1 else k + 1 - s - 1
    return ViewTransferCertificate(g2, accepted_labeling, g1, Labeling(tuple(u), accepted_labeling.alphabet_size),
                                   corr, radius=i, tolerance=i, note=f"i={i}, cycle detection")


def thm61_absence_construction(i: int, accepted_labeling: Labeling) -> ViewTransferCertificate:
    """Cycle of length 3i+3 labelled periodically from the middle block of an accepted (3i+1)-path.

    With l_j the label of u_{i+1+j} (j = 0..i), cycle node u_k gets
    l_{k mod (i+1)}. For odd 3i+3 (even i) the same certificate covers
    bipartiteness.
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    k = 3 * i + 1
    if len(accepted_labeling) != k:
        raise ValueError(f"labeling must cover the {k} path nodes")
    p = 3 * i + 3
    lab = accepted_labeling.labels
    block = [lab[i + j] for j in range(i + 1)]  # u_{i+1+j} is node i+j
    cyc = Graph.from_edges(p, [(s, (s + 1) % p) for s in range(p)])
    # cycle node c is u_{c+1}; its label l_{(c+1) mod (i+1)} sits on path node i + ((c+1) mod (i+1))
    clabs = tuple(block[(c + 1) % (i + 1)] for c in range(p))
    corr = {c: i + (c + 1) % (i + 1) for c in range(p)}
    return ViewTransferCertificate(path_graph(k), accepted_labeling, cyc, Labeling(clabs, accepted_labeling.alphabet_size),
                                   corr, radius=i, tolerance=i, note=f"i={i}, cycle absence")
