"""Local verifiers: pure functions from a :class:`LocalView` to accept/reject."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import Graph, LocalView, centered_routes
from .strings import base_strings, bits_of, tree_string_set


class ViewTooSmall(ValueError):
    pass


def _need(view: LocalView, radius: int) -> None:
    if view.radius < radius:
        raise ViewTooSmall(f"verifier needs view distance {radius}, got {view.radius}")


def verify_3labels(view: LocalView) -> bool:
    _need(view, 1)
    own = view.label(view.center)
    nbrs = view.neighbor_labels()
    if own == 0:
        return nbrs.count(0) >= 2 and 2 not in nbrs
    down, up = (own - 1) % 3, (own + 1) % 3
    return nbrs.count(down) == 1 and nbrs.count(up) == len(nbrs) - 1


def verify_3labels_repaired(view: LocalView) -> bool:
    """3-label check that also lets a 0-labelled node accept as a tree node.

    The mod-3 labeling puts 0 on tree nodes at distance 3, 6, ... from the
    core; the plain rule sends those nodes down the core branch, where they
    reject. Here the parent/children test applies to every label.
    """
    _need(view, 1)
    own = view.label(view.center)
    nbrs = view.neighbor_labels()
    if own == 0 and nbrs.count(0) >= 2 and 2 not in nbrs:
        return True
    down, up = (own - 1) % 3, (own + 1) % 3
    return nbrs.count(down) == 1 and nbrs.count(up) == len(nbrs) - 1


def verify_cycle_n(view: LocalView) -> bool:
    _need(view, 1)
    return cycle_n_rule(view.label(view.center), view.neighbor_labels())


def cycle_n_rule(own: int, nbrs: list[int]) -> bool:
    if own == 0:
        return nbrs.count(0) >= 2 and all(x <= 1 for x in nbrs)
    return nbrs.count(own - 1) == 1 and nbrs.count(own + 1) == len(nbrs) - 1


def verify_acyclic(view: LocalView) -> bool:
    _need(view, 1)
    return acyclic_rule(view.label(view.center), view.neighbor_labels())


def acyclic_rule(own: int, nbrs: list[int]) -> bool:
    if own == 0:
        return all(x == 1 for x in nbrs)
    return nbrs.count(own - 1) == 1 and nbrs.count(own + 1) == len(nbrs) - 1


def verify_bipartite(view: LocalView) -> bool:
    _need(view, 1)
    own = view.label(view.center)
    return all(x != own for x in view.neighbor_labels())


class Outcome(Enum):
    PARENT = "parent"
    CORE = "core"
    REJECT = "reject"


@dataclass(frozen=True)
class ParentResult:
    outcome: Outcome
    parent: int | None = None

    def __str__(self) -> str:
        return f"parent={self.parent}" if self.outcome is Outcome.PARENT else self.outcome.value


CORE = ParentResult(Outcome.CORE)
REJECT = ParentResult(Outcome.REJECT)


def discover_parent(view: LocalView) -> ParentResult:
    """Classify the centre as core node, tree node with a parent, or reject.

    Needs view distance 2. The parent is returned as a local node index.
    """
    _need(view, 2)
    return _discover_parent_at(view.graph, view.labels, view.center)


def _discover_parent_at(g: Graph, labels, v: int) -> ParentResult:
    # Valid whenever the radius-2 ball of v, with all edges among its nodes,
    # is present in g -- true for v's own view and for the neighbours of the
    # centre of a radius-3 view.
    nbrs = g.adj[v]
    if len(nbrs) == 1:
        return ParentResult(Outcome.PARENT, nbrs[0])
    branching = [p for p in nbrs if len(g.adj[p]) > 1]
    if len(branching) == 1:
        return ParentResult(Outcome.PARENT, branching[0])

    parents = _base_string_parents(g, labels, v)
    # A surviving base string pins one parent: two parents under the same base
    # string expose a string outside its tree set, and two different base
    # strings never both survive. len(parents) > 1 therefore never happens;
    # it is rejected rather than tie-broken on node indices.
    if len(parents) == 1:
        return ParentResult(Outcome.PARENT, parents.pop())
    if len(parents) > 1:
        return REJECT

    if labels[v] == 0 and sum(1 for u in nbrs if labels[u] == 0) >= 2:
        return CORE
    return REJECT


def _base_string_parents(g: Graph, labels, v: int) -> set[int]:
    """Neighbours p such that some v-centred route reads a base string with p second
    and every v-centred route string lies in that base string's tree set.

    A length-4 route is (arm reversed) v (arm) over two arms starting at
    different neighbours, so only the label pairs each neighbour starts are
    needed, not the routes themselves.
    """
    bit = "01"
    starts: dict[int, set[str]] = {}
    for x in g.adj[v]:
        starts[x] = {bit[labels[x] != 0] + bit[labels[y] != 0] for y in g.adj[x] if y != v}
    mid = bit[labels[v] != 0]
    pairs = [(x, a[::-1] + mid + b) for x in starts for y in starts if x != y
             for a in starts[x] for b in starts[y]]
    seen = {s for _, s in pairs}
    bases = base_strings()
    return {x for x, s in pairs if s in bases and seen <= tree_string_set(s).members}


def _base_string_parents_by_routes(g: Graph, labels, v: int) -> set[int]:
    # reference version walking every centred route explicitly
    strings = {r: bits_of(labels[x] for x in r) for r in centered_routes(g, v, 2)}
    seen = set(strings.values())
    bases = base_strings()
    return {r[1] for r, s in strings.items() if s in bases and seen <= tree_string_set(s).members}


def verify_2labels_view3(view: LocalView, strict: bool = False) -> bool:
    """Run discover_parent at the centre and at each neighbour, then compare.

    ``strict`` additionally demands that every neighbour other than the
    parent names the centre as its own parent.
    """
    _need(view, 3)
    g, labels, v = view.graph, view.labels, view.center
    mine = _discover_parent_at(g, labels, v)
    result = {u: _discover_parent_at(g, labels, u) for u in g.adj[v]}
    if mine.outcome is Outcome.CORE:
        return sum(1 for r in result.values() if r.outcome is Outcome.CORE) >= 2
    if mine.outcome is not Outcome.PARENT:
        return False
    p = mine.parent
    if result[p] == ParentResult(Outcome.PARENT, v):
        return False
    if strict:
        return all(result[u] == ParentResult(Outcome.PARENT, v) for u in g.adj[v] if u != p)
    return True


def verify_2labels_view3_strict(view: LocalView) -> bool:
    return verify_2labels_view3(view, strict=True)
