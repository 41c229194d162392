"""Error-tolerant meta-verifier: accept if a small local correction makes the neighbourhood accept.

Node v searches every patch of at most i label changes inside N_{d+2i}(v) and
accepts when, under some patch, every node of N_{d+2i-1}(v) accepts by the
base verifier. The first such patch (in a fixed order) is v's imagined labeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterator

from .graph import Graph, distances_from, view_skeleton
from .labelings import Labeling
from .schemes import SchemeId, SchemeSpec
from .verifiers import acyclic_rule, cycle_n_rule


class PropertyHolds(ValueError):
    """Agreement is only claimed on graphs outside the property."""


@dataclass(frozen=True)
class ErrorBudget:
    i: int
    base_d: int = 1

    def __post_init__(self) -> None:
        if self.i < 0:
            raise ValueError("error budget must be non-negative")
        if self.base_d < 1:
            raise ValueError("base view distance must be at least 1")

    @property
    def effective_radius(self) -> int:
        return self.base_d + 2 * self.i

    @property
    def check_radius(self) -> int:
        # nodes whose acceptance the owner re-checks
        return self.base_d + 2 * self.i - 1


@dataclass(frozen=True)
class ImaginedLabeling:
    owner: int
    patch: tuple[tuple[int, int], ...]  # sorted (node, label) pairs that differ from L_adv

    def label_at(self, l_adv: Labeling, u: int) -> int:
        return dict(self.patch).get(u, l_adv[u])

    def apply(self, l_adv: Labeling) -> Labeling:
        return l_adv.with_changes(dict(self.patch))


@dataclass
class RefixResult:
    node: int
    accept: bool
    imagined: ImaginedLabeling | None = None
    variants_tried: int = 0


def variant_count(ball_size: int, alphabet_size: int, i: int) -> int:
    return sum(comb(ball_size, k) * (alphabet_size - 1) ** k for k in range(i + 1))


def enumerate_variants(g: Graph, l_adv: Labeling, v: int, budget: ErrorBudget,
                       alphabet_size: int | None = None) -> Iterator[tuple[tuple[int, int], ...]]:
    """Patches of at most i changes inside N_{d+2i}(v).

    Ordered by size, then node set (lexicographic), then label tuple; every
    patched label differs from the adversarial one.
    """
    lam = l_adv.alphabet_size if alphabet_size is None else alphabet_size
    ball = sorted(distances_from(g, v, budget.effective_radius))
    for k in range(budget.i + 1):
        for nodes in combinations(ball, k):
            choices = [[a for a in range(lam) if a != l_adv[x]] for x in nodes]
            for labs in product(*choices):
                yield tuple(zip(nodes, labs))


class RefixRunner:
    """Shares base-verifier verdicts across nodes and patches for one (graph, L_adv).

    A verdict at u depends only on the labels inside u's radius-d ball, so it
    is cached under the patch entries that fall inside that ball.
    """

    def __init__(self, g: Graph, l_adv: Labeling, spec: SchemeSpec, budget: ErrorBudget):
        if budget.base_d != spec.view_distance:
            raise ValueError(f"budget base_d={budget.base_d} does not match view distance {spec.view_distance}")
        if len(l_adv) != g.n:
            raise ValueError("labeling is not total on the graph")
        self.g, self.l_adv, self.spec, self.budget = g, l_adv, spec, budget
        self.lam = max(spec.alphabet_size, l_adv.alphabet_size)
        self.skels = [view_skeleton(g, u, spec.view_distance) for u in g.nodes()]
        self.balls = [frozenset(s.nodes) for s in self.skels]
        self.base = [spec.verifier(s.view(l_adv.labels)) for s in self.skels]
        self._cache: dict = {}

    def accepts(self, u: int, patch: dict[int, int]) -> bool:
        key = tuple(sorted((x, a) for x, a in patch.items() if x in self.balls[u]))
        if not key:
            return self.base[u]
        ck = (u, key)
        hit = self._cache.get(ck)
        if hit is None:
            labels = list(self.l_adv.labels)
            for x, a in key:
                labels[x] = a
            hit = self.spec.verifier(self.skels[u].view(labels))
            self._cache[ck] = hit
        return hit

    def verdict(self, v: int) -> RefixResult:
        b = self.budget
        inner = sorted(distances_from(self.g, v, b.check_radius))
        outer = sorted(distances_from(self.g, v, b.effective_radius))
        rejecting = [u for u in inner if not self.base[u]]
        if not rejecting:
            return RefixResult(v, True, ImaginedLabeling(v, ()), 1)
        # a patch can only rescue u if it touches u's ball
        touches = {x: {u for u in inner if x in self.balls[u]} for x in outer}
        need = set(rejecting)
        tried = 1
        for k in range(1, b.i + 1):
            for nodes in combinations(outer, k):
                hit = set().union(*(touches[x] for x in nodes))
                if not need <= hit:
                    tried += (self.lam - 1) ** k
                    continue
                check = sorted(hit)
                for labs in product(*[[a for a in range(self.lam) if a != self.l_adv[x]] for x in nodes]):
                    tried += 1
                    patch = dict(zip(nodes, labs))
                    if all(self.accepts(u, patch) for u in check):
                        return RefixResult(v, True, ImaginedLabeling(v, tuple(zip(nodes, labs))), tried)
        return RefixResult(v, False, None, tried)

    def all_verdicts(self) -> list[RefixResult]:
        return [self.verdict(v) for v in self.g.nodes()]

    def some_rejects(self) -> bool:
        return any(not self.verdict(v).accept for v in self.g.nodes())


def refix_verdict(g: Graph, l_adv: Labeling, v: int, spec: SchemeSpec, budget: ErrorBudget) -> RefixResult:
    return RefixRunner(g, l_adv, spec, budget).verdict(v)


def refix_all(g: Graph, l_adv: Labeling, spec: SchemeSpec, budget: ErrorBudget) -> list[RefixResult]:
    return RefixRunner(g, l_adv, spec, budget).all_verdicts()


@dataclass
class AgreementViolation:
    u: int
    v: int
    lu_u: int
    lv_u: int
    lu_v: int
    lv_v: int


def check_agreement(g: Graph, l_adv: Labeling, spec: SchemeSpec, budget: ErrorBudget,
                    results: list[RefixResult] | None = None) -> list[AgreementViolation]:
    """Edges whose two accepting endpoints imagine different labels at u or at v."""
    if spec.prop.holds(g):
        raise PropertyHolds(f"graph satisfies {spec.prop.value}")
    if results is None:
        results = refix_all(g, l_adv, spec, budget)
    out = []
    for u, v in g.edges:
        ru, rv = results[u], results[v]
        if not (ru.accept and rv.accept):
            continue
        a = (ru.imagined.label_at(l_adv, u), rv.imagined.label_at(l_adv, u),
             ru.imagined.label_at(l_adv, v), rv.imagined.label_at(l_adv, v))
        if a[0] != a[1] or a[2] != a[3]:
            out.append(AgreementViolation(u, v, *a))
    return out


_PATH_RULES = {SchemeId.CYCLE_N: cycle_n_rule, SchemeId.ACYCLIC_N: acyclic_rule}


def path_labeling_uniqueness(g: Graph, path, a: int, b: int, spec: SchemeSpec,
                             alphabet_size: int | None = None) -> int:
    """How many labelings of the interior path nodes let every interior node accept.

    Endpoints are pinned to a and b; each interior node is judged by the
    scheme's radius-1 rule using only its two path neighbours. Interior
    labels range over ``{0..n}`` unless ``alphabet_size`` says otherwise.
    """
    rule = _PATH_RULES.get(spec.scheme_id)
    if rule is None:
        raise ValueError("path uniqueness is defined for CYCLE_N and ACYCLIC_N")
    path = list(path)
    if len(set(path)) != len(path) or any(y not in g.adj[x] for x, y in zip(path, path[1:])):
        raise ValueError("not a simple path in the graph")
    lam = g.n + 1 if alphabet_size is None else alphabet_size
    inner = len(path) - 2
    if inner <= 0:
        return 1
    count = 0
    for labs in product(range(lam), repeat=inner):
        seq = (a,) + labs + (b,)
        if all(rule(seq[k], [seq[k - 1], seq[k + 1]]) for k in range(1, len(seq) - 1)):
            count += 1
    return count
