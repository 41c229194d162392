"""Budgeted label corruption under the per-node rule: at most i changes in every N_{d+2i}(v)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product

from .graph import Graph, distances_from
from .labelings import Labeling
from .refix import ErrorBudget, RefixRunner
from .schemes import SchemeSpec, run_verifier

MAX_ATTEMPTS = 10_000


class SamplingExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class CorruptionPlan:
    changes: dict[int, int] = field(default_factory=dict)
    seed: int | None = None

    def __len__(self) -> int:
        return len(self.changes)

    def check_against(self, lab: Labeling) -> None:
        for v, a in self.changes.items():
            if not 0 <= v < len(lab):
                raise ValueError(f"plan touches node {v} outside the graph")
            if not 0 <= a < lab.alphabet_size:
                raise ValueError(f"new label {a} at node {v} outside the alphabet")
            if a == lab[v]:
                raise ValueError(f"plan keeps node {v} at its label {a}")

    def apply(self, lab: Labeling) -> Labeling:
        self.check_against(lab)
        return lab.with_changes(self.changes)


def validate_budget(g: Graph, plan: CorruptionPlan, budget: ErrorBudget) -> bool:
    """Every node's N_{d+2i}(v) holds at most i changed nodes."""
    r = budget.effective_radius
    changed = set(plan.changes)
    return all(len(changed & distances_from(g, v, r).keys()) <= budget.i for v in g.nodes())


def validate_budget_local(g: Graph, plan: CorruptionPlan, budget: ErrorBudget) -> bool:
    # only nodes within effective_radius of some change can see any change
    r = budget.effective_radius
    if len(plan.changes) <= budget.i:
        return True
    changed = set(plan.changes)
    near = set()
    for x in changed:
        near |= distances_from(g, x, r).keys()
    return all(len(changed & distances_from(g, v, r).keys()) <= budget.i for v in near)


def random_plan(g: Graph, lab: Labeling, budget: ErrorBudget, seed=None,
                max_attempts: int = MAX_ATTEMPTS) -> CorruptionPlan:
    """Draw a size k in 1..i, then k nodes and new labels uniformly; retry until the budget holds."""
    if budget.i == 0:
        return CorruptionPlan({}, seed)
    rng = random.Random(seed)
    top = min(budget.i, g.n)
    for _ in range(max_attempts):
        k = rng.randint(1, top)
        nodes = rng.sample(range(g.n), k)
        changes = {v: rng.choice([a for a in range(lab.alphabet_size) if a != lab[v]]) for v in sorted(nodes)}
        plan = CorruptionPlan(changes, seed)
        if validate_budget_local(g, plan, budget):
            return plan
    raise SamplingExhausted(f"no budget-valid plan in {max_attempts} attempts")


def random_corruption(g: Graph, lab: Labeling, budget: ErrorBudget, seed=None,
                      max_attempts: int = MAX_ATTEMPTS) -> Labeling:
    return random_plan(g, lab, budget, seed, max_attempts).apply(lab)


def budget_valid_plans(g: Graph, lab: Labeling, budget: ErrorBudget, alphabet_size: int | None = None):
    """All budget-valid plans, by change count then node set then labels."""
    lam = lab.alphabet_size if alphabet_size is None else alphabet_size
    for k in range(0, min(budget.i, g.n) + 1):
        for nodes in combinations(g.nodes(), k):
            probe = CorruptionPlan({v: 0 for v in nodes})
            if not validate_budget_local(g, probe, budget):
                continue
            for labs in product(*[[a for a in range(lam) if a != lab[v]] for v in nodes]):
                yield CorruptionPlan(dict(zip(nodes, labs)))


def worst_case_search(g: Graph, lab: Labeling, spec: SchemeSpec, budget: ErrorBudget,
                      refix: bool = True) -> CorruptionPlan | None:
    """First budget-valid plan under which some node rejects, or None.

    With ``refix`` the nodes run the error-tolerant verifier; without it they
    run the base verifier directly on the corrupted labeling.
    """
    for plan in budget_valid_plans(g, lab, budget, spec.alphabet_size):
        bad = lab.with_changes(plan.changes)
        if refix:
            broken = RefixRunner(g, bad, spec, budget).some_rejects()
        else:
            broken = not run_verifier(g, bad, spec).all_accept
        if broken:
            return plan
    return None


def read_plan(text: str) -> CorruptionPlan:
    """Parse ``node old new`` lines; ``old`` is kept only for checking."""
    changes = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        v, _old, new = (int(x) for x in line.split())
        if v in changes:
            raise ValueError(f"node {v} changed twice")
        changes[v] = new
    return CorruptionPlan(changes)


def read_plan_checked(text: str, lab: Labeling) -> CorruptionPlan:
    for line in text.splitlines():
        parts = line.split()
        if len(parts) == 3 and not line.lstrip().startswith("#"):
            v, old = int(parts[0]), int(parts[1])
            if lab[v] != old:
                raise ValueError(f"plan says node {v} was {old}, labeling has {lab[v]}")
    plan = read_plan(text)
    plan.check_against(lab)
    return plan


def write_plan(plan: CorruptionPlan, lab: Labeling) -> str:
    return "".join(f"{v} {lab[v]} {a}\n" for v, a in sorted(plan.changes.items()))
