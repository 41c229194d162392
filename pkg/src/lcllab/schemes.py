"""Scheme registry: each entry pairs a labeler with its verifier, alphabet and view distance."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from . import labelings as lb
from . import verifiers as vf
from .graph import Graph, LocalView, has_cycle, is_bipartite, view_skeleton


class SchemeId(str, Enum):
    CYCLE3 = "CYCLE3"
    CYCLE_N = "CYCLE_N"
    CYCLE2V3 = "CYCLE2V3"
    ACYCLIC_N = "ACYCLIC_N"
    BIPARTITE2 = "BIPARTITE2"


class Property(str, Enum):
    HAS_CYCLE = "HAS_CYCLE"
    IS_ACYCLIC = "IS_ACYCLIC"
    IS_BIPARTITE = "IS_BIPARTITE"

    def holds(self, g: Graph) -> bool:
        if self is Property.HAS_CYCLE:
            return has_cycle(g)
        if self is Property.IS_ACYCLIC:
            return not has_cycle(g)
        return is_bipartite(g)


@dataclass(frozen=True)
class SchemeSpec:
    scheme_id: SchemeId
    alphabet_size: int
    view_distance: int
    prop: Property
    labeler: Callable[[Graph], lb.Labeling]
    verifier: Callable[[LocalView], bool]
    problem: str

    def label(self, g: Graph) -> lb.Labeling:
        lab = self.labeler(g)
        # distance schemes may run on a fixed alphabet wider than n+1
        if lab.alphabet_size != self.alphabet_size:
            lab = lb.Labeling(lab.labels, self.alphabet_size)
        return lab


_FIXED = {
    SchemeId.CYCLE3: (3, 1, Property.HAS_CYCLE, lb.label_cycle3, vf.verify_3labels, "Cycle detection"),
    SchemeId.CYCLE2V3: (2, 3, Property.HAS_CYCLE, lb.label_cycle2_view3, vf.verify_2labels_view3, "Cycle detection"),
    SchemeId.BIPARTITE2: (2, 1, Property.IS_BIPARTITE, lb.label_bipartite, vf.verify_bipartite, "Bipartiteness"),
}
_GROWING = {
    SchemeId.CYCLE_N: (1, Property.HAS_CYCLE, lb.label_cycle_n, vf.verify_cycle_n, "Cycle detection"),
    SchemeId.ACYCLIC_N: (1, Property.IS_ACYCLIC, lb.label_acyclic, vf.verify_acyclic, "Cycle absence"),
}


def get_scheme(scheme_id: SchemeId | str, n: int | None = None, *, alphabet_size: int | None = None,
               strict: bool = False, repaired: bool = False) -> SchemeSpec:
    """Build the SchemeSpec for ``scheme_id``.

    The distance-based schemes need ``n`` (alphabet ``{0..n}``) or an explicit
    ``alphabet_size``. ``strict`` selects the variant of the view-3 verifier
    that also checks every child's back-pointer; ``repaired`` selects the
    3-label verifier that stays complete on trees of depth >= 3.
    """
    sid = SchemeId(scheme_id)
    if sid in _FIXED:
        lam, d, prop, labeler, verifier, problem = _FIXED[sid]
        if sid is SchemeId.CYCLE2V3 and strict:
            verifier = vf.verify_2labels_view3_strict
        if sid is SchemeId.CYCLE3 and repaired:
            verifier = vf.verify_3labels_repaired
        if alphabet_size is not None and alphabet_size != lam:
            raise ValueError(f"{sid.value} uses exactly {lam} labels")
        return SchemeSpec(sid, lam, d, prop, labeler, verifier, problem)
    d, prop, labeler, verifier, problem = _GROWING[sid]
    if alphabet_size is None:
        if n is None:
            raise ValueError(f"{sid.value} needs n or alphabet_size")
        alphabet_size = n + 1
    return SchemeSpec(sid, alphabet_size, d, prop, labeler, verifier, problem)


@dataclass(frozen=True)
class VerdictMap:
    verdicts: tuple[bool, ...]

    def __getitem__(self, v: int) -> bool:
        return self.verdicts[v]

    def __len__(self) -> int:
        return len(self.verdicts)

    @property
    def all_accept(self) -> bool:
        return all(self.verdicts)

    @property
    def rejecting(self) -> list[int]:
        return [v for v, ok in enumerate(self.verdicts) if not ok]


def run_verifier(g: Graph, lab: lb.Labeling, spec: SchemeSpec) -> VerdictMap:
    if lab.alphabet_size > spec.alphabet_size:
        raise ValueError(f"labeling alphabet {lab.alphabet_size} exceeds scheme alphabet {spec.alphabet_size}")
    if len(lab) != g.n:
        raise ValueError("labeling is not total on the graph")
    return VerdictMap(tuple(spec.verifier(view_skeleton(g, v, spec.view_distance).view(lab.labels))
                            for v in g.nodes()))
