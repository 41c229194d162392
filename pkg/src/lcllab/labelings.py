"""Oracular labelers for cycle detection, cycle absence and bipartiteness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, core_nodes, distance_to_set, has_cycle, two_coloring


class NotInProperty(ValueError):
    """The graph lacks the property, so no oracular labeling exists."""


@dataclass(frozen=True)
class Labeling:
    labels: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        if self.alphabet_size < 2:
            raise ValueError("alphabet needs at least two labels")
        bad = [x for x in self.labels if not 0 <= x < self.alphabet_size]
        if bad:
            raise ValueError(f"labels {bad} outside alphabet of size {self.alphabet_size}")

    @classmethod
    def of(cls, labels: Sequence[int], alphabet_size: int) -> Labeling:
        return cls(tuple(labels), alphabet_size)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, v: int) -> int:
        return self.labels[v]

    @property
    def bits(self) -> int:
        """``ceil(log2 lambda)``, the label size in bits."""
        return (self.alphabet_size - 1).bit_length()

    def with_changes(self, changes: dict[int, int]) -> Labeling:
        labels = list(self.labels)
        for v, a in changes.items():
            labels[v] = a
        return Labeling(tuple(labels), self.alphabet_size)


def _core_distances(g: Graph) -> list[int]:
    if not has_cycle(g):
        raise NotInProperty("graph is acyclic; cycle-detection labeling undefined")
    return distance_to_set(g, core_nodes(g))


def label_cycle_n(g: Graph) -> Labeling:
    """Core nodes 0, tree nodes their exact distance to the core."""
    return Labeling(tuple(_core_distances(g)), g.n + 1)


def label_cycle3(g: Graph) -> Labeling:
    return Labeling(tuple(r % 3 for r in _core_distances(g)), 3)


_TWO_LABEL_RESIDUES = frozenset({1, 2, 4})


def label_cycle2_view3(g: Graph) -> Labeling:
    """Tree node at distance r from the core gets 1 iff r mod 6 is 1, 2 or 4.

    Reading labels outward from the core then spells the periodic string
    001101001101...
    """
    return Labeling(tuple(int(r > 0 and r % 6 in _TWO_LABEL_RESIDUES) for r in _core_distances(g)), 2)


def label_acyclic(g: Graph) -> Labeling:
    """Distance to node 0, which serves as the root."""
    if has_cycle(g):
        raise NotInProperty("graph has a cycle; cycle-absence labeling undefined")
    return Labeling(tuple(distance_to_set(g, [0])), g.n + 1)


def label_bipartite(g: Graph) -> Labeling:
    coloring = two_coloring(g)
    if coloring is None:
        raise NotInProperty("graph has an odd cycle")
    return Labeling(tuple(coloring), 2)


def read_labeling(text: str) -> Labeling:
    """Parse ``lambda=<k>`` followed by ``index label`` lines."""
    lam = None
    entries: dict[int, int] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("lambda="):
            lam = int(line.split("=", 1)[1])
            continue
        idx, lab = line.split()
        if int(idx) in entries:
            raise ValueError(f"node {idx} labelled twice")
        entries[int(idx)] = int(lab)
    if lam is None:
        raise ValueError("missing lambda=<k> header")
    if sorted(entries) != list(range(len(entries))):
        raise ValueError("labeling must list every node 0..n-1 exactly once")
    return Labeling(tuple(entries[v] for v in range(len(entries))), lam)


def write_labeling(lab: Labeling) -> str:
    lines = [f"lambda={lab.alphabet_size}"] + [f"{v} {a}" for v, a in enumerate(lab.labels)]
    return "\n".join(lines) + "\n"
