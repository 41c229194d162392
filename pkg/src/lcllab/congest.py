"""Lock-step message passing with per-edge bandwidth limits, and a 2-round
bipartiteness check that corrects a minority of corrupted neighbour labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Protocol

from .graph import Graph
from .labelings import Labeling
from .schemes import VerdictMap

BANDWIDTH_BITS = 2
REJECTED = 2  # round-2 marker sent by a node that already rejected


class BandwidthExceeded(AssertionError):
    pass


class RoundCountMismatch(AssertionError):
    pass


def message_bits(msg: int) -> int:
    if msg < 0:
        raise ValueError("messages are non-negative integers")
    return max(1, msg.bit_length())


@dataclass
class RoundState:
    round: int
    inbox: list[list[tuple[int, int]]]  # per node: (edge slot, message)
    node_state: list[Any]


@dataclass
class TraceEntry:
    round: int
    src: int
    dst: int
    msg: int


class NodeProgram(Protocol):
    def init(self, v: int, degree: int) -> Any: ...

    def send(self, rnd: int, state: Any) -> int | list[int | None] | None: ...

    def receive(self, rnd: int, state: Any, inbox: list[tuple[int, int]]) -> Any: ...

    def decide(self, state: Any) -> bool: ...


@dataclass
class RunResult:
    verdicts: VerdictMap
    rounds: int
    max_bits: int
    states: list[Any]
    trace: list[TraceEntry] = field(default_factory=list)


def simulate(g: Graph, program: NodeProgram, rounds: int, bandwidth: int = BANDWIDTH_BITS,
             trace: bool = False) -> RunResult:
    """Run ``rounds`` synchronous rounds; all round-r sends land before any round-r receive.

    ``send`` returns one int for all edges, a per-slot list (None = silent) or
    None. Every message is audited against ``bandwidth`` bits.
    """
    states = [program.init(v, g.degree(v)) for v in g.nodes()]
    # slot of u in v's sorted adjacency, so receivers see ports, not identities
    slot = [{u: k for k, u in enumerate(g.adj[v])} for v in g.nodes()]
    log: list[TraceEntry] = []
    max_bits = 0
    done = 0
    for rnd in range(1, rounds + 1):
        inbox: list[list[tuple[int, int]]] = [[] for _ in g.nodes()]
        for v in g.nodes():
            out = program.send(rnd, states[v])
            if out is None:
                continue
            per_edge = [out] * g.degree(v) if isinstance(out, int) else out
            for u, msg in zip(g.adj[v], per_edge):
                if msg is None:
                    continue
                bits = message_bits(msg)
                if bits > bandwidth:
                    raise BandwidthExceeded(f"round {rnd}: {bits}-bit message on edge ({v},{u})")
                max_bits = max(max_bits, bits)
                inbox[u].append((slot[u][v], msg))
                if trace:
                    log.append(TraceEntry(rnd, v, u, msg))
        RoundState(rnd, inbox, states)  # barrier: the whole round is delivered at once
        states = [program.receive(rnd, states[v], sorted(inbox[v])) for v in g.nodes()]
        done = rnd
    verdicts = VerdictMap(tuple(program.decide(s) for s in states))
    return RunResult(verdicts, done, max_bits, states, log)


@dataclass
class _BipState:
    degree: int
    label: int
    corrected: int | None = None
    rejected: bool = False
    accepted: bool = False


class MajorityBipartite:
    """Round 1: majority vote over N_1(v) fixes v's label. Round 2: compare corrected labels."""

    def __init__(self, labels):
        self.labels = labels

    def init(self, v: int, degree: int) -> _BipState:
        return _BipState(degree, self.labels[v])

    def send(self, rnd: int, s: _BipState):
        if rnd == 1:
            return s.label
        return REJECTED if s.rejected else s.corrected

    def receive(self, rnd: int, s: _BipState, inbox):
        if rnd == 1:
            # votes for "v is 1": every 0-labelled neighbour, plus v itself if labelled 1
            x = sum(1 for _, m in inbox if m == 0) + (1 if s.label == 1 else 0)
            half = Fraction(s.degree + 1, 2)
            if x > half:
                s.corrected = 1
            elif x < half:
                s.corrected = 0
            else:
                s.rejected = True
        elif not s.rejected:
            s.accepted = all(m == REJECTED or m != s.corrected for _, m in inbox)
        return s

    def decide(self, s: _BipState) -> bool:
        return s.accepted and not s.rejected


PROTOCOL_ROUNDS = 2


def congest_bipartite(g: Graph, l_adv: Labeling, trace: bool = False) -> RunResult:
    if any(a > 1 for a in l_adv.labels):
        raise ValueError("bipartiteness protocol needs labels in {0, 1}")
    if len(l_adv) != g.n:
        raise ValueError("labeling is not total on the graph")
    res = simulate(g, MajorityBipartite(l_adv.labels), PROTOCOL_ROUNDS, trace=trace)
    if res.rounds != PROTOCOL_ROUNDS:
        raise RoundCountMismatch(f"ran {res.rounds} rounds")
    if res.max_bits > BANDWIDTH_BITS:
        raise BandwidthExceeded(f"{res.max_bits}-bit message")
    return res


def corruption_within_half(g: Graph, changed, closed: bool = True) -> bool:
    """Every v has at most floor(deg(v)/2) changed nodes around it.

    ``closed`` counts v itself together with its neighbours (N_1(v)); the open
    reading counts neighbours only.
    """
    changed = set(getattr(changed, "changes", changed))
    for v in g.nodes():
        bad = sum(1 for u in g.adj[v] if u in changed) + (1 if closed and v in changed else 0)
        if bad > g.degree(v) // 2:
            return False
    return True
