from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs
from lcllab.adversary import CorruptionPlan
from lcllab.congest import (BANDWIDTH_BITS, REJECTED, BandwidthExceeded, MajorityBipartite, congest_bipartite,
                            corruption_within_half, message_bits, simulate)
from lcllab.graph import cycle_graph, is_bipartite, path_graph, star_graph, two_coloring
from lcllab.labelings import Labeling, label_bipartite


def run(g, labs):
    return congest_bipartite(g, Labeling(tuple(labs), 2))


def test_single_edge():
    assert run(path_graph(2), (0, 1)).verdicts.all_accept


def test_star_with_two_flipped_leaves():
    g = star_graph(4)
    res = run(g, (0, 0, 0, 1, 1))
    # the centre out-votes its two wrong leaves
    assert res.verdicts[0] and res.states[0].corrected == 0
    # a degree-1 leaf holding the wrong label sees a 1-1 tie and rejects
    assert res.verdicts.rejecting == [1, 2]
    # the leaves' own budget is floor(1/2) = 0, so only the open reading admits this plan
    assert corruption_within_half(g, {1, 2}, closed=False)
    assert not corruption_within_half(g, {1, 2})
    assert run(g, (0, 1, 1, 1, 1)).verdicts.all_accept


def test_c5_always_rejected():
    for labs in product(range(2), repeat=5):
        assert not run(cycle_graph(5), labs).verdicts.all_accept


def test_tie_rejects_in_round_one():
    # path 0-1-2 with the middle node flipped: the middle still corrects itself (x = 2 > 3/2),
    # each end sees x = 1 = (1+1)/2 and rejects
    res = run(path_graph(3), (0, 0, 0))
    assert res.states[1].corrected == 1
    assert res.verdicts.rejecting == [0, 2]
    assert res.states[0].rejected and res.states[2].rejected


class TestBudgetReadings:
    def test_empty_plan(self):
        assert corruption_within_half(cycle_graph(4), set())

    def test_c4_single_flip(self):
        assert corruption_within_half(cycle_graph(4), {0})
        assert corruption_within_half(cycle_graph(4), {0}, closed=False)

    def test_c4_adjacent_pair(self):
        assert not corruption_within_half(cycle_graph(4), {0, 1})
        assert corruption_within_half(cycle_graph(4), {0, 1}, closed=False)

    def test_accepts_plan_objects(self):
        assert corruption_within_half(cycle_graph(4), CorruptionPlan({0: 0}))

    def test_open_reading_is_not_enough(self):
        # the endpoint of a 3-path has degree 1: a flipped endpoint is invisible to the open count
        g = path_graph(3)
        assert corruption_within_half(g, {0}, closed=False)
        assert not corruption_within_half(g, {0})
        good = two_coloring(g)
        bad = [1 - c if v == 0 else c for v, c in enumerate(good)]
        assert not run(g, bad).verdicts.all_accept


@given(connected_graphs(max_n=9, max_extra=4), st.data())
def test_completeness_under_closed_budget(g, data):
    if not is_bipartite(g):
        return
    lab = label_bipartite(g)
    flips = data.draw(st.sets(st.integers(0, g.n - 1), max_size=g.n))
    if not corruption_within_half(g, flips):
        return
    labs = [1 - a if v in flips else a for v, a in enumerate(lab.labels)]
    assert run(g, labs).verdicts.all_accept


@given(connected_graphs(max_n=8, max_extra=6), st.data())
def test_soundness(g, data):
    if is_bipartite(g):
        return
    labs = [data.draw(st.integers(0, 1)) for _ in g.nodes()]
    assert not run(g, labs).verdicts.all_accept


@given(connected_graphs(max_n=8), st.data())
def test_rounds_and_bandwidth(g, data):
    labs = [data.draw(st.integers(0, 1)) for _ in g.nodes()]
    res = congest_bipartite(g, Labeling(tuple(labs), 2), trace=True)
    assert res.rounds == 2
    assert res.max_bits <= BANDWIDTH_BITS
    assert all(message_bits(t.msg) <= 2 for t in res.trace)
    # round 1 carries every label over every edge, in both directions
    assert sum(1 for t in res.trace if t.round == 1) == 2 * g.m


def test_majority_is_exact():
    # degree 3: threshold (3+1)/2 = 2 exactly, so x = 2 is a tie
    prog = MajorityBipartite((1, 0, 0, 0))
    tie = prog.receive(1, prog.init(0, 3), [(0, 0), (1, 1), (2, 1)])
    assert tie.rejected and tie.corrected is None
    win = prog.receive(1, prog.init(0, 3), [(0, 0), (1, 0), (2, 1)])
    assert not win.rejected and win.corrected == 1
    # degree 2: threshold 3/2, never a tie
    prog = MajorityBipartite((0, 0, 0))
    assert prog.receive(1, prog.init(0, 2), [(0, 0), (1, 1)]).corrected == 0


def test_rejected_marker_reaches_neighbours():
    res = congest_bipartite(path_graph(3), Labeling((0, 0, 0), 2), trace=True)
    assert any(t.round == 2 and t.src == 0 and t.msg == REJECTED for t in res.trace)


class Shouter:
    def init(self, v, degree):
        return v

    def send(self, rnd, state):
        return 4

    def receive(self, rnd, state, inbox):
        return state

    def decide(self, state):
        return True


def test_bandwidth_enforced():
    with pytest.raises(BandwidthExceeded):
        simulate(path_graph(2), Shouter(), 1)
    assert simulate(path_graph(2), Shouter(), 1, bandwidth=3).max_bits == 3


class Echo:
    # sends per-port messages and records what came back, to check port delivery
    def init(self, v, degree):
        return {"v": v, "deg": degree, "got": None}

    def send(self, rnd, s):
        return [k % 2 for k in range(s["deg"])]

    def receive(self, rnd, s, inbox):
        s["got"] = inbox
        return s

    def decide(self, s):
        return True


def test_synchronous_delivery_by_port():
    g = star_graph(3)
    res = simulate(g, Echo(), 1)
    # centre sends 0, 1, 0 to leaves 1, 2, 3; each leaf hears on its only port
    assert [res.states[v]["got"] for v in (1, 2, 3)] == [[(0, 0)], [(0, 1)], [(0, 0)]]
    assert res.states[0]["got"] == [(0, 0), (1, 0), (2, 0)]


def test_input_checks():
    with pytest.raises(ValueError):
        congest_bipartite(path_graph(2), Labeling((0, 2), 3))
    with pytest.raises(ValueError):
        congest_bipartite(path_graph(3), Labeling((0, 1), 2))
    with pytest.raises(ValueError):
        message_bits(-1)
