import hypothesis
import networkx as nx
import pytest
from hypothesis import strategies as st

from lcllab.graph import Graph

hypothesis.settings.register_profile("default", deadline=None, max_examples=80)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")

# acceptance lines, printed in the terminal summary whatever -s says
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("+")), k)):
        terminalreporter.write_line(ACCEPTANCE[key])


@st.composite
def connected_graphs(draw, min_n=1, max_n=8, max_extra=6):
    """Random spanning tree plus a few extra edges, under a random node order."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if missing:
        edges |= set(draw(st.lists(st.sampled_from(missing), max_size=max_extra, unique=True)))
    perm = draw(st.permutations(range(n)))
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])


@st.composite
def trees(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return Graph.from_edges(n, [(draw(st.integers(0, v - 1)), v) for v in range(1, n)])


@st.composite
def cyclic_graphs(draw, max_n=8):
    g = draw(connected_graphs(min_n=3, max_n=max_n))
    hypothesis.assume(g.m >= g.n)
    return g


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def atlas(max_n=7):
    """Connected graphs from the networkx atlas (all graphs up to 7 nodes)."""
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(h):
            out.append(Graph.from_edges(n, list(h.edges())))
    return out


@pytest.fixture(scope="session")
def atlas_graphs():
    return atlas(7)
