import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs, to_nx
from lcllab.graph import (Graph, GraphError, all_pairs_distances, centered_routes, complete_graph, core_nodes,
                          cycle_graph, has_cycle, is_bipartite, is_route, local_view, neighborhood, path_graph,
                          read_edge_list, star_graph, two_coloring, write_edge_list)


def two_triangles_joined():
    # triangles {0,1,2} and {5,6,7} joined by the path 2-3-4-5
    return Graph.from_edges(8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)])


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 0), (0, 1)])

    def test_rejects_parallel_edge(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 1), (1, 0)])

    def test_rejects_disconnected(self):
        with pytest.raises(GraphError):
            Graph.from_edges(4, [(0, 1), (2, 3)])

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(GraphError):
            Graph(2, ((1,), ()))

    def test_single_node(self):
        g = Graph(1, ((),))
        assert g.m == 0 and not has_cycle(g)

    def test_edge_list_round_trip(self):
        g = two_triangles_joined()
        assert read_edge_list(write_edge_list(g)) == g

    def test_edge_list_count_mismatch(self):
        with pytest.raises(GraphError):
            read_edge_list("3 3\n0 1\n1 2\n")

    def test_edge_list_malformed(self):
        with pytest.raises(GraphError):
            read_edge_list("3 x\n0 1\n")


class TestNeighborhood:
    def test_triangle(self):
        assert neighborhood(cycle_graph(3), 0, 1) == {0, 1, 2}

    def test_radius_zero(self):
        assert neighborhood(path_graph(5), 2, 0) == {2}

    def test_path_end(self):
        assert neighborhood(path_graph(5), 0, 2) == {0, 1, 2}

    @given(connected_graphs(), st.integers(0, 6))
    def test_nested_and_matches_shortest_paths(self, g, k):
        dist = all_pairs_distances(g)
        for v in g.nodes():
            ball = neighborhood(g, v, k)
            assert v in ball
            assert ball <= neighborhood(g, v, k + 1)
            assert ball == {u for u in g.nodes() if dist[v][u] <= k}

    @given(connected_graphs())
    def test_distances_match_networkx(self, g):
        h = to_nx(g)
        ref = dict(nx.all_pairs_shortest_path_length(h))
        assert all_pairs_distances(g) == [[ref[v][u] for u in g.nodes()] for v in g.nodes()]


class TestLocalView:
    def test_triangle_view(self):
        v = local_view(cycle_graph(3), [0, 0, 0], 0, 1)
        assert v.graph.m == 3 and v.labels == (0, 0, 0) and v.center == 0

    def test_path_view(self):
        v = local_view(path_graph(5), [5, 6, 7, 8, 9], 2, 1)
        assert v.graph.n == 3 and v.graph.m == 2
        assert v.labels[v.center] == 7 and sorted(v.labels) == [6, 7, 8]

    def test_c6_radius3_is_whole_cycle(self):
        v = local_view(cycle_graph(6), [0] * 6, 0, 3)
        assert v.graph.n == 6 and v.graph.m == 6

    def test_boundary_edges_are_induced(self):
        # in C4 from node 0 at radius 1, nodes 1 and 3 are not adjacent
        v = local_view(cycle_graph(4), [0] * 4, 0, 1)
        assert v.graph.m == 2
        # in C5 at radius 2, the edge between the two far nodes is kept
        v = local_view(cycle_graph(5), [0] * 5, 0, 2)
        assert v.graph.m == 5
        assert v.boundary == {3, 4}

    @given(connected_graphs(), st.integers(1, 3), st.data())
    def test_view_is_induced_subgraph(self, g, k, data):
        v = data.draw(st.integers(0, g.n - 1))
        labels = list(range(g.n))
        view = local_view(g, labels, v, k)
        ball = neighborhood(g, v, k)
        assert sorted(view.labels) == sorted(ball)
        assert view.labels[view.center] == v
        sub = to_nx(g).subgraph(ball)
        assert view.graph.m == sub.number_of_edges()
        assert all(d <= k for d in view.dist)


class TestCycles:
    def test_path_is_acyclic(self):
        assert not has_cycle(path_graph(4))

    def test_triangle(self):
        assert has_cycle(cycle_graph(3))

    def test_seven_node_graph_with_chord(self):
        g = Graph.from_edges(7, [(k, k + 1) for k in range(6)] + [(4, 6)])
        assert has_cycle(g)

    def test_core_of_tree_is_empty(self):
        assert core_nodes(star_graph(4)) == set()
        assert core_nodes(path_graph(6)) == set()

    def test_core_of_triangle_with_pendant(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
        assert core_nodes(g) == {0, 1, 2}

    def test_core_includes_connecting_path(self):
        assert core_nodes(two_triangles_joined()) == set(range(8))

    @given(connected_graphs())
    def test_core_agrees_with_networkx(self, g):
        h = to_nx(g)
        assert has_cycle(g) == bool(nx.cycle_basis(h))
        assert has_cycle(g) == bool(core_nodes(g))
        assert core_nodes(g) == set(nx.k_core(h, 2).nodes())

    @given(connected_graphs())
    def test_bipartite_agrees_with_networkx(self, g):
        assert is_bipartite(g) == nx.is_bipartite(to_nx(g))
        col = two_coloring(g)
        if col is not None:
            assert col[0] == 0 and all(col[u] != col[v] for u, v in g.edges)


class TestRoutes:
    def test_path_middle(self):
        routes = centered_routes(path_graph(5), 2, 2)
        assert routes == {(0, 1, 2, 3, 4), (4, 3, 2, 1, 0)}

    def test_star_ordered_leaf_pairs(self):
        assert len(centered_routes(star_graph(3), 0, 1)) == 6

    def test_triangle_wraps(self):
        routes = centered_routes(cycle_graph(3), 0, 2)
        assert (1, 2, 0, 1, 2) in routes
        assert len(routes) == 2

    def test_k4_count(self):
        # each arm: 3 first steps x 2 non-backtracking second steps
        assert len(centered_routes(complete_graph(4), 0, 2)) == 6 * 2 * 2

    @given(connected_graphs(), st.integers(1, 3), st.data())
    def test_routes_are_centered_and_non_backtracking(self, g, h, data):
        v = data.draw(st.integers(0, g.n - 1))
        ball = neighborhood(g, v, h)
        for r in centered_routes(g, v, h):
            assert len(r) == 2 * h + 1 and r[h] == v
            assert is_route(g, r)
            assert set(r) <= ball
            assert tuple(reversed(r)) in centered_routes(g, v, h)
