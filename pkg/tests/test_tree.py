from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from core.generators import Role, TailLayout, gen_balanced, gen_path, gen_random_bounded, gen_wings
from core.labeling import TrueLabeling
from core.oracle import oracle_query
from core.tree import InvalidTreeError, build_tree
from tests.strategies import trees
from verify.brute import bfs_first_edge

PROPERTY_SETTINGS = settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])


class TestBuildTree:
    def test_path_indices(self, path4):
        assert path4.n == 4
        assert path4.parent == (-1, 0, 1, 2)
        assert path4.depth == (0, 1, 2, 3)
        assert path4.edges == ((0, 1), (1, 2), (2, 3))
        assert path4.max_degree == 2

    def test_single_vertex(self):
        t = build_tree([], n=1)
        assert t.n == 1
        assert t.distance(0, 0) == 0

    @pytest.mark.parametrize("edges,n", [
        ([(0, 1), (1, 2), (2, 0)], 4),       # cycle, vertex 3 cut off
        ([(0, 1), (2, 3)], 4),               # too few edges
        ([(0, 1), (0, 1), (1, 2)], 4),       # duplicate
        ([(0, 0), (0, 1), (1, 2)], 4),       # self-loop
        ([(0, 1), (1, 7), (1, 2)], 4),       # out of range
    ])
    def test_rejects_non_trees(self, edges, n):
        with pytest.raises(InvalidTreeError):
            build_tree(edges, n=n)

    def test_indices_match_bfs_from_root(self):
        t = gen_random_bounded(1001, 4, seed=11)
        rebuilt = build_tree(list(t.edges))
        depths = nx.single_source_shortest_path_length(rebuilt.to_networkx(), 0)
        assert list(rebuilt.depth) == [depths[v] for v in range(rebuilt.n)]
        for v in range(1, rebuilt.n):
            assert rebuilt.depth[rebuilt.parent[v]] == rebuilt.depth[v] - 1
            assert rebuilt.is_edge(v, rebuilt.parent[v])

    def test_is_edge_and_index(self, spider):
        assert spider.is_edge(0, 5) and spider.is_edge(5, 0)
        assert not spider.is_edge(1, 3)
        for i, (u, v) in enumerate(spider.edges):
            assert spider.edge_index(v, u) == i
        with pytest.raises(KeyError):
            spider.edge_index(2, 4)


class TestQueries:
    def test_spider_distances(self, spider):
        assert spider.distance(2, 4) == 4
        assert spider.distance(2, 5) == 3
        assert spider.lca(2, 1) == 1
        assert spider.first_hop(2, 4) == 1
        assert spider.first_hop(0, 4) == 3
        assert spider.first_hop(3, 3) == -1

    def test_level_ancestor(self, binary15):
        assert binary15.level_ancestor(14, 0) == 14
        assert binary15.level_ancestor(14, 1) == 6
        assert binary15.level_ancestor(14, 3) == 0

    @PROPERTY_SETTINGS
    @given(t=trees(max_n=40), data=st.data())
    def test_distance_matches_networkx(self, t, data):
        g = t.to_networkx()
        u = data.draw(st.integers(0, t.n - 1))
        v = data.draw(st.integers(0, t.n - 1))
        assert t.distance(u, v) == nx.shortest_path_length(g, u, v)
        assert t.distance(u, v) == t.distance(v, u)

    @PROPERTY_SETTINGS
    @given(t=trees(max_n=40), data=st.data())
    def test_first_hop_matches_bfs(self, t, data):
        u = data.draw(st.integers(0, t.n - 1))
        w = data.draw(st.integers(0, t.n - 1).filter(lambda x: x != u))
        assert (u, t.first_hop(u, w)) == bfs_first_edge(t, u, w)
        assert t.distance(t.first_hop(u, w), w) == t.distance(u, w) - 1


class TestOracle:
    def test_at_target_and_next_edge(self, path4):
        truth = TrueLabeling([3, 2, 1, 0])
        assert oracle_query(path4, truth, 0, 3).at_target
        answer = oracle_query(path4, truth, 0, 1)
        assert not answer.at_target
        assert answer.edge == (1, 2)

    @PROPERTY_SETTINGS
    @given(t=trees(max_n=30), data=st.data())
    def test_following_the_oracle_reaches_the_label(self, t, data):
        perm = data.draw(st.permutations(range(t.n)))
        truth = TrueLabeling(list(perm))
        label = data.draw(st.integers(0, t.n - 1))
        u = data.draw(st.integers(0, t.n - 1))
        hops = 0
        answer = oracle_query(t, truth, label, u)
        while not answer.at_target:
            u = answer.next_vertex
            hops += 1
            answer = oracle_query(t, truth, label, u)
        assert u == truth.vertex_of(label)
        assert hops <= t.n - 1


class TestGenerators:
    def test_path(self):
        t = gen_path(6)
        assert t.max_degree == 2
        assert t.distance(0, 5) == 5

    def test_balanced(self):
        t = gen_balanced(15, 2)
        assert max(t.depth) == 3
        assert t.degree(0) == 2

    @pytest.mark.parametrize("n,k", [(2, 2), (50, 2), (200, 3), (500, 5)])
    def test_random_bounded_degree(self, n, k):
        t = gen_random_bounded(n, k, seed=7)
        assert t.n == n
        assert t.max_degree <= k

    def test_random_is_deterministic(self):
        assert gen_random_bounded(100, 3, seed=1).edges == gen_random_bounded(100, 3, seed=1).edges

    def test_rejects_small_inputs(self):
        with pytest.raises(InvalidTreeError):
            gen_path(1)
        with pytest.raises(InvalidTreeError):
            gen_random_bounded(10, 1, seed=0)
        with pytest.raises(InvalidTreeError):
            gen_wings(2, 1)

    def test_wings_layout(self, wings23):
        assert wings23.tree.n == 2 * 3 + 2 + 1
        assert wings23.tails is TailLayout.LEAVES
        assert wings23.tree.degree(0) == 3 + 2
        assert wings23.wing_vertex(1, 2) == 4
        assert wings23.roles[4].role is Role.WING
        assert wings23.roles[4].depth == 2
        assert wings23.roles[wings23.tail_vertex(1)].role is Role.TAIL
        assert wings23.tree.depth[wings23.wing_vertex(2, 2)] == 2

    def test_wings_chain_tails(self):
        w = gen_wings(3, 2, "chain")
        assert w.tree.degree(0) == 3
        assert w.tree.depth[w.tail_vertex(2)] == 3
