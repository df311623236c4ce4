#!/usr/bin/env python3
"""暴力求解器测试"""

import networkx as nx
import numpy as np
import pytest

from factories import rect_instance, unit_square_instance
from models.geometry import AxisRect, Instance, Point, exposed_points
from src.oracle import (BipartiteGraph, brute_force_opt, densest_k_subgraph,
                        densest_k_subgraph_bipartite, densest_k_subhypergraph, dual_hypergraph)
from utils.errors import BudgetExceededError, InvalidInputError


class TestBruteForce:
    def test_i1(self, i1):
        solution = brute_force_opt(i1)
        assert solution.value == 2
        assert solution.deleted == {0}
        assert solution.exposed == {0, 3}

    def test_i1_delete_everything(self, i1):
        assert brute_force_opt(i1.with_k(2)).value == 4

    def test_k_zero_counts_empty_signatures(self, i1):
        solution = brute_force_opt(i1.with_k(0))
        assert solution.value == 1
        assert solution.deleted == frozenset()

    def test_exposed_matches_definition(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            inst = unit_square_instance(rng, 6, 8, int(rng.integers(0, 4)))
            solution = brute_force_opt(inst)
            assert len(solution.deleted) == inst.k
            assert solution.exposed == exposed_points(inst, solution.deleted)

    def test_methods_agree(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            inst = rect_instance(rng, int(rng.integers(1, 9)), 8, 0)
            inst = inst.with_k(int(rng.integers(0, inst.n + 1)))
            by_subsets = brute_force_opt(inst, method="subsets")
            by_signatures = brute_force_opt(inst, method="signatures")
            assert by_subsets.value == by_signatures.value
            assert by_subsets.deleted == by_signatures.deleted

    def test_budget_exceeded(self, i1):
        big = Instance(points=i1.points,
                       ranges=tuple(AxisRect(i, 0, i + 1, 1) for i in range(20)), k=10)
        with pytest.raises(BudgetExceededError):
            brute_force_opt(big, node_budget=1000)

    def test_unknown_method(self, i1):
        with pytest.raises(InvalidInputError):
            brute_force_opt(i1, method="magic")


class TestDuality:
    def test_dual_hypergraph_of_i1(self, i1):
        n, hyperedges, empty = dual_hypergraph(i1)
        assert n == 2
        assert hyperedges == [(0,), (0, 1), (1,)]
        assert empty == 1

    def test_opt_equals_densest_subhypergraph(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            inst = rect_instance(rng, 6, 9, int(rng.integers(0, 5)))
            n, hyperedges, empty = dual_hypergraph(inst)
            assert brute_force_opt(inst).value == densest_k_subhypergraph(n, hyperedges, inst.k) + empty


class TestDensest:
    def test_complete_bipartite(self):
        k22 = BipartiteGraph(2, 2, ((0, 0), (0, 1), (1, 0), (1, 1)))
        assert densest_k_subgraph_bipartite(k22, 4) == 4
        assert densest_k_subgraph_bipartite(k22, 3) == 2
        assert densest_k_subgraph_bipartite(k22, 2) == 1
        assert densest_k_subgraph_bipartite(k22, 0) == 0

    def test_hyperedges(self):
        edges = [(0, 1, 2), (1, 2), (2, 3), (0, 3)]
        assert densest_k_subhypergraph(4, edges, 3) == 2
        assert densest_k_subhypergraph(4, edges, 2) == 1
        assert densest_k_subhypergraph(4, edges, 4) == 4

    def test_labelled_vertices(self):
        assert densest_k_subhypergraph(["a", "b", "c"], [("a", "b"), ("b", "c")], 2) == 1
        with pytest.raises(InvalidInputError):
            densest_k_subhypergraph(["a"], [("a", "z")], 1)

    def test_general_graph_matches_networkx_triangle(self):
        graph = nx.complete_graph(5)
        assert densest_k_subgraph(graph, 3) == 3
        assert densest_k_subgraph(graph, 5) == 10

    def test_bipartite_agrees_with_networkx_view(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            edges = tuple((a, b) for a in range(3) for b in range(4) if rng.random() < 0.5)
            g = BipartiteGraph(3, 4, edges)
            for k in range(g.vertex_count + 1):
                assert densest_k_subgraph_bipartite(g, k) == densest_k_subgraph(g.to_networkx(), k)

    def test_invalid_graph(self):
        with pytest.raises(InvalidInputError):
            BipartiteGraph(2, 2, ((0, 5),))
        with pytest.raises(InvalidInputError):
            BipartiteGraph(2, 2, ((0, 0), (0, 0)))
        with pytest.raises(InvalidInputError):
            densest_k_subgraph_bipartite(BipartiteGraph(1, 1), 3)

    def test_instance_without_ranges(self):
        # 没有范围时唯一的选择是什么都不删
        inst = Instance(points=(Point(0, 0),), ranges=(), k=0)
        assert brute_force_opt(inst).value == 1
