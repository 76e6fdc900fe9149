import sys
import os
import unittest
from itertools import product

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np
from hypothesis import given, settings as hyp_settings, strategies as st

from core.at_engine import build_brooks_orientation
from core.coloring import (
    DELTA_RULE, ListAssignment, constant_sizes, degree_sizes, find_bad_assignment, find_list_coloring,
    indegree_sizes, is_degree_choosable, is_delta_choosable, is_f_choosable, parse_lists,
    random_degree_list_trial, random_list_assignment,
)
from core.errors import CapacityError, DomainError, GraphFormatError, PreconditionError
from core.generators import (
    atlas_graphs, complete_graph, complete_minus_edge, cycle_graph, path_graph, star_graph, wheel_graph,
)
from core.graph import Graph
from core.settings_store import settings


def lists(*colors):
    return ListAssignment(tuple(frozenset(c) for c in colors))


class TestListAssignment(unittest.TestCase):
    def test_palette_inferred(self):
        self.assertEqual(lists({0, 4}, {1}).palette_size, 5)

    def test_empty_list_rejected(self):
        with self.assertRaises(PreconditionError):
            lists({0}, set())

    def test_color_outside_palette(self):
        with self.assertRaises(PreconditionError):
            ListAssignment((frozenset({3}),), palette_size=2)


class TestFindListColoring(unittest.TestCase):
    def test_triangle_with_two_colors(self):
        self.assertIsNone(find_list_coloring(cycle_graph(3), lists({0, 1}, {0, 1}, {0, 1})))

    def test_triangle_with_one_extra_color(self):
        L = lists({0, 1}, {0, 1}, {0, 2})
        coloring = find_list_coloring(cycle_graph(3), L)
        self.assertTrue(coloring.is_proper(cycle_graph(3)))
        self.assertTrue(coloring.respects(L))
        self.assertEqual(coloring.colors[2], 2)

    def test_missing_list(self):
        with self.assertRaises(PreconditionError):
            find_list_coloring(cycle_graph(3), lists({0, 1}, {0, 1}))

    def test_edgeless_graph(self):
        self.assertEqual(find_list_coloring(Graph(2), lists({5}, {5})).colors, (5, 5))

    def test_agrees_with_full_product_enumeration(self):
        rng = np.random.default_rng(7)
        for g in atlas_graphs(1, 5, connected=None):
            for palette in range(1, 5):
                for _ in range(3):
                    sizes = [int(f) for f in rng.integers(1, palette + 1, size=g.vertex_count)]
                    L = random_list_assignment(sizes, palette, rng)
                    exists = any(all(colors[u] != colors[v] for u, v in g.edges)
                                 for colors in product(*(sorted(allowed) for allowed in L.lists)))
                    found = find_list_coloring(g, L)
                    self.assertEqual(found is not None, exists, (g.edges, L.to_dict()))

    @given(st.integers(2, 7), st.integers(0, 2**20))
    @hyp_settings(max_examples=40, deadline=None)
    def test_degree_plus_one_lists_always_color(self, n, seed):
        rng = np.random.default_rng(seed)
        g = wheel_graph(n) if n >= 3 else path_graph(n)
        L = ListAssignment(tuple(
            frozenset(int(c) for c in rng.choice(12, size=d + 1, replace=False)) for d in g.degrees))
        coloring = find_list_coloring(g, L)
        self.assertIsNotNone(coloring)
        self.assertTrue(coloring.is_proper(g))


class TestParseLists(unittest.TestCase):
    def test_parse(self):
        L = parse_lists("# lists\n0: 1,2\n1: 2 3\n2: 1\n", path_graph(3))
        self.assertEqual(L.lists, (frozenset({1, 2}), frozenset({2, 3}), frozenset({1})))

    def test_labels(self):
        g = Graph(2, [(0, 1)], labels=("a", "b"))
        self.assertEqual(parse_lists("b: 1\na: 0", g).lists, (frozenset({0}), frozenset({1})))

    def test_missing_vertex(self):
        with self.assertRaises(PreconditionError):
            parse_lists("0: 1", path_graph(2))

    def test_errors_carry_line_numbers(self):
        g = path_graph(2)
        for text in ("0: 1\nx: 2", "0: 1\n1: a", "0: 1\n1:", "0: 1\n1 2", "0: 1\n0: 2"):
            with self.assertRaises(GraphFormatError) as ctx:
                parse_lists(text, g)
            self.assertEqual(ctx.exception.line_number, 2)


class TestChoosability(unittest.TestCase):
    def test_cycles(self):
        self.assertFalse(is_f_choosable(cycle_graph(3), constant_sizes(cycle_graph(3), 2)))
        self.assertTrue(is_f_choosable(cycle_graph(4), constant_sizes(cycle_graph(4), 2)))
        self.assertFalse(is_f_choosable(cycle_graph(5), constant_sizes(cycle_graph(5), 2)))
        self.assertTrue(is_f_choosable(cycle_graph(5), constant_sizes(cycle_graph(5), 3)))

    def test_degree_choosability(self):
        self.assertFalse(is_degree_choosable(complete_graph(4)))
        self.assertTrue(is_degree_choosable(complete_minus_edge(4)))
        self.assertTrue(is_degree_choosable(cycle_graph(4)))
        self.assertFalse(is_degree_choosable(cycle_graph(5)))
        self.assertFalse(is_degree_choosable(star_graph(3)))
        self.assertFalse(is_degree_choosable(complete_graph(5)))

    def test_delta_choosability(self):
        self.assertFalse(is_delta_choosable(complete_graph(4)))
        self.assertTrue(is_delta_choosable(complete_minus_edge(4)))
        self.assertTrue(is_delta_choosable(star_graph(3)))

    def test_k_2_3_is_2_choosable(self):
        g = Graph(5, [(i, j) for i in range(2) for j in range(2, 5)])
        self.assertTrue(is_f_choosable(g, constant_sizes(g, 2)))

    def test_k_3_3_is_not_2_choosable(self):
        g = Graph(6, [(i, j) for i in range(3) for j in range(3, 6)])
        self.assertFalse(is_f_choosable(g, constant_sizes(g, 2)))

    def test_bad_assignment_is_a_certificate(self):
        for g, sizes in ((cycle_graph(3), (2, 2, 2)), (complete_graph(4), (3, 3, 3, 3)),
                         (Graph(6, [(i, j) for i in range(3) for j in range(3, 6)]), (2,) * 6),
                         (Graph(5, [(0, 1), (1, 2), (2, 0), (3, 4)]), (2, 2, 2, 1, 3))):
            bad = find_bad_assignment(g, sizes)
            self.assertIsNotNone(bad)
            self.assertEqual(bad.sizes, sizes)
            self.assertIsNone(find_list_coloring(g, bad))

    def test_path_with_unit_ends(self):
        bad = find_bad_assignment(path_graph(3), (1, 2, 1))
        self.assertIsNone(find_list_coloring(path_graph(3), bad))
        self.assertTrue(is_f_choosable(path_graph(3), (1, 3, 1)))

    def test_isolated_vertex_rejected(self):
        with self.assertRaises(DomainError):
            is_degree_choosable(Graph(2))
        with self.assertRaises(DomainError):
            is_delta_choosable(Graph(2))

    def test_bad_sizes(self):
        with self.assertRaises(PreconditionError):
            is_f_choosable(path_graph(3), (1, 0, 1))
        with self.assertRaises(PreconditionError):
            is_f_choosable(path_graph(3), (1, 1))

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            is_f_choosable(path_graph(7), (1,) * 7)
        with self.assertRaises(CapacityError):
            is_degree_choosable(complete_graph(6))

    def test_list_total_bound_follows_settings(self):
        before = settings.get("capacity.choosability_list_total")
        try:
            settings.set("capacity.choosability_list_total", 20)
            self.assertFalse(is_degree_choosable(complete_graph(5)))
            settings.set("capacity.choosability_list_total", 16)
            with self.assertRaises(CapacityError):
                is_degree_choosable(complete_graph(5))
            self.assertTrue(is_f_choosable(cycle_graph(4), (2,) * 4))
        finally:
            settings.set("capacity.choosability_list_total", before)

    def test_orientation_lists(self):
        g = complete_minus_edge(4)
        sizes = indegree_sizes(build_brooks_orientation(g).orientation)
        self.assertTrue(all(s <= d for s, d in zip(sizes, degree_sizes(g))))
        self.assertTrue(is_f_choosable(g, sizes))

    def test_pruned_matches_audit_on_three_vertices(self):
        for g in atlas_graphs(1, 3, connected=None):
            for sizes in product((1, 2), repeat=g.vertex_count):
                self.assertEqual(is_f_choosable(g, sizes),
                                 is_f_choosable(g, sizes, symmetry_pruning=False), (g.edges, sizes))

    def test_pruned_matches_audit_on_four_vertices(self):
        for g in atlas_graphs(4, 4, connected=True):
            for sizes in product((1, 2), repeat=4):
                if sum(sizes) > 6:
                    continue
                self.assertEqual(is_f_choosable(g, sizes),
                                 is_f_choosable(g, sizes, symmetry_pruning=False), (g.edges, sizes))

    def test_audit_capacity(self):
        with self.assertRaises(CapacityError):
            is_f_choosable(cycle_graph(6), (2,) * 6, symmetry_pruning=False)


class TestRandomTrials(unittest.TestCase):
    def test_non_gallai_graph_never_fails(self):
        report = random_degree_list_trial(complete_minus_edge(4), 5, 200, seed=1)
        self.assertEqual(report.failure_count, 0)
        self.assertTrue(report.theorem_applies)
        self.assertFalse(report.fatal)

    def test_gallai_tree_with_tight_palette_fails(self):
        report = random_degree_list_trial(cycle_graph(5), 2, 10, seed=0)
        self.assertEqual(report.failure_count, 10)
        self.assertFalse(report.theorem_applies)
        self.assertFalse(report.fatal)

    def test_same_seed_same_report(self):
        a = random_degree_list_trial(complete_graph(4), 4, 50, seed=9)
        b = random_degree_list_trial(complete_graph(4), 4, 50, seed=9)
        self.assertEqual(a, b)
        self.assertEqual(a.to_dict(), b.to_dict())

    def test_delta_rule(self):
        report = random_degree_list_trial(star_graph(3), 4, 50, seed=2, rule=DELTA_RULE)
        self.assertEqual(report.sizes, (3, 3, 3, 3))
        self.assertTrue(report.theorem_applies)
        self.assertEqual(report.failure_count, 0)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            random_degree_list_trial(Graph(4, [(0, 1), (2, 3)]), 3, 1, seed=0)
        with self.assertRaises(PreconditionError):
            random_degree_list_trial(cycle_graph(4), 1, 1, seed=0)
        with self.assertRaises(PreconditionError):
            random_degree_list_trial(cycle_graph(4), 3, 1, seed=0, rule="triple")
        with self.assertRaises(DomainError):
            random_degree_list_trial(Graph(1), 3, 1, seed=0)


if __name__ == '__main__':
    unittest.main()
