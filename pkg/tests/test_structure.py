import sys
import os
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import networkx as nx
from hypothesis import assume, given, settings as hyp_settings

from core.errors import GallaiTreeError, InvariantViolation, PreconditionError
from core.generators import (
    complete_graph, complete_minus_edge, cycle_graph, labeled_graphs, named_graph, path_graph, petersen_graph,
    star_graph,
)
from core.graph import Graph, induced_subgraph, is_connected
from core.structure import (
    COMPLETE, EVEN_CYCLE, ODD_CYCLE, OTHER, VERTEX, CycleWitness, block_decomposition, canonical_cycle,
    classify_block, find_witness_cycle, gallai_report, is_complete_or_odd_cycle, is_gallai_tree,
    spanning_ordering,
)
from graph_strategies import graphs

BOWTIE = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


class TestBlocks(unittest.TestCase):
    def test_bowtie(self):
        d = block_decomposition(BOWTIE)
        self.assertEqual(d.blocks, ((0, 1, 2), (2, 3, 4)))
        self.assertEqual(d.cut_vertices, (2,))

    def test_cycle_is_one_block(self):
        d = block_decomposition(cycle_graph(4))
        self.assertEqual(d.blocks, ((0, 1, 2, 3),))
        self.assertEqual(d.cut_vertices, ())

    def test_path_has_bridge_blocks(self):
        d = block_decomposition(path_graph(4))
        self.assertEqual(len(d.blocks), 3)
        self.assertEqual(d.cut_vertices, (1, 2))

    def test_single_vertex(self):
        self.assertEqual(block_decomposition(Graph(1)).blocks, ((0,),))

    def test_block_kinds(self):
        self.assertEqual(classify_block(Graph(1), (0,)), VERTEX)
        self.assertEqual(classify_block(path_graph(2), (0, 1)), COMPLETE)
        self.assertEqual(classify_block(cycle_graph(5), tuple(range(5))), ODD_CYCLE)
        self.assertEqual(classify_block(cycle_graph(6), tuple(range(6))), EVEN_CYCLE)
        self.assertEqual(classify_block(complete_minus_edge(4), (0, 1, 2, 3)), OTHER)


class TestGallaiTree(unittest.TestCase):
    def test_examples(self):
        self.assertTrue(is_gallai_tree(complete_graph(4)))
        self.assertTrue(is_gallai_tree(cycle_graph(5)))
        self.assertFalse(is_gallai_tree(cycle_graph(4)))
        self.assertFalse(is_gallai_tree(complete_minus_edge(4)))

    def test_trees_and_bowtie(self):
        self.assertTrue(is_gallai_tree(path_graph(5)))
        self.assertTrue(is_gallai_tree(star_graph(3)))
        self.assertTrue(is_gallai_tree(BOWTIE))
        self.assertTrue(is_gallai_tree(Graph(1)))

    def test_disconnected_rejected(self):
        with self.assertRaises(PreconditionError):
            is_gallai_tree(Graph(4, [(0, 1), (2, 3)]))

    def test_report_reason(self):
        report = gallai_report(cycle_graph(5))
        self.assertEqual(report.reason, "single odd-cycle block")
        self.assertEqual(report.to_dict()["blocks"], [{"vertices": [0, 1, 2, 3, 4], "kind": ODD_CYCLE}])
        self.assertIn("even-cycle", gallai_report(cycle_graph(6)).reason)

    def test_matches_block_by_block_check(self):
        for n in range(1, 7):
            for g in labeled_graphs(n, connected=True):
                nx_graph = g.to_networkx()
                expected = True
                for block in nx.biconnected_components(nx_graph):
                    k = len(block)
                    m = nx_graph.subgraph(block).number_of_edges()
                    if m != k * (k - 1) // 2 and not (m == k and k % 2 == 1):
                        expected = False
                self.assertEqual(is_gallai_tree(g), expected, g.edges)

    def test_brooks_exceptions(self):
        self.assertTrue(is_complete_or_odd_cycle(complete_graph(4)))
        self.assertTrue(is_complete_or_odd_cycle(cycle_graph(3)))
        self.assertTrue(is_complete_or_odd_cycle(cycle_graph(7)))
        self.assertFalse(is_complete_or_odd_cycle(cycle_graph(4)))
        self.assertFalse(is_complete_or_odd_cycle(petersen_graph()))
        self.assertFalse(is_complete_or_odd_cycle(BOWTIE))


class TestWitness(unittest.TestCase):
    def test_c4_is_its_own_witness(self):
        w = find_witness_cycle(cycle_graph(4))
        self.assertEqual(w.cycle, (0, 1, 2, 3))
        self.assertIsNone(w.chord)

    def test_k4_minus_edge_has_one_chord(self):
        w = find_witness_cycle(complete_minus_edge(4))
        self.assertEqual(w.cycle, (0, 1, 2, 3))
        self.assertEqual(w.chord, (1, 3))

    def test_petersen_induced_even_cycle(self):
        g = petersen_graph()
        w = find_witness_cycle(g)
        self.assertEqual(w.length, 6)
        self.assertIsNone(w.chord)
        sub = induced_subgraph(g, w.cycle)
        self.assertEqual(sub.edge_count, 6)
        self.assertTrue(all(d == 2 for d in sub.degrees))

    def test_gallai_tree_rejected(self):
        for g in (complete_graph(4), cycle_graph(5), BOWTIE):
            with self.assertRaises(GallaiTreeError):
                find_witness_cycle(g)

    def test_witness_inside_larger_graph(self):
        # Triangle 0-1-2 hanging off the 4-cycle 2-3-4-5
        g = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 2)])
        w = find_witness_cycle(g)
        self.assertEqual(w.cycle, (2, 3, 4, 5))

    def test_repeated_calls_agree(self):
        for g in (petersen_graph(), complete_minus_edge(5), named_graph("W5"), named_graph("K3,3")):
            first = find_witness_cycle(g)
            self.assertEqual(find_witness_cycle(g), first)
            rebuilt = Graph(g.vertex_count, list(reversed(g.edges)))
            self.assertEqual(find_witness_cycle(rebuilt), first)

    def test_validate_rejects_bad_cycles(self):
        c4 = cycle_graph(4)
        with self.assertRaises(InvariantViolation):
            CycleWitness((0, 1, 2)).validate(complete_graph(3))
        with self.assertRaises(InvariantViolation):
            CycleWitness((0, 2, 1, 3)).validate(c4)
        with self.assertRaises(InvariantViolation):
            CycleWitness((0, 1, 2, 3), (0, 2)).validate(c4)
        with self.assertRaises(InvariantViolation):
            CycleWitness((0, 1, 2, 3)).validate(complete_graph(4))

    def test_canonical_cycle(self):
        self.assertEqual(canonical_cycle((2, 1, 0, 3)), (0, 1, 2, 3))
        self.assertEqual(canonical_cycle((3, 0, 1, 2)), (0, 1, 2, 3))

    @given(graphs(min_vertices=4, max_vertices=8))
    @hyp_settings(max_examples=60, deadline=None)
    def test_witness_property(self, g):
        assume(is_connected(g) and not is_gallai_tree(g))
        w = find_witness_cycle(g)
        w.validate(g)
        self.assertEqual(w.length % 2, 0)
        self.assertLessEqual(g.edges_within(w.vertex_mask), w.length + 1)


class TestOrdering(unittest.TestCase):
    def test_path(self):
        self.assertEqual(spanning_ordering(path_graph(3), 0).order, (0, 1, 2))

    def test_star_from_center(self):
        ordering = spanning_ordering(star_graph(4), 4)
        self.assertEqual(ordering.order, (4, 0, 1, 2, 3))
        self.assertEqual(ordering.parents, (4, 4, 4, 4, -1))

    def test_invalid_root(self):
        with self.assertRaises(PreconditionError):
            spanning_ordering(path_graph(3), 5)

    def test_disconnected(self):
        with self.assertRaises(PreconditionError):
            spanning_ordering(Graph(3, [(0, 1)]), 0)

    def test_single_vertex(self):
        self.assertEqual(spanning_ordering(Graph(1), 0).order, (0,))

    def test_predecessor_property_check(self):
        ordering = spanning_ordering(path_graph(4), 0)
        self.assertTrue(ordering.satisfies_predecessor_property(path_graph(4)))
        # Path 0-3-1-2: vertex 1 comes before both of its neighbours
        self.assertFalse(ordering.satisfies_predecessor_property(Graph(4, [(0, 3), (3, 1), (1, 2)])))

    @given(graphs(min_vertices=1, max_vertices=9))
    @hyp_settings(max_examples=60, deadline=None)
    def test_every_root_works(self, g):
        assume(is_connected(g))
        for root in g.vertices:
            ordering = spanning_ordering(g, root)
            self.assertEqual(ordering.order[0], root)
            self.assertTrue(ordering.satisfies_predecessor_property(g))


if __name__ == '__main__':
    unittest.main()
