import sys
import os
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from hypothesis import given, settings as hyp_settings, strategies as st

from core.errors import CapacityError, DomainError, IllegalMoveError, PreconditionError
from core.generators import atlas_graphs, complete_graph, complete_minus_edge, cycle_graph, path_graph
from core.graph import Graph, to_mask
from core.paint_game import (
    CorrectMove, GameState, PaintMove, PaintSolver, apply_round, correct_wins, initial_state,
    clear_solvers, is_degree_paintable, is_delta_paintable, is_k_paintable, solver_for,
)
from graph_strategies import graphs

C4 = cycle_graph(4)


class TestRules(unittest.TestCase):
    def test_initial_state(self):
        state = initial_state(C4, 1)
        self.assertEqual(state.remaining, 0b1111)
        self.assertEqual(state.erasers, (1, 1, 1, 1))
        self.assertEqual(initial_state(Graph(1), 0).erasers, (0,))

    def test_degree_setup_for_k4_minus_edge(self):
        g = complete_minus_edge(4)
        state = initial_state(g, lambda v: g.degree(v) - 1)
        self.assertEqual(state.erasers, (1, 2, 1, 2))

    def test_negative_erasers(self):
        with self.assertRaises(PreconditionError):
            initial_state(C4, [1, 1, -1, 1])

    def test_removed_vertices_keep_no_erasers(self):
        state = GameState(C4, 0b0011, (3, 3, 3, 3))
        self.assertEqual(state.erasers, (3, 3, 0, 0))

    def test_remaining_outside_host(self):
        with self.assertRaises(PreconditionError):
            GameState(C4, 0b10000, (0, 0, 0, 0))

    def test_round_charges_unremoved_marks(self):
        state = apply_round(initial_state(C4, 1), PaintMove(to_mask([0, 1])), CorrectMove(to_mask([0])))
        self.assertEqual(state.remaining_vertices, [1, 2, 3])
        self.assertEqual(state.erasers, (0, 0, 1, 1))

    def test_independent_marks_cost_nothing(self):
        state = apply_round(initial_state(C4, 1), PaintMove(to_mask([0, 2])), CorrectMove(to_mask([0, 2])))
        self.assertEqual(state.remaining_vertices, [1, 3])
        self.assertEqual(state.erasers, (0, 1, 0, 1))

    def test_exhausted_eraser_is_a_paint_win(self):
        state = initial_state(C4, 0)
        with self.assertRaises(IllegalMoveError) as ctx:
            apply_round(state, PaintMove(to_mask([0])), CorrectMove(0))
        self.assertTrue(ctx.exception.paint_wins)

    def test_illegal_moves(self):
        state = initial_state(C4, 1)
        with self.assertRaises(IllegalMoveError):
            apply_round(state, PaintMove(0), CorrectMove(0))
        with self.assertRaises(IllegalMoveError) as ctx:
            apply_round(state, PaintMove(to_mask([0, 1])), CorrectMove(to_mask([0, 1])))
        self.assertFalse(ctx.exception.paint_wins)
        with self.assertRaises(IllegalMoveError):
            apply_round(state, PaintMove(to_mask([0])), CorrectMove(to_mask([2])))
        removed = apply_round(state, PaintMove(to_mask([0])), CorrectMove(to_mask([0])))
        with self.assertRaises(IllegalMoveError):
            apply_round(removed, PaintMove(to_mask([0])), CorrectMove(0))


class TestSolver(unittest.TestCase):
    def test_empty_board_is_a_correct_win(self):
        self.assertTrue(correct_wins(GameState(C4, 0, (0, 0, 0, 0))))

    def test_cycles_with_one_eraser(self):
        self.assertFalse(correct_wins(initial_state(cycle_graph(3), 1)))
        self.assertTrue(correct_wins(initial_state(C4, 1)))

    def test_single_vertex_without_erasers(self):
        self.assertTrue(correct_wins(initial_state(Graph(1), 0)))
        self.assertTrue(correct_wins(initial_state(Graph(1), 0), audit=True))

    def test_k_paintability(self):
        self.assertTrue(is_k_paintable(C4, 2))
        self.assertFalse(is_k_paintable(cycle_graph(3), 2))
        self.assertTrue(is_k_paintable(cycle_graph(3), 3))
        self.assertFalse(is_k_paintable(cycle_graph(5), 2))
        self.assertTrue(is_k_paintable(cycle_graph(5), 3))
        self.assertFalse(is_k_paintable(complete_graph(4), 3))
        self.assertTrue(is_k_paintable(complete_graph(4), 4))

    def test_k_must_be_positive(self):
        with self.assertRaises(PreconditionError):
            is_k_paintable(C4, 0)

    def test_degree_paintability(self):
        self.assertTrue(is_degree_paintable(complete_minus_edge(4)))
        self.assertFalse(is_degree_paintable(cycle_graph(5)))
        self.assertTrue(is_degree_paintable(C4))
        self.assertFalse(is_degree_paintable(path_graph(3)))
        with self.assertRaises(DomainError):
            is_degree_paintable(Graph(2))

    def test_delta_paintability(self):
        self.assertTrue(is_delta_paintable(complete_minus_edge(4)))
        self.assertFalse(is_delta_paintable(complete_graph(4)))
        with self.assertRaises(DomainError):
            is_delta_paintable(Graph(3))

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            is_k_paintable(path_graph(11), 2)

    def test_winning_reply(self):
        solver = PaintSolver(C4)
        state = initial_state(C4, 1)
        reply = solver.winning_reply(state, PaintMove(0b1111))
        self.assertIn(reply.removed, (to_mask([0, 2]), to_mask([1, 3])))
        self.assertIsNone(solver.winning_paint_move(state))

    def test_winning_paint_move_beats_every_reply(self):
        g = cycle_graph(3)
        solver = PaintSolver(g, audit=True)
        state = initial_state(g, 1)
        move = solver.winning_paint_move(state)
        self.assertIsNotNone(move)
        self.assertIsNone(solver.winning_reply(state, move))
        self.assertGreater(solver.states_evaluated, 0)

    def test_shared_solvers_can_be_cleared(self):
        self.assertTrue(correct_wins(initial_state(C4, 1)))
        shared = solver_for(C4, False)
        self.assertIs(solver_for(C4, False), shared)
        self.assertGreater(shared.states_evaluated, 0)
        clear_solvers()
        self.assertIsNot(solver_for(C4, False), shared)
        self.assertEqual(solver_for(C4, False).states_evaluated, 0)

    def test_solver_rejects_foreign_state(self):
        with self.assertRaises(PreconditionError):
            PaintSolver(C4).correct_wins(initial_state(cycle_graph(5), 1))

    def test_restricted_matches_audit(self):
        for g in atlas_graphs(1, 4, connected=True):
            for erasers in ([0] * g.vertex_count, [1] * g.vertex_count, [max(d - 1, 0) for d in g.degrees]):
                state = initial_state(g, erasers)
                self.assertEqual(PaintSolver(g).correct_wins(state),
                                 PaintSolver(g, audit=True).correct_wins(state), (g.edges, erasers))

    @given(graphs(min_vertices=1, max_vertices=5), st.data())
    @hyp_settings(max_examples=40, deadline=None)
    def test_more_erasers_never_hurt(self, g, data):
        erasers = data.draw(st.lists(st.integers(0, 2), min_size=g.vertex_count, max_size=g.vertex_count))
        bump = data.draw(st.lists(st.integers(0, 1), min_size=g.vertex_count, max_size=g.vertex_count))
        if correct_wins(initial_state(g, erasers)):
            self.assertTrue(correct_wins(initial_state(g, [e + b for e, b in zip(erasers, bump)])))


if __name__ == '__main__':
    unittest.main()
