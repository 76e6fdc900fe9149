# core package
from core.errors import (
    BrooksError, GraphFormatError, GraphValidationError, PreconditionError, DomainError,
    GallaiTreeError, CapacityError, IllegalMoveError, InvariantViolation, GraphFormatWarning,
)
from core.graph import (
    Graph, Orientation, parse_graph, parse_edge_list, parse_dimacs, parse_arc_list, load_graph,
    serialize, induced_subgraph, contract_set, is_connected,
)
from core.structure import (
    CycleWitness, VertexOrdering, GallaiReport, block_decomposition, gallai_report,
    is_gallai_tree, find_witness_cycle, spanning_ordering,
)
from core.at_engine import (
    EulerianCensus, OrientationReport, eulerian_census, verify_at_condition,
    polynomial_coefficient, build_brooks_orientation,
)
from core.coloring import (
    ListAssignment, Coloring, TrialReport, find_list_coloring, find_bad_assignment,
    is_f_choosable, is_degree_choosable, is_delta_choosable, random_degree_list_trial,
)
from core.paint_game import (
    GameState, PaintMove, CorrectMove, PaintSolver, initial_state, apply_round, correct_wins,
    is_k_paintable, is_degree_paintable, is_delta_paintable, clear_solvers,
)

__all__ = [
    "BrooksError", "GraphFormatError", "GraphValidationError", "PreconditionError", "DomainError",
    "GallaiTreeError", "CapacityError", "IllegalMoveError", "InvariantViolation", "GraphFormatWarning",
    "Graph", "Orientation", "parse_graph", "parse_edge_list", "parse_dimacs", "parse_arc_list",
    "load_graph", "serialize", "induced_subgraph", "contract_set", "is_connected",
    "CycleWitness", "VertexOrdering", "GallaiReport", "block_decomposition", "gallai_report",
    "is_gallai_tree", "find_witness_cycle", "spanning_ordering",
    "EulerianCensus", "OrientationReport", "eulerian_census", "verify_at_condition",
    "polynomial_coefficient", "build_brooks_orientation",
    "ListAssignment", "Coloring", "TrialReport", "find_list_coloring", "find_bad_assignment",
    "is_f_choosable", "is_degree_choosable", "is_delta_choosable", "random_degree_list_trial",
    "GameState", "PaintMove", "CorrectMove", "PaintSolver", "initial_state", "apply_round",
    "correct_wins", "is_k_paintable", "is_degree_paintable", "is_delta_paintable", "clear_solvers",
]
