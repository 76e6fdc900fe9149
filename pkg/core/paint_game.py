"""
The Mr. Paint / Mrs. Correct game and an exact memoized solver.

Each round Paint marks a nonempty set of remaining vertices; Correct removes an
independent subset of the marked vertices and pays one eraser for every other
marked vertex. Correct wins when every vertex is removed; Paint wins when a
marked vertex cannot be paid for.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from config import PAINT_MAX_VERTICES
from core.console import log
from core.errors import DomainError, IllegalMoveError, PreconditionError, check_capacity
from core.graph import Graph, members, popcount
from core.settings_store import settings

EraserSpec = Union[int, Sequence[int], Callable[[int], int]]


@dataclass(frozen=True)
class GameState:
    host: Graph
    remaining: int
    erasers: Tuple[int, ...]

    def __post_init__(self):
        if self.remaining & ~self.host.all_mask:
            raise PreconditionError("remaining vertices must belong to the host graph")
        erasers = tuple(int(e) for e in self.erasers)
        if len(erasers) != self.host.vertex_count:
            raise PreconditionError(f"expected {self.host.vertex_count} eraser counts, got {len(erasers)}")
        if any(e < 0 for e in erasers):
            raise PreconditionError(f"eraser counts must be nonnegative: {list(erasers)}")
        # Removed vertices keep no erasers
        erasers = tuple(e if self.remaining >> v & 1 else 0 for v, e in enumerate(erasers))
        object.__setattr__(self, "erasers", erasers)

    @property
    def remaining_vertices(self) -> List[int]:
        return members(self.remaining)

    @property
    def is_over(self) -> bool:
        return self.remaining == 0

    def to_dict(self) -> dict:
        return {
            "remaining": self.remaining_vertices,
            "erasers": {str(v): self.erasers[v] for v in self.remaining_vertices},
        }


@dataclass(frozen=True)
class PaintMove:
    marked: int


@dataclass(frozen=True)
class CorrectMove:
    removed: int


# === Rules ===

def initial_state(graph: Graph, erasers: EraserSpec) -> GameState:
    """Every vertex remaining; `erasers` is a constant, a sequence or a function of v."""
    if callable(erasers):
        counts = [erasers(v) for v in graph.vertices]
    elif isinstance(erasers, int):
        counts = [erasers] * graph.vertex_count
    else:
        counts = list(erasers)
    return GameState(graph, graph.all_mask, tuple(counts))


def check_paint_move(state: GameState, move: PaintMove):
    if move.marked == 0:
        raise IllegalMoveError("Paint must mark at least one vertex")
    if move.marked & ~state.remaining:
        raise IllegalMoveError(f"marked vertices {members(move.marked & ~state.remaining)} are already removed")


def check_correct_move(state: GameState, paint: PaintMove, correct: CorrectMove):
    if correct.removed & ~paint.marked:
        raise IllegalMoveError(f"vertices {members(correct.removed & ~paint.marked)} were not marked")
    if state.host.edges_within(correct.removed):
        raise IllegalMoveError(f"removed set {members(correct.removed)} is not independent")
    broke = [v for v in members(paint.marked & ~correct.removed) if state.erasers[v] == 0]
    if broke:
        raise IllegalMoveError(f"vertices {broke} have no eraser left", paint_wins=True)


def apply_round(state: GameState, paint: PaintMove, correct: CorrectMove) -> GameState:
    check_paint_move(state, paint)
    check_correct_move(state, paint, correct)
    charged = paint.marked & ~correct.removed
    erasers = tuple(e - (charged >> v & 1) for v, e in enumerate(state.erasers))
    return GameState(state.host, state.remaining & ~correct.removed, erasers)


# === Solver ===

class PaintSolver:
    """
    Exact minimax over (remaining, erasers) for one host graph.

    Restricted mode answers Correct only with maximal independent subsets of
    the marked set, caps eraser counts at the number of remaining vertices,
    and drops remaining vertices whose erasers reach their remaining degree
    (such a vertex can always be removed once its neighbours are gone).
    Audit mode tries every independent subset, the empty one included,
    and keeps states as they are.
    """

    def __init__(self, host: Graph, audit: bool = False):
        self.host = host
        self.audit = audit
        self.states_evaluated = 0
        self._memo: Dict[Tuple[int, Tuple[int, ...]], bool] = {}
        self._paint_moves: Dict[int, List[int]] = {}
        self._replies: Dict[int, List[int]] = {}

    # --- Move generation ---

    def paint_moves(self, remaining: int) -> List[int]:
        """All nonempty subsets of `remaining`, larger sets first."""
        if remaining not in self._paint_moves:
            subsets = []
            sub = remaining
            while sub:
                subsets.append(sub)
                sub = (sub - 1) & remaining
            subsets.sort(key=lambda s: (-popcount(s), s))
            self._paint_moves[remaining] = subsets
        return self._paint_moves[remaining]

    def correct_replies(self, marked: int) -> List[int]:
        """Candidate removal sets for a marked set, before eraser legality."""
        if marked not in self._replies:
            if self.audit:
                replies = []
                sub = marked
                while True:
                    if self.host.edges_within(sub) == 0:
                        replies.append(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & marked
            else:
                marked_graph = self.host.nx_view.subgraph(members(marked))
                replies = [sum(1 << v for v in clique)
                           for clique in nx.find_cliques(nx.complement(marked_graph))]
            replies.sort(key=lambda s: (-popcount(s), s))
            self._replies[marked] = replies
        return self._replies[marked]

    def _legal_replies(self, erasers: Tuple[int, ...], marked: int) -> List[int]:
        return [removed for removed in self.correct_replies(marked)
                if all(erasers[v] > 0 for v in members(marked & ~removed))]

    # --- Values ---

    def _normalize(self, remaining: int, erasers: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
        if not self.audit:
            adjacency = self.host.adjacency
            shrinking = True
            while shrinking:
                shrinking = False
                for v in members(remaining):
                    if erasers[v] >= popcount(adjacency[v] & remaining):
                        remaining &= ~(1 << v)
                        shrinking = True
            cap = popcount(remaining)
            erasers = tuple(min(e, cap) if remaining >> v & 1 else 0 for v, e in enumerate(erasers))
        return remaining, erasers

    def _after(self, remaining: int, erasers: Tuple[int, ...], marked: int, removed: int):
        charged = marked & ~removed
        erasers = tuple(
            0 if removed >> v & 1 else e - (charged >> v & 1) for v, e in enumerate(erasers)
        )
        return self._normalize(remaining & ~removed, erasers)

    def _wins(self, remaining: int, erasers: Tuple[int, ...]) -> bool:
        if remaining == 0:
            return True
        key = (remaining, erasers)
        if key in self._memo:
            return self._memo[key]
        self.states_evaluated += 1

        result = True
        for marked in self.paint_moves(remaining):
            if not any(self._wins(*self._after(remaining, erasers, marked, removed))
                       for removed in self._legal_replies(erasers, marked)):
                result = False
                break
        self._memo[key] = result
        return result

    def _check(self, state: GameState):
        if state.host != self.host:
            raise PreconditionError("state belongs to a different host graph")
        check_capacity("paint game remaining vertices", popcount(state.remaining),
                       settings.get("capacity.paint_vertices", PAINT_MAX_VERTICES))

    def correct_wins(self, state: GameState) -> bool:
        """True iff Correct has a strategy that removes every remaining vertex."""
        self._check(state)
        return self._wins(*self._normalize(state.remaining, state.erasers))

    def winning_reply(self, state: GameState, paint: PaintMove) -> Optional[CorrectMove]:
        """A legal Correct reply after which Correct still wins, or None."""
        self._check(state)
        check_paint_move(state, paint)
        for removed in self._legal_replies(state.erasers, paint.marked):
            if self._wins(*self._after(state.remaining, state.erasers, paint.marked, removed)):
                return CorrectMove(removed)
        return None

    def winning_paint_move(self, state: GameState) -> Optional[PaintMove]:
        """A Paint move that beats every Correct reply, or None."""
        self._check(state)
        for marked in self.paint_moves(state.remaining):
            if not any(self._wins(*self._after(state.remaining, state.erasers, marked, removed))
                       for removed in self._legal_replies(state.erasers, marked)):
                return PaintMove(marked)
        return None


@lru_cache(maxsize=8)
def solver_for(host: Graph, audit: bool = False) -> PaintSolver:
    """Shared solver per host so repeated queries reuse one memo."""
    return PaintSolver(host, audit)


def clear_solvers():
    """Drop every shared solver and its memo."""
    solver_for.cache_clear()


def correct_wins(state: GameState, audit: bool = False) -> bool:
    solver = solver_for(state.host, bool(audit))
    result = solver.correct_wins(state)
    log("Paint", f"erasers {list(state.erasers)}: {'Correct' if result else 'Paint'} wins "
                 f"({solver.states_evaluated} states evaluated)")
    return result


# === Paintability predicates ===

def is_k_paintable(graph: Graph, k: int, audit: bool = False) -> bool:
    """k-paintable means Correct wins with k - 1 erasers on every vertex."""
    if k <= 0:
        raise PreconditionError(f"paintability number must be positive, got {k}")
    return correct_wins(initial_state(graph, k - 1), audit)


def is_degree_paintable(graph: Graph, audit: bool = False) -> bool:
    isolated = [v for v in graph.vertices if graph.degree(v) == 0]
    if isolated or graph.vertex_count == 0:
        raise DomainError(f"degree erasers need minimum degree >= 1; isolated vertices {isolated}")
    return correct_wins(initial_state(graph, [d - 1 for d in graph.degrees]), audit)


def is_delta_paintable(graph: Graph, audit: bool = False) -> bool:
    if graph.max_degree < 1:
        raise DomainError("Δ-paintability needs at least one edge")
    return correct_wins(initial_state(graph, graph.max_degree - 1), audit)
