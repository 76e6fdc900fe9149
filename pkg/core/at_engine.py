"""
Alon-Tarsi quantities of an orientation: even/odd Eulerian subgraph counts, the
graph-polynomial coefficient oracle, and the orientation built from a witness
cycle in which every vertex has an out-going edge and the counts differ.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import CENSUS_CHUNK_SIZE, CENSUS_MAX_EDGES, POLYNOMIAL_MAX_EDGES
from core.console import log
from core.errors import InvariantViolation, PreconditionError, check_capacity
from core.graph import Graph, Orientation, contract_set, require_connected
from core.settings_store import settings
from core.structure import CycleWitness, VertexOrdering, find_witness_cycle, spanning_ordering

EXHAUSTIVE = "exhaustive"
FRONTIER = "frontier"


@dataclass(frozen=True)
class EulerianCensus:
    """Counts of spanning edge subsets with in-degree = out-degree everywhere."""

    even_count: int
    odd_count: int
    edge_subsets_examined: int

    @property
    def difference(self) -> int:
        return self.even_count - self.odd_count

    def to_dict(self) -> dict:
        return {
            "even": self.even_count,
            "odd": self.odd_count,
            "difference": self.difference,
            "edge_subsets_examined": self.edge_subsets_examined,
        }


@dataclass(frozen=True)
class OrientationReport:
    orientation: Orientation
    witness: CycleWitness
    ordering: VertexOrdering
    contracted_ordering: VertexOrdering
    census: EulerianCensus
    expected_census: Tuple[int, int]

    @property
    def min_out_degree(self) -> int:
        return self.orientation.min_out_degree

    @property
    def in_degree_per_vertex(self) -> Tuple[int, ...]:
        return self.orientation.in_degrees

    @property
    def census_matches_expected(self) -> bool:
        return (self.census.even_count, self.census.odd_count) == self.expected_census

    def to_dict(self) -> dict:
        return {
            "witness": self.witness.to_dict(),
            "ordering": self.ordering.to_dict(),
            "arcs": [list(arc) for arc in self.orientation.arcs],
            "in_degrees": list(self.in_degree_per_vertex),
            "out_degrees": list(self.orientation.out_degrees),
            "min_out_degree": self.min_out_degree,
            "census": self.census.to_dict(),
            "expected_census": list(self.expected_census),
        }


# === Eulerian census ===

def _census_exhaustive(orientation: Orientation, chunk_size: int) -> Tuple[int, int]:
    """Every edge subset, vectorised in chunks of subset bitmasks."""
    m = orientation.edge_count
    if m == 0:
        return 1, 0
    incidence = np.zeros((m, orientation.base.vertex_count), dtype=np.int16)
    for i, (tail, head) in enumerate(orientation.arcs):
        incidence[i, tail] += 1
        incidence[i, head] -= 1
    shifts = np.arange(m, dtype=np.int64)

    even = odd = 0
    total = 1 << m
    for start in range(0, total, chunk_size):
        masks = np.arange(start, min(start + chunk_size, total), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int16)
        balanced = ~(bits @ incidence).any(axis=1)
        odd_size = (bits.sum(axis=1) & 1).astype(bool)
        even += int(np.count_nonzero(balanced & ~odd_size))
        odd += int(np.count_nonzero(balanced & odd_size))
    return even, odd


def _census_frontier(orientation: Orientation) -> Tuple[int, int]:
    """Dynamic programme over edges keyed by (vertex balances, parity)."""
    n = orientation.base.vertex_count
    last_use: Dict[int, int] = {}
    for i, (tail, head) in enumerate(orientation.arcs):
        last_use[tail] = i
        last_use[head] = i

    states: Dict[Tuple[Tuple[int, ...], int], int] = {((0,) * n, 0): 1}
    for i, (tail, head) in enumerate(orientation.arcs):
        closing = [v for v in (tail, head) if last_use[v] == i]
        nxt: Dict[Tuple[Tuple[int, ...], int], int] = defaultdict(int)
        for (balance, parity), count in states.items():
            taken = list(balance)
            taken[tail] += 1
            taken[head] -= 1
            for candidate, cand_parity in ((balance, parity), (tuple(taken), parity ^ 1)):
                # A vertex seen for the last time must be balanced now
                if all(candidate[v] == 0 for v in closing):
                    nxt[(candidate, cand_parity)] += count
        states = nxt

    zero = (0,) * n
    return states.get((zero, 0), 0), states.get((zero, 1), 0)


def eulerian_census(orientation: Orientation, method: str = EXHAUSTIVE) -> EulerianCensus:
    """
    Exact even/odd Eulerian subgraph counts over all 2^m edge subsets.
    The empty subset always counts as even.
    """
    m = orientation.edge_count
    check_capacity("census edge count", m, settings.get("capacity.census_edges", CENSUS_MAX_EDGES))
    if method == EXHAUSTIVE:
        even, odd = _census_exhaustive(orientation, settings.get("census.chunk_size", CENSUS_CHUNK_SIZE))
    elif method == FRONTIER:
        even, odd = _census_frontier(orientation)
    else:
        raise PreconditionError(f"unknown census method {method!r}")
    census = EulerianCensus(even, odd, 1 << m)
    log("Census", f"{m} edges: EE={even} OE={odd}")
    return census


def verify_at_condition(orientation: Orientation) -> bool:
    """True iff the even and odd Eulerian subgraph counts differ."""
    return eulerian_census(orientation).difference != 0


# === Graph polynomial ===

def expand_graph_polynomial(orientation: Orientation,
                            bound: Optional[Tuple[int, ...]] = None) -> Dict[Tuple[int, ...], int]:
    """
    Expand prod over arcs (tail, head) of (x_tail - x_head) into
    {exponent vector: coefficient}. With `bound`, terms whose exponents
    exceed it are dropped as they appear (they cannot shrink again).
    """
    check_capacity("polynomial edge count", orientation.edge_count,
                   settings.get("capacity.polynomial_edges", POLYNOMIAL_MAX_EDGES))
    n = orientation.base.vertex_count
    terms: Dict[Tuple[int, ...], int] = {(0,) * n: 1}
    for tail, head in orientation.arcs:
        nxt: Dict[Tuple[int, ...], int] = defaultdict(int)
        for exponents, coefficient in terms.items():
            for v, sign in ((tail, 1), (head, -1)):
                if bound is not None and exponents[v] >= bound[v]:
                    continue
                raised = list(exponents)
                raised[v] += 1
                nxt[tuple(raised)] += sign * coefficient
        terms = {e: c for e, c in nxt.items() if c}
    return terms


def polynomial_coefficient(orientation: Orientation) -> int:
    """Coefficient of prod_v x_v^(in-degree of v) in the graph polynomial."""
    target = orientation.in_degrees
    coefficient = expand_graph_polynomial(orientation, bound=target).get(target, 0)
    log("Coefficient", f"{orientation.edge_count} edges: coefficient {coefficient}")
    return coefficient


# === Brooks orientation ===

def expected_census(witness: CycleWitness) -> Tuple[int, int]:
    """
    (EE, OE) of the witness subgraph: the empty set and the cycle are even;
    a chord closes one more directed cycle through the arc it spans.
    """
    if witness.chord is None:
        return 2, 0
    i, j = sorted(witness.cycle.index(v) for v in witness.chord)
    return (3, 0) if (j - i + 1) % 2 == 0 else (2, 1)


def _ordering_from(graph: Graph, order: List[int]) -> VertexOrdering:
    parents = [-1] * graph.vertex_count
    placed = 0
    for v in order:
        earlier = graph.adjacency[v] & placed
        if earlier:
            parents[v] = (earlier & -earlier).bit_length() - 1
        placed |= 1 << v
    return VertexOrdering(tuple(order), order[0], tuple(parents))


def build_brooks_orientation(graph: Graph) -> OrientationReport:
    """
    Contract the witness cycle C to w, order the contracted graph from w,
    put C back in w's place, orient C cyclically and every other edge
    (the chord included) from the later vertex to the earlier one.
    """
    require_connected(graph, "build_brooks_orientation")
    witness = find_witness_cycle(graph)

    contracted, w, _ = contract_set(graph, witness.cycle)
    contracted_ordering = spanning_ordering(contracted, w)
    order = list(witness.cycle) + [contracted.origin[x] for x in contracted_ordering.order[1:]]
    ordering = _ordering_from(graph, order)
    if not ordering.satisfies_predecessor_property(graph):
        raise InvariantViolation(f"expanded ordering {order} breaks the predecessor property")

    position = ordering.position
    cycle_arcs = set(witness.cycle_arcs())
    arcs = []
    for u, v in graph.edges:
        if (u, v) in cycle_arcs:
            arcs.append((u, v))
        elif (v, u) in cycle_arcs:
            arcs.append((v, u))
        elif position[u] > position[v]:
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    orientation = Orientation(graph, tuple(arcs))

    if orientation.min_out_degree < 1:
        bad = [v for v in graph.vertices if orientation.out_degree(v) == 0]
        raise InvariantViolation(f"vertices without an out-going arc: {bad}")

    census = eulerian_census(orientation)
    if census.difference == 0:
        raise InvariantViolation("even and odd Eulerian subgraph counts coincide")

    log("Orientation", f"witness {witness.cycle} chord {witness.chord}; census {census.to_dict()}")
    return OrientationReport(orientation, witness, ordering, contracted_ordering,
                             census, expected_census(witness))
