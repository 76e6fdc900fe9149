"""
Block structure of a graph, Gallai-tree recognition, the induced even-cycle
witness (at most one chord) and the predecessor ordering of a spanning tree.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from core.console import log
from core.errors import GallaiTreeError, InvariantViolation, PreconditionError
from core.graph import Edge, Graph, members, popcount, require_connected, to_mask

# Block kinds
VERTEX = "vertex"
COMPLETE = "complete"
ODD_CYCLE = "odd_cycle"
EVEN_CYCLE = "even_cycle"
OTHER = "other"

GALLAI_KINDS = frozenset({VERTEX, COMPLETE, ODD_CYCLE})

_KIND_TEXT = {
    VERTEX: "single-vertex",
    COMPLETE: "complete",
    ODD_CYCLE: "odd-cycle",
    EVEN_CYCLE: "even-cycle",
    OTHER: "non-complete, non-cycle",
}


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (sorted vertex tuples, sorted by smallest vertex) and cut vertices."""

    blocks: Tuple[Tuple[int, ...], ...]
    cut_vertices: Tuple[int, ...]


@dataclass(frozen=True)
class GallaiReport:
    is_gallai_tree: bool
    blocks: Tuple[Tuple[int, ...], ...]
    kinds: Tuple[str, ...]
    cut_vertices: Tuple[int, ...]
    reason: str

    def to_dict(self) -> dict:
        return {
            "gallai_tree": self.is_gallai_tree,
            "reason": self.reason,
            "blocks": [{"vertices": list(b), "kind": k} for b, k in zip(self.blocks, self.kinds)],
            "cut_vertices": list(self.cut_vertices),
        }


@dataclass(frozen=True)
class CycleWitness:
    """Even cycle v_1..v_l (l >= 4) inducing at most one chord."""

    cycle: Tuple[int, ...]
    chord: Optional[Edge] = None

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def has_chord(self) -> bool:
        return self.chord is not None

    @property
    def vertex_mask(self) -> int:
        return to_mask(self.cycle)

    def cycle_arcs(self) -> List[Edge]:
        """Cycle edges in cyclic direction v_i -> v_(i+1), closing with v_l -> v_1."""
        c = self.cycle
        return [(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    def validate(self, graph: Graph):
        """Raise InvariantViolation unless this is an induced even cycle with <= 1 chord."""
        c = self.cycle
        l = len(c)
        if l < 4 or l % 2:
            raise InvariantViolation(f"witness cycle has length {l}; need an even length >= 4")
        if len(set(c)) != l or any(not 0 <= v < graph.vertex_count for v in c):
            raise InvariantViolation(f"witness cycle {c} repeats or leaves the vertex range")
        for u, v in self.cycle_arcs():
            if not graph.has_edge(u, v):
                raise InvariantViolation(f"witness cycle {c}: {u} and {v} are not adjacent")
        induced = graph.edges_within(self.vertex_mask)
        if self.chord is None:
            if induced != l:
                raise InvariantViolation(f"witness cycle {c} induces {induced} edges, expected {l}")
            return
        a, b = self.chord
        consecutive = {frozenset(arc) for arc in self.cycle_arcs()}
        if a not in c or b not in c or frozenset((a, b)) in consecutive or not graph.has_edge(a, b):
            raise InvariantViolation(f"{self.chord} is not a chord of {c}")
        if induced != l + 1:
            raise InvariantViolation(f"witness cycle {c} induces {induced} edges, expected {l + 1}")

    def to_dict(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "length": self.length,
            "chord": list(self.chord) if self.chord else None,
        }


@dataclass(frozen=True)
class VertexOrdering:
    """Vertex permutation in which every vertex but the root follows a neighbour."""

    order: Tuple[int, ...]
    root: int
    parents: Tuple[int, ...] = ()  # spanning-tree parent per vertex, -1 at the root

    @cached_property
    def position(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def satisfies_predecessor_property(self, graph: Graph) -> bool:
        if sorted(self.order) != list(graph.vertices) or not self.order or self.order[0] != self.root:
            return False
        seen = 0
        for v in self.order:
            if v != self.root and not graph.adjacency[v] & seen:
                return False
            seen |= 1 << v
        return True

    def to_dict(self) -> dict:
        return {"root": self.root, "order": list(self.order)}


# === Blocks ===

def block_decomposition(graph: Graph) -> BlockDecomposition:
    g = graph.nx_view
    blocks = [tuple(sorted(component)) for component in nx.biconnected_components(g)]
    blocks += [(v,) for v in graph.vertices if graph.degree(v) == 0]
    cut_vertices = tuple(sorted(nx.articulation_points(g)))
    return BlockDecomposition(tuple(sorted(blocks)), cut_vertices)


def classify_block(graph: Graph, block: Tuple[int, ...]) -> str:
    k = len(block)
    if k == 1:
        return VERTEX
    mask = to_mask(block)
    induced = graph.edges_within(mask)
    if induced == k * (k - 1) // 2:
        return COMPLETE
    if induced == k and all(popcount(graph.adjacency[v] & mask) == 2 for v in block):
        return ODD_CYCLE if k % 2 else EVEN_CYCLE
    return OTHER


def gallai_report(graph: Graph) -> GallaiReport:
    require_connected(graph, "Gallai-tree recognition")
    decomposition = block_decomposition(graph)
    kinds = tuple(classify_block(graph, block) for block in decomposition.blocks)
    verdict = all(kind in GALLAI_KINDS for kind in kinds)

    if not kinds:
        reason = "empty graph"
    elif verdict and len(kinds) == 1:
        reason = f"single {_KIND_TEXT[kinds[0]]} block"
    elif verdict:
        reason = f"all {len(kinds)} blocks are complete graphs or odd cycles"
    else:
        index = next(i for i, kind in enumerate(kinds) if kind not in GALLAI_KINDS)
        reason = f"block {list(decomposition.blocks[index])} is {_KIND_TEXT[kinds[index]]}"
    return GallaiReport(verdict, decomposition.blocks, kinds, decomposition.cut_vertices, reason)


def is_gallai_tree(graph: Graph) -> bool:
    """Every block is complete (K1 and K2 included) or an odd cycle of length >= 5."""
    return gallai_report(graph).is_gallai_tree


def is_complete_or_odd_cycle(graph: Graph) -> bool:
    """The two exceptions of Brooks' theorem (triangles count as complete)."""
    n = graph.vertex_count
    if graph.edge_count == n * (n - 1) // 2:
        return True
    return n >= 5 and n % 2 == 1 and graph.edge_count == n and all(d == 2 for d in graph.degrees) \
        and len(block_decomposition(graph).blocks) == 1


# === Witness cycle ===

def canonical_cycle(cycle) -> Tuple[int, ...]:
    """Rotate to the smallest vertex, then take the direction with the smaller successor."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


def _extend_path(adjacency, allowed: int, length: int, path: List[int], used: int) -> Iterator[Tuple[int, ...]]:
    last = path[-1]
    if len(path) == length:
        if adjacency[last] >> path[0] & 1 and path[1] < path[-1]:
            yield tuple(path)
        return
    for nxt in members(adjacency[last] & allowed & ~used):
        path.append(nxt)
        yield from _extend_path(adjacency, allowed, length, path, used | 1 << nxt)
        path.pop()


def canonical_cycles(graph: Graph, allowed: int, length: int) -> Iterator[Tuple[int, ...]]:
    """Simple cycles of a given length inside `allowed`, canonical form, lexicographic order."""
    for start in members(allowed):
        higher = allowed & ~((1 << (start + 1)) - 1)
        yield from _extend_path(graph.adjacency, higher, length, [start], 1 << start)


def _chords(graph: Graph, cycle: Tuple[int, ...]) -> List[Edge]:
    l = len(cycle)
    found = []
    for i in range(l):
        for j in range(i + 2, l):
            if i == 0 and j == l - 1:
                continue
            u, v = cycle[i], cycle[j]
            if graph.has_edge(u, v):
                found.append((min(u, v), max(u, v)))
    return sorted(found)


def find_witness_cycle(graph: Graph) -> CycleWitness:
    """
    Shortest cycle of a non-Gallai block that induces neither a complete graph
    nor a chordless odd cycle; ties go to the lexicographically smallest
    canonical form. The result is validated before it is returned.
    Worst case is exponential in the block size.
    """
    report = gallai_report(graph)
    if report.is_gallai_tree:
        raise GallaiTreeError(f"graph is a Gallai tree ({report.reason}); no witness cycle exists")

    index = next(i for i, kind in enumerate(report.kinds) if kind not in GALLAI_KINDS)
    host = report.blocks[index]
    allowed = to_mask(host)
    log("Witness", f"Searching block {list(host)} ({report.kinds[index]})")

    # Triangles always induce K3, so bad cycles have length >= 4
    for length in range(4, len(host) + 1):
        for cycle in canonical_cycles(graph, allowed, length):
            induced = graph.edges_within(to_mask(cycle))
            complete = induced == length * (length - 1) // 2
            chordless_odd = induced == length and length % 2 == 1
            if complete or chordless_odd:
                continue
            chords = _chords(graph, cycle)
            if len(chords) > 1:
                raise InvariantViolation(f"shortest bad cycle {cycle} has {len(chords)} chords")
            witness = CycleWitness(cycle, chords[0] if chords else None)
            witness.validate(graph)
            log("Witness", f"Found {witness.to_dict()}")
            return witness

    raise InvariantViolation(f"block {list(host)} is not Gallai but contains no bad cycle")


# === Ordering ===

def spanning_ordering(graph: Graph, root: int) -> VertexOrdering:
    """Breadth-first levels of a spanning tree rooted at `root`, ascending ids per level."""
    if not 0 <= root < graph.vertex_count:
        raise PreconditionError(f"root {root} is not a vertex")
    require_connected(graph, "spanning_ordering")

    order: List[int] = []
    parents = [-1] * graph.vertex_count
    placed = 0
    for layer in nx.bfs_layers(graph.nx_view, root):
        level = sorted(layer)
        for v in level:
            if v != root:
                parents[v] = members(graph.adjacency[v] & placed)[0]
        order.extend(level)
        placed |= to_mask(level)

    ordering = VertexOrdering(tuple(order), root, tuple(parents))
    if not ordering.satisfies_predecessor_property(graph):
        raise InvariantViolation(f"ordering {order} breaks the predecessor property")
    return ordering
