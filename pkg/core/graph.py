"""
Graph and orientation value types, their text formats, and the elementary
transformations the witness construction needs (induced subgraph, contraction).

Vertices are dense integers 0..n-1 so vertex subsets fit in an int bitmask;
symbolic names only live in the optional `labels` tuple.
"""

import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from config import MAX_VERTICES
from core.console import log
from core.errors import (
    GraphFormatError, GraphValidationError, GraphFormatWarning, PreconditionError,
)
from core.settings_store import settings

Edge = Tuple[int, int]
VertexSet = int  # bitmask over vertex ids

EDGE_LIST = "edgelist"
DIMACS = "dimacs"
_FORMAT_ALIASES = {"edgelist": EDGE_LIST, "edge_list": EDGE_LIST, "edges": EDGE_LIST, "dimacs": DIMACS, "col": DIMACS}

_VERTICES_DIRECTIVE = re.compile(r"^#\s*vertices:\s*([0-9]+)\s*$")
_LABELS_DIRECTIVE = re.compile(r"^#\s*labels:(.*)$")


# === Vertex sets ===

def to_mask(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> List[int]:
    """Vertex ids in the mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: VertexSet) -> int:
    return mask.bit_count()


# === Value types ===

@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: Tuple[Edge, ...] = ()
    labels: Optional[Tuple[str, ...]] = None
    # Parent vertex ids when this graph was cut out of another one
    origin: Optional[Tuple[int, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = int(self.vertex_count)
        if n < 0:
            raise GraphValidationError(f"vertex count must be nonnegative, got {n}")
        limit = settings.get("capacity.max_vertices", MAX_VERTICES)
        if n > limit:
            raise GraphValidationError(f"{n} vertices exceeds the supported maximum of {limit}")

        normalized = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

        if self.labels is not None:
            labels = tuple(str(name) for name in self.labels)
            if len(labels) != n:
                raise GraphValidationError(f"expected {n} labels, got {len(labels)}")
            if len(set(labels)) != n:
                raise GraphValidationError("vertex labels must be distinct")
            for name in labels:
                if not name or any(ch.isspace() for ch in name) or name.startswith("#"):
                    raise GraphValidationError(f"invalid vertex label {name!r}")
            object.__setattr__(self, "labels", labels)

    # --- Basic queries ---

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def all_mask(self) -> VertexSet:
        return (1 << self.vertex_count) - 1

    @cached_property
    def adjacency(self) -> Tuple[VertexSet, ...]:
        """Neighbourhood bitmask per vertex."""
        adj = [0] * self.vertex_count
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(popcount(mask) for mask in self.adjacency)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {edge: i for i, edge in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def neighbors(self, v: int) -> List[int]:
        return members(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edges_within(self, mask: VertexSet) -> int:
        """Number of edges with both endpoints in the vertex set."""
        total = 0
        for v in members(mask):
            total += popcount(self.adjacency[v] & mask)
        return total // 2

    # --- Names ---

    def vertex_name(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertex_id(self, name) -> int:
        """Resolve a label or a decimal id to a vertex id."""
        text = str(name).strip()
        if self.labels is not None and text in self.labels:
            return self.labels.index(text)
        if text.isascii() and text.isdigit() and int(text) < self.vertex_count:
            return int(text)
        raise PreconditionError(f"unknown vertex {name!r}")

    # --- Conversions ---

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def nx_view(self) -> nx.Graph:
        """Frozen networkx copy shared by read-only algorithms."""
        return nx.freeze(self.to_networkx())

    def relabel(self, permutation: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed to permutation[v]."""
        perm = [int(p) for p in permutation]
        if sorted(perm) != list(range(self.vertex_count)):
            raise PreconditionError("relabeling must be a permutation of the vertices")
        labels = None
        if self.labels is not None:
            new_labels = [""] * self.vertex_count
            for v, p in enumerate(perm):
                new_labels[p] = self.labels[v]
            labels = tuple(new_labels)
        return Graph(self.vertex_count, [(perm[u], perm[v]) for u, v in self.edges], labels)

    def describe(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
        }


@dataclass(frozen=True)
class Orientation:
    """Direction per edge of `base`: arcs[i] = (tail, head) for base.edges[i]."""

    base: Graph
    arcs: Tuple[Edge, ...]

    def __post_init__(self):
        arcs = tuple((int(t), int(h)) for t, h in self.arcs)
        if len(arcs) != self.base.edge_count:
            raise GraphValidationError(
                f"orientation has {len(arcs)} arcs for {self.base.edge_count} edges")
        for (t, h), edge in zip(arcs, self.base.edges):
            if (min(t, h), max(t, h)) != edge:
                raise GraphValidationError(f"arc ({t}, {h}) does not orient edge {edge}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, base: Graph, arcs: Iterable[Edge]) -> "Orientation":
        """Align arcs given in any order with the base graph's edge order."""
        by_edge: Dict[Edge, Edge] = {}
        for t, h in arcs:
            edge = (min(t, h), max(t, h))
            if edge not in base.edge_index:
                raise GraphValidationError(f"arc ({t}, {h}) is not an edge of the graph")
            if edge in by_edge and by_edge[edge] != (t, h):
                raise GraphValidationError(f"edge {edge} is oriented both ways")
            by_edge[edge] = (t, h)
        missing = [edge for edge in base.edges if edge not in by_edge]
        if missing:
            raise GraphValidationError(f"edges without a direction: {missing}")
        return cls(base, tuple(by_edge[edge] for edge in base.edges))

    @classmethod
    def from_mask(cls, base: Graph, mask: int) -> "Orientation":
        """Bit i set reverses edge i (u < v becomes v -> u)."""
        arcs = []
        for i, (u, v) in enumerate(base.edges):
            arcs.append((v, u) if mask >> i & 1 else (u, v))
        return cls(base, tuple(arcs))

    @property
    def edge_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def in_degrees(self) -> Tuple[int, ...]:
        counts = [0] * self.base.vertex_count
        for _, h in self.arcs:
            counts[h] += 1
        return tuple(counts)

    @cached_property
    def out_degrees(self) -> Tuple[int, ...]:
        counts = [0] * self.base.vertex_count
        for t, _ in self.arcs:
            counts[t] += 1
        return tuple(counts)

    def in_degree(self, v: int) -> int:
        return self.in_degrees[v]

    def out_degree(self, v: int) -> int:
        return self.out_degrees[v]

    @property
    def min_out_degree(self) -> int:
        return min(self.out_degrees, default=0)

    def relabel(self, permutation: Sequence[int]) -> "Orientation":
        base = self.base.relabel(permutation)
        return Orientation.from_arcs(base, [(permutation[t], permutation[h]) for t, h in self.arcs])


def all_orientations(graph: Graph) -> Iterator[Orientation]:
    for mask in range(1 << graph.edge_count):
        yield Orientation.from_mask(graph, mask)


def random_orientation(graph: Graph, rng: np.random.Generator) -> Orientation:
    flips = rng.integers(0, 2, size=graph.edge_count)
    mask = 0
    for i, bit in enumerate(flips):
        if bit:
            mask |= 1 << i
    return Orientation.from_mask(graph, mask)


# === Text formats ===

def normalize_format(fmt: str) -> str:
    key = str(fmt).strip().lower()
    if key not in _FORMAT_ALIASES:
        raise PreconditionError(f"unknown graph format {fmt!r} (use edgelist or dimacs)")
    return _FORMAT_ALIASES[key]


def _parse_pairs(text: str) -> Tuple[int, Optional[Tuple[str, ...]], List[Tuple[int, int, int]]]:
    """Shared edge-list reader: (vertex_count, labels, [(line, u, v)])."""
    declared_count = None
    declared_labels: Optional[List[str]] = None
    raw_pairs = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _VERTICES_DIRECTIVE.match(line)
            if match:
                declared_count = int(match.group(1))
            match = _LABELS_DIRECTIVE.match(line)
            if match:
                declared_labels = match.group(1).split()
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected two vertex names, found {len(tokens)} tokens", line_number)
        if tokens[0] == tokens[1]:
            raise GraphValidationError(f"line {line_number}: loop at vertex {tokens[0]}")
        raw_pairs.append((line_number, tokens[0], tokens[1]))

    names: Dict[str, int] = {}
    for name in declared_labels or []:
        if name in names:
            raise GraphFormatError(f"label {name!r} declared twice")
        names[name] = len(names)
    pairs = []
    for ln, a, b in raw_pairs:
        for name in (a, b):
            names.setdefault(name, len(names))
        pairs.append((ln, names[a], names[b]))

    count = len(names)
    if declared_count is not None:
        if declared_count < count:
            raise GraphFormatError(f"declared {declared_count} vertices but found {count} names")
        count = declared_count

    # Names that spell their own ids carry no information
    if all(name == str(v) for name, v in names.items()):
        return count, None, pairs
    labels = sorted(names, key=names.get)
    for v in range(len(labels), count):
        fresh = str(v)
        while fresh in names:
            fresh = "_" + fresh
        names[fresh] = v
        labels.append(fresh)
    return count, tuple(labels), pairs


def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines; '#' lines are comments (except the vertices/labels directives)."""
    count, labels, pairs = _parse_pairs(text)
    graph = Graph(count, [(u, v) for _, u, v in pairs], labels)
    log("Graph", f"Parsed edge list: {graph.vertex_count} vertices, {graph.edge_count} edges")
    return graph


def parse_arc_list(text: str) -> Orientation:
    """Parse "tail head" lines into an oriented graph."""
    count, labels, pairs = _parse_pairs(text)
    graph = Graph(count, [(u, v) for _, u, v in pairs], labels)
    arcs: Dict[Edge, Edge] = {}
    for line_number, t, h in pairs:
        edge = (min(t, h), max(t, h))
        if arcs.get(edge, (t, h)) != (t, h):
            raise GraphFormatError(f"edge {edge} is oriented both ways", line_number)
        arcs[edge] = (t, h)
    return Orientation.from_arcs(graph, arcs.values())


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS .col text ("c" comments, one "p edge n m", "e u v" 1-based)."""
    count = None
    declared_edges = 0
    edges = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if count is not None:
                raise GraphFormatError("second problem line", line_number)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise GraphFormatError("expected 'p edge <n> <m>'", line_number)
            try:
                count, declared_edges = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise GraphFormatError("vertex and edge counts must be integers", line_number)
        elif kind == "e":
            if count is None:
                raise GraphFormatError("edge line before the problem line", line_number)
            if len(tokens) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", line_number)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise GraphFormatError("vertex indices must be integers", line_number)
            for x in (u, v):
                if not 1 <= x <= count:
                    raise GraphFormatError(f"vertex {x} outside 1..{count}", line_number)
            if u == v:
                raise GraphValidationError(f"line {line_number}: loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type {kind!r}", line_number)

    if count is None:
        raise GraphFormatError("missing problem line 'p edge <n> <m>'")

    graph = Graph(count, edges)
    if graph.edge_count != declared_edges:
        message = f"problem line declares {declared_edges} edges, found {graph.edge_count} distinct"
        log("Graph", message)
        warnings.warn(message, GraphFormatWarning)
    return graph


def parse_graph(text: str, fmt: str = EDGE_LIST) -> Graph:
    if normalize_format(fmt) == DIMACS:
        return parse_dimacs(text)
    return parse_edge_list(text)


def load_graph(path: Union[str, Path], fmt: str = EDGE_LIST) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f.read(), fmt)


def serialize(graph: Graph, fmt: str = EDGE_LIST) -> str:
    """Canonical text; edges sorted lexicographically."""
    if normalize_format(fmt) == DIMACS:
        lines = [f"p edge {graph.vertex_count} {graph.edge_count}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in graph.edges]
        return "\n".join(lines)

    lines = [f"# vertices: {graph.vertex_count}"]
    if graph.vertex_count:
        # Pins the numbering, which would otherwise follow first appearance
        lines.append("# labels: " + " ".join(graph.vertex_name(v) for v in graph.vertices))
    lines += [f"{graph.vertex_name(u)} {graph.vertex_name(v)}" for u, v in graph.edges]
    return "\n".join(lines)


# === Transformations ===

def _check_members(graph: Graph, vertices: Iterable[int]) -> List[int]:
    chosen = sorted(set(int(v) for v in vertices))
    for v in chosen:
        if not 0 <= v < graph.vertex_count:
            raise PreconditionError(f"vertex {v} outside 0..{graph.vertex_count - 1}")
    return chosen


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on `vertices`, renumbered ascending; `origin` maps back."""
    keep = _check_members(graph, vertices)
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in graph.edges if u in index and v in index]
    labels = tuple(graph.labels[v] for v in keep) if graph.labels is not None else None
    return Graph(len(keep), edges, labels, origin=tuple(keep))


def contract_set(graph: Graph, vertices: Iterable[int]) -> Tuple[Graph, int, Tuple[int, ...]]:
    """
    Merge `vertices` into one vertex w (simple-graph contraction).
    Returns (graph, w, mapping) with mapping[old] = new id.
    """
    merged = set(_check_members(graph, vertices))
    if not merged:
        raise PreconditionError("cannot contract an empty vertex set")

    mapping = [0] * graph.vertex_count
    origin = []
    w = None
    for v in graph.vertices:
        if v in merged:
            if w is None:
                w = len(origin)
                origin.append(v)
            mapping[v] = w
        else:
            mapping[v] = len(origin)
            origin.append(v)

    edges = [(mapping[u], mapping[v]) for u, v in graph.edges if mapping[u] != mapping[v]]
    labels = None
    if graph.labels is not None:
        labels = [graph.labels[v] for v in origin]
        name = "+".join(graph.labels[v] for v in sorted(merged))
        taken = set(labels) - {labels[w]}
        while name in taken:
            name += "+"
        labels[w] = name
    contracted = Graph(len(origin), edges, labels, origin=tuple(origin))
    return contracted, w, tuple(mapping)


def is_connected(graph: Graph) -> bool:
    """True for graphs with at most one vertex, else networkx connectivity."""
    if graph.vertex_count <= 1:
        return True
    return nx.is_connected(graph.nx_view)


def require_connected(graph: Graph, what: str):
    if not is_connected(graph):
        raise PreconditionError(f"{what} requires a connected graph")
