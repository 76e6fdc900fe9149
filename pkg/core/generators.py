"""
Standard graph families, random graphs and exhaustive graph sweeps.
"""

import re
from itertools import combinations
from typing import Iterator, Optional

import networkx as nx
import numpy as np

from core.errors import PreconditionError
from core.graph import Graph, is_connected


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def complete_minus_edge(n: int, missing=(0, 2)) -> Graph:
    """K_n without one edge; K4 minus {0,2} is the 4-cycle 0-1-2-3 with chord 1-3."""
    u, v = sorted(missing)
    return Graph(n, [e for e in combinations(range(n), 2) if e != (u, v)])


def star_graph(leaves: int) -> Graph:
    """Leaves 0..leaves-1 around the center `leaves`."""
    return Graph(leaves + 1, [(i, leaves) for i in range(leaves)])


def wheel_graph(rim: int) -> Graph:
    """Cycle 0..rim-1 plus hub `rim` adjacent to every rim vertex."""
    edges = [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)]
    return Graph(rim + 1, edges)


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    return from_networkx(nx.petersen_graph())


def from_networkx(g: nx.Graph) -> Graph:
    """Convert a networkx graph; nodes are renumbered in sorted order."""
    nodes = sorted(g.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in g.edges() if u != v])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, [pair for pair, k in zip(pairs, keep) if k])


def random_connected_graph(n: int, p: float, rng: np.random.Generator, attempts: int = 1000) -> Graph:
    """Rejection-sample G(n, p) until connected."""
    for _ in range(attempts):
        graph = random_graph(n, p, rng)
        if is_connected(graph):
            return graph
    raise PreconditionError(f"no connected G({n}, {p}) sample in {attempts} attempts")


def labeled_graphs(n: int, connected: Optional[bool] = None) -> Iterator[Graph]:
    """Every labeled graph on n vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        graph = Graph(n, [pair for i, pair in enumerate(pairs) if mask >> i & 1])
        if connected is None or is_connected(graph) == connected:
            yield graph


def atlas_graphs(min_n: int = 1, max_n: int = 7, connected: Optional[bool] = True) -> Iterator[Graph]:
    """All graphs on min_n..max_n vertices up to isomorphism (networkx atlas, n <= 7)."""
    if max_n > 7:
        raise PreconditionError("the graph atlas stops at 7 vertices")
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < min_n or n > max_n:
            continue
        graph = from_networkx(g)
        if connected is None or is_connected(graph) == connected:
            yield graph


_NAMED = re.compile(r"^(?:(C|K|P|S|W)(\d+)(-e)?|K(\d+),(\d+)|petersen)$", re.IGNORECASE)


def named_graph(name: str) -> Graph:
    """C5, K4, K4-e, P4 (path), S4 (star), W5 (wheel), K3,3, petersen."""
    match = _NAMED.match(name.strip())
    if not match:
        raise PreconditionError(f"unknown graph name {name!r}")
    if name.strip().lower() == "petersen":
        return petersen_graph()
    if match.group(4):
        return complete_bipartite_graph(int(match.group(4)), int(match.group(5)))

    family, size, minus_edge = match.group(1).upper(), int(match.group(2)), match.group(3)
    if minus_edge and family != "K":
        raise PreconditionError(f"'-e' only applies to complete graphs: {name!r}")
    if family == "C":
        return cycle_graph(size)
    if family == "K":
        return complete_minus_edge(size) if minus_edge else complete_graph(size)
    if family == "P":
        return path_graph(size)
    if family == "S":
        return star_graph(size)
    return wheel_graph(size)
